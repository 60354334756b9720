"""Trained-model containers and their versioned binary file format.

A model file is: 8-byte magic, little-endian uint64 header length, UTF-8 JSON
header (model kind, set code/size, hyperparameters, array manifest), then the
raw little-endian array bytes in manifest order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cards import CardSet
from .nnet import BatchNormLayer, DenseLayer, Network

MAGIC = b"DBMODEL\x01"

_DTYPES = {"float32": "<f4", "float64": "<f8", "int64": "<i8"}


class ModelFormatError(ValueError):
    pass


class ModelMismatchError(ValueError):
    pass


@dataclass
class BayesModel:
    """Pairwise pick statistics and the log-ratio affinity matrix.

    seen_together[i, j]  events with both i and j in the pack (symmetric)
    taken_over[i, j]     events where i was picked with j still in the pack
    pool_seen[i, j]      (pack occurrences of i) x (copies of j in collection)
    pool_taken[i, j]     same, restricted to events where i was the pick
    affinity[i, j]       log((pool_taken + 1) / (pool_seen + 2))
    first_pick_scores[i] sum over j != i of log((taken_over + 1) / (seen_together + 2))
    """

    set_code: str
    set_size: int
    seen_together: np.ndarray
    taken_over: np.ndarray
    pool_seen: np.ndarray
    pool_taken: np.ndarray
    affinity: np.ndarray
    first_pick_scores: np.ndarray

    def check_finite(self) -> None:
        if not np.isfinite(self.affinity).all() or not np.isfinite(self.first_pick_scores).all():
            raise ValueError("bayes model contains non-finite scores")


def smoothed_log_ratio(numer: np.ndarray, denom: np.ndarray) -> np.ndarray:
    """log((numer + 1) / (denom + 2)); finite for all non-negative counts."""
    return np.log((numer + 1.0) / (denom + 2.0))


def bayes_from_counts(
    set_code: str,
    seen_together: np.ndarray,
    taken_over: np.ndarray,
    pool_seen: np.ndarray,
    pool_taken: np.ndarray,
) -> BayesModel:
    size = seen_together.shape[0]
    scores = smoothed_log_ratio(taken_over.astype(np.float64), seen_together.astype(np.float64))
    np.fill_diagonal(scores, 0.0)  # a card is never "picked over itself"
    first_pick = scores.sum(axis=1)
    affinity = smoothed_log_ratio(pool_taken.astype(np.float64), pool_seen.astype(np.float64))
    return BayesModel(
        set_code=set_code,
        set_size=size,
        seen_together=seen_together,
        taken_over=taken_over,
        pool_seen=pool_seen,
        pool_taken=pool_taken,
        affinity=affinity,
        first_pick_scores=first_pick,
    )


@dataclass
class NNetModel:
    """A trained collection-to-pick network bound to one card set."""

    set_code: str
    set_size: int
    network: Network


def _array_manifest(arrays: dict[str, np.ndarray]) -> list[dict]:
    manifest = []
    for name, arr in arrays.items():
        dtype = str(arr.dtype)
        if dtype not in _DTYPES:
            raise ModelFormatError(f"array {name}: unsupported dtype {dtype}")
        manifest.append({"name": name, "dtype": dtype, "shape": list(arr.shape)})
    return manifest


def _write_container(path, kind: str, set_code: str, set_size: int,
                     hyperparameters: dict, arrays: dict[str, np.ndarray]) -> None:
    header = {
        "model_kind": kind,
        "set_code": set_code,
        "set_size": set_size,
        "hyperparameters": hyperparameters,
        "arrays": _array_manifest(arrays),
    }
    header_bytes = json.dumps(header, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(len(header_bytes).to_bytes(8, "little"))
        fh.write(header_bytes)
        for name, arr in arrays.items():
            fh.write(np.ascontiguousarray(arr).astype(_DTYPES[str(arr.dtype)]).tobytes())


def _read_container(path) -> tuple[dict, dict[str, np.ndarray]]:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(MAGIC) + 8 or blob[: len(MAGIC)] != MAGIC:
        raise ModelFormatError(f"{path}: not a draftbench model container")
    header_len = int.from_bytes(blob[len(MAGIC) : len(MAGIC) + 8], "little")
    body_start = len(MAGIC) + 8
    try:
        header = json.loads(blob[body_start : body_start + header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"{path}: corrupt header ({exc})") from exc
    offset = body_start + header_len
    arrays: dict[str, np.ndarray] = {}
    for entry in header["arrays"]:
        dtype = np.dtype(_DTYPES[entry["dtype"]])
        count = int(np.prod(entry["shape"])) if entry["shape"] else 1
        nbytes = count * dtype.itemsize
        chunk = blob[offset : offset + nbytes]
        if len(chunk) != nbytes:
            raise ModelFormatError(f"{path}: truncated array {entry['name']}")
        arrays[entry["name"]] = np.frombuffer(chunk, dtype=dtype).reshape(entry["shape"]).copy()
        offset += nbytes
    if offset != len(blob):
        raise ModelFormatError(f"{path}: {len(blob) - offset} trailing bytes")
    return header, arrays


def save_model(model: BayesModel | NNetModel, path: str | Path) -> None:
    if isinstance(model, BayesModel):
        arrays = {
            "seen_together": model.seen_together.astype(np.int64),
            "taken_over": model.taken_over.astype(np.int64),
            "pool_seen": model.pool_seen.astype(np.int64),
            "pool_taken": model.pool_taken.astype(np.int64),
            "affinity": model.affinity.astype(np.float64),
            "first_pick_scores": model.first_pick_scores.astype(np.float64),
        }
        _write_container(path, "bayes", model.set_code, model.set_size, {}, arrays)
    elif isinstance(model, NNetModel):
        net = model.network
        hyper = {
            "n_hidden": len(net.hidden),
            "hidden_width": net.hidden[0][0].weights.shape[0],
            "leak": net.leak,
            "dropout_rate": net.dropout_rate,
            "bn_eps": net.hidden[0][1].eps,
            "bn_momentum": net.hidden[0][1].momentum,
        }
        arrays = {}
        for i, (dense, bn) in enumerate(net.hidden):
            arrays[f"h{i}.weights"] = dense.weights
            arrays[f"h{i}.bias"] = dense.bias
            arrays[f"h{i}.scale"] = bn.scale
            arrays[f"h{i}.shift"] = bn.shift
            arrays[f"h{i}.running_mean"] = bn.running_mean
            arrays[f"h{i}.running_var"] = bn.running_var
        arrays["out.weights"] = net.output.weights
        arrays["out.bias"] = net.output.bias
        _write_container(path, "nnet", model.set_code, model.set_size, hyper, arrays)
    else:
        raise TypeError(f"cannot save {type(model).__name__}")


def load_model(path: str | Path, card_set: CardSet | None = None) -> BayesModel | NNetModel:
    header, arrays = _read_container(path)
    set_code = header["set_code"]
    set_size = int(header["set_size"])
    if card_set is not None:
        if set_code != card_set.code:
            raise ModelMismatchError(
                f"model trained on set {set_code!r}, expected {card_set.code!r}"
            )
        if set_size != card_set.size:
            raise ModelMismatchError(f"model set size {set_size} != {card_set.size}")
    kind = header["model_kind"]
    if kind == "bayes":
        return BayesModel(
            set_code=set_code,
            set_size=set_size,
            seen_together=arrays["seen_together"],
            taken_over=arrays["taken_over"],
            pool_seen=arrays["pool_seen"],
            pool_taken=arrays["pool_taken"],
            affinity=arrays["affinity"],
            first_pick_scores=arrays["first_pick_scores"],
        )
    if kind == "nnet":
        hyper = header["hyperparameters"]
        hidden = []
        for i in range(int(hyper["n_hidden"])):
            dense = DenseLayer(weights=arrays[f"h{i}.weights"], bias=arrays[f"h{i}.bias"])
            bn = BatchNormLayer(
                scale=arrays[f"h{i}.scale"],
                shift=arrays[f"h{i}.shift"],
                running_mean=arrays[f"h{i}.running_mean"],
                running_var=arrays[f"h{i}.running_var"],
                eps=float(hyper["bn_eps"]),
                momentum=float(hyper["bn_momentum"]),
            )
            hidden.append((dense, bn))
        output = DenseLayer(weights=arrays["out.weights"], bias=arrays["out.bias"])
        network = Network(
            hidden=hidden,
            output=output,
            leak=float(hyper["leak"]),
            dropout_rate=float(hyper["dropout_rate"]),
        )
        return NNetModel(set_code=set_code, set_size=set_size, network=network)
    raise ModelFormatError(f"{path}: unknown model kind {kind!r}")
