"""Minimal dense-network machinery: forward/backward, batch norm, dropout, Adam.

The only network shape used is collection-vector in, per-card logit out, with
three hidden blocks of dense -> batch norm -> leaky ReLU -> dropout and a linear
output layer. Everything is plain numpy; no autograd.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class TrainingError(RuntimeError):
    pass


@dataclass
class DenseLayer:
    weights: np.ndarray  # (out, in)
    bias: np.ndarray  # (out,)


@dataclass
class BatchNormLayer:
    scale: np.ndarray
    shift: np.ndarray
    running_mean: np.ndarray
    running_var: np.ndarray
    eps: float = 1e-5
    momentum: float = 0.1


@dataclass
class TrainConfig:
    epochs: int = 20
    batch_size: int = 256
    learning_rate: float = 1e-3
    seed: int = 0
    folds: int = 3

    def validate(self) -> None:
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.folds < 2:
            raise ValueError("folds must be >= 2 for cross-validation")


@dataclass
class Network:
    """Three hidden blocks plus a linear output head."""

    hidden: list[tuple[DenseLayer, BatchNormLayer]]
    output: DenseLayer
    leak: float = 0.01
    dropout_rate: float = 0.5

    @property
    def input_size(self) -> int:
        if self.hidden:
            return self.hidden[0][0].weights.shape[1]
        return self.output.weights.shape[1]

    @property
    def output_size(self) -> int:
        return self.output.weights.shape[0]

    def parameters(self) -> dict[str, np.ndarray]:
        params: dict[str, np.ndarray] = {}
        for i, (dense, bn) in enumerate(self.hidden):
            params[f"h{i}.weights"] = dense.weights
            params[f"h{i}.bias"] = dense.bias
            params[f"h{i}.scale"] = bn.scale
            params[f"h{i}.shift"] = bn.shift
        params["out.weights"] = self.output.weights
        params["out.bias"] = self.output.bias
        return params


def he_uniform(rng: np.random.Generator, out_size: int, in_size: int, dtype) -> np.ndarray:
    limit = np.sqrt(6.0 / in_size)
    return rng.uniform(-limit, limit, size=(out_size, in_size)).astype(dtype)


def init_network(
    input_size: int,
    output_size: int,
    hidden_width: int | None = None,
    n_hidden: int = 3,
    seed: int = 0,
    dtype=np.float32,
) -> Network:
    if hidden_width is None:
        hidden_width = input_size
    rng = np.random.default_rng(seed)
    hidden = []
    in_size = input_size
    for _ in range(n_hidden):
        dense = DenseLayer(
            weights=he_uniform(rng, hidden_width, in_size, dtype),
            bias=np.zeros(hidden_width, dtype=dtype),
        )
        bn = BatchNormLayer(
            scale=np.ones(hidden_width, dtype=dtype),
            shift=np.zeros(hidden_width, dtype=dtype),
            running_mean=np.zeros(hidden_width, dtype=dtype),
            running_var=np.ones(hidden_width, dtype=dtype),
        )
        hidden.append((dense, bn))
        in_size = hidden_width
    output = DenseLayer(
        weights=he_uniform(rng, output_size, in_size, dtype),
        bias=np.zeros(output_size, dtype=dtype),
    )
    return Network(hidden=hidden, output=output)


def leaky_relu(x: np.ndarray, leak: float) -> np.ndarray:
    return np.where(x > 0, x, leak * x)


def forward(
    net: Network,
    x: np.ndarray,
    mode: str = "infer",
    rng: np.random.Generator | None = None,
    update_running: bool = True,
):
    """Run the network; returns (logits, cache). Cache is None in infer mode.

    Train mode normalizes with batch statistics, applies inverted dropout, and
    (optionally) updates the running batch-norm statistics in place.
    """
    if mode not in ("train", "infer"):
        raise ValueError(f"bad mode {mode!r}")
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[1] != net.input_size:
        raise ValueError(f"input shape {x.shape} incompatible with width {net.input_size}")
    train = mode == "train"
    if train and rng is None:
        raise ValueError("train mode needs an rng for dropout")

    cache = {"x": x, "blocks": []} if train else None
    a = x
    for dense, bn in net.hidden:
        z = a @ dense.weights.T + dense.bias
        if train:
            mu = z.mean(axis=0)
            var = z.var(axis=0)
            inv_std = 1.0 / np.sqrt(var + bn.eps)
            z_hat = (z - mu) * inv_std
            if update_running:
                m = bn.momentum
                bn.running_mean[...] = (1 - m) * bn.running_mean + m * mu
                bn.running_var[...] = (1 - m) * bn.running_var + m * var
        else:
            inv_std = 1.0 / np.sqrt(bn.running_var + bn.eps)
            z_hat = (z - bn.running_mean) * inv_std
        y = bn.scale * z_hat + bn.shift
        act = leaky_relu(y, net.leak)
        if train and net.dropout_rate > 0:
            keep = 1.0 - net.dropout_rate
            mask = (rng.random(act.shape) < keep).astype(act.dtype) / keep
            out = act * mask
        else:
            mask = None
            out = act
        if train:
            cache["blocks"].append(
                {"input": a, "z_hat": z_hat, "inv_std": inv_std, "y": y, "act": act, "mask": mask}
            )
        a = out
    logits = a @ net.output.weights.T + net.output.bias
    if train:
        cache["head_input"] = a
    return logits, cache


def softmax_cross_entropy(logits: np.ndarray, targets: np.ndarray):
    """Mean cross-entropy over the batch (float64) and d(loss)/d(logits)."""
    targets = np.asarray(targets)
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    probs = exp / exp.sum(axis=1, keepdims=True)
    n = logits.shape[0]
    picked = shifted[np.arange(n), targets].astype(np.float64)
    lse = np.log(exp.sum(axis=1)).astype(np.float64)
    loss = float(np.mean(lse - picked))
    dlogits = probs.copy()
    dlogits[np.arange(n), targets] -= 1.0
    dlogits /= n
    return loss, dlogits.astype(logits.dtype)


def loss_and_grad(
    net: Network,
    x: np.ndarray,
    targets: np.ndarray,
    rng: np.random.Generator | None = None,
    update_running: bool = False,
):
    """Train-mode forward plus full backprop; returns (loss, grads by name)."""
    if rng is None:
        rng = np.random.default_rng(0)
    logits, cache = forward(net, x, mode="train", rng=rng, update_running=update_running)
    loss, dlogits = softmax_cross_entropy(logits, targets)

    grads: dict[str, np.ndarray] = {}
    head_in = cache["head_input"]
    grads["out.weights"] = dlogits.T @ head_in
    grads["out.bias"] = dlogits.sum(axis=0)
    da = dlogits @ net.output.weights

    for i in range(len(net.hidden) - 1, -1, -1):
        dense, bn = net.hidden[i]
        blk = cache["blocks"][i]
        if blk["mask"] is not None:
            da = da * blk["mask"]
        dy = da * np.where(blk["y"] > 0, 1.0, net.leak).astype(da.dtype)
        grads[f"h{i}.scale"] = (dy * blk["z_hat"]).sum(axis=0)
        grads[f"h{i}.shift"] = dy.sum(axis=0)
        # Batch-norm backward through the batch mean/variance (biased variance).
        dz_hat = dy * bn.scale
        dz = blk["inv_std"] * (
            dz_hat
            - dz_hat.mean(axis=0)
            - blk["z_hat"] * (dz_hat * blk["z_hat"]).mean(axis=0)
        )
        grads[f"h{i}.weights"] = dz.T @ blk["input"]
        grads[f"h{i}.bias"] = dz.sum(axis=0)
        da = dz @ dense.weights
    return loss, grads


def gradient_check(
    net: Network,
    x: np.ndarray,
    targets: np.ndarray,
    rng_seed: int = 0,
    eps: float = 1e-5,
    zero_guard: float = 1e-7,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    The dropout mask is pinned by re-seeding identically per evaluation. Entries
    where both gradients are below ``zero_guard`` count as zero error: a hidden
    dense bias is provably inert (batch norm re-centers it away), so its finite
    difference is pure cancellation noise.
    """
    params = net.parameters()
    _, grads = loss_and_grad(net, x, targets, rng=np.random.default_rng(rng_seed))
    worst = 0.0
    for name, arr in params.items():
        flat = arr.ravel()
        grad_flat = grads[name].ravel()
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + eps
            up, _ = loss_and_grad(net, x, targets, rng=np.random.default_rng(rng_seed))
            flat[i] = original - eps
            down, _ = loss_and_grad(net, x, targets, rng=np.random.default_rng(rng_seed))
            flat[i] = original
            fd = (up - down) / (2 * eps)
            scale = max(abs(fd), abs(grad_flat[i]))
            if scale < zero_guard:
                continue
            worst = max(worst, abs(fd - grad_flat[i]) / scale)
    return worst


class Adam:
    """Adam with bias correction; parameters are updated in place."""

    def __init__(self, params: dict[str, np.ndarray], lr: float = 1e-3,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}

    def step(self, grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        for name, p in self.params.items():
            g = grads[name]
            if not np.isfinite(g).all():
                raise TrainingError(f"non-finite gradient in {name}")
            self.m[name] = self.beta1 * self.m[name] + (1 - self.beta1) * g
            self.v[name] = self.beta2 * self.v[name] + (1 - self.beta2) * g * g
            m_hat = self.m[name] / (1 - self.beta1**self.t)
            v_hat = self.v[name] / (1 - self.beta2**self.t)
            p -= (self.lr * m_hat / (np.sqrt(v_hat) + self.eps)).astype(p.dtype)
