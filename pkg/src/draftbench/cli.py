"""Command-line entry point: simulate / import / split / train / eval / synergy / serve.

Exit codes: 0 success, 1 pipeline failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import engine, evaluation, logs as logio, synergy, training
from .cards import CardSet, load_bundled_set, load_set
from .nnet import TrainConfig
from .specs import AGENT_SPEC_HELP, AgentSpecError, parse_agent_list

BUNDLED_SETS = ("DESK",)


class PipelineError(RuntimeError):
    pass


def resolve_set(arg: str) -> CardSet:
    """A set file path, or the code of a bundled set (DESK)."""
    if Path(arg).exists():
        return load_set(arg)
    if arg.upper() in BUNDLED_SETS:
        return load_bundled_set(arg.upper())
    raise PipelineError(f"set {arg!r}: no such file and not a bundled set code")


def _simulate_chunk(args: tuple) -> list[logio.DraftLog]:
    set_arg, agents_spec, models_dir, seeds = args
    card_set = resolve_set(set_arg)
    factories = parse_agent_list(agents_spec, card_set, engine.N_SEATS, models_dir)
    out: list[logio.DraftLog] = []
    for draft_seed in seeds:
        agents = [f.build(draft_seed * engine.N_SEATS + k) for k, f in enumerate(factories)]
        out.extend(engine.run_bot_draft(card_set, agents, seed=draft_seed))
    return out


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.drafts < 1:
        raise PipelineError("--drafts must be at least 1")
    card_set = resolve_set(args.set)
    parse_agent_list(args.agents, card_set, engine.N_SEATS, args.models)  # fail fast
    seeds = [args.seed + i for i in range(args.drafts)]
    if args.jobs > 1:
        chunks = [seeds[i :: args.jobs] for i in range(args.jobs)]
        tasks = [(args.set, args.agents, args.models, chunk) for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_simulate_chunk, tasks))
        all_logs = [log for part in parts for log in part]
        all_logs.sort(key=lambda log: log.draft_id)
    else:
        all_logs = _simulate_chunk((args.set, args.agents, args.models, seeds))
    logio.write_logs(all_logs, args.out, extra_header={"seed": args.seed, "agents": args.agents})
    print(f"wrote {len(all_logs)} logs ({args.drafts} drafts) to {args.out}")
    return 0


def cmd_import(args: argparse.Namespace) -> int:
    card_set = resolve_set(args.set)
    result = logio.import_draftsim_export(args.infile, card_set)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not result.logs:
        print(f"no complete drafts found in {args.infile} ({result.skipped} skipped)")
        return 0
    logio.write_logs(result.logs, args.out)
    print(f"imported {len(result.logs)} drafts ({result.skipped} skipped) to {args.out}")
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    corpus = logio.read_logs(args.infile)
    train, test = logio.split_dataset(corpus, args.ratio, args.seed)
    stem = str(args.infile)
    for suffix in (".jsonl.gz", ".jsonl"):
        if stem.endswith(suffix):
            stem = stem[: -len(suffix)]
            break
    train_path = args.train_out or f"{stem}.train.jsonl"
    test_path = args.test_out or f"{stem}.test.jsonl"
    header = {"seed": args.seed, "ratio": args.ratio}
    logio.write_logs(train, train_path, extra_header=header)
    logio.write_logs(test, test_path, extra_header=header)
    print(f"split {len(corpus)} logs into {len(train)} train / {len(test)} test")
    return 0


def cmd_train_bayes(args: argparse.Namespace) -> int:
    card_set = resolve_set(args.set)
    corpus = logio.read_logs(args.train)
    logio.validate_logs(corpus, card_set)
    model = training.train_bayes(corpus, card_set, human_only=not args.include_bots)
    training.save_model(model, args.out)
    print(f"trained bayes model on {len(corpus)} logs -> {args.out}")
    return 0


def cmd_train_nnet(args: argparse.Namespace) -> int:
    card_set = resolve_set(args.set)
    corpus = logio.read_logs(args.train)
    logio.validate_logs(corpus, card_set)
    config = TrainConfig()
    if args.config:
        overrides = json.loads(Path(args.config).read_text())
        for key, value in overrides.items():
            if not hasattr(config, key):
                raise PipelineError(f"unknown train-config key {key!r}")
            setattr(config, key, value)
    if args.cv:
        config.folds = args.cv
    model, metrics = training.train_nnet(
        corpus, card_set, config, human_only=not args.include_bots,
        cross_validate=bool(args.cv),
    )
    training.save_model(model, args.out)
    if args.metrics:
        Path(args.metrics).write_text(training.metrics_to_csv(metrics))
    final = [m for m in metrics if m.fold == -1][-1]
    print(
        f"trained nnet on {len(corpus)} logs, epoch {final.epoch} "
        f"loss {final.loss:.4f} next-pick accuracy {final.accuracy:.4f} -> {args.out}"
    )
    return 0


def _eval_chunk(args: tuple) -> evaluation.EvalReport:
    set_arg, agent_spec, models_dir, chunk_logs, shard = args
    card_set = resolve_set(set_arg)
    factory = parse_agent_list(agent_spec, card_set, 1, models_dir)[0]
    agent = factory.build(shard)
    return evaluation.evaluate(agent, chunk_logs, card_set)


def cmd_eval(args: argparse.Namespace) -> int:
    card_set = resolve_set(args.set)
    corpus = logio.read_logs(args.test)
    logio.validate_logs(corpus, card_set)
    if args.jobs > 1:
        chunks = [corpus[i :: args.jobs] for i in range(args.jobs)]
        tasks = [
            (args.set, args.agent, args.models, chunk, shard)
            for shard, chunk in enumerate(chunks)
            if chunk
        ]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            report = evaluation.merge_reports(list(pool.map(_eval_chunk, tasks)))
    else:
        report = _eval_chunk((args.set, args.agent, args.models, corpus, 0))
    print(
        f"{report.agent}: overall top-one accuracy "
        f"{100 * report.overall_accuracy:.2f}% over {report.n_events} events"
    )
    if args.report:
        evaluation.write_report(report, args.report)
        print(f"report files in {args.report}")
    if args.min_accuracy is not None and report.overall_accuracy < args.min_accuracy:
        raise PipelineError(
            f"accuracy {report.overall_accuracy:.4f} below threshold {args.min_accuracy}"
        )
    return 0


def cmd_synergy(args: argparse.Namespace) -> int:
    card_set = resolve_set(args.set)
    corpus = logio.read_logs(args.infile)
    logio.validate_logs(corpus, card_set)
    stats = synergy.cooccurrence(corpus, card_set, human_only=args.human_only)
    embedding = synergy.embed_2d(stats.distance, seed=args.seed, iters=args.iters)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    synergy.export_plot_data(stats, embedding, card_set, out / "synergy_plot.csv")
    summary = {
        "n_collections": stats.n_collections,
        "n_embedded": int(stats.kept.size),
        "n_dropped": int(stats.dropped.size),
        "pearson_r": embedding.pearson_r,
        "iterations": embedding.iterations,
        "seed": args.seed,
    }
    (out / "synergy_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"embedded {stats.kept.size} cards, pearson r = {embedding.pearson_r:.4f}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    card_set = resolve_set(args.set)
    app = create_app({card_set.code: card_set}, models_dir=args.models,
                     snapshot_dir=args.snapshots)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="draftbench",
        description="Booster-draft simulation, pick agents, and benchmarking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_set(p):
        p.add_argument("--set", required=True, help="set file path or bundled code (DESK)")

    p = sub.add_parser("simulate", help="generate synthetic draft logs with bot agents")
    add_set(p)
    p.add_argument("--agents", default="draftsim",
                   help=f"1 or 8 comma-separated specs: {AGENT_SPEC_HELP}")
    p.add_argument("--drafts", type=int, required=True, help="number of 8-seat drafts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output JSONL[.gz] path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--models", default=None, help="directory for model-file agent specs")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("import", help="convert a draft-export CSV to canonical JSONL")
    p.add_argument("--in", dest="infile", required=True)
    add_set(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("split", help="split a log file into train/test by draft id")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--ratio", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-out", default=None)
    p.add_argument("--test-out", default=None)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train-bayes", help="train the pairwise-statistics model")
    p.add_argument("--train", required=True, help="training JSONL")
    add_set(p)
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--include-bots", action="store_true",
                   help="train on bot seats too (default: human seats only)")
    p.set_defaults(func=cmd_train_bayes)

    p = sub.add_parser("train-nnet", help="train the neural pick model")
    p.add_argument("--train", required=True)
    add_set(p)
    p.add_argument("--config", default=None, help="JSON file overriding TrainConfig fields")
    p.add_argument("--out", required=True)
    p.add_argument("--cv", type=int, default=0, metavar="FOLDS",
                   help="also run k-fold cross-validation (reported in --metrics)")
    p.add_argument("--metrics", default=None, help="per-epoch metrics CSV path")
    p.add_argument("--include-bots", action="store_true")
    p.set_defaults(func=cmd_train_nnet)

    p = sub.add_parser("eval", help="top-one accuracy of an agent on test logs")
    p.add_argument("--test", required=True)
    add_set(p)
    p.add_argument("--agent", required=True, help=AGENT_SPEC_HELP)
    p.add_argument("--report", default=None, help="directory for JSON/CSV report files")
    p.add_argument("--models", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--min-accuracy", type=float, default=None,
                   help="exit nonzero if overall accuracy falls below this")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synergy", help="co-draft statistics and 2D embedding")
    p.add_argument("--in", dest="infile", required=True)
    add_set(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--human-only", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=5000)
    p.set_defaults(func=cmd_synergy)

    p = sub.add_parser("serve", help="HTTP service for live drafts")
    add_set(p)
    p.add_argument("--models", default=None)
    p.add_argument("--snapshots", default=None, help="append-only snapshot directory")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8100)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PipelineError, AgentSpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
