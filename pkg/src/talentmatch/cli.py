"""Command line front end.

Four subcommands: gen (write a deterministic corpus snapshot), match
(score a snapshot and write report files), report (re-render the text
table from a machine-readable report), serve (run the HTTP service).

Timing chatter goes to stdout only; report files stay byte-stable for
a given corpus.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import date
from pathlib import Path
from typing import List, Optional

from . import storage, synth
from .config import ConfigError, ServiceConfig, load_config, load_weights_file
from .matching import InvalidWeightsError, MatchWeights


def _cmd_gen(args: argparse.Namespace) -> int:
    config = synth.GenConfig(
        seed=args.seed,
        candidate_count=args.candidates,
        job_count=args.jobs,
        skill_count=args.skills,
        salary_low=args.salary_low,
        salary_high=args.salary_high,
    )
    started = time.perf_counter()
    snapshot = synth.generate_snapshot(config, Path(args.out))
    elapsed = time.perf_counter() - started
    print(f"wrote {args.out} ({len(snapshot.text.splitlines())} lines) in {elapsed:.2f}s")
    return 0


def _cmd_match(args: argparse.Namespace) -> int:
    weights = load_weights_file(args.weights) if args.weights else MatchWeights()
    as_of = date.fromisoformat(args.as_of) if args.as_of else synth.DEFAULT_AS_OF

    store = storage.MemoryStore()
    storage.import_snapshot(store, storage.read_snapshot(Path(args.snapshot)))

    started = time.perf_counter()
    report = synth.batch_match(store, weights, as_of=as_of)
    json_path, text_path = synth.write_reports(report, Path(args.out_prefix))
    elapsed = time.perf_counter() - started

    summary = report["summary"]
    print(
        f"scored {summary['pairs_scored']} pairs across {summary['jobs_open']} open jobs "
        f"in {elapsed:.2f}s"
    )
    print(f"wrote {json_path} and {text_path}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    text = synth.render_text_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import build_app

    config = load_config(args.config)
    overrides = {}
    if args.host is not None:
        overrides["host"] = args.host
    if args.port is not None:
        overrides["port"] = args.port
    if args.storage_dir is not None:
        overrides["storage_dir"] = args.storage_dir
    if args.weights is not None:
        overrides["weights"] = load_weights_file(args.weights)
    if args.quiz_bank is not None:
        overrides["quiz_bank_path"] = args.quiz_bank
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)

    app = build_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talentmatch", description="recruitment matching toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a deterministic corpus snapshot")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--candidates", type=int, default=100)
    gen.add_argument("--jobs", type=int, default=20)
    gen.add_argument("--skills", type=int, default=40)
    gen.add_argument("--salary-low", type=int, default=45000)
    gen.add_argument("--salary-high", type=int, default=160000)
    gen.add_argument("--out", required=True, help="snapshot file to write")
    gen.set_defaults(func=_cmd_gen)

    match = sub.add_parser("match", help="score a snapshot and write reports")
    match.add_argument("--snapshot", required=True)
    match.add_argument("--out-prefix", required=True, help="writes PREFIX.json and PREFIX.txt")
    match.add_argument("--weights", help="JSON file naming all seven criterion weights")
    match.add_argument("--as-of", help="ISO date used for age subscores")
    match.set_defaults(func=_cmd_match)

    report = sub.add_parser("report", help="render the text table from a JSON report")
    report.add_argument("--report", required=True)
    report.add_argument("--out", help="write to file instead of stdout")
    report.set_defaults(func=_cmd_report)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.add_argument("--storage-dir")
    serve.add_argument("--weights")
    serve.add_argument("--quiz-bank")
    serve.add_argument("--config", help="JSON config file; flags override it")
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        ConfigError,
        InvalidWeightsError,
        synth.InvalidConfigError,
        storage.StoreError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
