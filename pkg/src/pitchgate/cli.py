"""Command-line entry point.

Commands: ingest, grade, train, evaluate, compare-baseline, report, run,
serve. Global flags: --config, --seed, --out. Exit codes: 0 success,
2 config validation error, 3 stage failure.
"""

from __future__ import annotations

import argparse
import sys

from .pipeline import ConfigError, Runner, StageError, load_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3

_STAGE_SEQUENCES = {
    "ingest": ["ingest"],
    "grade": ["ingest", "grade"],
    "train": ["ingest", "grade", "train"],
    "evaluate": ["ingest", "grade", "train", "evaluate"],
    "compare-baseline": ["ingest", "grade", "train", "compare_baseline"],
    "report": ["ingest", "grade", "train", "evaluate", "report"],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pitchgate",
        description="Grade pitch transcripts and predict deal outcomes.",
    )
    parser.add_argument("--config", required=True, help="experiment config (JSON)")
    parser.add_argument("--seed", type=int, default=None, help="override the root seed")
    parser.add_argument("--out", default="out", help="output directory")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (
        "ingest",
        "grade",
        "train",
        "evaluate",
        "compare-baseline",
        "report",
        "run",
    ):
        sub.add_parser(name)
    serve = sub.add_parser("serve", help="start the evaluation HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--static", default="frontend/dist", help="UI asset directory")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    runner = Runner(config, args.out)
    try:
        if args.command == "run":
            sequence = ["ingest", "grade", "train", "evaluate"]
            if config.baseline_enabled:
                sequence.append("compare_baseline")
            sequence.append("report")
        elif args.command == "serve":
            return _serve(config, args)
        else:
            sequence = _STAGE_SEQUENCES[args.command]
        for stage in sequence:
            getattr(runner, stage)()
        manifest = runner.finish()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STAGE

    for record in manifest.stages:
        print(f"{record.name:<10} {record.status:<7} {record.digest[:12]}")
    return EXIT_OK


def _serve(config, args) -> int:
    import uvicorn

    from .pipeline import make_backend
    from .service import create_app

    model_path = f"{args.out}/model.json"
    app = create_app(
        model_path=model_path, backend=make_backend(config), static_dir=args.static
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
