"""Trainer CLI: fit the encoder on a generated dataset and export masks."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import TrainerError
from .export import export_masks
from .train import TrainConfig, train


def _scenario_list(text: str):
    try:
        scenarios = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"scenarios must be comma-separated ints, got {text!r}")
    if not scenarios or any(s not in (1, 2, 3, 4, 5) for s in scenarios):
        raise argparse.ArgumentTypeError("scenarios must be within 1..5")
    return scenarios


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maskplan-train", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("train", help="train the encoder on a dataset")
    fit.add_argument("--dataset", required=True)
    fit.add_argument("--scenarios", type=_scenario_list, default=(1, 2, 3, 4, 5),
                     help="comma-separated scenario ids (default: all)")
    fit.add_argument("--epochs", type=int, default=100)
    fit.add_argument("--batch-size", type=int, default=32)
    fit.add_argument("--lr", type=float, default=1e-3)
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--checkpoint", required=True, help="checkpoint output path")
    fit.add_argument("--metrics", required=True, help="metrics CSV output path")

    export = sub.add_parser("export", help="export MASKV1 mask files from a checkpoint")
    export.add_argument("--checkpoint", required=True)
    export.add_argument("--dataset", required=True)
    export.add_argument("--scenario", type=int, required=True, choices=(1, 2, 3, 4, 5))
    export.add_argument("--split", choices=("all", "train", "test"), default="test")
    export.add_argument("--out", required=True, help="mask output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            config = TrainConfig(
                dataset_dir=args.dataset,
                scenarios=tuple(args.scenarios),
                epochs=args.epochs,
                batch_size=args.batch_size,
                learning_rate=args.lr,
                seed=args.seed,
            )
            summary = train(config, args.checkpoint, args.metrics)
            print(json.dumps(summary, indent=2, sort_keys=True))
        else:
            written = export_masks(
                args.checkpoint, args.dataset, args.out,
                scenario=args.scenario, split=args.split,
            )
            print(f"wrote {written} mask files to {args.out}")
        return 0
    except (TrainerError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
