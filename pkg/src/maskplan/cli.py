"""Command-line interface: dataset generation, single-scene planning, benchmarks.

Exit codes: 0 success, 1 runtime failure (missing/malformed files,
unsolvable configs, IO errors), 2 bad command-line arguments.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import SPLITS, emit_report, run_bench
from .errors import MaskplanError
from .grid import decode_scene_text, load_scene_png, save_gray_png
from .maskpipe import binarize, dilate_3x3, read_mask_file, vector_to_gray
from .planner import astar, masked_plan, space_from_scene
from .scenegen import SCENARIO_IDS, GenConfig, generate_dataset


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 0.25:
        raise argparse.ArgumentTypeError(f"fraction must be in [0, 0.25], got {text}")
    return value


def _scenarios(text: str):
    if text == "all":
        return list(SCENARIO_IDS)
    try:
        scenario = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"scenario must be 1..5 or 'all', got {text!r}") from None
    if scenario not in SCENARIO_IDS:
        raise argparse.ArgumentTypeError(f"scenario must be 1..5 or 'all', got {text!r}")
    return [scenario]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maskplan", description=__doc__)
    parser.add_argument("--version", action="version", version=f"maskplan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a scene/answer dataset")
    gen.add_argument("--scenario", type=_scenarios, required=True, help="1..5 or 'all'")
    gen.add_argument("--count", type=_positive_int, required=True, help="scenes per scenario")
    gen.add_argument("--seed", type=_seed, default=42)
    gen.add_argument("--fraction", type=_fraction, default=0.10,
                     help="random obstacle fraction in [0, 0.25]")
    gen.add_argument("--out", required=True, help="output dataset directory")

    plan = sub.add_parser("plan", help="plan a single scene, optionally mask-pruned")
    plan.add_argument("--scene", required=True, help="scene file (.png or text)")
    plan.add_argument("--mask", help="MASKV1 mask-vector file")
    plan.add_argument("--dump-stages", metavar="DIR",
                      help="with --mask: write gray/dilated/binary stage PNGs for inspection")

    bench = sub.add_parser("bench", help="compare plain A* against mask-pruned A*")
    bench.add_argument("--dataset", required=True)
    bench.add_argument("--predictor", required=True,
                       help="allpass | oracle[:radius] | files:DIR")
    bench.add_argument("--split", choices=SPLITS, default="all")
    bench.add_argument("--report", required=True, help="report output path")
    bench.add_argument("--format", choices=("csv", "md"), default="csv")
    return parser


def _load_scene(path_text: str):
    path = Path(path_text)
    if path.suffix.lower() == ".png":
        return load_scene_png(path)
    return decode_scene_text(path.read_text(encoding="ascii"))


def cmd_gen(args) -> int:
    out = Path(args.out)
    for scenario in args.scenario:
        config = GenConfig(
            scenario=scenario, count=args.count, seed=args.seed,
            random_obstacle_fraction=args.fraction,
        )
        generate_dataset(config, out)
    print(out / "manifest.json")
    return 0


def cmd_plan(args) -> int:
    scene = _load_scene(args.scene)
    if args.mask:
        vector = read_mask_file(args.mask)
        gray = vector_to_gray(vector)
        dilated = dilate_3x3(gray)
        mask = binarize(dilated)
        if args.dump_stages:
            stage_dir = Path(args.dump_stages)
            stage_dir.mkdir(parents=True, exist_ok=True)
            save_gray_png(gray, stage_dir / "gray.png")
            save_gray_png(dilated, stage_dir / "dilated.png")
            save_gray_png(mask.astype("uint8") * 255, stage_dir / "binary.png")
        result = masked_plan(scene, mask)
    else:
        result = astar(space_from_scene(scene))
    print(f"found={result.found} path_length={len(result.path)} "
          f"iterations={result.iterations} fallback_used={result.fallback_used}")
    return 0


def cmd_bench(args) -> int:
    report = run_bench(args.dataset, args.predictor, split=args.split)
    text = emit_report(report, args.format)
    out = Path(args.report)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    sum_row = report.rows[-1]
    print(f"report written to {out}")
    print(f"sum: baseline={sum_row.baseline_iterations} pruned={sum_row.pruned_iterations} "
          f"improvement={sum_row.improvement_pct:.2f}% fallbacks={sum_row.fallback_count}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"gen": cmd_gen, "plan": cmd_plan, "bench": cmd_bench}
    try:
        return handlers[args.command](args)
    except (MaskplanError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
