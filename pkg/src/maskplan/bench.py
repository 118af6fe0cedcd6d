"""Benchmark harness: plain A* vs mask-pruned A* over a generated dataset.

For every selected scene the harness runs plain A*, builds the predictor's
mask, runs the masked planner, and aggregates per-scenario totals plus a
Sum row. Reports carry raw iteration totals, the difference, the
improvement percentage, the fallback count, and the mean pruned/baseline
path-length ratio (pruning is not forced to preserve optimality, so the
ratio makes any degradation visible).

Scenes may be evaluated in parallel (MASKPLAN_THREADS); results are keyed
by (scenario, index) and reduced in sorted order, so reports are
byte-identical regardless of worker count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, List, Tuple

from . import __version__
from .errors import ChecksumMismatch, DatasetMissing
from .grid import answer_cells, load_gray_png, load_scene_png
from .maskpipe import OraclePredictor, parse_predictor
from .planner import astar, masked_plan, space_from_scene
from .scenegen import MANIFEST_NAME, answer_filename, read_manifest, scene_filename, sha256_file

SPLITS = ("all", "train", "test")


@dataclass(frozen=True)
class BenchRow:
    scenario: str  # "1".."5" or "sum"
    baseline_iterations: int
    pruned_iterations: int
    fallback_count: int
    ratio_sum: float
    solved_count: int

    @property
    def difference(self) -> int:
        return self.baseline_iterations - self.pruned_iterations

    @property
    def improvement_pct(self) -> float:
        if self.baseline_iterations == 0:
            return 0.0
        return 100.0 * self.difference / self.baseline_iterations

    @property
    def mean_path_ratio(self) -> float:
        if self.solved_count == 0:
            return 0.0
        return self.ratio_sum / self.solved_count


@dataclass(frozen=True)
class BenchReport:
    rows: List[BenchRow]  # one per scenario, then the sum row
    config: Dict


def train_test_boundary(count: int) -> int:
    """First test index under the fixed 80/20 split (8000 for count=10000)."""
    return count * 4 // 5


def split_indices(count: int, split: str) -> range:
    if split == "all":
        return range(count)
    if split == "train":
        return range(train_test_boundary(count))
    if split == "test":
        return range(train_test_boundary(count), count)
    raise ValueError(f"split must be one of {SPLITS}, got {split!r}")


def _load_verified_manifest(dataset_dir: Path) -> Dict:
    manifest_path = dataset_dir / MANIFEST_NAME
    if not manifest_path.exists():
        raise DatasetMissing(str(manifest_path))
    return read_manifest(dataset_dir)


def _verify_checksums(dataset_dir: Path, manifest: Dict, rel_paths) -> None:
    files = manifest.get("files", {})
    for rel in rel_paths:
        path = dataset_dir / rel
        if rel not in files or not path.exists():
            raise DatasetMissing(str(path))
        if sha256_file(path) != files[rel]:
            raise ChecksumMismatch(str(path))


def _eval_scene(task) -> Tuple[int, int, int, int, bool, int, int]:
    dataset_dir, scenario, index, predictor_spec = task
    scenario_dir = Path(dataset_dir) / f"scenario_{scenario}"
    scene = load_scene_png(scenario_dir / scene_filename(index))
    predictor = parse_predictor(predictor_spec)
    answer = None
    if isinstance(predictor, OraclePredictor):
        answer = answer_cells(load_gray_png(scenario_dir / answer_filename(index)))
    baseline = astar(space_from_scene(scene))
    mask = predictor.predict(scene, answer=answer, index=index)
    pruned = masked_plan(scene, mask)
    return (
        scenario,
        index,
        baseline.iterations,
        pruned.iterations,
        pruned.fallback_used,
        len(baseline.path),
        len(pruned.path),
    )


def _thread_count() -> int:
    raw = os.environ.get("MASKPLAN_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_bench(dataset_dir, predictor_spec: str, split: str = "all") -> BenchReport:
    dataset_dir = Path(dataset_dir)
    manifest = _load_verified_manifest(dataset_dir)
    parse_predictor(predictor_spec)  # validate the spec string up front
    count = manifest["count"]
    scenarios = manifest["scenarios"]
    indices = list(split_indices(count, split))

    rels = []
    for scenario in scenarios:
        for index in indices:
            rels.append(f"scenario_{scenario}/{scene_filename(index)}")
            rels.append(f"scenario_{scenario}/{answer_filename(index)}")
    _verify_checksums(dataset_dir, manifest, rels)

    tasks = [(str(dataset_dir), s, i, predictor_spec) for s in scenarios for i in indices]
    workers = _thread_count()
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (workers * 4))
        with Pool(workers) as pool:
            results = pool.map(_eval_scene, tasks, chunksize=chunk)
    else:
        results = [_eval_scene(t) for t in tasks]
    results.sort(key=lambda r: (r[0], r[1]))

    rows = []
    total = dict(b=0, p=0, fb=0, rsum=0.0, solved=0)
    for scenario in scenarios:
        b = p = fb = solved = 0
        rsum = 0.0
        for (s, i, bit, pit, fell, blen, plen) in results:
            if s != scenario:
                continue
            b += bit
            p += pit
            fb += int(fell)
            if blen > 0:
                rsum += plen / blen
                solved += 1
        rows.append(BenchRow(str(scenario), b, p, fb, rsum, solved))
        total["b"] += b
        total["p"] += p
        total["fb"] += fb
        total["rsum"] += rsum
        total["solved"] += solved
    rows.append(
        BenchRow("sum", total["b"], total["p"], total["fb"], total["rsum"], total["solved"])
    )

    config = {
        "dataset": str(dataset_dir),
        "predictor": predictor_spec,
        "split": split,
        "scene_count_per_scenario": len(indices),
        "seed": manifest["seed"],
        "fraction": manifest["fraction"],
        "version": __version__,
    }
    return BenchReport(rows=rows, config=config)


CSV_HEADER = "scenario,baseline_iters,pruned_iters,difference,improvement_pct,fallbacks,mean_path_ratio"


def emit_csv(report: BenchReport) -> str:
    lines = [CSV_HEADER]
    for row in report.rows:
        lines.append(
            f"{row.scenario},{row.baseline_iterations},{row.pruned_iterations},"
            f"{row.difference},{row.improvement_pct:.2f},{row.fallback_count},"
            f"{row.mean_path_ratio:.4f}"
        )
    return "\n".join(lines) + "\n"


def emit_markdown(report: BenchReport) -> str:
    cfg = report.config
    head = [
        "# Benchmark report",
        "",
        f"- dataset: `{cfg['dataset']}` (seed {cfg['seed']}, fraction {cfg['fraction']})",
        f"- predictor: `{cfg['predictor']}`, split: {cfg['split']},"
        f" scenes per scenario: {cfg['scene_count_per_scenario']}",
        f"- toolkit version: {cfg['version']}",
        "",
    ]
    labels = [f"Scenario {r.scenario}" for r in report.rows[:-1]] + ["Sum"]
    sep = ["---"] * (len(labels) + 1)
    table = [
        "| | " + " | ".join(labels) + " |",
        "| " + " | ".join(sep) + " |",
    ]

    def line(name, cells):
        table.append("| " + name + " | " + " | ".join(cells) + " |")

    rows = report.rows
    line("Baseline A* iterations", [str(r.baseline_iterations) for r in rows])
    line("Pruned A* iterations", [str(r.pruned_iterations) for r in rows])
    line("Difference", [str(r.difference) for r in rows])
    line("Difference (%)", [f"{100.0 - r.improvement_pct:.2f}%" if r.baseline_iterations else "0.00%" for r in rows])
    line("Improvement (%)", [f"{r.improvement_pct:.2f}%" for r in rows])
    line("Fallbacks", [str(r.fallback_count) for r in rows])
    line("Mean path ratio", [f"{r.mean_path_ratio:.4f}" for r in rows])
    return "\n".join(head + table) + "\n"


def emit_report(report: BenchReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "md":
        return emit_markdown(report)
    raise ValueError(f"format must be csv or md, got {fmt!r}")
