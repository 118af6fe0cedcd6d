"""Procedural scene generator for the five scenario families.

Every scene is reproducible from (seed, scenario, index) alone: the
per-scene RNG stream is seeded with seed XOR (scenario * 2**32) XOR index,
fixed obstacles are placed first, then random obstacles, then start and
goal, and the answer path is the BFS shortest path with the deterministic
up/down/left/right neighbor order. Scenes that come out unsolvable are
regenerated with a retry counter mixed into the seed (XOR retry * 2**48).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from .errors import Unsolvable
from .grid import GRID, CellKind, Coord, Scene, save_scene_png, render_answer, save_gray_png, scene_from_cells
from .planner import SearchSpace, bfs_shortest
from .rng import MASK64, SplitMix64

SCENARIO_IDS = (1, 2, 3, 4, 5)
MAX_RETRIES = 100
MANIFEST_NAME = "manifest.json"
MANIFEST_FORMAT = "maskplan-dataset-v1"

_SIZE = GRID * GRID


@dataclass(frozen=True)
class GenConfig:
    scenario: int
    count: int
    seed: int
    random_obstacle_fraction: float = 0.10

    def __post_init__(self):
        if self.scenario not in SCENARIO_IDS:
            raise ValueError(f"scenario must be in 1..5, got {self.scenario}")
        if self.count < 1:
            raise ValueError(f"count must be positive, got {self.count}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must fit in 64 bits")
        if not 0.0 <= self.random_obstacle_fraction <= 0.25:
            raise ValueError(
                f"random_obstacle_fraction must be in [0, 0.25], got {self.random_obstacle_fraction}"
            )


def _block(r0: int, c0: int, height: int, width: int) -> set:
    return {(r, c) for r in range(r0, r0 + height) for c in range(c0, c0 + width)}


def _ring(margin: int, gap_col: int) -> set:
    lo, hi = margin, GRID - 1 - margin
    cells = set()
    for c in range(lo, hi + 1):
        cells.add((lo, c))
        cells.add((hi, c))
    for r in range(lo, hi + 1):
        cells.add((r, lo))
        cells.add((r, hi))
    # one 4-cell gap, vertically centered on the chosen side
    for r in range(28, 32):
        cells.discard((r, gap_col))
    return cells


def fixed_layout(scenario: int) -> FrozenSet[Coord]:
    """Fixed obstacle set for a scenario family.

    Layouts (rows/cols inclusive):
      1 two full-height walls at cols 20 and 40; col 20 has gaps at rows
        8-11 and 40-43, col 40 at rows 16-19 and 48-51
      2 a 20x20 block at rows/cols 21-40
      3 full-width walls at rows 15/30/45 with alternating 4-cell gaps at
        cols 5-8 (rows 15 and 45) and cols 50-53 (row 30)
      4 four 10x10 blocks at rows/cols 11-20 and 41-50
      5 concentric square rings at margins 8/18/28, each with one 4-cell
        gap at rows 28-31, on the right, left, right side respectively
    """
    if scenario == 1:
        cells = set()
        for col, gaps in ((20, (8, 40)), (40, (16, 48))):
            gap_rows = {r for start in gaps for r in range(start, start + 4)}
            cells |= {(r, col) for r in range(GRID) if r not in gap_rows}
        return frozenset(cells)
    if scenario == 2:
        return frozenset(_block(21, 21, 20, 20))
    if scenario == 3:
        cells = set()
        for row, gap_start in ((15, 5), (30, 50), (45, 5)):
            gap_cols = set(range(gap_start, gap_start + 4))
            cells |= {(row, c) for c in range(GRID) if c not in gap_cols}
        return frozenset(cells)
    if scenario == 4:
        cells = set()
        for r0 in (11, 41):
            for c0 in (11, 41):
                cells |= _block(r0, c0, 10, 10)
        return frozenset(cells)
    if scenario == 5:
        cells = set()
        for margin, side in ((8, "right"), (18, "left"), (28, "right")):
            gap_col = GRID - 1 - margin if side == "right" else margin
            cells |= _ring(margin, gap_col)
        return frozenset(cells)
    raise ValueError(f"scenario must be in 1..5, got {scenario}")


_LAYOUT_IDX = {s: sorted(r * GRID + c for r, c in fixed_layout(s)) for s in SCENARIO_IDS}


def _scene_rng(config: GenConfig, index: int, retry: int) -> SplitMix64:
    base = (config.seed ^ ((config.scenario << 32) & MASK64) ^ index) & MASK64
    return SplitMix64(base ^ ((retry << 48) & MASK64))


def generate_scene(config: GenConfig, index: int) -> Tuple[Scene, List[Coord]]:
    """One reproducible scene plus its shortest-path answer."""
    if not 0 <= index < config.count:
        raise ValueError(f"index {index} outside [0, {config.count})")
    layout = _LAYOUT_IDX[config.scenario]
    n_random = int(config.random_obstacle_fraction * _SIZE)
    for retry in range(MAX_RETRIES):
        rng = _scene_rng(config, index, retry)
        free = bytearray(b"\x01" * _SIZE)
        for i in layout:
            free[i] = 0
        placed = 0
        while placed < n_random:
            i = rng.next_below(_SIZE)
            if free[i]:
                free[i] = 0
                placed += 1
        while True:
            start = rng.next_below(_SIZE)
            if free[start]:
                break
        while True:
            goal = rng.next_below(_SIZE)
            if free[goal] and goal != start:
                break
        free_grid = np.frombuffer(bytes(free), dtype=np.uint8).reshape(GRID, GRID)
        cells = np.where(free_grid, np.uint8(CellKind.FREE), np.uint8(CellKind.OBSTACLE))
        start_rc = (start // GRID, start % GRID)
        goal_rc = (goal // GRID, goal % GRID)
        cells[start_rc] = CellKind.START
        cells[goal_rc] = CellKind.GOAL
        scene = scene_from_cells(cells)
        traversable = cells != CellKind.OBSTACLE
        result = bfs_shortest(SearchSpace(traversable, start_rc, goal_rc))
        if result.found:
            return scene, list(result.path)
    raise Unsolvable(config.scenario, index)


def scene_filename(index: int) -> str:
    return f"scene_{index:05d}.png"


def answer_filename(index: int) -> str:
    return f"answer_{index:05d}.png"


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir, manifest: Dict) -> Path:
    path = Path(out_dir) / MANIFEST_NAME
    path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="ascii")
    return path


def read_manifest(out_dir) -> Dict:
    path = Path(out_dir) / MANIFEST_NAME
    return json.loads(path.read_text(encoding="ascii"))


def generate_dataset(config: GenConfig, out_dir) -> Dict:
    """Write scene/answer PNGs for one scenario and update the manifest.

    Repeated calls with other scenarios merge into the same manifest, so a
    multi-scenario dataset directory carries a single manifest recording
    the shared (seed, count, fraction) and a checksum per file.
    """
    out_dir = Path(out_dir)
    scenario_dir = out_dir / f"scenario_{config.scenario}"
    scenario_dir.mkdir(parents=True, exist_ok=True)

    manifest_path = out_dir / MANIFEST_NAME
    if manifest_path.exists():
        manifest = read_manifest(out_dir)
        same = (
            manifest.get("seed") == config.seed
            and manifest.get("count") == config.count
            and manifest.get("fraction") == config.random_obstacle_fraction
        )
        if not same:
            raise ValueError(f"manifest at {manifest_path} was written with a different config")
    else:
        manifest = {
            "format": MANIFEST_FORMAT,
            "seed": config.seed,
            "count": config.count,
            "fraction": config.random_obstacle_fraction,
            "scenarios": [],
            "files": {},
        }

    for index in range(config.count):
        scene, answer = generate_scene(config, index)
        scene_path = scenario_dir / scene_filename(index)
        answer_path = scenario_dir / answer_filename(index)
        save_scene_png(scene, scene_path)
        save_gray_png(render_answer(answer), answer_path)
        rel_scene = f"{scenario_dir.name}/{scene_path.name}"
        rel_answer = f"{scenario_dir.name}/{answer_path.name}"
        manifest["files"][rel_scene] = sha256_file(scene_path)
        manifest["files"][rel_answer] = sha256_file(answer_path)

    manifest["scenarios"] = sorted(set(manifest["scenarios"]) | {config.scenario})
    write_manifest(out_dir, manifest)
    return manifest
