"""Dataset access for generated scene/answer directories.

The trainer talks to the core toolkit exclusively through its file
formats: scene PNGs (RGB, four canonical colors), answer PNGs (grayscale,
path pixels at 255), and the manifest.json that records counts, seed and
per-file sha256 checksums. Nothing here imports the core package.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from PIL import Image

from .errors import ChecksumMismatch, DatasetMissing

GRID = 60
TARGET_LEN = GRID * GRID
SPLIT_FRACTION = 0.8


def load_manifest(dataset_dir) -> dict:
    path = Path(dataset_dir) / "manifest.json"
    if not path.exists():
        raise DatasetMissing(f"dataset manifest not found: {path}")
    return json.loads(path.read_text())


def train_test_boundary(count: int) -> int:
    """First test index of the fixed 80/20 split (8000 for count=10000)."""
    return count * 4 // 5


def split_indices(count: int, split: str) -> range:
    if split == "all":
        return range(count)
    if split == "train":
        return range(train_test_boundary(count))
    if split == "test":
        return range(train_test_boundary(count), count)
    raise ValueError(f"split must be all, train or test, got {split!r}")


def scene_path(dataset_dir, scenario: int, index: int) -> Path:
    return Path(dataset_dir) / f"scenario_{scenario}" / f"scene_{index:05d}.png"


def answer_path(dataset_dir, scenario: int, index: int) -> Path:
    return Path(dataset_dir) / f"scenario_{scenario}" / f"answer_{index:05d}.png"


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def verify_files(dataset_dir, manifest: dict, paths: Iterable[Path]) -> None:
    dataset_dir = Path(dataset_dir)
    recorded = manifest.get("files", {})
    for path in paths:
        rel = str(path.relative_to(dataset_dir))
        if rel not in recorded or not path.exists():
            raise DatasetMissing(f"dataset file missing: {path}")
        if _sha256(path) != recorded[rel]:
            raise ChecksumMismatch(f"checksum mismatch: {path}")


def scene_tensor(path) -> np.ndarray:
    """Scene image as (3, 60, 60) float32 scaled to [0, 1]."""
    with Image.open(path) as img:
        rgb = np.asarray(img.convert("RGB"), dtype=np.float32)
    if rgb.shape != (GRID, GRID, 3):
        raise DatasetMissing(f"scene image {path} is {rgb.shape}, expected ({GRID}, {GRID}, 3)")
    return (rgb / 255.0).transpose(2, 0, 1)


def make_target(path_cells: Sequence[Tuple[int, int]]) -> np.ndarray:
    """Training target: +1 on path cells, -1 elsewhere, row-major."""
    target = np.full(TARGET_LEN, -1.0, dtype=np.float32)
    for r, c in path_cells:
        target[GRID * r + c] = 1.0
    return target


def target_from_answer(path) -> np.ndarray:
    """Target vector from an answer image (path pixels at 255)."""
    with Image.open(path) as img:
        gray = np.asarray(img.convert("L"))
    if gray.shape != (GRID, GRID):
        raise DatasetMissing(f"answer image {path} is {gray.shape}, expected ({GRID}, {GRID})")
    return np.where(gray == 255, 1.0, -1.0).astype(np.float32).reshape(-1)


def load_split(dataset_dir, scenarios: Sequence[int], split: str, verify: bool = True):
    """Stacked (inputs, targets) arrays for a split across scenarios.

    Scenes are ordered by (scenario, index); membership in a split depends
    only on the scene index, never on any RNG.
    """
    manifest = load_manifest(dataset_dir)
    count = manifest["count"]
    known = set(manifest["scenarios"])
    for scenario in scenarios:
        if scenario not in known:
            raise DatasetMissing(f"scenario {scenario} not in dataset {dataset_dir}")
    indices = list(split_indices(count, split))
    scene_files: List[Path] = []
    answer_files: List[Path] = []
    for scenario in scenarios:
        for index in indices:
            scene_files.append(scene_path(dataset_dir, scenario, index))
            answer_files.append(answer_path(dataset_dir, scenario, index))
    if verify:
        verify_files(dataset_dir, manifest, scene_files + answer_files)
    inputs = np.stack([scene_tensor(p) for p in scene_files]) if scene_files else np.zeros((0, 3, GRID, GRID), np.float32)
    targets = np.stack([target_from_answer(p) for p in answer_files]) if answer_files else np.zeros((0, TARGET_LEN), np.float32)
    return inputs, targets
