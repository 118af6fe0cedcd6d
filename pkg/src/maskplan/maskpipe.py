"""Mask post-processing: raw prediction vector to pruned search space.

The pipeline stages run in a fixed order — reshape the 3600-value vector
to a grayscale image, dilate with a 3x3 max filter, binarize at threshold
50, then overlap with the scene — and each stage is exposed on its own so
they can be tested and dumped independently.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import MalformedMaskFile, MissingMaskFile, OutOfRange
from .grid import GRID, Coord, Scene
from .planner import SearchSpace, masked_space

VECTOR_LEN = GRID * GRID
MASK_HEADER = f"MASKV1 {GRID} {GRID}"
DEFAULT_THRESHOLD = 50


def _validate_vector(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.shape != (VECTOR_LEN,):
        raise ValueError(f"mask vector must have {VECTOR_LEN} values, got {v.shape}")
    bad = np.nonzero(~((v >= -1.0) & (v <= 1.0)))[0]
    if len(bad):
        i = int(bad[0])
        raise OutOfRange(i, float(v[i]) if np.isfinite(v[i]) else v[i])
    return v


def vector_to_gray(values) -> np.ndarray:
    """Affine map [-1, 1] -> [0, 255], rounding .5 away from zero."""
    v = _validate_vector(values)
    # all mapped values are >= 0, so floor(x + 0.5) rounds away from zero
    gray = np.floor((v + 1.0) * 127.5 + 0.5).astype(np.uint8)
    return gray.reshape(GRID, GRID)


def dilate_3x3(image: np.ndarray) -> np.ndarray:
    """Grayscale dilation: per-pixel max over the 3x3 neighborhood.

    Neighborhoods are clipped at the borders (outside pixels do not
    contribute).
    """
    img = np.asarray(image, dtype=np.uint8)
    if img.shape != (GRID, GRID):
        raise ValueError(f"image must be {GRID}x{GRID}, got {img.shape}")
    padded = np.zeros((GRID + 2, GRID + 2), dtype=np.uint8)
    padded[1:-1, 1:-1] = img
    out = img.copy()
    for dr in range(3):
        for dc in range(3):
            np.maximum(out, padded[dr:dr + GRID, dc:dc + GRID], out=out)
    return out


def binarize(image: np.ndarray, threshold: int = DEFAULT_THRESHOLD) -> np.ndarray:
    """Boolean allowed-mask: pixels strictly greater than the threshold."""
    img = np.asarray(image, dtype=np.uint8)
    if img.shape != (GRID, GRID):
        raise ValueError(f"image must be {GRID}x{GRID}, got {img.shape}")
    return img > threshold


def overlap(scene: Scene, mask: np.ndarray) -> SearchSpace:
    """Prune the scene's free cells to the mask; endpoints always pass."""
    return masked_space(scene, mask)


def mask_from_vector(values) -> np.ndarray:
    """Full pipeline for a raw vector: gray -> dilate -> binarize."""
    return binarize(dilate_3x3(vector_to_gray(values)))


def _binary_dilate(mask: np.ndarray, times: int) -> np.ndarray:
    out = mask.astype(np.uint8) * 255
    for _ in range(times):
        out = dilate_3x3(out)
    return out > 0


class AllPassPredictor:
    """Baseline predictor: allow every cell (planning degenerates to plain A*)."""

    def predict(self, scene: Scene, answer=None, index: int = 0) -> np.ndarray:
        return np.ones((GRID, GRID), dtype=bool)


class OraclePredictor:
    """Ideal predictor: the true answer cells, dilated a fixed number of times."""

    def __init__(self, dilation_radius: int = 0):
        if dilation_radius < 0:
            raise ValueError("dilation radius must be >= 0")
        self.dilation_radius = dilation_radius

    def predict(self, scene: Scene, answer: Iterable[Coord] = None, index: int = 0) -> np.ndarray:
        if answer is None:
            raise ValueError("oracle predictor requires the answer path")
        mask = np.zeros((GRID, GRID), dtype=bool)
        for r, c in answer:
            mask[r, c] = True
        return _binary_dilate(mask, self.dilation_radius)


class FilePredictor:
    """Learned predictor: per-scene MASKV1 vectors pushed through the pipeline."""

    def __init__(self, directory):
        self.directory = Path(directory)

    def mask_path(self, index: int) -> Path:
        return self.directory / f"mask_{index:05d}.txt"

    def predict(self, scene: Scene, answer=None, index: int = 0) -> np.ndarray:
        path = self.mask_path(index)
        if not path.exists():
            raise MissingMaskFile(index, str(path))
        return mask_from_vector(read_mask_file(path))


def parse_predictor(spec: str):
    """CLI predictor syntax: allpass | oracle[:radius] | files:DIR."""
    if spec == "allpass":
        return AllPassPredictor()
    if spec == "oracle":
        return OraclePredictor(0)
    if spec.startswith("oracle:"):
        try:
            radius = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad oracle radius in {spec!r}") from None
        return OraclePredictor(radius)
    if spec.startswith("files:"):
        directory = spec.split(":", 1)[1]
        if not directory:
            raise ValueError("files: predictor needs a directory")
        return FilePredictor(directory)
    raise ValueError(f"unknown predictor {spec!r}")


def write_mask_file(values, path) -> None:
    """MASKV1 text format: header, then 3600 reals at 9 significant digits."""
    v = _validate_vector(values)
    rows = v.reshape(GRID, GRID)
    lines = [MASK_HEADER]
    for row in rows:
        lines.append(" ".join(f"{x:.9g}" for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_mask_file(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except OSError as exc:
        raise MalformedMaskFile(str(path), f"unreadable: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise MalformedMaskFile(str(path), "not ASCII text") from exc
    lines = text.splitlines()
    if not lines:
        raise MalformedMaskFile(str(path), "empty file")
    if lines[0].split() != MASK_HEADER.split():
        raise MalformedMaskFile(str(path), f"bad header {lines[0]!r}, expected {MASK_HEADER!r}")
    tokens = "\n".join(lines[1:]).split()
    if len(tokens) != VECTOR_LEN:
        raise MalformedMaskFile(str(path), f"expected {VECTOR_LEN} values, found {len(tokens)}")
    values = np.empty(VECTOR_LEN, dtype=np.float64)
    for i, tok in enumerate(tokens):
        try:
            values[i] = float(tok)
        except ValueError:
            raise MalformedMaskFile(str(path), f"bad value {tok!r} at position {i}") from None
    if np.any(~((values >= -1.0) & (values <= 1.0))):
        i = int(np.nonzero(~((values >= -1.0) & (values <= 1.0)))[0][0])
        raise MalformedMaskFile(str(path), f"value {values[i]!r} at position {i} outside [-1, 1]")
    return values
