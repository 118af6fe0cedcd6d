"""Scene and mask data model plus the file codecs shared by every module.

The world is a fixed 60x60 grid. Scenes are stored on disk as 8-bit RGB
PNGs with a canonical four-color map, answers as 8-bit grayscale PNGs
with path pixels at 255, and there is a human-writable text format for
hand-built test fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from PIL import Image

from .errors import MissingOrDuplicateMarker, NonCanonicalColor, ParseError

GRID = 60

Coord = Tuple[int, int]


class CellKind(IntEnum):
    FREE = 0
    OBSTACLE = 1
    START = 2
    GOAL = 3


# Canonical color map. Start/goal colors follow the yellow/gray markers of
# the source imagery; free=white and obstacle=black are fixed here so that
# datasets are bit-exact across implementations.
COLOR_OF = {
    CellKind.FREE: (255, 255, 255),
    CellKind.OBSTACLE: (0, 0, 0),
    CellKind.START: (255, 255, 0),
    CellKind.GOAL: (128, 128, 128),
}

CHAR_OF = {
    CellKind.FREE: ".",
    CellKind.OBSTACLE: "#",
    CellKind.START: "S",
    CellKind.GOAL: "G",
}
KIND_OF_CHAR = {c: k for k, c in CHAR_OF.items()}

_PALETTE = np.zeros((4, 3), dtype=np.uint8)
for _kind, _rgb in COLOR_OF.items():
    _PALETTE[_kind] = _rgb

# RGB triple packed into one int for fast reverse lookup.
_KIND_OF_KEY = {(r << 16) | (g << 8) | b: k for k, (r, g, b) in COLOR_OF.items()}


@dataclass(frozen=True)
class Scene:
    """60x60 grid of cell kinds with exactly one start and one goal."""

    cells: np.ndarray  # (60, 60) uint8 of CellKind values
    start: Coord
    goal: Coord


@dataclass(frozen=True)
class SearchSpace:
    """Boolean traversability grid with endpoints; input to the planners."""

    traversable: np.ndarray  # (60, 60) bool
    start: Coord
    goal: Coord


def scene_from_cells(cells: np.ndarray) -> Scene:
    """Build a Scene from a kind grid, validating the marker invariants."""
    cells = np.ascontiguousarray(cells, dtype=np.uint8)
    if cells.shape != (GRID, GRID):
        raise ValueError(f"scene grid must be {GRID}x{GRID}, got {cells.shape}")
    starts = np.argwhere(cells == CellKind.START)
    goals = np.argwhere(cells == CellKind.GOAL)
    if len(starts) != 1:
        raise MissingOrDuplicateMarker("start", len(starts))
    if len(goals) != 1:
        raise MissingOrDuplicateMarker("goal", len(goals))
    cells.setflags(write=False)
    start = (int(starts[0][0]), int(starts[0][1]))
    goal = (int(goals[0][0]), int(goals[0][1]))
    return Scene(cells=cells, start=start, goal=goal)


def encode_scene_rgb(scene: Scene) -> np.ndarray:
    """Render a scene to its canonical (60, 60, 3) uint8 RGB image."""
    return _PALETTE[scene.cells]


def decode_scene_rgb(image: np.ndarray) -> Scene:
    """Inverse of encode_scene_rgb; rejects malformed dataset images."""
    image = np.asarray(image)
    if image.shape != (GRID, GRID, 3):
        raise ValueError(f"scene image must be {GRID}x{GRID} RGB, got {image.shape}")
    image = image.astype(np.uint32)
    keys = (image[:, :, 0] << 16) | (image[:, :, 1] << 8) | image[:, :, 2]
    cells = np.full((GRID, GRID), 255, dtype=np.uint8)
    for key, kind in _KIND_OF_KEY.items():
        cells[keys == key] = kind
    bad = np.argwhere(cells == 255)
    if len(bad):
        r, c = bad[0]
        raise NonCanonicalColor((int(r), int(c)), image[r, c])
    return scene_from_cells(cells)


def save_scene_png(scene: Scene, path) -> None:
    Image.fromarray(encode_scene_rgb(scene), mode="RGB").save(path, format="PNG")


def load_scene_png(path) -> Scene:
    with Image.open(path) as img:
        if img.mode != "RGB":
            img = img.convert("RGB")
        return decode_scene_rgb(np.asarray(img))


def encode_scene_text(scene: Scene) -> str:
    """Text fixture format: header line, then 60 rows of . # S G."""
    lines = [f"SCENE1 {GRID} {GRID}"]
    for row in scene.cells:
        lines.append("".join(CHAR_OF[CellKind(k)] for k in row))
    return "\n".join(lines) + "\n"


def decode_scene_text(text: str) -> Scene:
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, 1, "empty input")
    header = lines[0].split()
    if header != ["SCENE1", str(GRID), str(GRID)]:
        raise ParseError(1, 1, f"expected header 'SCENE1 {GRID} {GRID}', got {lines[0]!r}")
    body = lines[1:]
    if len(body) != GRID:
        raise ParseError(len(lines) + 1, 1, f"expected {GRID} grid rows, got {len(body)}")
    cells = np.zeros((GRID, GRID), dtype=np.uint8)
    for r, line in enumerate(body):
        if len(line) != GRID:
            raise ParseError(r + 2, len(line) + 1, f"expected {GRID} columns, got {len(line)}")
        for c, ch in enumerate(line):
            kind = KIND_OF_CHAR.get(ch)
            if kind is None:
                raise ParseError(r + 2, c + 1, f"unknown cell character {ch!r}")
            cells[r, c] = kind
    return scene_from_cells(cells)


def validate_answer_path(scene: Scene, path: Sequence[Coord]) -> None:
    """Raise ValueError unless path is a valid start-to-goal answer."""
    if not path:
        raise ValueError("empty path")
    if tuple(path[0]) != tuple(scene.start):
        raise ValueError(f"path starts at {path[0]}, scene start is {scene.start}")
    if tuple(path[-1]) != tuple(scene.goal):
        raise ValueError(f"path ends at {path[-1]}, scene goal is {scene.goal}")
    seen = set()
    prev = None
    for r, c in path:
        if not (0 <= r < GRID and 0 <= c < GRID):
            raise ValueError(f"cell ({r}, {c}) outside grid")
        if scene.cells[r, c] == CellKind.OBSTACLE:
            raise ValueError(f"path crosses obstacle at ({r}, {c})")
        if (r, c) in seen:
            raise ValueError(f"repeated cell ({r}, {c})")
        seen.add((r, c))
        if prev is not None and abs(r - prev[0]) + abs(c - prev[1]) != 1:
            raise ValueError(f"{prev} -> ({r}, {c}) is not a 4-neighbor step")
        prev = (r, c)


def render_answer(path: Iterable[Coord]) -> np.ndarray:
    """Binary target image: path cells 255, everything else 0."""
    img = np.zeros((GRID, GRID), dtype=np.uint8)
    for r, c in path:
        if not (0 <= r < GRID and 0 <= c < GRID):
            raise ValueError(f"cell ({r}, {c}) outside grid")
        img[r, c] = 255
    return img


def answer_cells(image: np.ndarray) -> List[Coord]:
    """Cells marked as path (pixel 255) in an answer image, row-major."""
    image = np.asarray(image)
    if image.shape != (GRID, GRID):
        raise ValueError(f"answer image must be {GRID}x{GRID}, got {image.shape}")
    return [(int(r), int(c)) for r, c in np.argwhere(image == 255)]


def save_gray_png(image: np.ndarray, path) -> None:
    Image.fromarray(np.asarray(image, dtype=np.uint8), mode="L").save(path, format="PNG")


def load_gray_png(path) -> np.ndarray:
    with Image.open(path) as img:
        if img.mode != "L":
            img = img.convert("L")
        return np.asarray(img)
