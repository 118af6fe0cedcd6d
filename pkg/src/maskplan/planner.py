"""Iteration-instrumented A* and BFS over 60x60 search spaces.

Iteration counts are the benchmark currency, so the search is pinned down
to the last tie-break:

* A* uses the Manhattan heuristic on the 4-connected unit-cost grid
  (admissible and consistent, so the first expansion of a node is final
  and returned paths are shortest).
* One iteration = one node expansion, i.e. removing the best entry from
  the open list and generating its neighbors. Stale heap entries (nodes
  already expanded via a better route) are discarded without counting,
  which makes the count independent of duplicate-push bookkeeping.
* Open-list ties are broken by larger g first, then smaller row, then
  smaller column.
* BFS visits neighbors in the fixed order up, down, left, right; its
  iteration count is the number of dequeued nodes.

The hot loops run on flat Python lists and byte strings rather than numpy
because per-cell indexing dominates and is several times faster this way.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import List, Tuple

import numpy as np

from .grid import GRID, CellKind, Coord, Scene, SearchSpace

_SIZE = GRID * GRID
_ROW = [i // GRID for i in range(_SIZE)]
_COL = [i % GRID for i in range(_SIZE)]


def _neighbor_table() -> list:
    table = []
    for i in range(_SIZE):
        r, c = divmod(i, GRID)
        nbrs = []
        if r > 0:
            nbrs.append(i - GRID)
        if r < GRID - 1:
            nbrs.append(i + GRID)
        if c > 0:
            nbrs.append(i - 1)
        if c < GRID - 1:
            nbrs.append(i + 1)
        table.append(tuple(nbrs))
    return table


_NBR = _neighbor_table()


@dataclass(frozen=True)
class PlanResult:
    found: bool
    path: Tuple[Coord, ...]
    iterations: int
    fallback_used: bool = False


def space_from_scene(scene: Scene) -> SearchSpace:
    """Traversable = every non-obstacle cell; endpoints copied over."""
    traversable = scene.cells != CellKind.OBSTACLE
    return SearchSpace(traversable=traversable, start=scene.start, goal=scene.goal)


def masked_space(scene: Scene, mask: np.ndarray) -> SearchSpace:
    """Intersect the scene's free cells with an allowed-mask.

    Obstacles always stay blocked; start and goal are always admitted so a
    predictor can never mask away the endpoints.
    """
    allowed = np.asarray(mask, dtype=bool).copy()
    allowed[scene.start] = True
    allowed[scene.goal] = True
    traversable = (scene.cells != CellKind.OBSTACLE) & allowed
    return SearchSpace(traversable=traversable, start=scene.start, goal=scene.goal)


def _flatten(space: SearchSpace) -> Tuple[bytes, int, int]:
    trav = np.ascontiguousarray(space.traversable, dtype=bool)
    if trav.shape != (GRID, GRID):
        raise ValueError(f"traversable grid must be {GRID}x{GRID}, got {trav.shape}")
    start = space.start[0] * GRID + space.start[1]
    goal = space.goal[0] * GRID + space.goal[1]
    flat = trav.ravel().tobytes()
    if not flat[start] or not flat[goal]:
        raise ValueError("start and goal must be traversable")
    return flat, start, goal


def _unflatten_path(parent: List[int], idx: int) -> Tuple[Coord, ...]:
    rev = []
    while idx >= 0:
        rev.append((_ROW[idx], _COL[idx]))
        idx = parent[idx]
    rev.reverse()
    return tuple(rev)


def astar(space: SearchSpace) -> PlanResult:
    """Shortest path via A*; counts expansions until the goal is popped."""
    trav, start, goal = _flatten(space)
    nbr, row, col = _NBR, _ROW, _COL
    gr, gc = row[goal], col[goal]
    g = [1 << 30] * _SIZE
    parent = [-1] * _SIZE
    closed = bytearray(_SIZE)
    g[start] = 0
    heap = [(abs(row[start] - gr) + abs(col[start] - gc), 0, start)]
    iterations = 0
    while heap:
        _, neg_g, idx = heappop(heap)
        if closed[idx]:
            continue
        closed[idx] = 1
        iterations += 1
        if idx == goal:
            return PlanResult(True, _unflatten_path(parent, idx), iterations)
        ng = 1 - neg_g
        for nb in nbr[idx]:
            if trav[nb] and not closed[nb] and ng < g[nb]:
                g[nb] = ng
                parent[nb] = idx
                heappush(heap, (ng + abs(row[nb] - gr) + abs(col[nb] - gc), -ng, nb))
    return PlanResult(False, (), iterations)


def bfs_shortest(space: SearchSpace) -> PlanResult:
    """Exact shortest path oracle; counts dequeued nodes."""
    trav, start, goal = _flatten(space)
    nbr = _NBR
    parent = [-1] * _SIZE
    seen = bytearray(_SIZE)
    seen[start] = 1
    queue = deque((start,))
    pop = queue.popleft
    push = queue.append
    iterations = 0
    while queue:
        idx = pop()
        iterations += 1
        if idx == goal:
            return PlanResult(True, _unflatten_path(parent, idx), iterations)
        for nb in nbr[idx]:
            if trav[nb] and not seen[nb]:
                seen[nb] = 1
                parent[nb] = idx
                push(nb)
    return PlanResult(False, (), iterations)


def masked_plan(scene: Scene, mask: np.ndarray) -> PlanResult:
    """Plan inside the mask; fall back to the full scene if the mask fails.

    The fallback reruns A* on the unmasked scene and charges both phases'
    expansions, so a mask that severs start from goal is penalized
    honestly. If even the unmasked scene is unsolvable, the combined
    iteration cost is still reported but fallback_used stays False.
    """
    masked = astar(masked_space(scene, mask))
    if masked.found:
        return masked
    full = astar(space_from_scene(scene))
    iterations = masked.iterations + full.iterations
    if full.found:
        return PlanResult(True, full.path, iterations, fallback_used=True)
    return PlanResult(False, (), iterations)
