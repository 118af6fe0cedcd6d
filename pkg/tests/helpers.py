"""Independent oracles and small builders used across the test modules.

These deliberately do not share code with the package internals: the BFS
oracle is dictionary-based and the dilation oracle loops per pixel, so an
indexing bug in the hot-path implementations cannot hide here.
"""

from collections import deque

import numpy as np

from maskplan.grid import GRID, CellKind, scene_from_cells


def oracle_distance(traversable, start, goal):
    """Plain BFS distance on a (60, 60) boolean grid; None if unreachable."""
    dist = {tuple(start): 0}
    queue = deque([tuple(start)])
    goal = tuple(goal)
    while queue:
        r, c = queue.popleft()
        if (r, c) == goal:
            return dist[(r, c)]
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= rr < GRID and 0 <= cc < GRID and traversable[rr][cc] and (rr, cc) not in dist:
                dist[(rr, cc)] = dist[(r, c)] + 1
                queue.append((rr, cc))
    return None


def brute_force_dilate(image):
    """Per-pixel 3x3 neighborhood max with explicit border clipping."""
    out = np.zeros_like(image)
    for r in range(GRID):
        for c in range(GRID):
            best = 0
            for rr in range(max(0, r - 1), min(GRID, r + 2)):
                for cc in range(max(0, c - 1), min(GRID, c + 2)):
                    if image[rr][cc] > best:
                        best = image[rr][cc]
            out[r][c] = best
    return out


def reference_astar(traversable, start, goal):
    """Spec-exact A* with a linear-scan open set and true decrease-key.

    Deliberately heap-free: the best node is picked by scanning for the
    minimum (f, -g, row, col) key, so tie-breaking is explicit and the
    expansion count cannot be skewed by duplicate heap entries.
    """
    start, goal = tuple(start), tuple(goal)

    def h(cell):
        return abs(cell[0] - goal[0]) + abs(cell[1] - goal[1])

    g = {start: 0}
    open_set = {start}
    closed = set()
    parent = {}
    iterations = 0
    while open_set:
        best = min(open_set, key=lambda cell: (g[cell] + h(cell), -g[cell], cell))
        open_set.remove(best)
        closed.add(best)
        iterations += 1
        if best == goal:
            path = [best]
            while path[-1] != start:
                path.append(parent[path[-1]])
            return list(reversed(path)), iterations
        r, c = best
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if not (0 <= nb[0] < GRID and 0 <= nb[1] < GRID):
                continue
            if not traversable[nb[0]][nb[1]] or nb in closed:
                continue
            ng = g[best] + 1
            if ng < g.get(nb, 1 << 30):
                g[nb] = ng
                parent[nb] = best
                open_set.add(nb)
    return None, iterations


def reference_bfs(traversable, start, goal):
    """FIFO BFS with up/down/left/right order; returns (path, dequeues)."""
    start, goal = tuple(start), tuple(goal)
    parent = {start: None}
    queue = [start]
    head = 0
    iterations = 0
    while head < len(queue):
        cell = queue[head]
        head += 1
        iterations += 1
        if cell == goal:
            path = [cell]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return list(reversed(path)), iterations
        r, c = cell
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if (0 <= nb[0] < GRID and 0 <= nb[1] < GRID
                    and traversable[nb[0]][nb[1]] and nb not in parent):
                parent[nb] = cell
                queue.append(nb)
    return None, iterations


def build_scene(obstacles=(), start=(0, 0), goal=(59, 59)):
    """Scene from explicit obstacle coords; everything else free."""
    cells = np.zeros((GRID, GRID), dtype=np.uint8)
    for r, c in obstacles:
        cells[r, c] = CellKind.OBSTACLE
    cells[start] = CellKind.START
    cells[goal] = CellKind.GOAL
    return scene_from_cells(cells)


def corridor_scene_text(start_col=0, goal_col=5):
    """Text fixture: empty grid with S and G on row 0."""
    row0 = ["."] * GRID
    row0[start_col] = "S"
    row0[goal_col] = "G"
    lines = [f"SCENE1 {GRID} {GRID}", "".join(row0)]
    lines += ["." * GRID] * (GRID - 1)
    return "\n".join(lines) + "\n"
