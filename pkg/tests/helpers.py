"""Shared fixtures and independent oracles for the test suite.

Oracles here recompute facts from first principles (breadth-first search,
exhaustive subset scans) so the tests never trust the code paths they are
checking.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations

import numpy as np

from cubedeform import CubeComplex, grid_complex, hypercube, random_median_complex, star_tree
from cubedeform.core import Cube
from cubedeform.deformation import w_path_matrix, w_step_matrix
from cubedeform.parallelism import enumerate_classes

FIXTURE_NAMES = ("point", "square", "tripod", "cube3", "grid12")
TEST_T_GRID = (0.1, 0.5, 1.0, 2.0, float("inf"))


@lru_cache(maxsize=None)
def fixture(name: str) -> CubeComplex:
    if name == "point":
        return CubeComplex(0, [0], 0)
    if name == "square":
        return CubeComplex(2, [0b00, 0b01, 0b10, 0b11], 0b00)
    if name == "tripod":
        return star_tree(3)
    if name == "cube3":
        return hypercube(3)
    if name == "grid12":
        return grid_complex([1, 2])
    if name == "grid22":
        return grid_complex([2, 2])
    if name == "path3":
        return grid_complex([3])
    if name == "path4":
        return grid_complex([4])
    raise KeyError(name)


def all_fixtures() -> list[CubeComplex]:
    return [fixture(name) for name in FIXTURE_NAMES]


@lru_cache(maxsize=None)
def random_complex(seed: int, n: int = 7, k: int = 5) -> CubeComplex:
    return random_median_complex(n, k, seed)


def random_complexes(count: int) -> list[CubeComplex]:
    return [random_complex(seed) for seed in range(count)]


# -- independent oracles ---------------------------------------------------------


def bfs_distance(cplx: CubeComplex, source: int, target: int) -> int:
    """Edge-path distance recomputed by plain breadth-first search."""
    if source == target:
        return 0
    seen = {source}
    queue = deque([(source, 0)])
    while queue:
        v, d = queue.popleft()
        for h in range(cplx.n_hyperplanes):
            u = v ^ cplx.mask(h)
            if not cplx.contains_vertex(u) or u in seen:
                continue
            if u == target:
                return d + 1
            seen.add(u)
            queue.append((u, d + 1))
    raise AssertionError("no path between vertices")


def brute_force_cubes(cplx: CubeComplex, q: int) -> set[Cube]:
    """All q-cubes found by scanning every hyperplane subset and vertex."""
    found = set()
    for cutting in combinations(range(cplx.n_hyperplanes), q):
        mask = cplx.mask_of(cutting)
        for v in cplx.vertices:
            anchor = v & ~mask
            corners = [anchor]
            for h in cutting:
                corners = [c | bit for c in corners for bit in (0, cplx.mask(h))]
            if all(cplx.contains_vertex(c) for c in corners):
                found.add(Cube(anchor, cutting))
    return found


def brute_cube_vertex_distance(cplx: CubeComplex, cube: Cube, vertex: int) -> int:
    return min(bfs_distance(cplx, corner, vertex)
               for corner in cplx.cube_vertices(cube))


def random_loop_residual(cplx: CubeComplex, rng, t: float,
                         loops: int = 20, walk_length: int = 8) -> float:
    """Worst deviation from the identity over random closed member walks.

    Each loop walks randomly through a parallelism class and returns to the
    start along the deterministic tree path, so the two halves are genuinely
    different paths whenever the class has cycles.
    """
    worst = 0.0
    for klass in enumerate_classes(cplx):
        members = klass.members
        if len(members) < 2:
            continue
        for _ in range(loops):
            start = members[int(rng.integers(len(members)))]
            cur = start
            prod = np.eye(len(members))
            for _step in range(walk_length):
                nbrs = [m for m in members
                        if (m.anchor ^ cur.anchor).bit_count() == 1]
                if not nbrs:
                    break
                nxt = nbrs[int(rng.integers(len(nbrs)))]
                h = cplx.hyperplane_of_mask(cur.anchor ^ nxt.anchor)
                prod = w_step_matrix(cplx, cur, h, t) @ prod
                cur = nxt
            prod = w_path_matrix(cplx, start, cur, t) @ prod
            worst = max(worst,
                        float(np.linalg.norm(prod - np.eye(len(members)), 2)))
    return worst


def adjacent_vertex_pairs(cplx: CubeComplex) -> list[tuple[int, int]]:
    out = []
    for v in cplx.vertices:
        for h in range(cplx.n_hyperplanes):
            u = v ^ cplx.mask(h)
            if cplx.contains_vertex(u) and v < u:
                out.append((v, u))
    return out
