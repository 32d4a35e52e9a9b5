"""Finite CAT(0) cube complexes in hyperplane half-space coordinates.

A complex is stored through its vertex set.  Each vertex is an ``n``-bit
integer: bit ``n-1-i`` records which half-space of hyperplane ``i``
contains the vertex, so a vertex printed as a bitstring reads hyperplane
0..n-1 left to right, and lexicographic order on bitstrings is numeric
order on the integers.  A vertex family is the 0-skeleton of a finite
CAT(0) cube complex exactly when it is connected in the Hamming-1 graph
and closed under coordinatewise majorities of triples (a median graph);
:class:`CubeComplex` validates both at construction.

Cubes are encoded by their smallest vertex (the anchor) together with
the sorted tuple of hyperplanes cutting them.  Every geometric predicate
used downstream (separation, adjacency, crossing, distance) reduces to
bit arithmetic on this encoding; in particular the edge-path distance
between vertices is the Hamming distance, because separating hyperplanes
count edges on any geodesic.

Instances are immutable after construction and safe to share between
threads: caches only ever go from absent to computed, and rebasing a
complex shares every base-independent cache with the original.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

import numpy as np

__all__ = [
    "Cube",
    "CubeComplex",
    "CxcParseError",
    "InvalidComplex",
    "NormalCubePath",
    "median_closure",
    "median_of",
    "parse_cxc",
    "write_cxc",
]

# int64-safe coordinate width; wider complexes fall back to pure-python paths
_NUMPY_BIT_LIMIT = 62


class InvalidComplex(ValueError):
    """The vertex family does not describe a CAT(0) cube complex."""


class CxcParseError(ValueError):
    """Malformed cxc document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Cube(NamedTuple):
    """A cube keyed by its smallest vertex and the hyperplanes cutting it."""

    anchor: int
    cutting: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.cutting)


class NormalCubePath(NamedTuple):
    """Greedy cube path from a vertex toward a target vertex.

    ``waypoints`` has one more entry than ``cubes``; waypoint ``i`` is the
    vertex the path occupies before crossing ``cubes[i]``.
    """

    cubes: tuple[Cube, ...]
    waypoints: tuple[int, ...]


def median_of(u: int, v: int, w: int) -> int:
    """Coordinatewise majority of three bit vectors."""
    return (u & v) | (w & (u ^ v))


def _median_closure_py(seed: set[int]) -> frozenset[int]:
    # plain fixpoint; used for coordinate widths beyond the int64-safe range
    closed = set(seed)
    frontier = list(closed)
    while frontier:
        current = list(closed)
        fresh = set()
        for a in frontier:
            for i, b in enumerate(current):
                ab_and = a & b
                ab_xor = a ^ b
                for c in current[i:]:
                    m = ab_and | (c & ab_xor)
                    if m not in closed:
                        fresh.add(m)
        closed |= fresh
        frontier = list(fresh)
    return frozenset(closed)


def median_closure(seeds: Iterable[int]) -> frozenset[int]:
    """Smallest median-closed superset of ``seeds``.

    Semi-naive fixpoint: each round only forms majorities that involve at
    least one vertex added in the previous round.
    """
    seed = {int(v) for v in seeds}
    if not seed:
        return frozenset()
    if any(v < 0 for v in seed):
        raise ValueError("vertex encodings must be non-negative")
    if max(seed).bit_length() > _NUMPY_BIT_LIMIT:
        return _median_closure_py(seed)

    closed = set(seed)
    frontier = sorted(closed)
    while frontier:
        cur = np.array(sorted(closed), dtype=np.int64)
        fresh: set[int] = set()
        for a in frontier:
            ab_and = a & cur
            ab_xor = a ^ cur
            meds = ab_and[:, None] | (cur[None, :] & ab_xor[:, None])
            pos = np.searchsorted(cur, meds.ravel())
            pos[pos == cur.size] = 0
            missing = cur[pos] != meds.ravel()
            if missing.any():
                fresh.update(int(m) for m in np.unique(meds.ravel()[missing]))
        fresh -= closed
        closed |= fresh
        frontier = sorted(fresh)
    return frozenset(closed)


class CubeComplex:
    """Vertex model of a finite CAT(0) cube complex with a base vertex."""

    __slots__ = ("n_hyperplanes", "base_vertex", "_verts", "_vset", "_vindex",
                 "_masks", "_shared", "_hdist")

    def __init__(self, n_hyperplanes: int, vertices: Iterable[int], base_vertex: int):
        n = int(n_hyperplanes)
        if n < 0:
            raise ValueError("hyperplane count must be non-negative")
        verts = sorted({int(v) for v in vertices})
        if not verts:
            raise InvalidComplex("empty vertex set")
        if verts[0] < 0 or verts[-1] >= (1 << n):
            raise InvalidComplex("vertex encoding out of range for %d hyperplanes" % n)

        self.n_hyperplanes = n
        self.base_vertex = int(base_vertex)
        self._verts = tuple(verts)
        self._vset = frozenset(verts)
        self._vindex = {v: i for i, v in enumerate(verts)}
        self._masks = tuple(1 << (n - 1 - i) for i in range(n))
        self._shared: dict = {}
        self._hdist = None

        self._validate()

    # -- construction helpers -------------------------------------------------

    def _validate(self) -> None:
        n, verts = self.n_hyperplanes, self._verts
        all_and = verts[0]
        all_or = verts[0]
        for v in verts[1:]:
            all_and &= v
            all_or |= v
        full = (1 << n) - 1
        constant = (all_and | (full & ~all_or)) & full
        if constant:
            h = n - constant.bit_length()
            raise InvalidComplex(
                f"hyperplane {h} has constant coordinate over the vertex set")

        # connectivity in the Hamming-1 graph
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for m in self._masks:
                u = v ^ m
                if u in self._vset and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(verts):
            missing = next(v for v in verts if v not in seen)
            raise InvalidComplex(
                "connectivity failure: no edge path from %s to %s"
                % (self.vertex_bits(verts[0]), self.vertex_bits(missing)))

        bad = self._median_violation()
        if bad is not None:
            u, v, w = bad
            raise InvalidComplex(
                "median-closure failure: majority(%s, %s, %s) = %s is not a vertex"
                % (self.vertex_bits(u), self.vertex_bits(v), self.vertex_bits(w),
                   self.vertex_bits(median_of(u, v, w))))

        if self.base_vertex not in self._vset:
            raise InvalidComplex(
                "base vertex %s not in vertex set"
                % format(self.base_vertex, "0%db" % n if n else "b"))

    def _median_violation(self) -> tuple[int, int, int] | None:
        verts = self._verts
        if self.n_hyperplanes > _NUMPY_BIT_LIMIT:
            for i, u in enumerate(verts):
                for j in range(i, len(verts)):
                    v = verts[j]
                    uv_and, uv_xor = u & v, u ^ v
                    for w in verts[j:]:
                        if (uv_and | (w & uv_xor)) not in self._vset:
                            return u, v, w
            return None
        arr = np.array(verts, dtype=np.int64)
        for i, u in enumerate(verts):
            uv_and = u & arr[i:]
            uv_xor = u ^ arr[i:]
            meds = uv_and[:, None] | (arr[None, :] & uv_xor[:, None])
            pos = np.searchsorted(arr, meds.ravel())
            pos[pos == arr.size] = 0
            bad = arr[pos] != meds.ravel()
            if bad.any():
                flat = int(np.flatnonzero(bad)[0])
                j, k = divmod(flat, arr.size)
                return u, int(arr[i + j]), int(arr[k])
        return None

    def rebased(self, base_vertex: int) -> "CubeComplex":
        """Same complex with a different base vertex; caches are shared."""
        base_vertex = int(base_vertex)
        if base_vertex == self.base_vertex:
            return self
        if base_vertex not in self._vset:
            raise InvalidComplex(
                "base vertex %s not in vertex set" % self.vertex_bits(base_vertex))
        other = object.__new__(CubeComplex)
        other.n_hyperplanes = self.n_hyperplanes
        other.base_vertex = base_vertex
        other._verts = self._verts
        other._vset = self._vset
        other._vindex = self._vindex
        other._masks = self._masks
        other._shared = self._shared
        other._hdist = None
        return other

    # -- vertex level ----------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._verts

    @property
    def n_vertices(self) -> int:
        return len(self._verts)

    def vertex_index(self, v: int) -> int:
        return self._vindex[v]

    def contains_vertex(self, v: int) -> bool:
        return v in self._vset

    def vertex_bits(self, v: int) -> str:
        return format(v, "0%db" % self.n_hyperplanes) if self.n_hyperplanes else ""

    def vertex_from_bits(self, bits: str) -> int:
        if len(bits) != self.n_hyperplanes or set(bits) - {"0", "1"}:
            raise ValueError("expected a %d-character bitstring" % self.n_hyperplanes)
        return int(bits, 2) if bits else 0

    def mask(self, h: int) -> int:
        return self._masks[h]

    def mask_of(self, hyperplanes: Iterable[int]) -> int:
        m = 0
        for h in hyperplanes:
            m |= self._masks[h]
        return m

    def hyperplane_of_mask(self, m: int) -> int:
        # inverse of mask() for a single-bit value
        return self.n_hyperplanes - m.bit_length()

    def distance(self, u: int, v: int) -> int:
        """Edge-path distance; equals Hamming distance on valid complexes."""
        return (u ^ v).bit_count()

    def separates(self, h: int, u: int, v: int) -> bool:
        """Does hyperplane ``h`` separate vertices ``u`` and ``v``?"""
        return bool((u ^ v) & self._masks[h])

    def adjacent_vertex(self, v: int, h: int) -> bool:
        """Is some edge at ``v`` cut by hyperplane ``h``?"""
        return (v ^ self._masks[h]) in self._vset

    def vertices_adjacent_to(self, h: int) -> tuple[int, ...]:
        key = ("adj", h)
        got = self._shared.get(key)
        if got is None:
            m = self._masks[h]
            got = tuple(v for v in self._verts if (v ^ m) in self._vset)
            self._shared[key] = got
        return got

    # -- cube level --------------------------------------------------------------

    def _levels(self) -> tuple[tuple[Cube, ...], ...]:
        got = self._shared.get("levels")
        if got is None:
            got = self._build_levels()
            self._shared["levels"] = got
        return got

    def _build_levels(self) -> tuple[tuple[Cube, ...], ...]:
        n = self.n_hyperplanes
        levels = [tuple(Cube(v, ()) for v in self._verts)]
        cur = {(v, ()) for v in self._verts}
        while cur:
            nxt = set()
            for anchor, cutting in cur:
                lo = cutting[-1] + 1 if cutting else 0
                for h in range(lo, n):
                    m = self._masks[h]
                    if anchor & m:
                        continue
                    if (anchor ^ m, cutting) in cur:
                        nxt.add((anchor, cutting + (h,)))
            if not nxt:
                break
            levels.append(tuple(Cube(a, c) for a, c in sorted(nxt)))
            cur = nxt
        return tuple(levels)

    @property
    def dimension(self) -> int:
        return len(self._levels()) - 1

    def cubes(self, q: int) -> tuple[Cube, ...]:
        """All q-cubes in canonical order (anchor, cutting set)."""
        levels = self._levels()
        return levels[q] if 0 <= q < len(levels) else ()

    def cube_index(self, q: int) -> dict[Cube, int]:
        key = ("cube_index", q)
        got = self._shared.get(key)
        if got is None:
            got = {c: i for i, c in enumerate(self.cubes(q))}
            self._shared[key] = got
        return got

    def n_cubes(self) -> int:
        return sum(len(level) for level in self._levels())

    def is_cube(self, anchor: int, cutting: tuple[int, ...]) -> bool:
        return Cube(anchor, cutting) in self.cube_index(len(cutting))

    def spans_cube(self, vertex: int, hyperplanes: Iterable[int]) -> bool:
        """Do the flips of ``vertex`` across all subsets of ``hyperplanes`` exist?"""
        hs = tuple(sorted(set(hyperplanes)))
        anchor = vertex & ~self.mask_of(hs)
        if anchor not in self._vset:
            return False
        return self.is_cube(anchor, hs) if hs else True

    def cube_vertices(self, cube: Cube) -> Iterator[int]:
        masks = [self._masks[h] for h in cube.cutting]
        for bits in range(1 << len(masks)):
            v = cube.anchor
            for i, m in enumerate(masks):
                if bits >> i & 1:
                    v ^= m
            yield v

    def cube_side(self, cube: Cube, h: int) -> int:
        """Half-space bit of hyperplane ``h`` on a cube it does not cut."""
        if h in cube.cutting:
            raise ValueError("hyperplane %d cuts the cube" % h)
        return 1 if cube.anchor & self._masks[h] else 0

    def crossing(self, h: int, k: int) -> bool:
        """Do hyperplanes ``h`` and ``k`` cut a common square?"""
        return bool(self.crossing_matrix()[h, k])

    def crossing_matrix(self) -> np.ndarray:
        got = self._shared.get("crossing")
        if got is None:
            n = self.n_hyperplanes
            got = np.zeros((n, n), dtype=bool)
            for sq in self.cubes(2):
                a, b = sq.cutting
                got[a, b] = got[b, a] = True
            got.setflags(write=False)
            self._shared["crossing"] = got
        return got

    def helly_check(self, hyperplanes: Iterable[int]) -> bool:
        """Pairwise-crossing hyperplanes cut a common cube (Helly property)."""
        hs = tuple(sorted(set(hyperplanes)))
        cross = self.crossing_matrix()
        for i, a in enumerate(hs):
            for b in hs[i + 1:]:
                if not cross[a, b]:
                    return True  # vacuous: not pairwise crossing
        return any(c.cutting == hs for c in self.cubes(len(hs)))

    def adjacent_cube(self, cube: Cube, h: int) -> bool:
        """Is ``cube`` a face of a (q+1)-cube cut by hyperplane ``h``?"""
        if h in cube.cutting:
            return False
        anchor = cube.anchor & ~self._masks[h]
        cutting = tuple(sorted(cube.cutting + (h,)))
        return self.is_cube(anchor, cutting)

    def cube_distance_to_vertex(self, cube: Cube, v: int) -> int:
        """Distance from ``v`` to the nearest vertex of ``cube``."""
        return ((cube.anchor ^ v) & ~self.mask_of(cube.cutting)).bit_count()

    def nearest_cube_vertex(self, cube: Cube, v: int) -> int:
        """The vertex of ``cube`` nearest to ``v`` (match ``v`` on cutting bits)."""
        cut = self.mask_of(cube.cutting)
        return (cube.anchor & ~cut) | (v & cut)

    # -- base-dependent quantities -------------------------------------------------

    def dist_hyperplane_to_base(self, h: int) -> int:
        """min over vertices adjacent to ``h`` of the distance to the base."""
        if self._hdist is None:
            base = self.base_vertex
            self._hdist = tuple(
                min((v ^ base).bit_count() for v in self.vertices_adjacent_to(h2))
                for h2 in range(self.n_hyperplanes))
        return self._hdist[h]

    def normal_cube_path(self, source: int, target: int) -> NormalCubePath:
        """Greedy cube path: cross every crossable separating hyperplane at once."""
        if source not in self._vset or target not in self._vset:
            raise InvalidComplex("normal cube path endpoints must be vertices")
        cubes: list[Cube] = []
        waypoints = [source]
        r = source
        crossed = 0
        while r != target:
            step = [h for h in range(self.n_hyperplanes)
                    if (r ^ target) & self._masks[h] and self.adjacent_vertex(r, h)]
            smask = self.mask_of(step)
            if not step or smask & crossed:
                raise InvalidComplex("normal cube path failed to progress")
            anchor = r & ~smask
            cube = Cube(anchor, tuple(step))
            if not self.is_cube(anchor, cube.cutting):
                raise InvalidComplex("normal cube path step does not span a cube")
            cubes.append(cube)
            crossed |= smask
            r ^= smask
            waypoints.append(r)
        if crossed != source ^ target:
            raise InvalidComplex("normal cube path did not cross the separating set")
        return NormalCubePath(tuple(cubes), tuple(waypoints))

    def finite_approximation(self, radius: int) -> "CubeComplex":
        """Restriction to hyperplanes within ``radius`` of the base.

        Keeps the vertices that agree with the base on every hyperplane at
        distance >= radius and drops those coordinates; the result is again
        a valid complex with the (projected) same base vertex.
        """
        keep = [h for h in range(self.n_hyperplanes)
                if self.dist_hyperplane_to_base(h) < radius]
        far_mask = self.mask_of(
            h for h in range(self.n_hyperplanes)
            if self.dist_hyperplane_to_base(h) >= radius)
        base = self.base_vertex

        def project(v: int) -> int:
            out = 0
            for j, h in enumerate(keep):
                if v & self._masks[h]:
                    out |= 1 << (len(keep) - 1 - j)
            return out

        verts = [project(v) for v in self._verts if not ((v ^ base) & far_mask)]
        return CubeComplex(len(keep), verts, project(base))

    # -- reporting ----------------------------------------------------------------

    def bounded_geometry_statistic(self) -> int:
        """Largest number of cubes meeting any single cube (shared vertex)."""
        incident: dict[int, list[tuple[int, int]]] = {v: [] for v in self._verts}
        levels = self._levels()
        for q, level in enumerate(levels):
            for i, cube in enumerate(level):
                for v in self.cube_vertices(cube):
                    incident[v].append((q, i))
        best = 0
        for level in levels:
            for cube in level:
                met: set[tuple[int, int]] = set()
                for v in self.cube_vertices(cube):
                    met.update(incident[v])
                best = max(best, len(met))
        return best


# -- cxc text format ------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for tok in body.split():
            out.append((tok, lineno))
    return out


def parse_cxc(text: str) -> CubeComplex:
    """Parse the ``cxc 1`` vertex-list format.

    Grammar: ``cxc 1`` / ``hyperplanes <n>`` / ``basepoint <bits>`` /
    ``vertices <m>`` / m distinct n-bit strings; ``#`` starts a comment.
    """
    toks = _tokenize(text)
    pos = 0

    def take(what: str) -> tuple[str, int]:
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1][1] if toks else 1
            raise CxcParseError(f"unexpected end of document, expected {what}", last)
        tok = toks[pos]
        pos += 1
        return tok

    def expect(word: str) -> None:
        tok, line = take(f"'{word}'")
        if tok != word:
            raise CxcParseError(f"expected '{word}', found '{tok}'", line)

    def integer(what: str) -> int:
        tok, line = take(what)
        if not tok.isdigit():
            raise CxcParseError(f"expected {what}, found '{tok}'", line)
        return int(tok)

    expect("cxc")
    tok, line = take("format version")
    if tok != "1":
        raise CxcParseError(f"unsupported format version '{tok}'", line)
    expect("hyperplanes")
    n = integer("hyperplane count")
    if n < 1:
        raise CxcParseError("hyperplane count must be at least 1")

    def bitstring(what: str) -> int:
        tok, line = take(what)
        if len(tok) != n or set(tok) - {"0", "1"}:
            raise CxcParseError(
                f"expected a {n}-character bitstring for {what}, found '{tok}'", line)
        return int(tok, 2)

    expect("basepoint")
    base = bitstring("the base vertex")
    expect("vertices")
    m = integer("vertex count")
    verts = []
    seen = set()
    for _ in range(m):
        tok, line = take("a vertex bitstring")
        if len(tok) != n or set(tok) - {"0", "1"}:
            raise CxcParseError(f"expected a {n}-character bitstring, found '{tok}'", line)
        v = int(tok, 2)
        if v in seen:
            raise CxcParseError(f"duplicate vertex '{tok}'", line)
        seen.add(v)
        verts.append(v)
    if pos != len(toks):
        tok, line = toks[pos]
        raise CxcParseError(f"unexpected trailing token '{tok}'", line)
    return CubeComplex(n, verts, base)


def write_cxc(cplx: CubeComplex) -> str:
    """Serialize; vertices in lexicographic order, so output is canonical."""
    if cplx.n_hyperplanes == 0:
        raise ValueError("cannot serialize a complex with no hyperplanes")
    lines = [
        "cxc 1",
        f"hyperplanes {cplx.n_hyperplanes}",
        f"basepoint {cplx.vertex_bits(cplx.base_vertex)}",
        f"vertices {cplx.n_vertices}",
    ]
    lines.extend(cplx.vertex_bits(v) for v in cplx.vertices)
    return "\n".join(lines) + "\n"
