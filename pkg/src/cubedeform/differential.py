"""Signed cube calculus: wedge, hook, and the diagonal-Laplacian complex.

Orientations are kept in a fixed canonical gauge.  Every cube is stored as
its canonical presentation (anchor vertex, cutting hyperplanes in ascending
id order, sign +); an arbitrary presentation (vertex P, ordered hyperplane
list L) is folded into that gauge by ``canonicalize``, picking up the sign

    (-1) ** Hamming(P, anchor)  *  sgn(permutation sorting L).

A cochain is a sparse mapping from canonical ``Cube`` keys to coefficients.
Antisymmetry under reorientation is structural: the reversed cube never
appears as a key, only as a negated coefficient.

The two basic operators move between neighbouring degrees.  ``wedge(H, C)``
raises into the (q+1)-cube spanned across H when C sits on the far side of
H from the base vertex, and is zero otherwise.  ``hook(H, C)`` lowers onto
the codimension-one face of C on the far side of H when H cuts C.  Summing
over hyperplanes (with optional positive weights) gives the differential
``d`` and its formal adjoint ``delta``; their anticommutator is diagonal
with entry q_w(C) + p_w(C) on each cube, which pins the spectral gap and
makes the cohomology computation a rank count.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .core import Cube, CubeComplex

__all__ = [
    "Cochain",
    "OrientedCube",
    "SpectralProfile",
    "canonicalize",
    "cochain_degree",
    "cohomology_ranks",
    "d_cochain",
    "d_matrix",
    "delta_cochain",
    "delta_matrix",
    "hook",
    "hook_matrix",
    "jv_inner",
    "laplacian_matrix",
    "numerical_rank",
    "spectral_profile",
    "wedge",
    "wedge_matrix",
    "weight_vector",
]

#: Sparse cochain: canonical Cube key -> coefficient (int or float).
Cochain = dict

Weights = Union[None, Mapping[int, float], Sequence[float]]


class OrientedCube(NamedTuple):
    """A cube together with a sign relative to its canonical presentation."""

    cube: Cube
    sign: int

    def reversed(self) -> "OrientedCube":
        return OrientedCube(self.cube, -self.sign)


class SpectralProfile(NamedTuple):
    """Laplacian data of a single cube.

    q is the dimension, p the number of hyperplanes adjacent to the cube
    that separate it from the base vertex; q_w and p_w are the same counts
    with each hyperplane contributing its squared weight.
    """

    q: int
    p: int
    q_w: float
    p_w: float


def _sort_parity(hyperplanes: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sorted tuple and the sign of the sorting permutation."""
    items = list(hyperplanes)
    sign = 1
    # insertion sort; lists here have at most a handful of entries
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return tuple(items), sign


def canonicalize(
    cplx: CubeComplex,
    vertex: int,
    hyperplanes: Sequence[int] = (),
    sign: int = 1,
) -> OrientedCube:
    """Fold an arbitrary presentation into the canonical gauge.

    ``vertex`` is the presenting vertex, ``hyperplanes`` the ordered list of
    cutting hyperplanes (empty for a plain vertex, whose orientation is just
    ``sign``).  Raises ValueError if the data does not span a cube of the
    complex.
    """
    ordered, perm_sign = _sort_parity(hyperplanes)
    if len(set(ordered)) != len(ordered):
        raise ValueError("duplicate hyperplane in presentation")
    if not cplx.spans_cube(vertex, ordered):
        raise ValueError(
            "presentation (%s, %s) does not span a cube"
            % (cplx.vertex_bits(vertex), list(ordered)))
    anchor = vertex & ~cplx.mask_of(ordered)
    if (vertex ^ anchor).bit_count() & 1:
        sign = -sign
    return OrientedCube(Cube(anchor, ordered), sign * perm_sign)


def _wedge_term(cplx: CubeComplex, h: int, cube: Cube) -> OrientedCube | None:
    """wedge(h, +cube) as a single signed cube, or None when zero."""
    if h in cube.cutting or not cplx.adjacent_cube(cube, h):
        return None
    m = cplx.mask(h)
    if (cube.anchor ^ cplx.base_vertex) & m == 0:
        return None  # same side of h as the base vertex
    # raised cube presented by the vertex separated from the anchor by h
    # alone, listing h first
    return canonicalize(cplx, cube.anchor ^ m, (h, *cube.cutting))


def _hook_term(cplx: CubeComplex, h: int, cube: Cube) -> OrientedCube | None:
    """hook(h, +cube) as a single signed face, or None when zero."""
    if h not in cube.cutting:
        return None
    idx = cube.cutting.index(h)
    sign = -1 if idx & 1 else 1  # move h to the front of the listing
    m = cplx.mask(h)
    p = cube.anchor
    if cplx.base_vertex & m:
        # re-present at the vertex on the base side of h
        p ^= m
        sign = -sign
    rest = tuple(k for k in cube.cutting if k != h)
    # the face on the far side of h, at the vertex separated from p by h
    return canonicalize(cplx, p ^ m, rest, sign)


def _as_cochain(f) -> Cochain:
    if isinstance(f, OrientedCube):
        return {f.cube: f.sign}
    if isinstance(f, Cube):
        return {f: 1}
    return f


def cochain_degree(f: Cochain) -> int | None:
    """Common dimension of the support, None for the zero cochain."""
    degrees = {len(c.cutting) for c in f}
    if len(degrees) > 1:
        raise ValueError("mixed-degree cochain: dimensions %s" % sorted(degrees))
    return degrees.pop() if degrees else None


def _add(out: Cochain, cube: Cube, coeff) -> None:
    acc = out.get(cube, 0) + coeff
    if acc:
        out[cube] = acc
    else:
        out.pop(cube, None)


def wedge(cplx: CubeComplex, h: int, f) -> Cochain:
    """Apply the raising operator of hyperplane ``h`` linearly to ``f``."""
    out: Cochain = {}
    for cube, coeff in _as_cochain(f).items():
        term = _wedge_term(cplx, h, cube)
        if term is not None:
            _add(out, term.cube, coeff * term.sign)
    return out


def hook(cplx: CubeComplex, h: int, f) -> Cochain:
    """Apply the lowering operator of hyperplane ``h`` linearly to ``f``."""
    out: Cochain = {}
    for cube, coeff in _as_cochain(f).items():
        term = _hook_term(cplx, h, cube)
        if term is not None:
            _add(out, term.cube, coeff * term.sign)
    return out


def weight_vector(cplx: CubeComplex, weights: Weights) -> list:
    """Normalize a weight specification to a per-hyperplane list.

    None means unit weights, kept as exact integers so that structural
    identities hold in integer arithmetic.
    """
    n = cplx.n_hyperplanes
    if weights is None:
        return [1] * n
    if isinstance(weights, Mapping):
        vec = [weights[h] for h in range(n)]
    else:
        vec = list(weights)
        if len(vec) != n:
            raise ValueError(
                "expected %d weights, got %d" % (n, len(vec)))
    if any(not w > 0 for w in vec):
        raise ValueError("weights must be strictly positive")
    return vec


def d_cochain(cplx: CubeComplex, f, weights: Weights = None) -> Cochain:
    """Weighted differential: sum of w(H) * wedge(H, .) over hyperplanes."""
    f = _as_cochain(f)
    cochain_degree(f)
    w = weight_vector(cplx, weights)
    out: Cochain = {}
    for cube, coeff in f.items():
        for h in range(cplx.n_hyperplanes):
            term = _wedge_term(cplx, h, cube)
            if term is not None:
                _add(out, term.cube, coeff * term.sign * w[h])
    return out


def delta_cochain(cplx: CubeComplex, f, weights: Weights = None) -> Cochain:
    """Weighted codifferential: sum of w(H) * hook(H, .) over hyperplanes."""
    f = _as_cochain(f)
    cochain_degree(f)
    w = weight_vector(cplx, weights)
    out: Cochain = {}
    for cube, coeff in f.items():
        for h in cube.cutting:
            term = _hook_term(cplx, h, cube)
            if term is not None:
                _add(out, term.cube, coeff * term.sign * w[h])
    return out


def _matrix(cplx, rows_q: int, cols_q: int, weights: Weights, term_fn) -> np.ndarray:
    rows = cplx.cube_index(rows_q)
    cols = cplx.cubes(cols_q)
    w = weight_vector(cplx, weights)
    dtype = np.int64 if weights is None else np.float64
    out = np.zeros((len(rows), len(cols)), dtype=dtype)
    for j, cube in enumerate(cols):
        for h, term in term_fn(cube):
            out[rows[term.cube], j] += term.sign * w[h]
    return out


def d_matrix(cplx: CubeComplex, q: int, weights: Weights = None) -> np.ndarray:
    """Matrix of the weighted differential from degree q to q+1.

    Columns follow the canonical cube order of degree q, rows of degree q+1.
    Integer dtype for unit weights.
    """
    def terms(cube):
        for h in range(cplx.n_hyperplanes):
            term = _wedge_term(cplx, h, cube)
            if term is not None:
                yield h, term

    return _matrix(cplx, q + 1, q, weights, terms)


def delta_matrix(cplx: CubeComplex, q: int, weights: Weights = None) -> np.ndarray:
    """Matrix of the weighted codifferential from degree q to q-1.

    Assembled from hook terms directly, not by transposing ``d_matrix``;
    the transpose identity is a checkable theorem, not a definition.
    """
    def terms(cube):
        for h in cube.cutting:
            term = _hook_term(cplx, h, cube)
            if term is not None:
                yield h, term

    return _matrix(cplx, q - 1, q, weights, terms)


def wedge_matrix(cplx: CubeComplex, h: int, q: int) -> np.ndarray:
    """Matrix of wedge(h, .) from degree q to q+1, integer entries."""
    def terms(cube):
        term = _wedge_term(cplx, h, cube)
        if term is not None:
            yield h, term

    return _matrix(cplx, q + 1, q, None, terms)


def hook_matrix(cplx: CubeComplex, h: int, q: int) -> np.ndarray:
    """Matrix of hook(h, .) from degree q to q-1, integer entries."""
    def terms(cube):
        term = _hook_term(cplx, h, cube)
        if term is not None:
            yield h, term

    return _matrix(cplx, q - 1, q, None, terms)


def jv_inner(f: Cochain, g: Cochain):
    """Inner product in which the canonical signed cubes are orthonormal.

    Plain Dirac cubes (single unsigned basis elements of the full space)
    then have squared norm 1/2; callers that need that normalization halve
    the values themselves.
    """
    f, g = _as_cochain(f), _as_cochain(g)
    df, dg = cochain_degree(f), cochain_degree(g)
    if df is not None and dg is not None and df != dg:
        raise ValueError("degree mismatch: %d vs %d" % (df, dg))
    if len(g) < len(f):
        f, g = g, f
    return sum(coeff * g.get(cube, 0) for cube, coeff in f.items())


def spectral_profile(cplx: CubeComplex, cube: Cube, weights: Weights = None) -> SpectralProfile:
    """Dimension and separating-hyperplane counts of a cube, weighted forms included."""
    w = weight_vector(cplx, weights)
    base = cplx.base_vertex
    q_w = sum(w[h] * w[h] for h in cube.cutting)
    p_hs = [
        h for h in range(cplx.n_hyperplanes)
        if h not in cube.cutting
        and cplx.adjacent_cube(cube, h)
        and (cube.anchor ^ base) & cplx.mask(h)
    ]
    p_w = sum(w[h] * w[h] for h in p_hs)
    return SpectralProfile(cube.dim, len(p_hs), q_w, p_w)


def laplacian_matrix(cplx: CubeComplex, q: int, weights: Weights = None) -> np.ndarray:
    """Matrix of d delta + delta d on degree q, by honest matrix products."""
    down = delta_matrix(cplx, q + 1, weights) @ d_matrix(cplx, q, weights)
    up = d_matrix(cplx, q - 1, weights) @ delta_matrix(cplx, q, weights)
    return down + up


def numerical_rank(matrix: np.ndarray, rtol: float = 1e-8) -> int:
    """Rank by singular values above rtol times the largest."""
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(np.asarray(matrix, dtype=np.float64), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def cohomology_ranks(cplx: CubeComplex, weights: Weights = None) -> tuple[int, ...]:
    """Cohomology dimension per degree of the weighted complex."""
    dim = cplx.dimension
    ranks = [numerical_rank(d_matrix(cplx, q, weights)) for q in range(-1, dim + 1)]
    return tuple(
        len(cplx.cubes(q)) - ranks[q + 1] - ranks[q]
        for q in range(dim + 1))
