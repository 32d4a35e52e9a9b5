"""Spectral harness over the full graded cochain space.

All degrees are stacked into one basis, degree blocks in order, and the
differential plus its adjoint assemble into a single symmetric operator D
whose square is the block-diagonal Laplacian.  Shifting by the rank-one
projection onto the base-vertex line closes the spectral gap from below:
(D + P)^2 = D^2 + P is at least the identity, which makes every identity
here quantitative.

Operators conjugated into the t-frame keep their norms there, so the
whole analysis runs on the plain symmetric matrices: the bounded
transform F = D (P + D^2)^(-1/2), its Fredholm identity
F^2 = I - P (P + D^2)^(-1), the normalized differential
d' = d (I + Lap)^(-1/2) with its anticommutator identity, resolvent
bounds of the shifted operator, and the base-point decay sweep.  Inverse
square roots come from an eigendecomposition; the integral formula
(2/pi) int (lambda^2 + T)^(-1) d lambda is kept alongside as a verified
quadrature alternative.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple

import numpy as np

from .core import CubeComplex
from .deformation import basepoint_commutator_norm, deformation_weights
from .differential import Weights, d_matrix, delta_matrix, laplacian_matrix

__all__ = [
    "GradedOperator",
    "assemble_D",
    "assemble_laplacian",
    "assemble_raising",
    "base_projection",
    "basepoint_decay_sweep",
    "f_t_family",
    "f_t_operator",
    "format_t",
    "fredholm_report",
    "graded_offsets",
    "homotopy_residual",
    "fredholm_residual",
    "inv_sqrt_integral",
    "inv_sqrt_spectral",
    "normalized_d",
    "resolvent",
    "resolvent_bounds",
]


class GradedOperator(NamedTuple):
    """A matrix over the stacked degree blocks, with the block offsets."""

    matrix: np.ndarray
    offsets: tuple[int, ...]

    def degree_slice(self, q: int) -> slice:
        return slice(self.offsets[q], self.offsets[q + 1])


def graded_offsets(cplx: CubeComplex) -> tuple[int, ...]:
    offs = [0]
    for q in range(cplx.dimension + 1):
        offs.append(offs[-1] + len(cplx.cubes(q)))
    return tuple(offs)


def assemble_D(cplx: CubeComplex, weights: Weights = None) -> GradedOperator:
    """The symmetric operator d + delta over the graded basis.

    Both triangles are assembled from their own formulas; the symmetry of
    the result is a theorem about the two, not a construction.
    """
    offs = graded_offsets(cplx)
    dim = cplx.dimension
    dtype = np.int64 if weights is None else np.float64
    out = np.zeros((offs[-1], offs[-1]), dtype=dtype)
    for q in range(dim + 1):
        if q < dim:
            up = d_matrix(cplx, q, weights)
            out[offs[q + 1]:offs[q + 2], offs[q]:offs[q + 1]] = up
        if q > 0:
            down = delta_matrix(cplx, q, weights)
            out[offs[q - 1]:offs[q], offs[q]:offs[q + 1]] = down
    return GradedOperator(out, offs)


def assemble_raising(cplx: CubeComplex, weights: Weights = None) -> GradedOperator:
    """Only the degree-raising half of ``assemble_D``."""
    offs = graded_offsets(cplx)
    dim = cplx.dimension
    dtype = np.int64 if weights is None else np.float64
    out = np.zeros((offs[-1], offs[-1]), dtype=dtype)
    for q in range(dim):
        out[offs[q + 1]:offs[q + 2], offs[q]:offs[q + 1]] = d_matrix(cplx, q, weights)
    return GradedOperator(out, offs)


def assemble_laplacian(cplx: CubeComplex, weights: Weights = None) -> GradedOperator:
    """Block-diagonal Laplacian, degree by degree."""
    offs = graded_offsets(cplx)
    dtype = np.int64 if weights is None else np.float64
    out = np.zeros((offs[-1], offs[-1]), dtype=dtype)
    for q in range(cplx.dimension + 1):
        out[offs[q]:offs[q + 1], offs[q]:offs[q + 1]] = laplacian_matrix(cplx, q, weights)
    return GradedOperator(out, offs)


def base_projection(cplx: CubeComplex) -> np.ndarray:
    """Rank-one projection onto the base-vertex line in degree zero."""
    n = graded_offsets(cplx)[-1]
    out = np.zeros((n, n), dtype=np.int64)
    i = cplx.vertex_index(cplx.base_vertex)
    out[i, i] = 1
    return out


def resolvent(matrix: np.ndarray, z: complex) -> np.ndarray:
    """Dense inverse of matrix + z, guarding against near-singularity."""
    a = np.asarray(matrix, dtype=np.complex128) + z * np.eye(matrix.shape[0])
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[-1] <= 1e-13 * sv[0]:
        raise ValueError(
            "matrix + %r is singular to working precision "
            "(smallest singular value %.3e)" % (z, float(sv[-1])))
    return np.linalg.solve(a, np.eye(matrix.shape[0], dtype=np.complex128))


def inv_sqrt_spectral(matrix: np.ndarray) -> np.ndarray:
    """Inverse square root of a symmetric positive definite matrix."""
    vals, vecs = np.linalg.eigh(np.asarray(matrix, dtype=np.float64))
    if vals[0] <= 0:
        raise ValueError(
            "matrix is not positive definite (smallest eigenvalue %.3e)"
            % float(vals[0]))
    return (vecs * (vals ** -0.5)) @ vecs.T


def inv_sqrt_integral(matrix: np.ndarray, nodes: int = 200) -> np.ndarray:
    """Inverse square root by the integral (2/pi) int (s^2 + T)^(-1) ds.

    The half-line is mapped to (0,1) by s = u/(1-u) and the integral
    evaluated by Gauss-Legendre quadrature.  Requires the spectrum to be
    bounded below by 1, which keeps the integrand tame and the node count
    modest.
    """
    t = np.asarray(matrix, dtype=np.float64)
    vals = np.linalg.eigvalsh(t)
    if vals[0] < 1.0 - 1e-9:
        raise ValueError(
            "spectrum must be bounded below by 1 (smallest eigenvalue %.6f)"
            % float(vals[0]))
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    eye = np.eye(t.shape[0])
    acc = np.zeros_like(t)
    for x, w in zip(xs, ws):
        u = (x + 1.0) / 2.0
        s = u / (1.0 - u)
        jac = 1.0 / (1.0 - u) ** 2
        acc += (w / 2.0) * jac * np.linalg.solve(s * s * eye + t, eye)
    return (2.0 / math.pi) * acc


def normalized_d(cplx: CubeComplex, weights: Weights = None) -> np.ndarray:
    """The normalized differential d (I + Laplacian)^(-1/2), graded."""
    raising = assemble_raising(cplx, weights).matrix.astype(np.float64)
    full = assemble_D(cplx, weights).matrix.astype(np.float64)
    t = np.eye(full.shape[0]) + full @ full
    return raising @ inv_sqrt_spectral(t)


def _shifted_square(cplx: CubeComplex, t: float, weighted: bool):
    w = deformation_weights(cplx, t) if weighted else None
    s = assemble_D(cplx, w).matrix.astype(np.float64)
    p = base_projection(cplx).astype(np.float64)
    return s, p, p + s @ s


def f_t_operator(cplx: CubeComplex, t: float, weighted: bool = False) -> np.ndarray:
    """The bounded transform D (P + D^2)^(-1/2) in the t-frame."""
    s, _, shifted = _shifted_square(cplx, t, weighted)
    return s @ inv_sqrt_spectral(shifted)


def f_t_family(cplx: CubeComplex, t_grid: Iterable[float],
               weighted: bool = False) -> list[tuple[float, np.ndarray]]:
    return [(t, f_t_operator(cplx, t, weighted)) for t in t_grid]


def fredholm_residual(cplx: CubeComplex, t: float, weighted: bool = False) -> float:
    """Deviation of F^2 from I - P (P + D^2)^(-1)."""
    s, p, shifted = _shifted_square(cplx, t, weighted)
    f = s @ inv_sqrt_spectral(shifted)
    eye = np.eye(s.shape[0])
    target = eye - p @ np.linalg.solve(shifted, eye)
    return float(np.linalg.norm(f @ f - target, 2))


def homotopy_residual(cplx: CubeComplex, t: float, weighted: bool = False) -> float:
    """Deviation of h d' + d' h from I - P (P + D^2)^(-1).

    d' is the degree-raising block normalized by (P + D^2)^(-1/2) and h is
    its adjoint; in this frame adjoint means plain transpose.
    """
    w = deformation_weights(cplx, t) if weighted else None
    s, p, shifted = _shifted_square(cplx, t, weighted)
    raising = assemble_raising(cplx, w).matrix.astype(np.float64)
    dprime = raising @ inv_sqrt_spectral(shifted)
    h = dprime.T
    eye = np.eye(s.shape[0])
    target = eye - p @ np.linalg.solve(shifted, eye)
    return float(np.linalg.norm(h @ dprime + dprime @ h - target, 2))


def resolvent_bounds(cplx: CubeComplex, t: float, lambdas: Iterable[float],
                     weighted: bool = False) -> list[dict]:
    """Resolvent norms of the shifted operator against the exact bound.

    The bound |1 + i lambda|^(-1) holds because (D + P)^2 is at least the
    identity once the projection closes the kernel.
    """
    s, p, _ = _shifted_square(cplx, t, weighted)
    out = []
    for lam in lambdas:
        res = resolvent(s + p, 1j * lam)
        norm = float(np.linalg.norm(res, 2))
        out.append({
            "lambda": lam,
            "norm": norm,
            "bound": 1.0 / abs(1 + 1j * lam),
        })
    return out


def basepoint_decay_sweep(cplx: CubeComplex, p_vertex: int, q_vertex: int,
                          t_grid: Iterable[float]) -> dict:
    """Base-change commutator norms over a t grid, with a fitted slope.

    Equal base points give identically zero norms.  Every norm must be
    finite; the slope bounds norm/t over the sub-unit grid points.
    """
    norms = []
    for t in t_grid:
        if p_vertex == q_vertex:
            norms.append((t, 0.0))
            continue
        norms.append((t, basepoint_commutator_norm(cplx, p_vertex, q_vertex, t)))
    for t, value in norms:
        if not math.isfinite(value):
            raise AssertionError("commutator norm at t=%r is not finite" % t)
    slope = max(
        (value / t for t, value in norms if t <= 1.0 and t > 0),
        default=0.0)
    return {"norms": norms, "slope_bound": slope}


def format_t(t: float) -> str:
    """Canonical text form of a deformation parameter."""
    if t == math.inf:
        return "inf"
    return repr(float(t))


def fredholm_report(cplx: CubeComplex, t_grid: Iterable[float],
                    weighted: bool = False,
                    lambdas: Iterable[float] = (0.0, 1.0, 10.0)) -> dict:
    """JSON-ready summary of the spectral identities over a t grid."""
    lambdas = list(lambdas)
    neighbor = None
    base = cplx.base_vertex
    for h in range(cplx.n_hyperplanes):
        v = base ^ cplx.mask(h)
        if cplx.contains_vertex(v):
            neighbor = v
            break
    per_t = []
    for t in t_grid:
        w = deformation_weights(cplx, t) if weighted else None
        spectra = []
        for q in range(cplx.dimension + 1):
            lap = laplacian_matrix(cplx, q, w).astype(np.float64)
            spectra.append(sorted(float(x) for x in np.linalg.eigvalsh(lap)))
        entry = {
            "t": format_t(t),
            "fredholm_residual": fredholm_residual(cplx, t, weighted),
            "homotopy_residual": homotopy_residual(cplx, t, weighted),
            "resolvent_bounds": resolvent_bounds(cplx, t, lambdas, weighted),
            "basepoint_norms": [],
            "spectra": spectra,
        }
        if neighbor is not None:
            entry["basepoint_norms"].append({
                "pair": [cplx.vertex_bits(base), cplx.vertex_bits(neighbor)],
                "norm": basepoint_commutator_norm(cplx, base, neighbor, t),
            })
        per_t.append(entry)
    return {
        "schema": 1,
        "n_hyperplanes": cplx.n_hyperplanes,
        "n_vertices": cplx.n_vertices,
        "weighted": bool(weighted),
        "per_t": per_t,
    }
