"""Command-line front end: generation, validation, check suites, sweeps.

Commands:

* ``gen``       write a complex document (tree, grid, cube, random-median)
* ``validate``  parse and validate a document, print a summary report
* ``check``     run one named invariant suite, emit a JSON report
* ``sweep``     emit the deformation pairing sweep as CSV

Exit codes: 0 on success, 1 when validation or a check suite fails, 2 on
usage errors.  All output is deterministic: the same command, seed, and
input produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import CubeComplex, CxcParseError, InvalidComplex, parse_cxc, write_cxc
from .deformation import (
    INF,
    d_t_matrix,
    deformation_weights,
    delta_t_matrix,
    gram_matrix,
    pairing_limit,
    pairing_value,
    symbol_representative,
    u_t_matrix,
    w_hat_matrix,
    w_path_matrix,
    w_step_matrix,
)
from .differential import (
    cohomology_ranks,
    d_matrix,
    delta_matrix,
    hook_matrix,
    laplacian_matrix,
    spectral_profile,
    wedge_matrix,
)
from .fredholm import (
    assemble_D,
    base_projection,
    format_t,
    fredholm_residual,
    homotopy_residual,
    inv_sqrt_integral,
    inv_sqrt_spectral,
    normalized_d,
    resolvent_bounds,
)
from .generate import grid_complex, hypercube, random_median_complex, star_tree
from .parallelism import (
    class_complex,
    enumerate_classes,
    nearest_in_class,
    vertex_to_class_bijection,
)
from .symbols import (
    ps_basis,
    ps_cohomology_ranks,
    ps_d_matrix,
    ps_delta_matrix,
    ps_dimension,
    ps_laplacian,
    ps_type_of_index,
    symbol_key,
)

__all__ = ["DEFAULT_TOLERANCES", "RunConfig", "build_parser", "main"]

# Module-stated thresholds, overridable per name with --tol name=value.
DEFAULT_TOLERANCES: dict[str, float] = {
    # jv
    "d_squared": 0.0,
    "delta_transpose": 0.0,
    "laplacian_diagonal": 0.0,
    "laplacian_weighted": 1e-12,
    "wedge_hook_antisymmetry": 0.0,
    "cohomology_ranks": 0.0,
    # ps
    "ps_d_squared": 0.0,
    "ps_delta_squared": 0.0,
    "ps_delta_transpose": 0.0,
    "ps_laplacian_scalar": 0.0,
    "ps_homotopy": 1e-12,
    "ps_dimension_count": 0.0,
    "ps_cohomology_ranks": 0.0,
    # parallel
    "class_count": 0.0,
    "vertex_class_bijection": 0.0,
    "nearest_verified": 0.0,
    "class_complex_valid": 0.0,
    # field
    "gram_psd": 1e-10,
    "unitarity_bridge": 1e-9,
    "path_independence": 1e-10,
    "d_t_squared": 1e-10,
    "d_t_adjoint": 1e-9,
    "w_hat_unitary": 1e-12,
    # fredholm
    "d_symmetric": 0.0,
    "projection_commutes": 0.0,
    "fredholm_identity": 1e-9,
    "homotopy_identity": 1e-8,
    "resolvent_bound": 1e-12,
    "inv_sqrt_quadrature": 1e-6,
    "normalized_d_identity": 1e-9,
}


@dataclass
class RunConfig:
    """One resolved command invocation."""

    command: str
    input: str | None = None
    out: str | None = None
    kind: str | None = None
    params: dict = field(default_factory=dict)
    seed: int = 0
    t_grid: tuple[float, ...] | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    select: tuple[str, ...] | None = None
    suite: str | None = None


# -- argument handling -----------------------------------------------------------


def _parse_t_grid(text: str, parser: argparse.ArgumentParser) -> tuple[float, ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "inf":
            out.append(INF)
            continue
        try:
            value = float(tok)
        except ValueError:
            parser.error("bad t value %r (comma-separated numbers, 'inf' allowed)" % tok)
        if not value > 0:
            parser.error("t values must be positive; the t=0 limit rows are always included")
        out.append(value)
    if not out:
        parser.error("--t needs at least one value")
    return tuple(out)


def _parse_tols(items: list[str], parser: argparse.ArgumentParser) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            parser.error("--tol expects name=value, got %r" % item)
        if name not in DEFAULT_TOLERANCES:
            parser.error("unknown tolerance name %r" % name)
        try:
            out[name] = float(value)
        except ValueError:
            parser.error("bad tolerance value %r" % value)
    return out


def _parse_dims(text: str, parser: argparse.ArgumentParser) -> list[int]:
    try:
        dims = [int(part) for part in text.split("x")]
    except ValueError:
        dims = []
    if not dims or any(d < 1 for d in dims):
        parser.error("--dims expects AxBx... with each entry >= 1, got %r" % text)
    return dims


def _load_complex(path: str, parser: argparse.ArgumentParser) -> CubeComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        parser.error(str(exc))
    try:
        return parse_cxc(text)
    except (CxcParseError, InvalidComplex) as exc:
        parser.error("%s: %s" % (path, exc))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- gen / validate --------------------------------------------------------------


def _cmd_gen(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    p = cfg.params
    try:
        if cfg.kind == "tree":
            cplx = star_tree(p["leaves"])
        elif cfg.kind == "grid":
            cplx = grid_complex(p["dims"])
        elif cfg.kind == "cube":
            cplx = hypercube(p["dim"])
        else:
            cplx = random_median_complex(p["n"], p["k"], cfg.seed)
    except (ValueError, InvalidComplex) as exc:
        parser.error(str(exc))
    try:
        text = write_cxc(cplx)
    except ValueError:
        parser.error("generated complex has no hyperplanes; increase --n or --k")
    _emit(text, cfg.out)
    return 0


def _cmd_validate(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    try:
        text = Path(cfg.input).read_text()
    except OSError as exc:
        parser.error(str(exc))
    try:
        cplx = parse_cxc(text)
    except (CxcParseError, InvalidComplex) as exc:
        _emit("result invalid\nreason %s\n" % exc, cfg.out)
        return 1
    lines = [
        "vertices %d" % cplx.n_vertices,
        "hyperplanes %d" % cplx.n_hyperplanes,
        "dimension %d" % cplx.dimension,
        "cubes %s" % " ".join(
            str(len(cplx.cubes(q))) for q in range(cplx.dimension + 1)),
        "bounded-geometry %d" % cplx.bounded_geometry_statistic(),
        "median ok",
        "connected ok",
        "result valid",
    ]
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


# -- check suites ----------------------------------------------------------------


def _check(name: str, residual: float, tols: dict[str, float]) -> dict:
    threshold = tols[name]
    return {
        "name": name,
        "residual": float(residual),
        "threshold": float(threshold),
        "pass": bool(float(residual) <= float(threshold)),
    }


def _max_abs(m: np.ndarray) -> float:
    return float(np.abs(m).max()) if m.size else 0.0


def _suite_jv(cplx, cfg, rng, tols):
    dim = cplx.dimension
    checks = []

    r = 0.0
    for q in range(dim):
        r = max(r, _max_abs(d_matrix(cplx, q + 1) @ d_matrix(cplx, q)))
    checks.append(_check("d_squared", r, tols))

    r = 0.0
    for q in range(dim):
        r = max(r, _max_abs(delta_matrix(cplx, q + 1) - d_matrix(cplx, q).T))
    checks.append(_check("delta_transpose", r, tols))

    r = 0.0
    for q in range(dim + 1):
        lap = laplacian_matrix(cplx, q)
        expected = np.diag([
            prof.q + prof.p
            for prof in (spectral_profile(cplx, c) for c in cplx.cubes(q))
        ]) if cplx.cubes(q) else np.zeros((0, 0), dtype=np.int64)
        r = max(r, _max_abs(lap - expected))
    checks.append(_check("laplacian_diagonal", r, tols))

    w = deformation_weights(cplx, 1.0)
    r = 0.0
    for q in range(dim + 1):
        lap = laplacian_matrix(cplx, q, w)
        if not lap.size:
            continue
        expected = np.diag([
            prof.q_w + prof.p_w
            for prof in (spectral_profile(cplx, c, w) for c in cplx.cubes(q))
        ])
        scale = max(1.0, _max_abs(expected))
        r = max(r, _max_abs(lap - expected) / scale)
    checks.append(_check("laplacian_weighted", r, tols))

    r = 0.0
    for h1 in range(min(cplx.n_hyperplanes, 6)):
        for h2 in range(min(cplx.n_hyperplanes, 6)):
            if h1 == h2:
                continue
            for q in range(dim + 1):
                if q + 2 <= dim:
                    a = wedge_matrix(cplx, h1, q + 1) @ wedge_matrix(cplx, h2, q)
                    b = wedge_matrix(cplx, h2, q + 1) @ wedge_matrix(cplx, h1, q)
                    r = max(r, _max_abs(a + b))
                if q + 1 <= dim:
                    a = hook_matrix(cplx, h1, q + 1) @ wedge_matrix(cplx, h2, q)
                    if q >= 1:
                        a = a + wedge_matrix(cplx, h2, q - 1) @ hook_matrix(cplx, h1, q)
                    r = max(r, _max_abs(a))
    checks.append(_check("wedge_hook_antisymmetry", r, tols))

    got = cohomology_ranks(cplx)
    expected_ranks = (1,) + (0,) * dim
    checks.append(_check(
        "cohomology_ranks",
        sum(abs(a - b) for a, b in zip(got, expected_ranks)), tols))
    return checks, {}


def _suite_ps(cplx, cfg, rng, tols):
    dim = cplx.dimension
    checks = []

    r = 0.0
    for q in range(dim):
        r = max(r, _max_abs(ps_d_matrix(cplx, q + 1) @ ps_d_matrix(cplx, q)))
    checks.append(_check("ps_d_squared", r, tols))

    r = 0.0
    for q in range(2, dim + 1):
        r = max(r, _max_abs(ps_delta_matrix(cplx, q - 1) @ ps_delta_matrix(cplx, q)))
    checks.append(_check("ps_delta_squared", r, tols))

    r = 0.0
    for q in range(dim):
        r = max(r, _max_abs(ps_delta_matrix(cplx, q + 1) - ps_d_matrix(cplx, q).T))
    checks.append(_check("ps_delta_transpose", r, tols))

    r = 0.0
    for q in range(dim + 1):
        lap = ps_laplacian(cplx, q)
        if not lap.size:
            continue
        expected = np.diag(ps_type_of_index(cplx, q) + q)
        r = max(r, _max_abs(lap - expected))
    checks.append(_check("ps_laplacian_scalar", r, tols))

    # h = delta / (p + q) column-wise; p + q is constant along d, so
    # h d + d h telescopes to the identity off the type-(0, 0) line.
    def hmat(q):
        divisors = np.maximum(ps_type_of_index(cplx, q) + q, 1).astype(np.float64)
        return ps_delta_matrix(cplx, q).astype(np.float64) / divisors[None, :]

    r = 0.0
    for q in range(dim + 1):
        n_q = ps_dimension(cplx, q)
        if n_q == 0:
            continue
        total = np.zeros((n_q, n_q))
        if q < dim:
            total += hmat(q + 1) @ ps_d_matrix(cplx, q)
        if q >= 1:
            total += ps_d_matrix(cplx, q - 1) @ hmat(q)
        target = np.eye(n_q)
        if q == 0:
            types = ps_type_of_index(cplx, 0)
            for j in np.flatnonzero(types == 0):
                target[j, j] = 0.0
        r = max(r, _max_abs(total - target))
    checks.append(_check("ps_homotopy", r, tols))

    total_dim = sum(ps_dimension(cplx, q) for q in range(dim + 1))
    expected_dim = sum(
        2 ** len(klass.determining) for klass in enumerate_classes(cplx))
    checks.append(_check("ps_dimension_count", abs(total_dim - expected_dim), tols))

    got = ps_cohomology_ranks(cplx)
    expected_ranks = (1,) + (0,) * dim
    checks.append(_check(
        "ps_cohomology_ranks",
        sum(abs(a - b) for a, b in zip(got, expected_ranks)), tols))
    return checks, {}


def _suite_parallel(cplx, cfg, rng, tols):
    checks = []
    classes = enumerate_classes(cplx)
    checks.append(_check("class_count", abs(len(classes) - cplx.n_vertices), tols))

    try:
        mapping = vertex_to_class_bijection(cplx)
        bad = 0 if len(set(mapping.values())) == cplx.n_vertices else 1
    except AssertionError:
        bad = 1
    checks.append(_check("vertex_class_bijection", bad, tols))

    pairs = [(v, klass) for v in cplx.vertices for klass in classes]
    stride = max(1, len(pairs) // 4096)
    failures = 0
    for v, klass in pairs[::stride]:
        try:
            nearest_in_class(cplx, v, klass, verify=True)
        except AssertionError:
            failures += 1
    checks.append(_check("nearest_verified", failures, tols))

    invalid = 0
    for klass in classes:
        try:
            class_complex(cplx, klass)
        except InvalidComplex:
            invalid += 1
    checks.append(_check("class_complex_valid", invalid, tols))
    return checks, {"vertices": cplx.n_vertices, "classes": len(classes)}


def _random_loop_residual(cplx, rng, t, loops=20, walk_length=8):
    """Worst loop deviation from the identity among random class walks."""
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
            worst = max(worst, float(np.linalg.norm(prod - np.eye(len(members)), 2)))
    return worst


def _base_neighbor(cplx):
    for h in range(cplx.n_hyperplanes):
        v = cplx.base_vertex ^ cplx.mask(h)
        if cplx.contains_vertex(v):
            return v
    return None


def _suite_field(cplx, cfg, rng, tols):
    dim = cplx.dimension
    grid = cfg.t_grid or (0.1, 0.5, 1.0, 2.0, INF)
    loop_grid = cfg.t_grid or (0.3, 1.0)
    dt_grid = cfg.t_grid or (0.1, 1.0)
    adj_grid = cfg.t_grid or (0.5, 2.0)
    checks = []

    r = 0.0
    for t in grid:
        for q in range(dim + 1):
            g = gram_matrix(cplx, q, t)
            if g.size:
                r = max(r, max(0.0, -float(np.linalg.eigvalsh(g)[0])))
    checks.append(_check("gram_psd", r, tols))

    r = 0.0
    for t in grid:
        for q in range(dim + 1):
            u = u_t_matrix(cplx, q, t)
            r = max(r, _max_abs(u.T @ u - gram_matrix(cplx, q, t)))
    checks.append(_check("unitarity_bridge", r, tols))

    r = 0.0
    for t in loop_grid:
        if t == INF:
            continue
        r = max(r, _random_loop_residual(cplx, rng, t))
    checks.append(_check("path_independence", r, tols))

    r = 0.0
    for t in dt_grid:
        for q in range(dim):
            r = max(r, _max_abs(
                np.asarray(d_t_matrix(cplx, q + 1, t), dtype=np.float64)
                @ np.asarray(d_t_matrix(cplx, q, t), dtype=np.float64)))
    checks.append(_check("d_t_squared", r, tols))

    r = 0.0
    for t in adj_grid:
        for q in range(dim):
            lhs = np.asarray(d_t_matrix(cplx, q, t), dtype=np.float64).T \
                @ gram_matrix(cplx, q + 1, t)
            rhs = gram_matrix(cplx, q, t) \
                @ np.asarray(delta_t_matrix(cplx, q + 1, t), dtype=np.float64)
            r = max(r, _max_abs(lhs - rhs))
    checks.append(_check("d_t_adjoint", r, tols))

    r = 0.0
    neighbor = _base_neighbor(cplx)
    if neighbor is not None:
        for q in range(dim + 1):
            what = w_hat_matrix(cplx, q, neighbor, cplx.base_vertex, t=1.0)
            r = max(r, _max_abs(what.T @ what - np.eye(what.shape[0])))
    checks.append(_check("w_hat_unitary", r, tols))
    return checks, {}


def _suite_fredholm(cplx, cfg, rng, tols):
    grid = cfg.t_grid or (0.1, 1.0, INF)
    checks = []

    d_full = assemble_D(cplx).matrix
    checks.append(_check("d_symmetric", _max_abs(d_full - d_full.T), tols))

    proj = base_projection(cplx)
    r = max(_max_abs(d_full @ proj), _max_abs(proj @ d_full),
            _max_abs(proj @ proj - proj))
    checks.append(_check("projection_commutes", r, tols))

    checks.append(_check(
        "fredholm_identity",
        max(fredholm_residual(cplx, t, weighted=True) for t in grid), tols))
    checks.append(_check(
        "homotopy_identity",
        max(homotopy_residual(cplx, t, weighted=True) for t in grid), tols))

    r = 0.0
    for t in grid:
        for entry in resolvent_bounds(cplx, t, (0.0, 1.0, 10.0), weighted=True):
            r = max(r, max(0.0, entry["norm"] - entry["bound"]))
    checks.append(_check("resolvent_bound", r, tols))

    d_float = d_full.astype(np.float64)
    shifted = proj.astype(np.float64) + d_float @ d_float
    reference = inv_sqrt_spectral(shifted)
    quad = inv_sqrt_integral(shifted, nodes=200)
    rel = float(np.linalg.norm(quad - reference, 2) / np.linalg.norm(reference, 2))
    checks.append(_check("inv_sqrt_quadrature", rel, tols))

    dprime = normalized_d(cplx)
    eye = np.eye(d_float.shape[0])
    target = eye - np.linalg.solve(eye + d_float @ d_float, eye)
    r = float(np.linalg.norm(dprime @ dprime.T + dprime.T @ dprime - target, 2))
    checks.append(_check("normalized_d_identity", r, tols))
    return checks, {}


_SUITES = {
    "jv": _suite_jv,
    "ps": _suite_ps,
    "parallel": _suite_parallel,
    "field": _suite_field,
    "fredholm": _suite_fredholm,
}


def _cmd_check(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    cplx = _load_complex(cfg.input, parser)
    rng = np.random.default_rng(cfg.seed)
    checks, extra = _SUITES[cfg.suite](cplx, cfg, rng, cfg.tolerances)
    report = {
        "schema": 1,
        "suite": cfg.suite,
        "input": cfg.input,
        **({"counts": extra} if extra else {}),
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    _emit(json.dumps(report, indent=2) + "\n", cfg.out)
    return 0 if report["pass"] else 1


# -- sweep -----------------------------------------------------------------------


def _cmd_sweep(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    cplx = _load_complex(cfg.input, parser)
    grid = sorted(set(cfg.t_grid or (0.1, 1.0, INF)))

    entries = []
    for q in range(cplx.dimension + 1):
        for sym in ps_basis(cplx, q):
            entries.append((symbol_key(sym, cplx), q, sym))
    if cfg.select is not None:
        wanted = [s for s in cfg.select if s]
        known = {key for key, _, _ in entries}
        for s in wanted:
            if s not in known:
                parser.error("unknown symbol key %r" % s)
        keep = set(wanted)
        entries = [e for e in entries if e[0] in keep]

    reps = {key: symbol_representative(cplx, sym) for key, _, sym in entries}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "row_key", "col_key", "value"])

    def rows_at(t):
        for key1, q1, _ in entries:
            pair1, o1 = reps[key1]
            for key2, q2, _ in entries:
                if q1 != q2:
                    continue
                pair2, o2 = reps[key2]
                if t == 0.0:
                    value = float(pairing_limit(cplx, pair1, o1, pair2, o2))
                else:
                    value = float(pairing_value(cplx, pair1, o1, pair2, o2, t))
                writer.writerow([format_t(t), key1, key2, repr(value)])

    rows_at(0.0)
    for t in grid:
        rows_at(t)
    _emit(buf.getvalue(), cfg.out)
    return 0


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubedeform",
        description="Cube complex deformation toolkit command line.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a complex document")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    tree = gen_sub.add_parser("tree", help="star tree")
    tree.add_argument("--leaves", type=int, required=True)
    grid = gen_sub.add_parser("grid", help="grid of cells, e.g. --dims 2x1")
    grid.add_argument("--dims", required=True)
    cube = gen_sub.add_parser("cube", help="full hypercube")
    cube.add_argument("--dim", type=int, required=True)
    rmed = gen_sub.add_parser("random-median", help="median closure of random seeds")
    rmed.add_argument("--n", type=int, required=True, help="coordinate count")
    rmed.add_argument("--k", type=int, required=True, help="seed vertex count")
    for p in (tree, grid, cube, rmed):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")

    val = sub.add_parser("validate", help="validate a complex document")
    val.add_argument("--input", required=True)
    val.add_argument("--out")

    chk = sub.add_parser("check", help="run an invariant suite")
    chk.add_argument("suite", choices=sorted(_SUITES))
    chk.add_argument("--input", required=True)
    chk.add_argument("--out")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--t", dest="t")
    chk.add_argument("--tol", action="append", default=[],
                     help="override a threshold, name=value; repeatable")

    swp = sub.add_parser("sweep", help="emit the pairing sweep CSV")
    swp.add_argument("--input", required=True)
    swp.add_argument("--out")
    swp.add_argument("--t", dest="t")
    swp.add_argument("--select", action="append",
                     help="restrict to these symbol keys; repeatable")

    return parser


def _config_from_args(args: argparse.Namespace,
                      parser: argparse.ArgumentParser) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.input = getattr(args, "input", None)
    cfg.out = getattr(args, "out", None)
    cfg.seed = getattr(args, "seed", 0)
    cfg.suite = getattr(args, "suite", None)
    if args.command == "gen":
        cfg.kind = args.kind
        if args.kind == "tree":
            cfg.params = {"leaves": args.leaves}
        elif args.kind == "grid":
            cfg.params = {"dims": _parse_dims(args.dims, parser)}
        elif args.kind == "cube":
            cfg.params = {"dim": args.dim}
        else:
            cfg.params = {"n": args.n, "k": args.k}
    if getattr(args, "t", None):
        cfg.t_grid = _parse_t_grid(args.t, parser)
    cfg.tolerances = dict(DEFAULT_TOLERANCES)
    cfg.tolerances.update(_parse_tols(getattr(args, "tol", []) or [], parser))
    if getattr(args, "select", None) is not None:
        cfg.select = tuple(args.select)
    return cfg


_COMMANDS = {
    "gen": _cmd_gen,
    "validate": _cmd_validate,
    "check": _cmd_check,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args, parser)
    return _COMMANDS[cfg.command](cfg, parser)


if __name__ == "__main__":
    sys.exit(main())
