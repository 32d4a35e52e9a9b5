"""Deformation frame: crossing moves, Gram pairings, conjugated differentials."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp

import helpers
from cubedeform.core import Cube
from cubedeform.deformation import (
    basepoint_commutator_norm,
    basic_cochain,
    basic_cochain_vector,
    basic_section_frame,
    d_t_matrix,
    d_t_pairing,
    d_t_pairing_limit,
    deformation_weights,
    delta_t_matrix,
    gram_matrix,
    oriented_pair_distance,
    pairing_limit,
    pairing_polynomial,
    pairing_sweep,
    pairing_value,
    step_coefficients,
    symbol_representative,
    u_t_apply,
    u_t_matrix,
    w_hat_matrix,
    w_path_matrix,
    w_step_matrix,
)
from cubedeform.differential import OrientedCube, d_matrix, delta_matrix, wedge_matrix
from cubedeform.parallelism import class_of, enumerate_classes, pair_distance
from cubedeform.symbols import canonical_symbol_vertex, cube_pair, symbol_from_raw

INF = float("inf")
FIXED = ("square", "tripod", "cube3", "grid12")
GRID = helpers.TEST_T_GRID


def _frame_pairs(cplx, q):
    return basic_section_frame(cplx, q)


def _fit_and_check(limit, value_at, fit_t=0.1, check_ts=(0.01, 0.001)):
    """Linear-rate convergence: fit the constant at fit_t, verify below."""
    slope = abs(value_at(fit_t) - limit) / fit_t
    for t in check_ts:
        assert abs(value_at(t) - limit) <= 2.0 * slope * t + 1e-12


# -- scalars ------------------------------------------------------------------------


def test_step_coefficients_trig_identity():
    for t in (0.01, 0.1, 0.5, 1.0, 2.0, 5.0):
        a, b = step_coefficients(t)
        assert 0.0 < a < 1.0 and 0.0 < b < 1.0
        assert abs(a * a + b * b - 1.0) <= 1e-15
    assert step_coefficients(INF) == (0.0, 1.0)
    # a decreasing, b increasing in t
    pairs = [step_coefficients(t) for t in (0.1, 0.5, 1.0, 3.0)]
    assert all(x[0] > y[0] and x[1] < y[1] for x, y in zip(pairs, pairs[1:]))
    with pytest.raises(ValueError):
        step_coefficients(0.0)
    with pytest.raises(ValueError):
        step_coefficients(-1.0)


def test_deformation_weights(grid12):
    assert deformation_weights(grid12, 1.0) == [1.0, 1.0, 2.0]
    assert deformation_weights(grid12, 0.5) == [1.0, 1.0, 1.5]
    # slope saturates at one
    assert deformation_weights(grid12, 7.0) == deformation_weights(grid12, INF)
    with pytest.raises(ValueError):
        deformation_weights(grid12, 0.0)


def test_oriented_pair_distance():
    e1 = OrientedCube(Cube(0b00, (0,)), 1)
    e2 = OrientedCube(Cube(0b01, (0,)), 1)
    assert oriented_pair_distance(e1, e2) == 1
    assert oriented_pair_distance(e1, e1) == 0
    assert oriented_pair_distance(e1, e2.reversed()) == INF
    assert oriented_pair_distance(e1, OrientedCube(Cube(0b00, (1,)), 1)) == INF


# -- crossing moves ------------------------------------------------------------------


def test_w_step_is_orthogonal():
    for name in ("square", "cube3", "grid22"):
        cplx = helpers.fixture(name)
        for klass in enumerate_classes(cplx):
            member = klass.members[0]
            for h in range(cplx.n_hyperplanes):
                if h in klass.determining or not cplx.adjacent_cube(member, h):
                    continue
                for t in (0.3, 1.0):
                    w = w_step_matrix(cplx, member, h, t)
                    assert np.abs(w.T @ w - np.eye(len(w))).max() <= 1e-15


def test_w_step_exact_swap(square):
    # in the fully mixed limit the move swaps a member with its opposite
    # face and returns with a sign
    klass = class_of(square, (1,))
    src, far = klass.members
    w = w_step_matrix(square, src, 0, ab=(1, 0))
    assert w.dtype == object
    e_src, e_far = np.eye(2, dtype=int)
    assert (w @ e_src == e_far).all()
    assert (w @ e_far == -e_src).all()
    # and from the far side the roles flip
    w_back = w_step_matrix(square, far, 0, ab=(1, 0))
    assert (w_back @ e_far == e_src).all()


def test_w_step_rejects_non_adjacent(square, tripod):
    with pytest.raises(ValueError, match="not adjacent"):
        w_step_matrix(square, Cube(0b00, (0, 1)), 0, 1.0)
    with pytest.raises(ValueError, match="not adjacent"):
        w_step_matrix(tripod, Cube(0b000, (0,)), 1, 1.0)


def test_w_path_identity_and_inverse(cube3):
    klass = class_of(cube3, (0,))
    m0, m1 = klass.members[0], klass.members[-1]
    same = w_path_matrix(cube3, m0, m0, 1.0)
    assert (same == np.eye(len(klass.members))).all()
    there = w_path_matrix(cube3, m1, m0, 0.8)
    back = w_path_matrix(cube3, m0, m1, 0.8)
    assert np.abs(back @ there - np.eye(len(klass.members))).max() <= 1e-14
    with pytest.raises(ValueError, match="not parallel"):
        w_path_matrix(cube3, m0, Cube(0b000, (1,)), 1.0)


@pytest.mark.parametrize("t", (0.3, 1.0))
def test_w_loops_close(t):
    # crossing out along a random walk and back along the tree path is the
    # identity, independent of the route taken
    for i, cplx in enumerate(helpers.all_fixtures() + helpers.random_complexes(5)):
        rng = np.random.default_rng(97 + i)
        assert helpers.random_loop_residual(cplx, rng, t) <= 1e-10


# -- the deformed inner product ---------------------------------------------------------


@pytest.mark.parametrize("name", FIXED)
def test_gram_matrix_structure(name):
    cplx = helpers.fixture(name)
    for q in range(cplx.dimension + 1):
        g = gram_matrix(cplx, q, 0.9)
        index = cplx.cube_index(q)
        x = math.exp(-0.9 * 0.9 / 2.0)
        assert np.array_equal(g, g.T)
        for klass in enumerate_classes(cplx):
            if klass.dim != q:
                continue
            for m1 in klass.members:
                for m2 in klass.members:
                    d = pair_distance(cplx, m1, m2)
                    assert g[index[m1], index[m2]] == pytest.approx(x ** d)
        # cross-class entries vanish
        total_in_class = sum(
            len(k.members) ** 2 for k in enumerate_classes(cplx) if k.dim == q)
        assert np.count_nonzero(g) == total_in_class
        assert (gram_matrix(cplx, q, INF) == np.eye(len(index))).all()


def test_gram_is_positive_semidefinite():
    for cplx in helpers.all_fixtures() + helpers.random_complexes(5):
        for q in range(cplx.dimension + 1):
            for t in GRID:
                eigs = np.linalg.eigvalsh(gram_matrix(cplx, q, t))
                assert eigs.min() >= -1e-10


@pytest.mark.parametrize("name", FIXED)
def test_frame_change_squares_to_gram(name):
    # transpose(U) U recovers the Gram matrix: the t-frame is orthonormal
    cplx = helpers.fixture(name)
    for q in range(cplx.dimension + 1):
        for t in GRID:
            u = u_t_matrix(cplx, q, t)
            g = gram_matrix(cplx, q, t)
            assert np.abs(u.T @ u - g).max() <= 1e-9


def test_u_t_apply_matches_matrix_columns(cube3):
    klass = class_of(cube3, (1,))
    index = cube3.cube_index(1)
    u = u_t_matrix(cube3, 1, 0.7)
    for member in klass.members:
        out = u_t_apply(cube3, {member: 1.0}, t=0.7)
        col = np.zeros(len(index))
        for cube, value in out.items():
            col[index[cube]] = value
        assert np.abs(col - u[:, index[member]]).max() <= 1e-15


def test_u_t_apply_exact_scalars(square):
    out = u_t_apply(square, {Cube(0b01, (0,)): 1}, ab=(Fraction(3, 5), Fraction(4, 5)))
    assert out and all(isinstance(v, Fraction) for v in out.values())
    assert sum(v * v for v in out.values()) == 1


def test_u_t_class_bases_override(square):
    klass = class_of(square, (0,))
    far = klass.members[-1]
    default = u_t_matrix(square, 1, 0.5)
    rerooted = u_t_matrix(square, 1, 0.5, class_bases={(0,): far})
    assert np.abs(default - rerooted).max() > 0.01
    with pytest.raises(ValueError, match="not a class member"):
        u_t_matrix(square, 1, 0.5, class_bases={(0,): Cube(0b00, (1,))})


def test_framed_sections_concentrate_at_small_t():
    # rooting the frame at the face itself sends the scaled section to the
    # indicator of the opposite face, at a linear rate in t
    for name in ("square", "cube3", "grid22"):
        cplx = helpers.fixture(name)
        for q in range(cplx.dimension):
            index = cplx.cube_index(q)
            for pair, orientation in _frame_pairs(cplx, q):
                p = len(pair.complementary)
                if p == 0:
                    continue
                opp = Cube(
                    pair.d.anchor ^ cplx.mask_of(pair.complementary),
                    pair.d.cutting)
                target = np.zeros(len(index))
                target[index[opp]] = 1.0
                vec = basic_cochain_vector(cplx, pair, orientation)

                def gap(t):
                    u = u_t_matrix(cplx, q, t, class_bases={pair.d.cutting: pair.d})
                    return np.abs((u @ vec) / (-t) ** p - target).max()

                _fit_and_check(0.0, gap)


# -- basic cochains and pairings ----------------------------------------------------------


def test_basic_cochain_hand_example(square):
    pair = cube_pair(square, Cube(0b00, (0, 1)), Cube(0b01, (0,)))
    out = basic_cochain(square, pair, OrientedCube(pair.d, 1))
    assert out == {Cube(0b01, (0,)): 1, Cube(0b00, (0,)): -1}
    vec = basic_cochain_vector(square, pair, OrientedCube(pair.d, 1))
    index = square.cube_index(1)
    assert vec[index[Cube(0b01, (0,))]] == 1
    assert vec[index[Cube(0b00, (0,))]] == -1
    with pytest.raises(ValueError, match="orientation"):
        basic_cochain(square, pair, OrientedCube(Cube(0b00, (0,)), 1))


@pytest.mark.parametrize("name", FIXED)
def test_basic_cochain_shape(name):
    cplx = helpers.fixture(name)
    for q in range(cplx.dimension + 1):
        for pair, orientation in _frame_pairs(cplx, q):
            out = basic_cochain(cplx, pair, orientation)
            p = len(pair.complementary)
            assert len(out) == 1 << p
            assert set(out.values()) <= {1, -1}
            if p:
                assert sum(out.values()) == 0


@pytest.mark.parametrize("name", FIXED)
def test_frame_counts(name):
    cplx = helpers.fixture(name)
    for q in range(cplx.dimension + 1):
        frame = _frame_pairs(cplx, q)
        expect = sum(
            math.comb(c.dim, q) * 2 ** (c.dim - q)
            for p in range(cplx.dimension - q + 1)
            for c in cplx.cubes(q + p) if c.dim == q + p)
        assert len(frame) == expect
        type0 = [pair for pair, _ in frame if not pair.complementary]
        assert len(type0) == len(cplx.cubes(q))
        assert all(o.sign == 1 and pair.d.dim == q for pair, o in frame)


def _mp_same(t):
    with mp.workdps(60):
        tt = mp.mpf(t)
        x = mp.e ** (-tt * tt / 2)
        return float(2 / tt ** 2 * (1 - x))


def _mp_cross(t, d):
    with mp.workdps(60):
        tt = mp.mpf(t)
        x = mp.e ** (-tt * tt / 2)
        return float(-(x ** d) * (1 - x) ** 2 / tt ** 2)


def _edge_section(cplx, h):
    sym = symbol_from_raw(cplx, (h,), (), canonical_symbol_vertex(cplx, (h,)))
    return symbol_representative(cplx, sym)


def test_pairing_polynomial_tree_forms():
    # edge sections on segment complexes: the same-pair polynomial is
    # 2 - 2x and aligned cross pairs give -x^d (1 - x)^2 with d the gap
    path3 = helpers.fixture("path3")
    path4 = helpers.fixture("path4")
    tripod = helpers.fixture("tripod")

    pair0, o0 = _edge_section(path3, 0)
    pair1, o1 = _edge_section(path3, 1)
    pair2, o2 = _edge_section(path3, 2)
    assert pairing_polynomial(path3, pair0, o0, pair0, o0) == (2, {0: 2, 1: -2})
    assert pairing_polynomial(path3, pair0, o0, pair1, o1) == (2, {0: -1, 1: 2, 2: -1})
    assert pairing_polynomial(path3, pair0, o0, pair2, o2) == (2, {1: -1, 2: 2, 3: -1})

    pe0, po0 = _edge_section(path4, 0)
    pe3, po3 = _edge_section(path4, 3)
    assert pairing_polynomial(path4, pe0, po0, pe3, po3) == (2, {2: -1, 3: 2, 4: -1})

    # tripod canonical sections all point at the center, so the cross pair
    # is anti-aligned and comes out positive
    te0, to0 = _edge_section(tripod, 0)
    te1, to1 = _edge_section(tripod, 1)
    assert pairing_polynomial(tripod, te0, to0, te0, to0) == (2, {0: 2, 1: -2})
    assert pairing_polynomial(tripod, te0, to0, te1, to1) == (2, {0: 1, 1: -2, 2: 1})


def test_pairing_value_matches_closed_forms():
    cases = []
    path3 = helpers.fixture("path3")
    path4 = helpers.fixture("path4")
    cases.append((path3, _edge_section(path3, 0), _edge_section(path3, 0), None))
    cases.append((path3, _edge_section(path3, 0), _edge_section(path3, 1), 0))
    cases.append((path3, _edge_section(path3, 0), _edge_section(path3, 2), 1))
    cases.append((path4, _edge_section(path4, 0), _edge_section(path4, 3), 2))
    for cplx, (p1, o1), (p2, o2), gap in cases:
        for t in (0.01, 0.1, 1.0):
            got = pairing_value(cplx, p1, o1, p2, o2, t)
            want = _mp_same(t) if gap is None else _mp_cross(t, gap)
            assert abs(got - want) <= 1e-12
        limit = pairing_limit(cplx, p1, o1, p2, o2)
        assert limit == (1 if gap is None else 0)
        assert pairing_value(cplx, p1, o1, p2, o2, INF) == 0.0


def test_pairing_limits_at_both_ends(square):
    # vertex sections of type zero have constant pairing one
    pair = cube_pair(square, Cube(0b00, ()), Cube(0b00, ()))
    o = OrientedCube(pair.d, 1)
    assert pairing_value(square, pair, o, pair, o, INF) == 1.0
    assert pairing_limit(square, pair, o, pair, o) == 1
    values, limit = pairing_sweep(square, pair, o, pair, o, (0.5, 1.0))
    assert limit == 1
    assert values == [(0.5, 1.0), (1.0, 1.0)]


@pytest.mark.parametrize("name", ("square", "tripod"))
def test_pairing_converges_to_symbol_inner(name):
    # every same-degree pair of basic sections approaches its symbol
    # pairing at a linear rate
    cplx = helpers.fixture(name)
    for q in range(cplx.dimension + 1):
        frame = _frame_pairs(cplx, q)
        for (p1, o1), (p2, o2) in itertools.product(frame, repeat=2):
            limit = pairing_limit(cplx, p1, o1, p2, o2)
            _fit_and_check(
                limit, lambda t: pairing_value(cplx, p1, o1, p2, o2, t))


# -- conjugated differentials ---------------------------------------------------------------


@pytest.mark.parametrize("weighted", (False, True))
@pytest.mark.parametrize("t", (0.1, 1.0))
def test_d_t_squares_to_zero(t, weighted):
    for name in FIXED:
        cplx = helpers.fixture(name)
        for q in range(cplx.dimension - 1):
            hi = d_t_matrix(cplx, q + 1, t, weighted)
            lo = d_t_matrix(cplx, q, t, weighted)
            assert np.abs(hi @ lo).max() <= 1e-10
            dhi = delta_t_matrix(cplx, q + 1, t, weighted)
            dlo = delta_t_matrix(cplx, q + 2, t, weighted)
            assert np.abs(dhi @ dlo).max() <= 1e-10


@pytest.mark.parametrize("t", (0.5, 2.0))
def test_d_t_adjoint_under_gram(t):
    # <d_t f, g>_t = <f, delta_t g>_t as a matrix identity
    for name in FIXED:
        cplx = helpers.fixture(name)
        for q in range(cplx.dimension):
            lhs = d_t_matrix(cplx, q, t).T @ gram_matrix(cplx, q + 1, t)
            rhs = gram_matrix(cplx, q, t) @ delta_t_matrix(cplx, q + 1, t)
            assert np.abs(lhs - rhs).max() <= 1e-9


@pytest.mark.parametrize("name", FIXED)
def test_d_t_at_infinity_is_the_plain_differential(name):
    cplx = helpers.fixture(name)
    w = deformation_weights(cplx, INF)
    for q in range(cplx.dimension):
        assert np.array_equal(d_t_matrix(cplx, q, INF), d_matrix(cplx, q))
        assert np.array_equal(
            d_t_matrix(cplx, q, INF, weighted=True), d_matrix(cplx, q, w))
        assert np.array_equal(
            delta_t_matrix(cplx, q + 1, INF), delta_matrix(cplx, q + 1))


def test_d_t_pairing_hand_case(square):
    sym_lo = symbol_from_raw(square, (0,), (), 0b00)
    sym_hi = symbol_from_raw(square, (), (0,), 0b00)
    p1, o1 = symbol_representative(square, sym_lo)
    p2, o2 = symbol_representative(square, sym_hi)
    assert d_t_pairing_limit(square, p1, o1, p2, o2) == -1
    value = d_t_pairing(square, p1, o1, p2, o2, 0.1)
    assert abs(value - (-1.0)) < 0.01
    _fit_and_check(-1, lambda t: d_t_pairing(square, p1, o1, p2, o2, t))


@pytest.mark.parametrize("name", ("square", "tripod"))
def test_d_t_pairing_converges_to_symbol_differential(name):
    cplx = helpers.fixture(name)
    for q in range(cplx.dimension):
        lows = _frame_pairs(cplx, q)
        highs = _frame_pairs(cplx, q + 1)
        for (p1, o1), (p2, o2) in itertools.product(lows, highs):
            limit = d_t_pairing_limit(cplx, p1, o1, p2, o2)
            _fit_and_check(
                limit, lambda t: d_t_pairing(cplx, p1, o1, p2, o2, t))


def test_d_t_pairing_weighted_same_limit(square):
    # the distance-graded weights flatten out as t goes to zero, so the
    # weighted pairing has the same limit
    sym_lo = symbol_from_raw(square, (0,), (), 0b00)
    sym_hi = symbol_from_raw(square, (), (0,), 0b00)
    p1, o1 = symbol_representative(square, sym_lo)
    p2, o2 = symbol_representative(square, sym_hi)
    _fit_and_check(
        -1, lambda t: d_t_pairing(square, p1, o1, p2, o2, t, weighted=True))


# -- base-point change ------------------------------------------------------------------------


def test_w_hat_identity_and_inverse(grid12):
    for q in range(grid12.dimension + 1):
        n = len(grid12.cubes(q))
        assert (w_hat_matrix(grid12, q, 0b000, 0b000, 1.0) == np.eye(n)).all()
        fwd = w_hat_matrix(grid12, q, 0b100, 0b000, 1.0)
        rev = w_hat_matrix(grid12, q, 0b000, 0b100, 1.0)
        assert np.abs(rev @ fwd - np.eye(n)).max() <= 1e-13
        assert np.abs(fwd.T @ fwd - np.eye(n)).max() <= 1e-12


def test_w_hat_commutes_with_non_separating_wedges():
    # exact rational check: moving the base point commutes with raising
    # along any hyperplane that does not separate the two base points,
    # and picks up the stated correction along the one that does
    a, b = Fraction(3, 5), Fraction(4, 5)
    for name in ("square", "grid22"):
        cplx = helpers.fixture(name)
        for src in cplx.vertices:
            for h_edge in range(cplx.n_hyperplanes):
                tgt = src ^ cplx.mask(h_edge)
                if not cplx.contains_vertex(tgt):
                    continue
                for q in range(cplx.dimension):
                    w_lo = w_hat_matrix(cplx, q, tgt, src, ab=(a, b))
                    w_hi = w_hat_matrix(cplx, q + 1, tgt, src, ab=(a, b))
                    for h in range(cplx.n_hyperplanes):
                        at_src = wedge_matrix(
                            cplx.rebased(src), h, q).astype(object)
                        at_tgt = wedge_matrix(
                            cplx.rebased(tgt), h, q).astype(object)
                        lhs = w_hi @ at_src - at_tgt @ w_lo
                        if h == h_edge:
                            rhs = (1 - a) * at_src - b * at_tgt
                        else:
                            rhs = 0 * at_src
                        assert not (lhs - rhs).any()


def test_basepoint_commutator_decays(square, grid12):
    for cplx, (p, q) in ((square, (0b00, 0b10)), (grid12, (0b000, 0b100))):
        norms = {t: basepoint_commutator_norm(cplx, p, q, t)
                 for t in (1.0, 0.1, 0.01, 0.001)}
        assert norms[1.0] > norms[0.1] > norms[0.01] > norms[0.001]
        assert norms[0.001] <= 0.05 * norms[1.0]
        for t in GRID:
            assert math.isfinite(basepoint_commutator_norm(cplx, p, q, t))
    with pytest.raises(ValueError, match="adjacent"):
        basepoint_commutator_norm(square, 0b00, 0b11, 1.0)
