import numpy as np
import pytest

from fatpt.errors import InfeasibleError, InputError
from fatpt.lattice import DivisorClass, intersect, line_class, parse_class, point_class
from fatpt.cokernel import (
    DEFAULT_COLUMN_CEILING,
    cok_dimension,
    fat_point_matrix,
    h0_mE,
    h1_mE,
    monomial_exponents,
    monomial_index,
    mu_rank_oracle,
    predicted_cokernel,
    reduction_to_point,
    splitting_of,
)
from fatpt.splitting import SplittingType
from fatpt.weyl import apply_word, enumerate_exceptional

CUBIC = parse_class("3;2,1,1,1,1,1,1")


def test_neighborhood_cohomology_frozen():
    assert h0_mE(1, 0) == 1
    assert h0_mE(1, -1) == 0
    assert h0_mE(3, 2) == 12
    assert h0_mE(2, -1) == 1
    assert h1_mE(2, -3) == 3
    assert h1_mE(2, -1) == 0
    assert h1_mE(4, -2) == 1
    assert h0_mE(0, 5) == 0 and h1_mE(0, -5) == 0
    with pytest.raises(InputError):
        h0_mE(-1, 0)
    with pytest.raises(InputError):
        h1_mE(-1, 0)


def test_neighborhood_euler_characteristic():
    # h0 - h1 must be the (polynomial) Euler characteristic for every twist
    for m in range(9):
        for t in range(-3 * m - 2, 3 * m + 3):
            assert h0_mE(m, t) - h1_mE(m, t) == m * t + m * (m + 1) // 2, (m, t)


def test_monomial_index_roundtrip():
    for d in (0, 1, 2, 5, 9):
        exps = monomial_exponents(d)
        assert exps.shape == ((d + 1) * (d + 2) // 2, 3)
        assert (exps.sum(axis=1) == d).all()
        idx = monomial_index(d, exps[:, 0], exps[:, 1])
        assert (idx == np.arange(exps.shape[0])).all()


def test_fat_point_matrix_shapes_and_vanishing():
    p = 31991
    rng = np.random.default_rng(4)
    pts = rng.integers(1, p, size=(3, 3), dtype=np.int64)
    mat = fat_point_matrix(pts, 4, (2, 2, 1), p)
    assert mat.rows == 3 + 3 + 1
    assert mat.cols == 15
    ns = mat.nullspace()
    assert ns.rows == 15 - (3 + 3 + 1)
    # every section really vanishes doubly at the first point: value and all
    # first partials are zero there
    exps = monomial_exponents(4)
    x, y, z = (int(v) for v in pts[0])
    for row in ns.a:
        val = 0
        dx = dy = dz = 0
        for c, (i, j, k) in zip(row, exps):
            c = int(c)
            val += c * pow(x, int(i), p) * pow(y, int(j), p) * pow(z, int(k), p)
            if i:
                dx += c * i * pow(x, int(i) - 1, p) * pow(y, int(j), p) * pow(z, int(k), p)
            if j:
                dy += c * j * pow(x, int(i), p) * pow(y, int(j) - 1, p) * pow(z, int(k), p)
            if k:
                dz += c * k * pow(x, int(i), p) * pow(y, int(j), p) * pow(z, int(k) - 1, p)
        assert val % p == 0 and dx % p == 0 and dy % p == 0 and dz % p == 0


def test_fat_point_matrix_conic_through_five():
    p = 31991
    rng = np.random.default_rng(11)
    pts = rng.integers(1, p, size=(5, 3), dtype=np.int64)
    assert fat_point_matrix(pts, 2, (1,) * 5, p).nullspace().rows == 1
    with pytest.raises(InputError):
        fat_point_matrix(pts, 2, (1,) * 4, p)


def test_reduction_to_point():
    word = reduction_to_point(CUBIC)
    assert apply_word(word, CUBIC) == point_class(1, 7)
    with pytest.raises(InputError):
        reduction_to_point(parse_class("2;1,1"))


def test_predicted_cokernel_closed_form():
    st = SplittingType(1, 2)
    assert [predicted_cokernel(m, st) for m in range(4)] == [0, 0, 0, 1]
    assert predicted_cokernel(8, SplittingType(5, 8)) == 0 + 3


def test_splitting_of_forced_vs_pipeline():
    st, provisional = splitting_of(CUBIC)
    assert st == SplittingType(1, 2) and not provisional
    st13, provisional13 = splitting_of(parse_class("13;5,5,5,5,5,5,4,1,1,1,1"))
    assert st13 == SplittingType(5, 8) and provisional13


def test_cubic_dual_route_two_seeds():
    # formula and oracle agree with the closed-form bound for every m
    for seed in (20260814, 12345):
        for m in range(4):
            for method in ("formula", "oracle"):
                v = cok_dimension(CUBIC, m, seed=seed, method=method)
                assert v.splitting == SplittingType(1, 2)
                assert v.predicted == [0, 0, 0, 1][m]
                assert v.computed == v.predicted, (seed, m, method, v)
                assert v.match


def test_both_routes_agree_on_all_small_classes():
    for e in enumerate_exceptional(3):
        d = intersect(e, line_class(e.n))
        if d < 1:
            continue
        for m in range(d + 1):
            for seed in (20260814, 99):
                vf = cok_dimension(e, m, seed=seed, method="formula")
                vo = cok_dimension(e, m, seed=seed, method="oracle")
                assert vf.computed == vo.computed, (e, m, seed)
                assert vf.computed == vf.predicted, (e, m, seed)


def test_medium_class_dual_route():
    e = parse_class("5;2,2,2,2,2,2,1,1")
    st, provisional = splitting_of(e)
    assert st == SplittingType(2, 3) and not provisional
    for m in (2, 4):
        vf = cok_dimension(e, m, method="formula")
        vo = cok_dimension(e, m, method="oracle")
        assert vf.computed == vf.predicted == vo.computed


def test_m_zero_is_trivially_zero():
    v = cok_dimension(CUBIC, 0, method="formula")
    assert v.computed == 0 and v.predicted == 0


def test_cok_dimension_input_validation():
    with pytest.raises(InputError):
        cok_dimension(parse_class("2;1,1"), 1)
    with pytest.raises(InputError):
        cok_dimension(CUBIC, 4)
    with pytest.raises(InputError):
        cok_dimension(CUBIC, -1)
    with pytest.raises(InputError):
        cok_dimension(CUBIC, 1, method="magic")
    with pytest.raises(InputError):
        cok_dimension(DivisorClass(0, (-1, 0, 0)), 0)


def test_column_ceiling_refuses_large_instances():
    e19 = parse_class("19;7,7,7,7,7,7,7,4,1,1,1")
    with pytest.raises(InfeasibleError) as exc:
        cok_dimension(e19, 1, ceiling=10)
    assert "ceiling" in str(exc.value)
    assert DEFAULT_COLUMN_CEILING == 16000


def test_oracle_cap_refuses_large_instances():
    from fatpt.lattice import FatPointScheme

    rng = np.random.default_rng(0)
    pts = rng.integers(1, 101, size=(2, 3), dtype=np.int64)
    with pytest.raises(InfeasibleError):
        mu_rank_oracle(pts, FatPointScheme((1, 1)), 70, 101, max_dim=100)


def test_oracle_route_refuses_oversized_interpolation():
    # Sections stay tiny here but the interpolation matrix would be about
    # 22000 x 22000; the guard must fire before anything is allocated.
    e = parse_class("19;7,7,7,7,7,7,7,4,1,1,1")
    with pytest.raises(InfeasibleError, match="per dimension"):
        cok_dimension(e, 11, 31991, 20260814, method="oracle")
