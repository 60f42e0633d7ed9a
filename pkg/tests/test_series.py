
import pytest
from hypothesis import given, strategies as st

from kerov.algebra import CumulantPoly, Family
from kerov.series import (
    InsufficientDepthData,
    NonUnitConstantTerm,
    TSeries,
    apply_D,
    t_mul,
    t_reciprocal,
    z_mul,
    z_shift_expand,
)
from oracles import convolve, numeric_shift

F = Family.FREE
B = Family.BOOLEAN

monomials = st.lists(st.integers(2, 4), max_size=2).map(lambda m: tuple(sorted(m, reverse=True)))
coef_dicts = st.dictionaries(monomials, st.integers(-4, 4), max_size=3)


def series_from(dicts, order):
    return TSeries([CumulantPoly(F, d) for d in dicts], order, F)


series_data = st.integers(0, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(coef_dicts, min_size=n + 1, max_size=n + 1)))


@given(series_data, series_data)
def test_t_mul_matches_convolution(a, b):
    (na, da), (nb, db) = a, b
    n = min(na, nb)
    got = t_mul(series_from(da, na), series_from(db, nb))
    assert got.order == n
    want = convolve(da, db, n)
    for i in range(n + 1):
        assert got[i] == CumulantPoly(F, want[i])


@given(series_data)
def test_reciprocal_round_trip(a):
    n, d = a
    d = [{(): 1}] + d[1:]
    s = series_from(d, n)
    inv = t_reciprocal(s)
    assert t_mul(s, inv) == TSeries.one(F, n)
    assert t_reciprocal(inv) == s


def test_reciprocal_of_geometric():
    # 1/(1 - R2 t) = sum R2^n t^n
    s = TSeries([CumulantPoly.constant(F, 1), -CumulantPoly.var(F, 2)], 4, F)
    inv = t_reciprocal(s)
    for n in range(5):
        assert inv[n] == CumulantPoly.monomial(F, (2,) * n)


def test_reciprocal_needs_unit_constant():
    with pytest.raises(NonUnitConstantTerm):
        t_reciprocal(TSeries([CumulantPoly.constant(F, 2)], 3, F))
    with pytest.raises(NonUnitConstantTerm):
        t_reciprocal(TSeries([CumulantPoly.var(F, 2)], 3, F))


@given(series_data, series_data, st.integers(-2, 3))
def test_D_is_a_derivation(a, b, shift):
    (na, da), (nb, db) = a, b
    x, y = series_from(da, na), series_from(db, nb)
    assert apply_D(t_mul(x, y)) == t_mul(apply_D(x), y) + t_mul(x, apply_D(y))
    assert apply_D(x, shift) == apply_D(x) + x.scale(shift)


def test_D_examples():
    x = TSeries([CumulantPoly.constant(F, c) for c in (5, 1, 1)], 2, F)
    assert [c.constant_term() for c in apply_D(x).coeffs] == [0, 1, 2]
    assert [c.constant_term() for c in apply_D(x, 2).coeffs] == [10, 3, 4]


def _bvars(n):
    return [CumulantPoly.var(B, j) for j in range(2, n + 2)]


@given(st.integers(-4, 4), st.integers(0, 6), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_shift_expand_against_direct_expansion(a, depth, bvals):
    lz = z_shift_expand(_bvars(6), a, depth)
    want = numeric_shift(bvals, a, depth)
    for e in range(-depth, 2):
        assert lz[e].evaluate(bvals) == want.get(e, 0)


def test_shift_expand_zero_shift():
    lz = z_shift_expand(_bvars(3), 0, 3)
    assert lz[1] == 1 and lz[0] == 0
    assert lz[-1] == -CumulantPoly.var(B, 2)
    assert lz[-3] == -CumulantPoly.var(B, 4)


def test_shift_expand_needs_enough_coefficients():
    with pytest.raises(InsufficientDepthData):
        z_shift_expand(_bvars(2), 1, 3)


def test_shift_expand_below_depth_is_unknown():
    lz = z_shift_expand(_bvars(3), 1, 3)
    with pytest.raises(IndexError):
        lz[-4]


@given(st.integers(-3, 3), st.integers(-3, 3), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_z_mul_against_numeric_product(a, b, bvals):
    depth = 6
    x = z_shift_expand(_bvars(6), a, depth)
    y = z_shift_expand(_bvars(6), b, depth)
    prod = z_mul(x, y)
    assert prod.top == 2 and prod.depth == depth - 1
    nx, ny = numeric_shift(bvals, a, depth), numeric_shift(bvals, b, depth)
    for e in range(-prod.depth, 3):
        want = sum(c1 * ny.get(e - e1, 0) for e1, c1 in nx.items())
        assert prod[e].evaluate(bvals) == want


def test_z_mul_family_mismatch():
    from kerov.algebra import FamilyMismatch

    x = z_shift_expand(_bvars(2), 0, 2)
    y = z_shift_expand([CumulantPoly.var(F, 2), CumulantPoly.var(F, 3)], 0, 2)
    with pytest.raises(FamilyMismatch):
        z_mul(x, y)
