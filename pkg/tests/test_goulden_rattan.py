from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from kerov.algebra import CumulantPoly, Family
from kerov.cumulants import genus_part, sigma
from kerov.goulden_rattan import (
    PreconditionViolated,
    c_series,
    gr_genus_part,
    gr_kerov,
    inverse_c_series,
    p_lambda,
    p_series,
    script_r,
    script_r_weights,
)
from kerov.series import t_mul
from oracles import c_series_coeff

F = Family.FREE


def numeric_c(rvals, N):
    """C(t) for numeric R_i (rvals[i] = R_i) as a list, from the composition sum."""
    out = []
    for n in range(N + 1):
        total = Fraction(0)
        for key, c in c_series_coeff(n).items():
            term = Fraction(c)
            for i in key:
                term *= rvals[i]
            total += term
        out.append(total)
    return out


def numeric_p(m, rvals, N):
    C = numeric_c(rvals, N)

    def times_c(s):
        return [sum(C[i] * s[n - i] for i in range(n + 1)) for n in range(N + 1)]

    s = list(C)
    for j in range(m - 1):
        s = times_c([(n + j) * s[n] for n in range(N + 1)])
    return [-x / factorial(m) for x in s]


def test_script_r():
    assert script_r(4) == CumulantPoly.var(F, 4, 3)
    assert set(script_r_weights(5)) == {2, 3, 4, 5}


@pytest.mark.parametrize("N", range(0, 9))
def test_c_series_matches_composition_sum(N):
    C = c_series(N)
    for n in range(N + 1):
        assert C[n] == CumulantPoly(F, c_series_coeff(n))


def test_inverse_c_is_the_denominator():
    inv = inverse_c_series(6)
    assert inv[0] == 1 and inv[1] == 0
    for i in range(2, 7):
        assert inv[i] == -script_r(i)
    assert t_mul(inv, c_series(6))[6] == 0


def test_p_series_small():
    assert p_series(1, 4) == c_series(4).scale(-1)
    p2 = p_series(2, 3)
    assert p2[2] == -CumulantPoly.var(F, 2)
    assert p2[3] == CumulantPoly.var(F, 3, -3)


@given(st.integers(1, 4), st.integers(0, 6), st.lists(st.integers(-3, 3), min_size=7, max_size=7))
def test_p_series_against_numeric_operators(m, N, r):
    rvals = dict(zip(range(2, 9), r))
    got = p_series(m, N)
    want = numeric_p(m, rvals, N)
    for n in range(N + 1):
        assert got[n].evaluate(rvals) == want[n]


def test_p_lambda_is_product_and_order_free():
    assert p_lambda((2, 1), 5) == t_mul(p_series(2, 5), p_series(1, 5))
    assert p_lambda((1, 2), 5) == p_lambda((2, 1), 5)
    with pytest.raises(ValueError):
        p_lambda((), 3)
    with pytest.raises(ValueError):
        p_series(0, 3)


def test_gr_examples():
    assert gr_genus_part(5, 2) == CumulantPoly.var(F, 2, 8)
    assert gr_genus_part(4, 1) == CumulantPoly.var(F, 3, 5)
    assert gr_genus_part(3, 1) == CumulantPoly.var(F, 2)
    assert gr_genus_part(1, 1) == 0


def test_gr_preconditions():
    with pytest.raises(PreconditionViolated):
        gr_genus_part(2, 2)
    with pytest.raises(PreconditionViolated):
        gr_genus_part(4, 0)


@pytest.mark.parametrize("k", range(1, 11))
def test_gr_matches_product_formula(k):
    assert gr_kerov(k) == sigma(k).poly
    for g in range(1, (k + 1) // 2 + 1):
        assert gr_genus_part(k, g) == genus_part(sigma(k), g)
