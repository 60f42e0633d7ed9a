"""Goulden-Rattan operator calculus for genus parts of Kerov polynomials.

With ``C(t) = 1 / (1 - sum_{i>=2} (i-1) R_i t^i)`` and ``D = t d/dt``,

    P_m(t) = -(1/m!) C (D + m - 2) C ... (D + 1) C D C,

every operator acting on everything to its right, ``P_lam`` the product
over the parts, and for ``g >= 1``, ``k >= 2g - 1``

    K_{k,k+1-2g} = -(1/k) [t^{k+1-2g}] sum_{lam |- 2g} mhat_lam(k) P_lam(t) / C(t).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebra import CumulantPoly, Family
from .partitions import mhat, partitions_of
from .series import TSeries, apply_D, t_mul, t_reciprocal

FREE = Family.FREE


class PreconditionViolated(ValueError):
    """Raised for ``(k, g)`` outside the range where the formula holds."""


def script_r(i: int) -> CumulantPoly:
    """``(i - 1) R_i``."""
    return CumulantPoly.var(FREE, i, i - 1)


def script_r_weights(max_index: int) -> dict[int, CumulantPoly]:
    """``{i: (i - 1) R_i}`` for ``2 <= i <= max_index``."""
    return {i: script_r(i) for i in range(2, max_index + 1)}


@lru_cache(maxsize=None)
def c_series(N: int) -> TSeries:
    """``C(t)`` truncated at ``t^N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    denom = [CumulantPoly.constant(FREE, 1)] + [CumulantPoly.zero(FREE)] * N
    for i in range(2, N + 1):
        denom[i] = -script_r(i)
    return t_reciprocal(TSeries(denom, N, FREE))


@lru_cache(maxsize=None)
def inverse_c_series(N: int) -> TSeries:
    """``1 / C(t)``, which is just ``1 - sum (i-1) R_i t^i`` truncated."""
    return t_reciprocal(c_series(N))


@lru_cache(maxsize=None)
def p_series(m: int, N: int) -> TSeries:
    """``P_m(t)`` truncated at ``t^N``, evaluated by right-nested operator application."""
    if m < 1:
        raise ValueError("m must be positive")
    C = c_series(N)
    S = C
    for j in range(m - 1):
        S = t_mul(C, apply_D(S, j))
    return S.scale(Fraction(-1, factorial(m)))


def p_lambda(lam: Sequence[int], N: int) -> TSeries:
    """``prod_j P_{lam_j}(t)`` truncated at ``t^N``."""
    if not lam:
        raise ValueError("lam must be nonempty")
    if any(p < 1 for p in lam):
        raise ValueError("parts must be positive")
    return _p_lambda(tuple(sorted(lam, reverse=True)), N)


@lru_cache(maxsize=None)
def _p_lambda(lam: tuple, N: int) -> TSeries:
    if len(lam) == 1:
        return p_series(lam[0], N)
    return t_mul(_p_lambda(lam[:-1], N), p_series(lam[-1], N))


@lru_cache(maxsize=None)
def _gr_contribution(lam: tuple, N: int) -> CumulantPoly:
    # [t^N] P_lam(t) / C(t)
    return t_mul(_p_lambda(lam, N), inverse_c_series(N))[N]


def gr_genus_part(k: int, g: int) -> CumulantPoly:
    """``K_{k,k+1-2g}`` from the Goulden-Rattan formula."""
    if g < 1:
        raise PreconditionViolated("the formula needs g >= 1")
    if k < 2 * g - 1:
        raise PreconditionViolated(f"the formula needs k >= 2g - 1, got k={k}, g={g}")
    N = k + 1 - 2 * g
    total = CumulantPoly.zero(FREE)
    for lam in partitions_of(2 * g):
        w = mhat(lam, k)
        if w:
            total = total + _gr_contribution(tuple(lam), N).scale(w)
    return total.scale(Fraction(-1, k))


def gr_kerov(k: int) -> CumulantPoly:
    """``K_k`` assembled as ``R_{k+1}`` plus all Goulden-Rattan genus parts."""
    total = CumulantPoly.var(FREE, k + 1)
    for g in range(1, (k + 1) // 2 + 1):
        total = total + gr_genus_part(k, g)
    return total


def clear_caches() -> None:
    for fn in (c_series, inverse_c_series, p_series, _p_lambda, _gr_contribution):
        fn.cache_clear()
