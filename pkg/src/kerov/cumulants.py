"""Free and Boolean cumulants, and Kerov polynomials from the shifted H-product.

With ``H(z) = z - sum_{j>=1} B_{j+1} z^{-j}`` (the reciprocal Cauchy
transform written through Boolean cumulants),

    (-k) Sigma_k = [z^-1] H(z) H(z-1) ... H(z-k+1),

and ``[z^-1] H(z)^k = (-k) R_{k+1}``.  The Boolean cumulants are then
rewritten in free cumulants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import CumulantPoly, Family, div_exact_integer, homogeneous_part, substitute
from .series import TSeries, t_mul, t_reciprocal, z_mul, z_shift_expand

FREE = Family.FREE
BOOLEAN = Family.BOOLEAN


@dataclass(frozen=True)
class KerovPolynomial:
    """``Sigma_k`` written as a polynomial in the free cumulants."""

    k: int
    poly: CumulantPoly

    def genus_part(self, g: int) -> CumulantPoly:
        return genus_part(self, g)

    def __str__(self) -> str:
        return self.poly.to_text()


# Boolean <-> free conversion tables


@lru_cache(maxsize=None)
def _moment_series(order: int) -> TSeries:
    # M(u) = 1 + sum_n M_n u^n solves M = 1 + sum_j R_j (u M)^j; each pass fixes one more order
    one = CumulantPoly.constant(FREE, 1)
    m = TSeries.one(FREE, 0)
    for n in range(1, order + 1):
        prev = m.coeffs + (CumulantPoly.zero(FREE),)
        x = TSeries([CumulantPoly.zero(FREE)] + list(prev[:n]), n, FREE)  # u * M
        # Horner: R_n X^n + ... + R_2 X^2 = (((R_n X + R_{n-1}) X + ...) + R_2) X^2
        acc = TSeries([CumulantPoly.var(FREE, n)] if n >= 2 else [CumulantPoly.zero(FREE)], n, FREE)
        for j in range(n - 1, 1, -1):
            acc = t_mul(acc, x)
            acc = TSeries([acc.coeffs[0] + CumulantPoly.var(FREE, j)] + list(acc.coeffs[1:]), n, FREE)
        acc = t_mul(t_mul(acc, x), x)
        m = TSeries([one + acc.coeffs[0]] + list(acc.coeffs[1:]), n, FREE)
    return m


@lru_cache(maxsize=None)
def _free_to_boolean_table(max_index: int) -> tuple[CumulantPoly, ...]:
    inv = t_reciprocal(_moment_series(max_index))
    # H = z / M(1/z) = z (1 - sum_n B_n z^{-n}), so B_n = -[u^n] (1/M)
    return tuple(-inv.coeffs[n] for n in range(max_index + 1))


def free_to_boolean(max_index: int) -> dict[int, CumulantPoly]:
    """``{j: B_j}`` for ``2 <= j <= max_index``, each written in ``R_2, R_3, ...``.

    Obtained by solving ``K(G(z)) = z`` for the Cauchy transform ``G``
    order by order, with ``K(w) = 1/w + sum_j R_j w^{j-1}``, and reading the
    Boolean cumulants off ``H = 1/G``.
    """
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    table = _free_to_boolean_table(max_index)
    return {j: table[j] for j in range(2, max_index + 1)}


@lru_cache(maxsize=None)
def _boolean_to_free_table(max_index: int) -> tuple[CumulantPoly, ...]:
    forward = free_to_boolean(max_index)
    out: dict[int, CumulantPoly] = {}
    for j in range(2, max_index + 1):
        # B_j = R_j + (terms in R_2..R_{j-1}); invert triangularly
        rest = forward[j] - CumulantPoly.var(FREE, j)
        if forward[j].coeff((j,)) != 1:
            raise ArithmeticError(f"B_{j} does not start with R_{j}")
        lower = substitute(rest, out) if rest else CumulantPoly.zero(BOOLEAN)
        out[j] = CumulantPoly.var(BOOLEAN, j) - lower
    return tuple([CumulantPoly.zero(BOOLEAN)] * 2 + [out[j] for j in range(2, max_index + 1)])


def boolean_to_free(max_index: int) -> dict[int, CumulantPoly]:
    """``{j: R_j}`` for ``2 <= j <= max_index``, each written in ``B_2, B_3, ...``."""
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    table = _boolean_to_free_table(max_index)
    return {j: table[j] for j in range(2, max_index + 1)}


def to_free(p: CumulantPoly) -> CumulantPoly:
    """Rewrite a Boolean-cumulant polynomial in free cumulants."""
    if p.family is FREE:
        return p
    top = max(p.max_index(), 2)
    return substitute(p, free_to_boolean(top))


def to_boolean(p: CumulantPoly) -> CumulantPoly:
    """Rewrite a free-cumulant polynomial in Boolean cumulants."""
    if p.family is BOOLEAN:
        return p
    top = max(p.max_index(), 2)
    return substitute(p, boolean_to_free(top))


# the H-product


def _boolean_vars(n: int) -> list[CumulantPoly]:
    return [CumulantPoly.var(BOOLEAN, j) for j in range(2, n + 2)]


def h_product_residue(shifts, depth: int | None = None, prune: bool = True) -> CumulantPoly:
    """``[z^-1]`` of ``prod_{a in shifts} H(z - a)`` as a Boolean-cumulant polynomial.

    Each factor is expanded to ``depth`` (default ``len(shifts) + 2``).
    With ``prune`` the partial products drop exponents that can no longer
    reach ``z^-1`` and monomials heavier than ``len(shifts) + 1``; both
    only discard contributions to terms that are not read or that vanish.
    """
    shifts = list(shifts)
    k = len(shifts)
    if k == 0:
        raise ValueError("need at least one factor")
    if depth is None:
        depth = k + 2
    bvars = _boolean_vars(depth)
    max_weight = k + 1 if prune else None
    acc = z_shift_expand(bvars, shifts[0], depth)
    for m, a in enumerate(shifts[1:], start=2):
        floor = 1 + (k - m) if prune else None
        acc = z_mul(acc, z_shift_expand(bvars, a, depth), floor=floor, max_weight=max_weight)
    return acc.residue()


@lru_cache(maxsize=None)
def sigma_boolean(k: int) -> CumulantPoly:
    """``Sigma_k`` as a polynomial in Boolean cumulants."""
    if k < 1:
        raise ValueError("k must be positive")
    residue = h_product_residue(range(k))
    return div_exact_integer(residue, -k)


@lru_cache(maxsize=None)
def sigma(k: int) -> KerovPolynomial:
    """The Kerov polynomial ``K_k`` with ``Sigma_k = K_k(R_2, R_3, ...)``."""
    if k < 1:
        raise ValueError("k must be positive")
    sb = sigma_boolean(k)
    if sb.max_index() > k + 1:
        raise ArithmeticError(f"Sigma_{k} involves B_{sb.max_index()}, beyond B_{k + 1}")
    poly = substitute(sb, free_to_boolean(k + 1), max_weight=k + 1)
    return KerovPolynomial(k, poly)


def free_cumulant_check(k: int) -> bool:
    """Whether ``[z^-1] H(z)^k / (-k)``, rewritten in free cumulants, is exactly ``R_{k+1}``."""
    if k < 1:
        raise ValueError("k must be positive")
    residue = h_product_residue([0] * k, prune=False)
    quotient = residue.scale(Fraction(-1, k))
    return to_free(quotient) == CumulantPoly.var(FREE, k + 1)


def genus_part(K: KerovPolynomial, g: int) -> CumulantPoly:
    """``K_{k,k+1-2g}``, the homogeneous part of degree ``k + 1 - 2g``."""
    d = K.k + 1 - 2 * g
    if g < 0 or d < 0:
        raise ValueError(f"genus {g} is out of range for k={K.k}")
    return homogeneous_part(K.poly, d)


def clear_caches() -> None:
    """Forget memoized conversion tables and Kerov polynomials."""
    for fn in (_moment_series, _free_to_boolean_table, _boolean_to_free_table, sigma_boolean, sigma):
        fn.cache_clear()
