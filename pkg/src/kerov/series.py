"""Truncated series with cumulant-polynomial coefficients.

``TSeries`` is a power series in ``t`` cut at a fixed order.  ``LaurentZ``
is a series in descending powers of ``z`` that records how deep its
coefficients are known exactly, which is what makes ``[z^-1]`` of a long
product of shifted ``H`` factors trustworthy.
"""

from __future__ import annotations

from math import comb
from typing import Mapping, Sequence

from .algebra import Coeff, CumulantPoly, Family, FamilyMismatch, mul


class NonUnitConstantTerm(ValueError):
    """The series to invert does not start with the constant 1."""


class InsufficientDepthData(ValueError):
    """Not enough Boolean cumulants were supplied for the requested depth."""


def _family_of(coeffs: Sequence[CumulantPoly]) -> Family:
    fams = {c.family for c in coeffs}
    if len(fams) != 1:
        raise FamilyMismatch("series coefficients must share one family")
    return fams.pop()


class TSeries:
    """Power series ``sum_n coeffs[n] t^n`` known up to ``t^order``."""

    __slots__ = ("order", "coeffs", "family")

    def __init__(self, coeffs: Sequence[CumulantPoly], order: int | None = None, family: Family | None = None):
        coeffs = list(coeffs)
        if family is None:
            if not coeffs:
                raise ValueError("family required for an empty coefficient list")
            family = _family_of(coeffs)
        elif coeffs and _family_of(coeffs) is not family:
            raise FamilyMismatch("coefficient family differs from the declared one")
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        zero = CumulantPoly.zero(family)
        coeffs = coeffs[: order + 1] + [zero] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)
        self.family = family

    @classmethod
    def one(cls, family: Family, order: int) -> "TSeries":
        return cls([CumulantPoly.constant(family, 1)], order, family)

    @classmethod
    def from_terms(cls, family: Family, order: int, terms: Mapping[int, CumulantPoly]) -> "TSeries":
        zero = CumulantPoly.zero(family)
        return cls([terms.get(n, zero) for n in range(order + 1)], order, family)

    def __getitem__(self, n: int) -> CumulantPoly:
        if n < 0:
            return CumulantPoly.zero(self.family)
        if n > self.order:
            raise IndexError(f"coefficient t^{n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.coeffs[: order + 1], min(order, self.order), self.family)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other: "TSeries") -> "TSeries":
        n = min(self.order, other.order)
        return TSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n, self.family)

    def __neg__(self) -> "TSeries":
        return TSeries([-c for c in self.coeffs], self.order, self.family)

    def __sub__(self, other: "TSeries") -> "TSeries":
        return self + (-other)

    def scale(self, c: Coeff) -> "TSeries":
        return TSeries([x.scale(c) for x in self.coeffs], self.order, self.family)

    def __mul__(self, other):
        if isinstance(other, TSeries):
            return t_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})t^{n}" for n, c in enumerate(self.coeffs) if c)
        return f"TSeries(order={self.order}, {shown or '0'})"


def t_mul(a: TSeries, b: TSeries) -> TSeries:
    """Cauchy product truncated at the smaller of the two orders."""
    if a.family is not b.family:
        raise FamilyMismatch("cannot multiply series of different families")
    n = min(a.order, b.order)
    nz_a = [i for i in range(n + 1) if a.coeffs[i]]
    nz_b = [j for j in range(n + 1) if b.coeffs[j]]
    out = [CumulantPoly.zero(a.family)] * (n + 1)
    for i in nz_a:
        ai = a.coeffs[i]
        for j in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + mul(ai, b.coeffs[j])
    return TSeries(out, n, a.family)


def t_reciprocal(a: TSeries) -> TSeries:
    """The series ``b`` with ``a * b = 1`` up to the truncation order."""
    if a.coeffs[0] != 1:
        raise NonUnitConstantTerm(f"constant coefficient is {a.coeffs[0]}, expected 1")
    n = a.order
    b = [CumulantPoly.constant(a.family, 1)]
    nz = [i for i in range(1, n + 1) if a.coeffs[i]]
    for m in range(1, n + 1):
        acc = CumulantPoly.zero(a.family)
        for i in nz:
            if i > m:
                break
            acc = acc + mul(a.coeffs[i], b[m - i])
        b.append(-acc)
    return TSeries(b, n, a.family)


def apply_D(a: TSeries, shift: int = 0) -> TSeries:
    """``(t d/dt + shift)`` applied termwise: ``t^n`` picks up the factor ``n + shift``."""
    return TSeries([c.scale(n + shift) for n, c in enumerate(a.coeffs)], a.order, a.family)


class LaurentZ:
    """Series ``sum_e coeffs[e] z^e`` with ``-depth <= e <= top``.

    Every coefficient with exponent ``>= -depth`` is exact; everything below
    has been discarded.
    """

    __slots__ = ("top", "depth", "coeffs", "family")

    def __init__(self, family: Family, top: int, depth: int, coeffs: Mapping[int, CumulantPoly]):
        if top < -depth:
            raise ValueError("top exponent lies below the truncation depth")
        self.family = family
        self.top = top
        self.depth = depth
        self.coeffs = {e: c for e, c in coeffs.items() if c and -depth <= e <= top}
        for e, c in self.coeffs.items():
            if c.family is not family:
                raise FamilyMismatch("coefficient family differs from the declared one")

    def __getitem__(self, e: int) -> CumulantPoly:
        if e < -self.depth:
            raise IndexError(f"coefficient z^{e} lies below the exact depth {self.depth}")
        return self.coeffs.get(e, CumulantPoly.zero(self.family))

    def residue(self) -> CumulantPoly:
        """The coefficient of ``z^-1``."""
        return self[-1]

    def __repr__(self) -> str:
        shown = " + ".join(f"({self.coeffs[e]})z^{e}" for e in sorted(self.coeffs, reverse=True))
        return f"LaurentZ(top={self.top}, depth={self.depth}, {shown or '0'})"


def z_shift_expand(b_coeffs: Sequence[CumulantPoly], a: int, depth: int) -> LaurentZ:
    """Expansion of ``H(z - a) = (z - a) - sum_{j>=1} B_{j+1} (z - a)^{-j}`` down to ``z^-depth``.

    ``b_coeffs[0]`` is ``B_2``, ``b_coeffs[1]`` is ``B_3`` and so on; at least
    ``depth`` of them are needed.  Uses
    ``(z - a)^{-j} = sum_n C(j+n-1, n) a^n z^{-j-n}``.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if len(b_coeffs) < depth:
        raise InsufficientDepthData(f"need B_2..B_{depth + 1}, got {len(b_coeffs)} coefficients")
    family = _family_of(b_coeffs) if b_coeffs else Family.BOOLEAN
    coeffs = {1: CumulantPoly.constant(family, 1), 0: CumulantPoly.constant(family, -a)}
    for m in range(1, depth + 1):
        acc: dict = {}
        for j in range(1, m + 1):
            w = comb(m - 1, m - j) * a ** (m - j)
            if w:
                for key, c in b_coeffs[j - 1]._terms.items():
                    acc[key] = acc.get(key, 0) - w * c
        coeffs[-m] = CumulantPoly(family, acc)
    return LaurentZ(family, 1, depth, coeffs)


def z_mul(a: LaurentZ, b: LaurentZ, floor: int | None = None, max_weight: int | None = None) -> LaurentZ:
    """Product of two descending series.

    The result is exact down to ``z^-d`` with
    ``d = min(a.depth - b.top, b.depth - a.top)``.  ``floor`` discards
    exponents below ``-floor`` regardless (the caller knows it will never
    read them), and ``max_weight`` drops monomials heavier than that.
    """
    if a.family is not b.family:
        raise FamilyMismatch("cannot multiply series of different families")
    depth = min(a.depth - b.top, b.depth - a.top)
    if floor is not None:
        depth = min(depth, floor)
    top = a.top + b.top
    if depth < -top:
        raise ValueError("product has no exactly known coefficients")
    out: dict[int, CumulantPoly] = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = ea + eb
            if e < -depth:
                continue
            term = mul(ca, cb, max_weight)
            if term:
                out[e] = out[e] + term if e in out else term
    return LaurentZ(a.family, top, depth, out)
