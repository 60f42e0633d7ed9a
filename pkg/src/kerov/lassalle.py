"""Lassalle's symmetric functions f_g and h_g, fitted exactly from Kerov polynomials.

For ``g >= 1`` the genus parts are expected to take the forms

    K_{k,k+1-2g} = C(k+1, 3) sum_{|mu| = k+1-2g} (l(mu) + 2g - 2)! f_g(mu) Rs_mu
                 = C(k+1, 3) sum_{|mu| = k+1-2g} (2g - 1)^{l(mu)} h_g(mu) Qs_mu

with ``f_g``, ``h_g`` symmetric functions of degree at most ``4(g - 1)``
that do not depend on ``k``.  Here ``Rs_mu = prod_i ((i-1) R_i)^{m_i} / m_i!``,
``Q_i = sum_{|mu| = i} (l(mu) - 1)! Rs_mu`` and ``Qs_mu = prod_i Q_i^{m_i} / m_i!``.
This module extracts the values ``f_g(mu)``, ``h_g(mu)`` from computed
polynomials and fits them by exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .algebra import CumulantPoly, Family, NotDivisible, div_exact_integer, homogeneous_part
from .cumulants import sigma
from .partitions import Partition, SymmetricFn, eval_monomial, partitions_of, partitions_up_to

FREE = Family.FREE


class PartTooSmall(ValueError):
    """A partition with a part equal to 1 was given where parts must be >= 2."""


class NotHomogeneous(ValueError):
    pass


class SingularBasis(ArithmeticError):
    """The Q-basis change of coordinates broke down (an implementation bug)."""


class DegenerateK(ValueError):
    """``C(k+1, 3)`` vanishes, so no value can be extracted."""


class Inconsistent(ArithmeticError):
    """The data admit no symmetric function of the requested degree."""

    def __init__(self, message: str, mu: Sequence[int] | None = None):
        super().__init__(message)
        self.mu = mu


class Underdetermined(ValueError):
    """The data do not pin down every coefficient; ``free_directions`` lists the loose ones."""

    def __init__(self, message: str, free_directions: list[Partition]):
        super().__init__(message)
        self.free_directions = free_directions


class NegativeCoefficient(ArithmeticError):
    pass


def _check_parts(mu: Sequence[int]) -> Partition:
    mu = Partition.from_parts(mu)
    if any(p < 2 for p in mu):
        raise PartTooSmall(f"parts must be >= 2, got {tuple(mu)}")
    return mu


def script_R_mu(mu: Sequence[int]) -> CumulantPoly:
    """``prod_{i>=2} ((i-1) R_i)^{m_i(mu)} / m_i(mu)!``."""
    mu = _check_parts(mu)
    return CumulantPoly(FREE, {mu: _script_r_scale(mu)})


def _script_r_scale(mu: Partition) -> Fraction:
    # coefficient of R^mu in Rs_mu
    c = Fraction(1)
    for i, m in mu.multiplicities().items():
        c *= Fraction((i - 1) ** m, factorial(m))
    return c


@lru_cache(maxsize=None)
def q_poly(i: int) -> CumulantPoly:
    """``Q_i = sum_{|mu| = i} (l(mu) - 1)! Rs_mu``, parts of ``mu`` >= 2."""
    if i < 2:
        raise ValueError("Q_i is defined for i >= 2")
    total = CumulantPoly.zero(FREE)
    for mu in partitions_of(i, 2):
        total = total + script_R_mu(mu).scale(factorial(len(mu) - 1))
    return total


@lru_cache(maxsize=None)
def _script_Q(mu: Partition) -> CumulantPoly:
    total = CumulantPoly.constant(FREE, 1)
    for i, m in mu.multiplicities().items():
        total = total * (q_poly(i) ** m).scale(Fraction(1, factorial(m)))
    return total


def script_Q_mu(mu: Sequence[int]) -> CumulantPoly:
    """``prod_{i>=2} Q_i^{m_i(mu)} / m_i(mu)!`` in the R-monomial basis."""
    return _script_Q(_check_parts(mu))


def _homogeneous_weight(p: CumulantPoly, weight: int) -> None:
    bad = [k for k in p.terms if sum(k) != weight]
    if bad:
        raise NotHomogeneous(f"monomial {tuple(bad[0])} has weight {sum(bad[0])}, expected {weight}")


def expand_in_R_basis(p: CumulantPoly, weight: int) -> dict[Partition, Fraction]:
    """Coordinates ``c_mu`` with ``p = sum c_mu Rs_mu``; the basis is diagonal."""
    _homogeneous_weight(p, weight)
    return {mu: Fraction(p.coeff(mu)) / _script_r_scale(mu) for mu in partitions_of(weight, 2)}


def expand_in_Q_basis(p: CumulantPoly, weight: int) -> dict[Partition, Fraction]:
    """Coordinates ``c_mu`` with ``p = sum c_mu Qs_mu``.

    ``Qs_mu`` is a multiple of ``R^mu`` plus monomials with more factors, so
    the coordinates come out by elimination from the shortest monomials up.
    """
    _homogeneous_weight(p, weight)
    basis = sorted(partitions_of(weight, 2), key=lambda mu: (len(mu), [-x for x in mu]))
    rest = p
    out: dict[Partition, Fraction] = {}
    for mu in basis:
        q = script_Q_mu(mu)
        lead = q.coeff(mu)
        if not lead:
            raise SingularBasis(f"Qs_{tuple(mu)} has no R^mu term")
        c = Fraction(rest.coeff(mu)) / Fraction(lead)
        out[mu] = c
        if c:
            rest = rest - q.scale(c)
    if rest:
        raise SingularBasis(f"residue {rest} left after Q-basis elimination")
    return out


def _prefactor(k: int) -> int:
    b = comb(k + 1, 3)
    if b == 0:
        raise DegenerateK(f"C({k + 1}, 3) = 0")
    return b


def extract_f_values(k: int, g: int, K_part: CumulantPoly) -> dict[Partition, Fraction]:
    """``f_g(mu)`` for every ``mu |- k+1-2g`` with parts >= 2 (zeros included)."""
    b = _prefactor(k)
    coords = expand_in_R_basis(K_part, k + 1 - 2 * g)
    return {mu: c / (b * factorial(len(mu) + 2 * g - 2)) for mu, c in coords.items()}


def extract_h_values(k: int, g: int, K_part: CumulantPoly) -> dict[Partition, Fraction]:
    """``h_g(mu)`` for every ``mu |- k+1-2g`` with parts >= 2 (zeros included)."""
    b = _prefactor(k)
    coords = expand_in_Q_basis(K_part, k + 1 - 2 * g)
    return {mu: c / (b * (2 * g - 1) ** len(mu)) for mu, c in coords.items()}


def reassemble(k: int, g: int, fn: SymmetricFn, basis: str = "R") -> CumulantPoly:
    """The genus part predicted by ``fn`` through the R- or Q-basis formula."""
    n = k + 1 - 2 * g
    total = CumulantPoly.zero(FREE)
    for mu in partitions_of(n, 2):
        v = fn(mu)
        if not v:
            continue
        if basis == "R":
            total = total + script_R_mu(mu).scale(v * factorial(len(mu) + 2 * g - 2))
        elif basis == "Q":
            total = total + script_Q_mu(mu).scale(v * (2 * g - 1) ** len(mu))
        else:
            raise ValueError(f"unknown basis {basis!r}")
    return total.scale(comb(k + 1, 3))


# exact fitting


def _reduce(row: list[Fraction], pivots: list[tuple[int, list[Fraction]]]) -> list[Fraction]:
    row = list(row)
    for col, prow in pivots:
        f = row[col]
        if f:
            for j, x in enumerate(prow):
                if x:
                    row[j] -= f * x
    return row


def _solve(rows: list[list[Fraction]], ncols: int):
    """Incremental echelon form of augmented rows.

    Returns the solution, the indices of the rows that raised the rank, the
    free columns, and the index of the first inconsistent row (or None).
    """
    pivots: list[tuple[int, list[Fraction]]] = []
    used: list[int] = []
    for r, row in enumerate(rows):
        red = _reduce(row, pivots)
        col = next((j for j in range(ncols) if red[j]), None)
        if col is None:
            if red[ncols]:
                return None, used, [], r
            continue
        inv = 1 / red[col]
        red = [x * inv for x in red]
        # keep the echelon rows fully reduced against the new pivot
        for i, (c, prow) in enumerate(pivots):
            f = prow[col]
            if f:
                pivots[i] = (c, [a - f * b for a, b in zip(prow, red)])
        pivots.append((col, red))
        used.append(r)
    pivot_cols = {c for c, _ in pivots}
    free = [j for j in range(ncols) if j not in pivot_cols]
    sol = [Fraction(0)] * ncols
    for c, prow in pivots:
        sol[c] = prow[ncols]
    return sol, used, free, None


@dataclass
class FitResult:
    fitted: SymmetricFn
    equations_used: int
    residual_equations_checked: int
    consistent: bool


def fit_symmetric(values: Iterable[tuple[Sequence[int], Fraction]], degree_bound: int) -> FitResult:
    """The symmetric function of degree <= ``degree_bound`` matching every ``(mu, value)``.

    Solved exactly in the monomial basis ``m_nu``, ``|nu| <= degree_bound``.
    Rows that raise the rank determine the solution; every other row is then
    checked by evaluating the fitted function.
    """
    values = [(Partition.from_parts(mu), Fraction(v)) for mu, v in values]
    if not values:
        raise ValueError("no data to fit")
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    basis = partitions_up_to(degree_bound)
    rows = [[Fraction(eval_monomial(nu, mu)) for nu in basis] + [v] for mu, v in values]
    sol, used, free, bad = _solve(rows, len(basis))
    if bad is not None:
        mu, v = values[bad]
        raise Inconsistent(f"value {v} at {tuple(mu)} contradicts the earlier data", mu)
    if free:
        loose = [basis[j] for j in free]
        raise Underdetermined(
            f"{len(free)} of {len(basis)} coefficients unconstrained: " + ", ".join("m(" + ",".join(map(str, nu)) + ")" for nu in loose),
            loose,
        )
    fitted = SymmetricFn(dict(zip(basis, sol)))
    used_set = set(used)
    residual = [i for i in range(len(values)) if i not in used_set]
    ok = all(fitted(values[i][0]) == values[i][1] for i in range(len(values)))
    return FitResult(fitted, len(used), len(residual), ok)


@dataclass
class FitReport:
    g: int
    basis: str
    fitted: SymmetricFn
    degree_bound: int
    equations_used: int
    residual_equations_checked: int
    consistent: bool
    k_range: list[int] = field(default_factory=list)

    def tilde_value(self, mu: Sequence[int]) -> Fraction:
        """``k C(k+1, 3)`` times the fitted value, with ``k = |mu| + 2g - 1``."""
        k = sum(mu) + 2 * self.g - 1
        return k * comb(k + 1, 3) * self.fitted(mu)

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "basis": self.basis,
            "degree_bound": self.degree_bound,
            "k_range": list(self.k_range),
            "fitted": self.fitted.to_json(),
            "fitted_degree": self.fitted.degree,
            "equations_used": self.equations_used,
            "residual_equations_checked": self.residual_equations_checked,
            "consistent": self.consistent,
            "tilde_factor": "k*binom(k+1,3) with k = |mu| + 2g - 1",
        }


def collect_values(g: int, k_range: Iterable[int], basis: str = "R", polys=None) -> list[tuple[Partition, Fraction]]:
    """Extracted ``(mu, value)`` pairs for every ``k`` in ``k_range``.

    ``polys`` optionally maps ``k`` to a precomputed ``K_k`` (free family).
    """
    extract = {"R": extract_f_values, "Q": extract_h_values}.get(basis)
    if extract is None:
        raise ValueError(f"unknown basis {basis!r}")
    out = []
    for k in k_range:
        if k < 2 * g + 1:
            raise ValueError(f"k={k} is below 2g+1={2 * g + 1}")
        poly = polys[k] if polys is not None else sigma(k).poly
        part = homogeneous_part(poly, k + 1 - 2 * g)
        out.extend(sorted(extract(k, g, part).items(), key=lambda kv: (sum(kv[0]), kv[0])))
    return out


def lassalle_report(g: int, k_range: Iterable[int], basis: str = "R", polys=None) -> FitReport:
    """Fit ``f_g`` (basis ``R``) or ``h_g`` (basis ``Q``) with degree bound ``4(g - 1)``."""
    if g < 1:
        raise ValueError("g must be at least 1")
    k_range = list(k_range)
    bound = 4 * (g - 1)
    res = fit_symmetric(collect_values(g, k_range, basis, polys), bound)
    return FitReport(g, basis, res.fitted, bound, res.equations_used, res.residual_equations_checked,
                     res.consistent, k_range)


# divisibility


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _nonneg(p: CumulantPoly, label: str) -> CumulantPoly:
    neg = [(k, c) for k, c in p.terms.items() if c < 0]
    if neg:
        raise NegativeCoefficient(f"{label} has a negative coefficient {neg[0][1]}")
    return p


def divisibility_check(p: int, polys=None) -> tuple[CumulantPoly, CumulantPoly, CumulantPoly]:
    """The quotients ``(S_p - R_{p+1} + 2R_2)/p``, ``(S_{p-1} - R_p)/p``, ``(S_{p+1} - R_{p+2} + R_3)/p``.

    Each must have nonnegative integer coefficients; a violation raises.
    """
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    get = (lambda k: polys[k]) if polys is not None else (lambda k: sigma(k).poly)
    R = lambda i: CumulantPoly.var(FREE, i)
    first = get(p) - R(p + 1) + R(2).scale(2)
    second = get(p - 1) - R(p)
    third = get(p + 1) - R(p + 2) + R(3)
    labels = (f"(S{p} - R{p + 1} + 2R2)/{p}", f"(S{p - 1} - R{p})/{p}", f"(S{p + 1} - R{p + 2} + R3)/{p}")
    out = []
    for expr, label in zip((first, second, third), labels):
        try:
            q = div_exact_integer(expr, p)
        except NotDivisible as exc:
            raise NotDivisible(f"{label}: {exc}") from None
        out.append(_nonneg(q, label))
    return tuple(out)
