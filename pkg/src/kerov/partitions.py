"""Integer partitions and monomial symmetric functions.

Partitions are the index type used throughout the package: they key the
monomials of cumulant polynomials, the bases of symmetric functions and the
data points of the Lassalle fits.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    ``Partition`` is a ``tuple`` subclass, so it hashes and compares like the
    plain tuple of its parts.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"partition parts must be positive integers, got {parts!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing, got {parts!r}")
        return tuple.__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts given in any order."""
        return cls(sorted(parts, reverse=True))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return self.count(i)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def _raw(parts: tuple) -> Partition:
    # trusted constructor for the hot paths; parts already sorted and positive
    return tuple.__new__(Partition, parts)


def merge(a: tuple, b: tuple) -> Partition:
    """Multiset union of two partitions."""
    if not a:
        return b if isinstance(b, Partition) else _raw(b)
    if not b:
        return a if isinstance(a, Partition) else _raw(a)
    return _raw(tuple(sorted(a + b, reverse=True)))


@lru_cache(maxsize=None)
def _partitions(n: int, min_part: int, max_part: int) -> tuple[Partition, ...]:
    if n == 0:
        return (_raw(()),)
    out = []
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in _partitions(n - first, min_part, first):
            out.append(_raw((first,) + rest))
    return tuple(out)


def partitions_of(n: int, min_part: int = 1) -> list[Partition]:
    """All partitions of ``n`` with parts >= ``min_part``, lexicographically decreasing.

    >>> partitions_of(4, 2)
    [Partition((4,)), Partition((2, 2))]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if min_part < 1:
        raise ValueError("min_part must be positive")
    return list(_partitions(n, min_part, n))


def partitions_up_to(n: int, min_part: int = 1) -> list[Partition]:
    """Partitions of weights 0..n in canonical order (weight, then reverse-lex)."""
    return [p for w in range(n + 1) for p in partitions_of(w, min_part)]


def canonical_key(p: Sequence[int]) -> tuple:
    """Sort key putting heavier partitions first, reverse-lex within a weight."""
    return (-sum(p), tuple(-x for x in p))


def _vector_powers(x: Sequence[int], exponents: Iterable[int]) -> dict[int, list]:
    return {e: [xi ** e for xi in x] for e in set(exponents)}


def eval_monomial(nu: Sequence[int], x: Sequence[int]) -> int | Fraction:
    """Value of the monomial symmetric function ``m_nu`` at the vector ``x``.

    Computed by a sweep over the entries of ``x``: the state is the
    sub-multiset of exponents already placed, so each distinct monomial is
    produced exactly once.
    """
    nu = tuple(nu)
    if not nu:
        return 1
    if len(nu) > len(x):
        return 0
    counts = Counter(nu)
    values = sorted(counts)
    caps = [counts[v] for v in values]
    pw = _vector_powers(x, values)
    # state: tuple of how many copies of each distinct exponent are used
    states: dict[tuple, int | Fraction] = {tuple(0 for _ in values): 1}
    for idx in range(len(x)):
        nxt = dict(states)
        for st, acc in states.items():
            for j, v in enumerate(values):
                if st[j] < caps[j]:
                    st2 = st[:j] + (st[j] + 1,) + st[j + 1:]
                    nxt[st2] = nxt.get(st2, 0) + acc * pw[v][idx]
        states = nxt
    return states.get(tuple(caps), 0)


def mhat(lam: Sequence[int], k: int) -> int | Fraction:
    """``m_lam`` evaluated at ``x_i = i`` for ``i < k`` and ``x_i = 0`` beyond."""
    return eval_monomial(lam, range(1, k))


class SymmetricFn:
    """A finite rational combination of monomial symmetric functions.

    ``terms`` maps a partition ``nu`` to the coefficient of ``m_nu``.
    Zero coefficients are dropped, so the empty mapping is the zero function.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], int | Fraction] | None = None):
        clean: dict[Partition, Fraction] = {}
        for nu, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = Partition.from_parts(nu)
                clean[key] = clean.get(key, 0) + c
        self._terms = {nu: c for nu, c in clean.items() if c}

    @property
    def terms(self) -> dict[Partition, Fraction]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        """Largest weight among the terms; -1 for the zero function."""
        return max((nu.weight for nu in self._terms), default=-1)

    def __call__(self, mu: Sequence[int]) -> Fraction:
        return eval_symfn(self, mu)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricFn):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: canonical_key(kv[0]))

    def to_json(self) -> list[dict]:
        return [{"m": list(nu), "coeff": format_rational(c)} for nu, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "SymmetricFn":
        return cls({tuple(d["m"]): parse_rational(d["coeff"]) for d in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for nu, c in self.items():
            basis = "m(" + ",".join(map(str, nu)) + ")" if nu else ""
            if not basis:
                pieces.append(format_rational(c))
            elif c == 1:
                pieces.append(basis)
            else:
                pieces.append(f"{format_rational(c)}*{basis}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymmetricFn({str(self)!r})"


def eval_symfn(f: SymmetricFn, mu: Sequence[int]) -> Fraction:
    """Value of ``f`` at the integer vector given by the parts of ``mu``."""
    return Fraction(sum(c * eval_monomial(nu, tuple(mu)) for nu, c in f._terms.items()))


def format_rational(c: int | Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(s: str | int) -> int | Fraction:
    c = Fraction(s)
    return c.numerator if c.denominator == 1 else c
