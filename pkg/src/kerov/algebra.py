"""Sparse exact polynomials in cumulant indeterminates.

A monomial ``X_2^{s_2} X_3^{s_3} ...`` is keyed by the partition having
``s_i`` parts equal to ``i``; with ``deg X_i = i`` its weighted degree is the
weight of the key.  Coefficients are exact: Python ints where integral,
``Fraction`` otherwise.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .partitions import Partition, _raw, canonical_key, format_rational, merge, parse_rational

Coeff = int | Fraction


class Family(enum.Enum):
    FREE = "R"
    BOOLEAN = "B"

    @property
    def letter(self) -> str:
        return self.value


class FamilyMismatch(TypeError):
    """Raised when polynomials in different cumulant families are combined."""


class MissingImage(KeyError):
    """Raised by :func:`substitute` when an indeterminate has no image."""


class NotDivisible(ArithmeticError):
    """A coefficient expected to be an integer multiple of ``n`` is not."""


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class CumulantPoly:
    """Immutable sparse polynomial over the rationals in ``X_2, X_3, ...``.

    The family tag says which indeterminates ``X_i`` stand for: free
    cumulants ``R_i`` or Boolean cumulants ``B_i``.
    """

    __slots__ = ("family", "_terms", "_hash")

    def __init__(self, family: Family, terms: Mapping[Sequence[int], Coeff] | None = None):
        self.family = family
        clean: dict[Partition, Coeff] = {}
        for key, c in (terms or {}).items():
            key = Partition.from_parts(key)
            if any(p < 2 for p in key):
                raise ValueError(f"cumulant indices start at 2, got monomial {tuple(key)}")
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            clean[key] = clean.get(key, 0) + c
        self._terms = {k: _norm(c) for k, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _trusted(cls, family: Family, terms: dict) -> "CumulantPoly":
        # terms must already have canonical keys and nonzero normalized coefficients
        obj = cls.__new__(cls)
        obj.family = family
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zero(cls, family: Family) -> "CumulantPoly":
        return cls._trusted(family, {})

    @classmethod
    def constant(cls, family: Family, c: Coeff) -> "CumulantPoly":
        c = _norm(c)
        return cls._trusted(family, {_raw(()): c} if c else {})

    @classmethod
    def var(cls, family: Family, i: int, c: Coeff = 1) -> "CumulantPoly":
        if i < 2:
            raise ValueError("cumulant indices start at 2")
        c = _norm(c)
        return cls._trusted(family, {_raw((i,)): c} if c else {})

    @classmethod
    def monomial(cls, family: Family, key: Sequence[int], c: Coeff = 1) -> "CumulantPoly":
        return cls(family, {tuple(key): c})

    # inspection

    @property
    def terms(self) -> dict[Partition, Coeff]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order: heaviest first, reverse-lex within a weight."""
        return sorted(self._terms.items(), key=lambda kv: canonical_key(kv[0]))

    def coeff(self, key: Sequence[int]) -> Coeff:
        return self._terms.get(Partition.from_parts(key), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Coeff:
        return self._terms.get((), 0)

    def indices(self) -> set[int]:
        return {i for key in self._terms for i in key}

    def degrees(self) -> set[int]:
        return {sum(key) for key in self._terms}

    def max_index(self) -> int:
        return max(self.indices(), default=0)

    # comparisons

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CumulantPoly):
            return self.family is other.family and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.family, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other) -> "CumulantPoly":
        if isinstance(other, CumulantPoly):
            if other.family is not self.family:
                raise FamilyMismatch(f"cannot combine {self.family.name} and {other.family.name} polynomials")
            return other
        if isinstance(other, (int, Fraction)):
            return CumulantPoly.constant(self.family, other)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other) -> "CumulantPoly":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return CumulantPoly._trusted(self.family, out)

    __radd__ = __add__

    def __neg__(self) -> "CumulantPoly":
        return CumulantPoly._trusted(self.family, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "CumulantPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CumulantPoly":
        return self._coerce(other) - self

    def scale(self, c: Coeff) -> "CumulantPoly":
        c = _norm(c)
        if not c:
            return CumulantPoly.zero(self.family)
        if c == 1:
            return self
        return CumulantPoly._trusted(self.family, {k: _norm(v * c) for k, v in self._terms.items()})

    def __mul__(self, other) -> "CumulantPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        return mul(self, other)

    def __rmul__(self, other) -> "CumulantPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other: Coeff) -> "CumulantPoly":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.scale(Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "CumulantPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = CumulantPoly.constant(self.family, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def truncate_weight(self, max_weight: int) -> "CumulantPoly":
        """Drop monomials of weighted degree above ``max_weight``."""
        return CumulantPoly._trusted(
            self.family, {k: c for k, c in self._terms.items() if sum(k) <= max_weight}
        )

    def evaluate(self, values: Mapping[int, Coeff] | Sequence[Coeff]) -> Coeff:
        """Numeric value with ``X_i = values[i]``.

        A sequence is read as ``(X_2, X_3, ...)``.
        """
        if not isinstance(values, Mapping):
            values = {i + 2: v for i, v in enumerate(values)}
        total: Coeff = 0
        for key, c in self._terms.items():
            term = c
            for i in key:
                try:
                    term *= values[i]
                except KeyError:
                    raise MissingImage(i) from None
            total += term
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    # rendering

    def to_text(self) -> str:
        return render(self, "text")

    def to_latex(self) -> str:
        return render(self, "latex")

    def to_json(self) -> list[dict]:
        return [{"coeff": format_rational(c), "partition": list(k)} for k, c in self.items()]

    @classmethod
    def from_json(cls, family: Family, data: Iterable[Mapping]) -> "CumulantPoly":
        return cls(family, {tuple(d["partition"]): parse_rational(d["coeff"]) for d in data})

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CumulantPoly({self.family.name}, {self.to_text()!r})"


def add(a: CumulantPoly, b: CumulantPoly) -> CumulantPoly:
    if a.family is not b.family:
        raise FamilyMismatch(f"cannot add {a.family.name} and {b.family.name} polynomials")
    return a + b


def mul(a: CumulantPoly, b: CumulantPoly, max_weight: int | None = None) -> CumulantPoly:
    """Product of two polynomials, optionally dropping monomials heavier than ``max_weight``."""
    if a.family is not b.family:
        raise FamilyMismatch(f"cannot multiply {a.family.name} and {b.family.name} polynomials")
    if not a._terms or not b._terms:
        return CumulantPoly.zero(a.family)
    ta, tb = a._terms, b._terms
    if len(ta) < len(tb):
        ta, tb = tb, ta
    out: dict = {}
    get = out.get
    for kb, cb in tb.items():
        wb = sum(kb)
        for ka, ca in ta.items():
            if max_weight is not None and wb + sum(ka) > max_weight:
                continue
            key = merge(ka, kb)
            out[key] = get(key, 0) + ca * cb
    return CumulantPoly._trusted(a.family, {k: _norm(c) for k, c in out.items() if c})


def homogeneous_part(p: CumulantPoly, d: int) -> CumulantPoly:
    """Monomials of ``p`` whose weighted degree is exactly ``d``."""
    return CumulantPoly._trusted(p.family, {k: c for k, c in p._terms.items() if sum(k) == d})


def substitute(
    p: CumulantPoly,
    images: Mapping[int, CumulantPoly],
    max_weight: int | None = None,
) -> CumulantPoly:
    """Apply the ring homomorphism ``X_i -> images[i]`` to ``p``.

    Products of images are memoized on the monomial key, so monomials sharing
    a prefix share work.  ``max_weight`` drops heavier terms during the
    computation; it is only sound when every image is homogeneous of
    weight >= its index (as for the cumulant conversions).
    """
    if not p._terms:
        fam = next(iter(images.values())).family if images else p.family
        return CumulantPoly.zero(fam)
    needed = p.indices()
    missing = needed - set(images)
    if missing:
        raise MissingImage(min(missing))
    fams = {images[i].family for i in needed}
    if len(fams) > 1:
        raise FamilyMismatch("images must share one family")
    family = fams.pop() if fams else p.family
    cache: dict[tuple, CumulantPoly] = {(): CumulantPoly.constant(family, 1)}

    def image_of(key: tuple) -> CumulantPoly:
        hit = cache.get(key)
        if hit is None:
            # peel the smallest part so long keys reuse shorter cached products
            hit = mul(image_of(key[:-1]), images[key[-1]], max_weight)
            cache[key] = hit
        return hit

    out: dict = {}
    for key in sorted(p._terms, key=len):
        c = p._terms[key]
        for k2, c2 in image_of(tuple(key))._terms.items():
            out[k2] = out.get(k2, 0) + c * c2
    return CumulantPoly._trusted(family, {k: _norm(c) for k, c in out.items() if c})


def div_exact_integer(p: CumulantPoly, n: int) -> CumulantPoly:
    """``p / n``, insisting that every coefficient is an integer divisible by ``n``."""
    if n == 0:
        raise ZeroDivisionError("division by zero")
    out = {}
    for key, c in p._terms.items():
        if type(c) is not int:
            raise NotDivisible(f"coefficient {c} of {format_monomial(key, p.family)} is not an integer")
        q, r = divmod(c, n)
        if r:
            raise NotDivisible(f"coefficient {c} of {format_monomial(key, p.family)} is not divisible by {n}")
        out[key] = q
    return CumulantPoly._trusted(p.family, out)


def format_monomial(key: Sequence[int], family: Family, style: str = "text") -> str:
    """Render a monomial such as ``(3, 2, 2)`` as ``R3*R2^2`` (text) or ``R_3 R_2^2`` (latex)."""
    letter = family.letter
    groups: list[tuple[int, int]] = []
    for i in key:
        if groups and groups[-1][0] == i:
            groups[-1] = (i, groups[-1][1] + 1)
        else:
            groups.append((i, 1))
    if style == "text":
        return "*".join(f"{letter}{i}" + (f"^{e}" if e > 1 else "") for i, e in groups)
    parts = []
    for i, e in groups:
        sub = f"{letter}_{i}" if i < 10 else f"{letter}_{{{i}}}"
        if e > 1:
            sub += f"^{e}" if e < 10 else f"^{{{e}}}"
        parts.append(sub)
    return " ".join(parts)


def _latex_coeff(c: Coeff) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def render(p: CumulantPoly, style: str = "text") -> str:
    """Canonical rendering: ``R4 + R2`` (text) or ``R_4 + R_2`` (latex)."""
    if style not in ("text", "latex"):
        raise ValueError(f"unknown style {style!r}")
    items = p.items()
    if not items:
        return "0"
    out = []
    for n, (key, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(key, p.family, style)
        if not key:
            body = format_rational(a) if style == "text" else _latex_coeff(a)
        elif a == 1:
            body = mono
        elif style == "text":
            body = f"{format_rational(a)}*{mono}"
        else:
            body = f"{_latex_coeff(a)}{mono}"
        if n == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def map_coefficients(p: CumulantPoly, fn: Callable[[Partition, Coeff], Coeff]) -> CumulantPoly:
    """Polynomial with each coefficient ``c`` at ``key`` replaced by ``fn(key, c)``."""
    return CumulantPoly(p.family, {k: fn(k, c) for k, c in p._terms.items()})
