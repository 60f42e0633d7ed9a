"""Young diagrams: normalized characters and free cumulants of actual shapes.

Characters come from the Murnaghan-Nakayama rule; free cumulants come from
the transition measure, whose Cauchy transform is
``G(z) = prod_j (z - y_j) / prod_i (z - x_i)`` over the interlacing minima
``x`` and maxima ``y`` of the diagram's profile (Russian convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .cumulants import boolean_to_free, sigma
from .partitions import Partition


@dataclass(frozen=True)
class YoungDiagram:
    rows: Partition

    def __init__(self, rows: Sequence[int] = ()):
        object.__setattr__(self, "rows", Partition(tuple(rows)))

    @classmethod
    def parse(cls, text: str) -> "YoungDiagram":
        """Parse a comma-separated list of row lengths such as ``"4,2,1"``."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            rows = [int(x) for x in text.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse diagram {text!r}") from None
        return cls(rows)

    @property
    def n(self) -> int:
        return sum(self.rows)

    def columns(self) -> Partition:
        """Rows of the conjugate diagram."""
        if not self.rows:
            return Partition(())
        return Partition(tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0])))

    def __str__(self) -> str:
        return ",".join(map(str, self.rows))


@dataclass(frozen=True)
class InterlacingCoords:
    minima: tuple[int, ...]
    maxima: tuple[int, ...]


def _diagram(lam) -> YoungDiagram:
    return lam if isinstance(lam, YoungDiagram) else YoungDiagram(lam)


def dilate(lam, s: int) -> YoungDiagram:
    """Replace every box by an ``s x s`` block."""
    if s < 1:
        raise ValueError("dilation factor must be positive")
    lam = _diagram(lam)
    return YoungDiagram(tuple(s * r for r in lam.rows for _ in range(s)))


def _beta_set(rows: Sequence[int], length: int) -> list[int]:
    # first-column hook lengths, padded to `length` rows
    padded = list(rows) + [0] * (length - len(rows))
    return [padded[i] + length - 1 - i for i in range(length)]


def _mn_character(shape: tuple, cycle_type: tuple, memo: dict) -> int:
    """chi^shape at the class ``cycle_type`` by rim-hook removal.

    Removing a rim hook of size ``r`` is sliding a bead of the abacus from
    ``b`` to ``b - r``; the sign is ``(-1)^(beads jumped over)``.
    """
    if not cycle_type:
        return 1 if not shape else 0
    key = (shape, cycle_type)
    hit = memo.get(key)
    if hit is not None:
        return hit
    r, rest = cycle_type[0], cycle_type[1:]
    length = len(shape)
    beads = _beta_set(shape, length)
    occupied = set(beads)
    total = 0
    for b in beads:
        t = b - r
        if t < 0 or t in occupied:
            continue
        jumped = sum(1 for x in beads if t < x < b)
        new = sorted((occupied - {b}) | {t}, reverse=True)
        rows = tuple(x - (length - 1 - i) for i, x in enumerate(new))
        rows = tuple(x for x in rows if x)
        total += (-1) ** jumped * _mn_character(rows, rest, memo)
    memo[key] = total
    return total


def character(lam, cycle_type: Sequence[int]) -> int:
    """Irreducible character value ``chi^lam`` at the class of the given cycle type."""
    lam = _diagram(lam)
    ct = tuple(sorted((c for c in cycle_type if c > 0), reverse=True))
    if sum(ct) != lam.n:
        raise ValueError("cycle type and diagram sizes differ")
    return _mn_character(tuple(lam.rows), ct, {})


def dimension(lam) -> int:
    """Dimension of the irreducible representation, by the hook length formula."""
    lam = _diagram(lam)
    cols = lam.columns()
    hooks = 1
    for i, r in enumerate(lam.rows):
        for j in range(r):
            hooks *= (r - j - 1) + (cols[j] - i - 1) + 1
    return factorial(lam.n) // hooks


def normalized_character(lam, k: int) -> Fraction | int:
    """``n (n-1) ... (n-k+1) chi^lam(k, 1^{n-k}) / dim lam``, zero when ``k > n``."""
    if k < 1:
        raise ValueError("k must be positive")
    lam = _diagram(lam)
    n = lam.n
    if k > n:
        return 0
    falling = 1
    for i in range(k):
        falling *= n - i
    value = Fraction(falling * character(lam, (k,) + (1,) * (n - k)), dimension(lam))
    return value.numerator if value.denominator == 1 else value


def interlacing(lam) -> InterlacingCoords:
    """Contents of the addable (minima) and removable (maxima) boxes.

    Content is column minus row, both zero-based.
    """
    lam = _diagram(lam)
    rows = list(lam.rows)
    minima = []
    maxima = []
    for i in range(len(rows) + 1):
        r = rows[i] if i < len(rows) else 0
        above = rows[i - 1] if i > 0 else None
        if above is None or r < above:
            minima.append(r - i)
        nxt = rows[i + 1] if i + 1 < len(rows) else 0
        if r > 0 and r > nxt:
            maxima.append(r - 1 - i)
    return InterlacingCoords(tuple(sorted(minima)), tuple(sorted(maxima)))


def boolean_cumulants_of(lam, max_index: int) -> list[Fraction]:
    """``[B_1, ..., B_max]`` of the transition measure.

    ``H(z) = 1/G(z) = z prod_i (1 - x_i u) / prod_j (1 - y_j u)`` with
    ``u = 1/z``, and ``H = z (1 - sum_n B_n u^n)``.
    """
    coords = interlacing(lam)
    N = max_index
    series = [Fraction(1)] + [Fraction(0)] * N
    for x in coords.minima:
        # multiply by (1 - x u)
        for n in range(N, 0, -1):
            series[n] -= x * series[n - 1]
    for y in coords.maxima:
        # divide by (1 - y u)
        for n in range(1, N + 1):
            series[n] += y * series[n - 1]
    return [-series[n] for n in range(1, N + 1)]


def free_cumulants_of(lam, max_index: int) -> list[Fraction | int]:
    """``[R_2, ..., R_max]`` of the diagram."""
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    b = boolean_cumulants_of(lam, max_index)
    bvals = {j: b[j - 1] for j in range(2, max_index + 1)}
    table = boolean_to_free(max_index)
    out = []
    for j in range(2, max_index + 1):
        v = Fraction(table[j].evaluate(bvals))
        out.append(v.numerator if v.denominator == 1 else v)
    return out


def free_cumulant_map(lam, max_index: int) -> dict[int, Fraction | int]:
    """``{i: R_i}`` for ``2 <= i <= max_index``."""
    return {i + 2: v for i, v in enumerate(free_cumulants_of(lam, max_index))}


def kerov_side(lam, k: int) -> Fraction | int:
    """``K_k`` evaluated at the free cumulants of ``lam``."""
    value = Fraction(sigma(k).poly.evaluate(free_cumulant_map(lam, k + 1)))
    return value.numerator if value.denominator == 1 else value

