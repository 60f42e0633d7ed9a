"""Kerov coefficients by counting factorizations of the long cycle.

The coefficient of ``R_2^{s_2} R_3^{s_3} ...`` in ``K_k`` is the number of
triples ``(sigma_1, sigma_2, q)`` with ``sigma_1 o sigma_2 = (1 2 ... k)``,
``q`` a coloring of the cycles of ``sigma_2`` by integers >= 2 using colour
``i`` exactly ``s_i`` times, ``|C(sigma_1)| + |C(sigma_2)| = sum_i i s_i``,
and the marriage condition on every nontrivial set of ``sigma_2`` cycles.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import islice, permutations
from typing import Iterable, Mapping, Sequence

from .algebra import CumulantPoly, Family
from .partitions import _raw

DEFAULT_BOUND = 9


class BoundExceeded(ValueError):
    """``k`` is above the enumeration bound."""


class Permutation:
    """A bijection of ``{1, ..., k}`` stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images!r} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(range(1, k + 1))

    @classmethod
    def long_cycle(cls, k: int) -> "Permutation":
        """The cycle ``(1, 2, ..., k)``."""
        return cls([i % k + 1 for i in range(1, k + 1)])

    @classmethod
    def from_cycles(cls, k: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, k + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        return Permutation([self.images[y - 1] for y in other.images])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles in canonical order: by smallest element, each starting there."""
        return [tuple(x + 1 for x in c) for c in _cycles0(tuple(y - 1 for y in self.images))]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return "Permutation(" + "".join(str(c).replace(",)", ")") for c in self.cycles()) + ")"


def _cycles0(images: Sequence[int]) -> list[list[int]]:
    # 0-based cycle decomposition, canonical order
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if not seen[start]:
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = images[x]
            out.append(cyc)
    return out


def _compositions(total: int, parts: int, min_part: int = 2):
    """Ordered tuples of ``parts`` integers >= ``min_part`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= min_part:
            yield (total,)
        return
    for first in range(min_part, total - min_part * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, min_part):
            yield (first,) + rest


def _meet_counts(sigma1_cycles: list[list[int]], sigma2_cycles: list[list[int]]) -> list[int]:
    """For each subset mask ``A`` of sigma_2 cycles, how many sigma_1 cycles meet ``union A``."""
    c1_masks = []
    for cyc in sigma1_cycles:
        m = 0
        for x in cyc:
            m |= 1 << x
        c1_masks.append(m)
    c2_masks = []
    for cyc in sigma2_cycles:
        m = 0
        for x in cyc:
            m |= 1 << x
        c2_masks.append(m)
    n = len(c2_masks)
    union = [0] * (1 << n)
    for A in range(1, 1 << n):
        low = A & -A
        union[A] = union[A ^ low] | c2_masks[low.bit_length() - 1]
    return [sum(1 for m in c1_masks if m & u) for u in union]


def _marriage_ok(meets: list[int], colors: Sequence[int]) -> bool:
    n = len(colors)
    full = (1 << n) - 1
    load = [0] * (1 << n)
    for A in range(1, full):
        low = A & -A
        load[A] = load[A ^ low] + colors[low.bit_length() - 1] - 1
        if meets[A] <= load[A]:
            return False
    return True


def marriage_check(sigma1: Permutation, sigma2: Permutation, q: Mapping[tuple, int] | Sequence[int]) -> bool:
    """Whether every proper nonempty set ``A`` of sigma_2 cycles meets more than
    ``sum_{i in A} (q(i) - 1)`` cycles of sigma_1.

    ``q`` maps each cycle of ``sigma2`` (as listed by :meth:`Permutation.cycles`)
    to its colour, or is a sequence of colours in that order.
    """
    c2 = sigma2.cycles()
    if isinstance(q, Mapping):
        colors = []
        for cyc in c2:
            key = next((c for c in q if set(c) == set(cyc)), None)
            if key is None:
                raise ValueError(f"no colour given for cycle {cyc}")
            colors.append(q[key])
    else:
        colors = list(q)
        if len(colors) != len(c2):
            raise ValueError("need one colour per cycle of sigma2")
    to0 = lambda cycles: [[x - 1 for x in c] for c in cycles]
    meets = _meet_counts(to0(sigma1.cycles()), to0(c2))
    return _marriage_ok(meets, colors)


def _count_block(k: int, start: int, stop: int) -> dict:
    counts: dict[tuple, int] = {}
    c = [(i + 1) % k for i in range(k)]
    for images in islice(permutations(range(k)), start, stop):
        inv = [0] * k
        for i, y in enumerate(images):
            inv[y] = i
        sigma1 = [c[inv[x]] for x in range(k)]  # c o sigma2^{-1}
        cyc2 = _cycles0(images)
        cyc1 = _cycles0(sigma1)
        n2 = len(cyc2)
        total = n2 + len(cyc1)
        if total < 2 * n2:
            continue
        meets = _meet_counts(cyc1, cyc2) if n2 > 1 else None
        for colors in _compositions(total, n2):
            if n2 > 1 and not _marriage_ok(meets, colors):
                continue
            key = tuple(sorted(colors, reverse=True))
            counts[key] = counts.get(key, 0) + 1
    return counts


def brute_kerov(k: int, bound: int = DEFAULT_BOUND, jobs: int = 1) -> CumulantPoly:
    """``K_k`` by exhaustive enumeration of ``sigma_2`` over the symmetric group."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > bound:
        raise BoundExceeded(f"k={k} exceeds the enumeration bound {bound}")
    total = 1
    for i in range(2, k + 1):
        total *= i
    if jobs <= 1:
        blocks = [_count_block(k, 0, total)]
    else:
        step = -(-total // jobs)
        ranges = [(k, s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(_count_block, *zip(*ranges)))
    merged: dict[tuple, int] = {}
    for block in blocks:
        for key, n in block.items():
            merged[key] = merged.get(key, 0) + n
    return CumulantPoly(Family.FREE, {_raw(key): n for key, n in merged.items()})


def conjugate(sigma: Permutation, by: Permutation) -> Permutation:
    """``by o sigma o by^{-1}``."""
    return by.compose(sigma).compose(by.inverse())
