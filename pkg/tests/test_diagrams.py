from collections import Counter
from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from kerov.diagrams import (
    YoungDiagram,
    boolean_cumulants_of,
    character,
    dilate,
    dimension,
    free_cumulants_of,
    interlacing,
    kerov_side,
    normalized_character,
)
from kerov.partitions import partitions_of
from oracles import free_cumulants_from_moments, transition_measure

# character table of S_4, classes in the order (1^4), (2,1,1), (2,2), (3,1), (4)
S4 = {
    (4,): [1, 1, 1, 1, 1],
    (3, 1): [3, 1, -1, 0, -1],
    (2, 2): [2, 0, 2, -1, 0],
    (2, 1, 1): [3, -1, -1, 0, 1],
    (1, 1, 1, 1): [1, -1, 1, 1, -1],
}
S4_CLASSES = [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]

small_diagrams = st.integers(0, 8).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def z_centralizer(mu):
    return prod(i ** m * factorial(m) for i, m in Counter(mu).items())


def test_parse():
    assert YoungDiagram.parse("4,2,1").rows == (4, 2, 1)
    assert YoungDiagram.parse("").rows == ()
    with pytest.raises(ValueError):
        YoungDiagram.parse("1,2")
    with pytest.raises(ValueError):
        YoungDiagram.parse("a,b")
    assert YoungDiagram((3, 1)).columns() == (2, 1, 1)
    assert str(YoungDiagram((3, 1))) == "3,1"


def test_dilate():
    assert dilate((2, 1), 2).rows == (4, 4, 2, 2)
    assert dilate((1,), 3).rows == (3, 3, 3)
    assert dilate((3, 2), 1).rows == (3, 2)
    with pytest.raises(ValueError):
        dilate((1,), 0)


def test_character_table_s4():
    for lam, row in S4.items():
        assert [character(lam, c) for c in S4_CLASSES] == row


@pytest.mark.parametrize("n", range(1, 8))
def test_character_orthogonality(n):
    shapes = partitions_of(n)
    table = {lam: {mu: character(lam, mu) for mu in shapes} for lam in shapes}
    for mu in shapes:
        for nu in shapes:
            s = sum(table[lam][mu] * table[lam][nu] for lam in shapes)
            assert s == (z_centralizer(mu) if mu == nu else 0)
    assert sum(dimension(lam) ** 2 for lam in shapes) == factorial(n)


@given(small_diagrams.filter(bool))
def test_dimension_is_character_at_identity(lam):
    assert dimension(lam) == character(lam, (1,) * sum(lam))


def test_normalized_character_examples():
    assert normalized_character((1,), 1) == 1
    assert normalized_character((2, 1), 1) == 3
    assert normalized_character((5,), 3) == 60
    assert normalized_character((2, 1), 4) == 0
    with pytest.raises(ValueError):
        normalized_character((2,), 0)


def test_interlacing_examples():
    assert interlacing(()).minima == (0,) and interlacing(()).maxima == ()
    assert interlacing((1,)).minima == (-1, 1) and interlacing((1,)).maxima == (0,)
    c = interlacing((2, 1))
    assert c.minima == (-2, 0, 2) and c.maxima == (-1, 1)


@given(small_diagrams)
def test_interlacing_invariants(lam):
    c = interlacing(lam)
    assert len(c.minima) == len(c.maxima) + 1
    merged = [c.minima[0]]
    for y, x in zip(c.maxima, c.minima[1:]):
        merged += [y, x]
    assert merged == sorted(set(merged))
    assert sum(c.minima) == sum(c.maxima)


def test_boolean_cumulants_of_single_box():
    assert boolean_cumulants_of((1,), 4) == [0, 1, 0, 0]


def test_free_cumulants_of_single_box():
    r = free_cumulants_of((1,), 3)
    assert r[0] == 1 and r[1] == 0


@given(small_diagrams)
def test_free_cumulants_against_transition_measure_moments(lam):
    c = interlacing(lam)
    atoms = transition_measure(c.minima, c.maxima)
    assert sum(w for _, w in atoms) == 1
    moments = {n: sum(w * Fraction(x) ** n for x, w in atoms) for n in range(1, 8)}
    want = free_cumulants_from_moments(moments, 7)
    assert want[1] == 0
    assert free_cumulants_of(lam, 7) == [want[n] for n in range(2, 8)]


@given(small_diagrams)
def test_r2_counts_boxes(lam):
    assert free_cumulants_of(lam, 2) == [sum(lam)]


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 1, 1), (2, 2)])
@pytest.mark.parametrize("s", [2, 3])
def test_dilation_homogeneity(lam, s):
    base = free_cumulants_of(lam, 6)
    dil = free_cumulants_of(dilate(lam, s), 6)
    assert dil == [s ** (i + 2) * r for i, r in enumerate(base)]


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 2), (4, 2, 1), (2, 2, 2), (5, 1)])
@pytest.mark.parametrize("k", range(1, 6))
def test_character_identity(lam, k):
    assert normalized_character(lam, k) == kerov_side(lam, k)


def test_character_identity_beyond_size_is_zero():
    # k > n: the character side is zero by definition and the polynomial side agrees
    assert kerov_side((2, 1), 4) == 0 == normalized_character((2, 1), 4)
