import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wickfock.multiindex import (
    VACUUM,
    MultiIndex,
    binomial_product,
    indices_of_degree,
    indices_up_to,
)

indices = st.builds(
    MultiIndex,
    st.lists(
        st.tuples(st.integers(0, 5), st.integers(1, 4)), max_size=4
    ),
)


def brute_force_decompositions(a: MultiIndex):
    """Oracle: split every mode's multiplicity independently."""
    choices = [
        [(mode, k) for k in range(mult + 1)] for mode, mult in a.pairs
    ]
    out = []
    for picks in itertools.product(*choices):
        left = MultiIndex((m, k) for m, k in picks if k)
        right = MultiIndex(
            (m, a.multiplicity(m) - k) for m, k in picks if a.multiplicity(m) - k
        )
        out.append((left, right))
    return out


def test_normalization():
    a = MultiIndex([(3, 1), (0, 2)])
    assert a.pairs == ((0, 2), (3, 1))
    assert MultiIndex([(1, 1), (1, 2)]) == MultiIndex([(1, 3)])
    assert MultiIndex([(2, 0)]) == VACUUM
    with pytest.raises(ValueError):
        MultiIndex([(-1, 1)])
    with pytest.raises(ValueError):
        MultiIndex([(0, -2)])


def test_degree_hand_values():
    assert VACUUM.degree == 0
    assert MultiIndex([(0, 2), (3, 1)]).degree == 3
    assert MultiIndex([(5, 4)]).degree == 4


def test_hida_weight_hand_values():
    # (2*0+2)^2 * (2*3+2)^1 = 4 * 8 and (2*1+2)^3
    assert VACUUM.hida_weight == 1
    assert MultiIndex([(0, 2), (3, 1)]).hida_weight == 32
    assert MultiIndex([(1, 3)]).hida_weight == 64


def test_factorial_and_pairing_weight_hand_values():
    assert VACUUM.factorial_degree == 1
    assert MultiIndex([(0, 2), (3, 1)]).factorial_degree == 6
    assert MultiIndex([(1, 4)]).factorial_degree == 24
    assert VACUUM.pairing_weight == 1
    assert MultiIndex([(0, 2), (3, 1)]).pairing_weight == 2
    assert MultiIndex([(1, 3)]).pairing_weight == 6


def test_concat_hand_values():
    a = MultiIndex([(1, 2)])
    b = MultiIndex([(1, 1), (3, 1)])
    assert a.concat(b) == MultiIndex([(1, 3), (3, 1)])
    assert VACUUM.concat(a) == a
    assert MultiIndex([(0, 1)]).concat(MultiIndex([(2, 1)])) == MultiIndex(
        [(0, 1), (2, 1)]
    )


def test_decompositions_hand_values():
    assert VACUUM.decompositions() == [(VACUUM, VACUUM)]
    two = MultiIndex([(0, 2)])
    one = MultiIndex([(0, 1)])
    assert two.decompositions() == [(VACUUM, two), (one, one), (two, VACUUM)]
    assert len(MultiIndex([(0, 1), (1, 1)]).decompositions()) == 4


@given(indices)
def test_decompositions_against_oracle(a):
    got = sorted(a.decompositions())
    assert got == sorted(brute_force_decompositions(a))
    count = math.prod(mult + 1 for _, mult in a.pairs)
    assert len(got) == count
    assert count <= 2**a.degree
    assert all(b.concat(d) == a for b, d in got)


@given(indices, indices, indices)
def test_concat_monoid_laws(a, b, c):
    assert a.concat(b) == b.concat(a)
    assert a.concat(b).concat(c) == a.concat(b.concat(c))
    assert a.concat(VACUUM) == a


@given(indices, indices)
def test_weights_under_concat(a, b):
    ab = a.concat(b)
    assert ab.degree == a.degree + b.degree
    assert ab.hida_weight == a.hida_weight * b.hida_weight
    assert (
        ab.factorial_degree
        <= 2 ** (a.degree + b.degree) * a.factorial_degree * b.factorial_degree
    )


def test_increment_decrement():
    a = MultiIndex([(0, 2)])
    assert a.increment(0) == MultiIndex([(0, 3)])
    assert a.increment(2) == MultiIndex([(0, 2), (2, 1)])
    assert a.decrement(0) == MultiIndex([(0, 1)])
    assert MultiIndex([(0, 1)]).decrement(0) == VACUUM
    with pytest.raises(ValueError):
        a.decrement(1)


def test_binomial_product():
    j = MultiIndex([(0, 2), (1, 1)])
    assert binomial_product(j, MultiIndex([(0, 1)])) == 2
    assert binomial_product(j, MultiIndex([(0, 1), (1, 1)])) == 2
    assert binomial_product(j, VACUUM) == 1
    assert binomial_product(j, MultiIndex([(2, 1)])) == 0


def test_enumeration():
    assert indices_of_degree(0, range(3)) == [VACUUM]
    assert indices_of_degree(2, []) == []
    two_modes_degree_two = indices_of_degree(2, range(2))
    assert len(two_modes_degree_two) == 3
    assert MultiIndex([(0, 1), (1, 1)]) in two_modes_degree_two
    # degree d on k modes counts C(d+k-1, k-1)
    assert len(indices_of_degree(4, range(3))) == math.comb(4 + 2, 2)
    up = indices_up_to(2, range(2))
    assert len(up) == 1 + 2 + 3
    assert up == sorted(up)


@given(indices)
def test_json_round_trip(a):
    assert MultiIndex.from_json(a.to_json()) == a


def test_ordering_is_lexicographic_on_pairs():
    a = MultiIndex([(0, 1)])
    b = MultiIndex([(0, 2)])
    c = MultiIndex([(1, 1)])
    assert sorted([c, b, a]) == [a, b, c]
    assert VACUUM < a
