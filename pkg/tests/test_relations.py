import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relalg.errors import InputError
from relalg.relations import (
    Relation,
    compose,
    converse,
    empty,
    identity,
    is_bijection,
    power,
    relation_from_pairs,
    successor,
    universe_from_words,
)
from tests.strategies import permutation_relations, relation_tuples


def test_universe_rejects_duplicates_and_empty():
    with pytest.raises(InputError, match="Duplicate"):
        universe_from_words(["a", "b", "a"])
    with pytest.raises(InputError):
        universe_from_words([])


def test_unknown_word(weekdays):
    with pytest.raises(InputError, match="Funday"):
        relation_from_pairs(weekdays, [("Monday", "Funday")])


def test_compose_applies_first_argument_first(weekdays, s):
    s2 = compose(s, s)
    assert ("Monday", "Wednesday") in s2.pairs()
    assert ("Sunday", "Tuesday") in s2.pairs()
    assert len(s2) == 7


def test_composition_order_is_not_reversed():
    u = universe_from_words(["a", "b", "c"])
    r = relation_from_pairs(u, [("a", "b")])
    r2 = relation_from_pairs(u, [("b", "c")])
    assert compose(r, r2).pairs() == [("a", "c")]
    assert compose(r2, r).is_empty()


def test_compose_rejects_other_universe(s):
    other = universe_from_words(["x"])
    with pytest.raises(InputError):
        compose(s, identity(other))


def test_pairs_follow_universe_order(weekdays, s):
    assert s.pairs()[0] == ("Monday", "Tuesday")
    assert s.pairs()[-1] == ("Sunday", "Monday")


@pytest.mark.parametrize("k", [0, 1, 7, 8, 13, 21])
def test_power_methods_agree(s, k):
    assert power(s, k) == power(s, k, method="iterate")


def test_power_zero_is_identity(s, weekdays):
    assert power(s, 0) == identity(weekdays)


def test_power_rejects_negative_exponent(s):
    with pytest.raises(InputError):
        power(s, -1)


def test_weekday_powers_are_periodic(s):
    powers = [power(s, k) for k in range(22)]
    for k in range(22):
        for l in range(22):
            assert (powers[k] == powers[l]) == (k % 7 == l % 7)


def test_successor_without_wrap_is_nilpotent(weekdays):
    chain = successor(weekdays, wrap=False)
    assert len(chain) == 6
    assert power(chain, 7).is_empty()
    assert power(chain, 8) == empty(weekdays)


def test_converse_inverts_bijections_only(s, weekdays):
    assert is_bijection(s)
    assert compose(s, converse(s)) == identity(weekdays)
    chain = successor(weekdays, wrap=False)
    assert not is_bijection(chain)
    assert compose(chain, converse(chain)) != identity(weekdays)


def test_relations_are_read_only(s):
    with pytest.raises(ValueError):
        s.adjacency[0, 0] = True


def test_adjacency_shape_checked(weekdays):
    with pytest.raises(InputError):
        Relation(weekdays, np.zeros((3, 3), dtype=bool))


class TestCompositionLaws:
    @settings(max_examples=1000, deadline=None)
    @given(relation_tuples(count=3))
    def test_associativity_law(self, triple):
        r, r2, r3 = triple
        assert compose(compose(r, r2), r3) == compose(r, compose(r2, r3))

    @settings(max_examples=200, deadline=None)
    @given(relation_tuples(count=1))
    def test_identity_law(self, single):
        (r,) = single
        unit = identity(r.universe)
        assert compose(unit, r) == r == compose(r, unit)

    @settings(max_examples=1000, deadline=None)
    @given(relation_tuples(count=1), st.integers(0, 12), st.integers(0, 12))
    def test_power_additivity_law(self, single, k, l):
        (r,) = single
        assert power(r, k + l) == compose(power(r, k), power(r, l))

    @settings(max_examples=200, deadline=None)
    @given(relation_tuples(count=2))
    def test_converse_reverses_composition(self, pair):
        r, r2 = pair
        assert converse(compose(r, r2)) == compose(converse(r2), converse(r))

    @settings(max_examples=200, deadline=None)
    @given(permutation_relations())
    def test_permutations_are_invertible(self, r):
        assert is_bijection(r)
        assert compose(r, converse(r)) == identity(r.universe)
