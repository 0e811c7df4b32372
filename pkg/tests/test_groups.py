import random
from functools import lru_cache
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings

from relalg import groups
from relalg.errors import ClosureLimitError, InputError
from relalg.files import load_relation_spec
from relalg.groups import (
    HomomorphismMap,
    ModularTarget,
    RelationTarget,
    VectorTarget,
    check_order_divides,
    element_label,
    generate_closure,
    inverse_of,
    is_abelian,
    is_associative,
    is_group,
    iso_to_cyclic,
    order,
    order_table,
    verify_homomorphism,
)
from relalg.relations import compose, identity, power, relation_from_pairs, successor, universe_from_words
from tests.strategies import permutation_relations


@lru_cache(maxsize=None)
def cyclic(k):
    u = universe_from_words([f"c{i}" for i in range(k)])
    closure = generate_closure([successor(u)])
    return u, closure, iso_to_cyclic(closure)


def symmetric_group_generators():
    u = universe_from_words(["a", "b", "c"])
    swap = relation_from_pairs(u, [("a", "b"), ("b", "a"), ("c", "c")])
    rotate = relation_from_pairs(u, [("a", "b"), ("b", "c"), ("c", "a")])
    return swap, rotate


def test_weekdays_closure_is_cyclic_of_order_seven(s):
    closure = generate_closure([s])
    assert closure.size == 7
    assert is_group(closure)
    assert is_abelian(closure)
    iso = iso_to_cyclic(closure)
    assert iso.k == 7
    assert sorted(iso.residues) == list(range(7))


def test_closure_identity_first_and_table_read_only(s, weekdays):
    closure = generate_closure([s])
    assert closure.elements[0] == identity(weekdays)
    assert closure.generator_indices == (1,)
    assert closure.table.dtype == np.int64
    with pytest.raises(ValueError):
        closure.table[0, 0] = 3


def test_closure_is_deterministic(s):
    first = generate_closure([s, power(s, 3)])
    second = generate_closure([s, power(s, 3)])
    assert [e.key for e in first.elements] == [e.key for e in second.elements]
    assert first.table.tobytes() == second.table.tobytes()


@pytest.mark.parametrize(
    "spec, name, expected",
    [("weekdays.json", "s", 7), ("months.json", "s", 12), ("hours.json", "s", 24), ("antonyms.json", "ant", 2)],
)
def test_bundled_orders(data_dir, spec, name, expected):
    result = order(load_relation_spec(data_dir / spec).relation(name))
    assert result.is_finite
    assert result.value == expected
    assert str(result) == str(expected)


def test_chain_has_infinite_order_with_witness(weekdays):
    result = order(successor(weekdays, wrap=False))
    assert not result.is_finite
    assert result.witness == (7, 8)
    assert "infinite" in str(result)


def test_identity_has_order_one(weekdays):
    assert order(identity(weekdays)).value == 1


def test_closure_cap_raises(s):
    with pytest.raises(ClosureLimitError) as info:
        generate_closure([s], cap=5)
    assert info.value.cap == 5


def test_closure_cap_read_from_environment(s, monkeypatch):
    monkeypatch.setenv("RELALG_MAX_CLOSURE", "3")
    with pytest.raises(ClosureLimitError):
        generate_closure([s])


def test_closure_needs_generators():
    with pytest.raises(InputError):
        generate_closure([])


def test_non_group_closure_lists_missing_inverses(weekdays):
    closure = generate_closure([successor(weekdays, wrap=False)])
    assert closure.size == 8
    verdict = is_group(closure)
    assert not verdict
    assert verdict.missing_inverses == tuple(range(1, 8))
    assert iso_to_cyclic(closure) is None


def test_symmetric_group_is_not_abelian():
    closure = generate_closure(list(symmetric_group_generators()))
    assert closure.size == 6
    assert is_group(closure)
    verdict = is_abelian(closure)
    assert not verdict
    i, j = verdict.violation
    assert closure.table[i, j] != closure.table[j, i]
    assert iso_to_cyclic(closure) is None


def test_klein_four_group_is_abelian_but_not_cyclic():
    u = universe_from_words(["a", "b", "c", "d"])
    first = relation_from_pairs(u, [("a", "b"), ("b", "a"), ("c", "c"), ("d", "d")])
    second = relation_from_pairs(u, [("a", "a"), ("b", "b"), ("c", "d"), ("d", "c")])
    closure = generate_closure([first, second])
    assert closure.size == 4
    assert is_group(closure) and is_abelian(closure)
    assert iso_to_cyclic(closure) is None


def test_trivial_group_is_cyclic_of_order_one(weekdays):
    closure = generate_closure([identity(weekdays)])
    assert iso_to_cyclic(closure).k == 1


def test_tables_are_associative():
    closure = generate_closure(list(symmetric_group_generators()))
    assert is_associative(closure)


def test_inverse_of_in_cyclic_group(s):
    closure = generate_closure([s])
    for i in range(closure.size):
        j = inverse_of(closure, i)
        assert compose(closure.elements[i], closure.elements[j]) == closure.elements[0]


def test_element_labels_use_generator_words(s):
    closure = generate_closure([s])
    labels = [element_label(closure, i, ["s"]) for i in range(closure.size)]
    assert labels == ["e", "s", "s^2", "s^3", "s^4", "s^5", "s^6"]


def test_order_table_of_weekdays(s):
    orders = [result.value for result in order_table(generate_closure([s]))]
    assert orders == [1, 7, 7, 7, 7, 7, 7]


def test_order_table_of_hours(data_dir):
    closure = generate_closure([load_relation_spec(data_dir / "hours.json").relation("s")])
    orders = [result.value for result in order_table(closure)]
    assert orders == [24 // gcd(j, 24) for j in range(24)]


def test_vector_homomorphism_from_cyclic_group_fails(s):
    closure = generate_closure([s])
    images = tuple(np.array([float(j)]) for j in cyclic(7)[2].residues)
    verdict = verify_homomorphism(HomomorphismMap(images, VectorTarget(1)), closure)
    assert not verdict
    assert verdict.violations


def test_zero_map_is_a_homomorphism_but_collapses(s):
    closure = generate_closure([s])
    h = HomomorphismMap(tuple(np.zeros(1) for _ in range(closure.size)), VectorTarget(1))
    assert verify_homomorphism(h, closure)
    assert all(check_order_divides(h, closure, i) for i in range(closure.size))


def test_incomplete_map_rejected(s):
    closure = generate_closure([s])
    with pytest.raises(InputError):
        verify_homomorphism(HomomorphismMap((0, 1), ModularTarget(7)), closure)


def test_random_homomorphisms_between_cyclic_groups_respect_orders():
    rng = random.Random(20240607)
    accepted = 0
    while accepted < 200:
        k, n = rng.randint(2, 24), rng.randint(2, 24)
        _, source, iso = cyclic(k)
        target_universe, target, _ = cyclic(n)
        t = successor(target_universe)
        if rng.random() < 0.5:
            step = n // gcd(k, n)
            a = step * rng.randrange(gcd(k, n))
        else:
            a = rng.randrange(n)
        images = tuple(power(t, (a * r) % n) for r in iso.residues)
        h = HomomorphismMap(images, RelationTarget(target_universe))
        verdict = verify_homomorphism(h, source)
        assert bool(verdict) == ((a * k) % n == 0)
        if not verdict:
            continue
        accepted += 1
        assert all(check_order_divides(h, source, i) for i in range(source.size))


def test_order_divides_can_fail_for_non_homomorphisms():
    _, source, iso = cyclic(6)
    u, _, _ = cyclic(4)
    t = successor(u)
    h = HomomorphismMap(tuple(power(t, r % 4) for r in iso.residues), RelationTarget(u))
    assert not verify_homomorphism(h, source)
    assert not all(check_order_divides(h, source, i) for i in range(source.size))


def test_modular_target_matches_group_names():
    assert groups.ModularTarget(7).combine(5, 4) == 2
    assert groups.PermutationTarget(3).combine(np.array([1, 2, 0]), np.array([2, 0, 1])).tolist() == [0, 1, 2]


@settings(max_examples=200, deadline=None)
@given(permutation_relations())
def test_order_counts_distinct_powers(r):
    result = order(r)
    assert result.is_finite
    assert len({power(r, j).key for j in range(1, result.value + 1)}) == result.value


def test_residue_map_into_integers_mod_seven(s):
    closure = generate_closure([s])
    iso = iso_to_cyclic(closure)
    assert verify_homomorphism(HomomorphismMap(iso.residues, ModularTarget(7)), closure)


def test_corrupted_residue_map_reports_sorted_violations(s):
    closure = generate_closure([s])
    residues = list(iso_to_cyclic(closure).residues)
    assert residues[:3] == [0, 1, 2]
    residues[2] = 3
    verdict = verify_homomorphism(HomomorphismMap(tuple(residues), ModularTarget(7)), closure)
    assert not verdict
    assert (1, 1, 2) in verdict.violations
    assert list(verdict.violations) == sorted(verdict.violations)
