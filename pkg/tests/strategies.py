import numpy as np
from hypothesis import strategies as st

from relalg.relations import Relation, universe_from_words


def universes(min_size=1, max_size=8):
    return st.integers(min_size, max_size).map(lambda n: universe_from_words([f"w{i}" for i in range(n)]))


@st.composite
def relations_on(draw, universe):
    n = universe.size
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    return Relation(universe, np.array(bits, dtype=bool).reshape(n, n))


@st.composite
def relation_tuples(draw, count=3, max_size=8):
    universe = draw(universes(max_size=max_size))
    return tuple(draw(relations_on(universe)) for _ in range(count))


@st.composite
def permutation_relations(draw, max_size=8):
    universe = draw(universes(max_size=max_size))
    order = draw(st.permutations(range(universe.size)))
    adjacency = np.zeros((universe.size, universe.size), dtype=bool)
    adjacency[np.arange(universe.size), order] = True
    return Relation(universe, adjacency)
