"""
Finite binary relations over an ordered word universe.

A relation is stored as a dense n x n boolean adjacency matrix. Composition
follows the existential convention

    (w, w') in compose(r, r2)  iff  some w'' has (w, w'') in r and (w'', w') in r2

so the first argument is applied first and the adjacency of the result is the
boolean matrix product adjacency(r) . adjacency(r2). Textbooks that write
composition right-to-left get the transposed order; this module never does.

All values are immutable after construction.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from relalg.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Universe:
    """Ordered set of distinct word labels with index lookup."""

    words: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.words:
            raise InputError("A universe needs at least one word")
        index: Dict[str, int] = {}
        for position, word in enumerate(self.words):
            if word in index:
                raise InputError(f"Duplicate word in universe: {word!r}")
            index[word] = position
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.words)

    def lookup(self, word: str) -> int:
        try:
            return self._index[word]
        except KeyError:
            raise InputError(f"Unknown word: {word!r}") from None

    def __contains__(self, word: object) -> bool:
        return word in self._index

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)


class Relation:
    """A binary relation over one universe."""

    __slots__ = ("universe", "adjacency", "_key")

    def __init__(self, universe: Universe, adjacency: np.ndarray) -> None:
        matrix = np.array(adjacency, dtype=bool, copy=True)
        if matrix.shape != (universe.size, universe.size):
            raise InputError(
                f"Adjacency shape {matrix.shape} does not match universe size {universe.size}"
            )
        matrix.setflags(write=False)
        self.universe = universe
        self.adjacency = matrix
        self._key = np.packbits(matrix).tobytes()

    @property
    def key(self) -> bytes:
        """Packed adjacency bits; equal keys mean equal relations over one universe."""
        return self._key

    def pairs(self) -> List[Tuple[str, str]]:
        """Pairs in universe order (row-major)."""
        words = self.universe.words
        rows, cols = np.nonzero(self.adjacency)
        return [(words[a], words[b]) for a, b in zip(rows.tolist(), cols.tolist())]

    def index_pairs(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.nonzero(self.adjacency)

    def __len__(self) -> int:
        return int(self.adjacency.sum())

    def is_empty(self) -> bool:
        return not self.adjacency.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.universe == other.universe and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.universe.words, self._key))

    def __repr__(self) -> str:
        return f"Relation(size={self.universe.size}, pairs={len(self)})"


def universe_from_words(labels: Sequence[str]) -> Universe:
    """Build a universe keeping the given label order."""
    return Universe(tuple(labels))


def relation_from_pairs(u: Universe, pairs: Iterable[Tuple[str, str]]) -> Relation:
    """Build a relation from word pairs; repeated pairs are ignored."""
    adjacency = np.zeros((u.size, u.size), dtype=bool)
    for pair in pairs:
        if len(pair) != 2:
            raise InputError(f"Relation pairs must have two words, got {list(pair)!r}")
        a, b = pair
        adjacency[u.lookup(a), u.lookup(b)] = True
    return Relation(u, adjacency)


def identity(u: Universe) -> Relation:
    return Relation(u, np.eye(u.size, dtype=bool))


def empty(u: Universe) -> Relation:
    return Relation(u, np.zeros((u.size, u.size), dtype=bool))


def _check_same_universe(r: Relation, r2: Relation) -> None:
    if r.universe != r2.universe:
        raise InputError("Relations over different universes cannot be combined")


def compose(r: Relation, r2: Relation) -> Relation:
    """Relation product, first argument applied first."""
    _check_same_universe(r, r2)
    product = r.adjacency.astype(np.int32) @ r2.adjacency.astype(np.int32)
    return Relation(r.universe, product > 0)


def power(r: Relation, k: int, method: str = "squaring") -> Relation:
    """k-fold composition of r with itself; power(r, 0) is the identity.

    ``method`` selects repeated squaring or plain iteration. Both give the
    same relation because composition is associative.
    """
    if k < 0:
        raise InputError(f"Relation powers need a nonnegative exponent, got {k}")
    result = identity(r.universe)
    if method == "iterate":
        for _ in range(k):
            result = compose(result, r)
        return result
    if method != "squaring":
        raise InputError(f"Unknown power method: {method!r}")
    base = r
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def converse(r: Relation) -> Relation:
    """Transpose of the relation.

    This is the compositional inverse only when r is a bijection; for any
    other relation compose(r, converse(r)) is not the identity.
    """
    return Relation(r.universe, r.adjacency.T)


def is_bijection(r: Relation) -> bool:
    """Exactly one related word per row and per column."""
    adjacency = r.adjacency
    return bool((adjacency.sum(axis=0) == 1).all() and (adjacency.sum(axis=1) == 1).all())


def successor(u: Universe, wrap: bool = True) -> Relation:
    """The successor relation along universe order, cyclic when ``wrap``."""
    words = u.words
    pairs = list(zip(words, words[1:]))
    if wrap and u.size > 1:
        pairs.append((words[-1], words[0]))
    elif wrap:
        pairs.append((words[0], words[0]))
    return relation_from_pairs(u, pairs)


__all__ = [
    "Universe",
    "Relation",
    "universe_from_words",
    "relation_from_pairs",
    "identity",
    "empty",
    "compose",
    "power",
    "converse",
    "is_bijection",
    "successor",
]
