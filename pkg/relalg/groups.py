"""
Closures of relations under composition and the group facts read off them.

A MonoidClosure lists the identity first, then every relation reachable by
composing generators on the right, in breadth-first discovery order. Its
Cayley table stores indices: table[i][j] is the index of elements[i] o elements[j].
Every diagnostic list (violating pairs, triples, elements lacking inverses)
is produced in lexicographic order of element indices.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from itertools import groupby
from typing import Any, Dict, List, Optional, Protocol, Sequence, Tuple

import numpy as np

from config import Config
from relalg.errors import ClosureLimitError, InputError
from relalg.relations import Relation, Universe, compose, identity

logger = logging.getLogger(__name__)

FINITE = "finite"
INFINITE = "infinite"


@dataclass(frozen=True)
class OrderResult:
    """Order of an element: the smallest positive power equal to the identity.

    For an infinite order, ``witness`` holds exponents (i, j), i < j, of the
    first repeated power; no power up to j was the identity.
    """

    kind: str
    value: Optional[int] = None
    witness: Optional[Tuple[int, int]] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def __str__(self) -> str:
        if self.is_finite:
            return str(self.value)
        return f"infinite (power {self.witness[1]} repeats power {self.witness[0]})"


@dataclass(frozen=True, eq=False)
class MonoidClosure:
    universe: Universe
    elements: Tuple[Relation, ...]
    table: np.ndarray
    generator_indices: Tuple[int, ...]
    words: Tuple[Tuple[int, ...], ...] = ()

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, relation: Relation) -> Optional[int]:
        for position, element in enumerate(self.elements):
            if element == relation:
                return position
        return None

    def __len__(self) -> int:
        return len(self.elements)


def order(r: Relation) -> OrderResult:
    """Order of a relation under composition.

    Powers are stored until one equals the identity (finite order) or one
    repeats without the identity appearing (infinite order). At most
    2^(n*n) relations exist, so the loop terminates.
    """
    unit = identity(r.universe)
    seen: Dict[bytes, int] = {}
    current = r
    exponent = 1
    while True:
        if current == unit:
            return OrderResult(FINITE, exponent)
        if current.key in seen:
            return OrderResult(INFINITE, witness=(seen[current.key], exponent))
        seen[current.key] = exponent
        current = compose(current, r)
        exponent += 1


def generate_closure(generators: Sequence[Relation], cap: Optional[int] = None) -> MonoidClosure:
    """Breadth-first closure of the generators under composition, identity included."""
    if not generators:
        raise InputError("Closure generation needs at least one generator")
    universe = generators[0].universe
    for generator in generators[1:]:
        if generator.universe != universe:
            raise InputError("All generators must share one universe")
    if cap is None:
        cap = Config().max_closure

    elements: List[Relation] = [identity(universe)]
    words: List[Tuple[int, ...]] = [()]
    index: Dict[bytes, int] = {elements[0].key: 0}
    queue = deque([0])
    while queue:
        position = queue.popleft()
        current = elements[position]
        for g, generator in enumerate(generators):
            product = compose(current, generator)
            if product.key in index:
                continue
            if len(elements) >= cap:
                raise ClosureLimitError(len(elements) + 1, cap)
            index[product.key] = len(elements)
            elements.append(product)
            words.append(words[position] + (g,))
            queue.append(len(elements) - 1)

    size = len(elements)
    table = np.empty((size, size), dtype=np.int64)
    for i, left in enumerate(elements):
        for j, right in enumerate(elements):
            table[i, j] = index[compose(left, right).key]
    table.setflags(write=False)

    generator_indices = tuple(index[g.key] for g in generators)
    logger.info(f"Generated closure of {size} elements from {len(generators)} generator(s)")
    return MonoidClosure(universe, tuple(elements), table, generator_indices, tuple(words))


def element_label(c: MonoidClosure, i: int, generator_names: Sequence[str]) -> str:
    """Shortest generator word of element i as a relation expression, e.g. ``s^3 o t``."""
    if i >= len(c.words):
        return f"g{i}"
    word = c.words[i]
    if not word:
        return "e"
    parts = []
    for g, run in groupby(word):
        count = len(list(run))
        name = generator_names[g]
        parts.append(name if count == 1 else f"{name}^{count}")
    return " o ".join(parts)


def element_order(c: MonoidClosure, i: int) -> OrderResult:
    """Order of closure element i, computed on the Cayley table."""
    seen: Dict[int, int] = {}
    current = i
    exponent = 1
    while True:
        if current == 0:
            return OrderResult(FINITE, exponent)
        if current in seen:
            return OrderResult(INFINITE, witness=(seen[current], exponent))
        seen[current] = exponent
        current = int(c.table[current, i])
        exponent += 1


def order_table(c: MonoidClosure) -> Tuple[OrderResult, ...]:
    return tuple(element_order(c, i) for i in range(c.size))


def inverse_of(c: MonoidClosure, i: int) -> Optional[int]:
    """Index of the two-sided inverse of element i, if the closure holds one."""
    for j in range(c.size):
        if c.table[i, j] == 0 and c.table[j, i] == 0:
            return j
    return None


def is_associative(c: MonoidClosure) -> bool:
    """Exhaustive triple check of the Cayley table."""
    t = c.table
    for a in range(c.size):
        for b in range(c.size):
            ab = t[a, b]
            for d in range(c.size):
                if t[ab, d] != t[a, t[b, d]]:
                    return False
    return True


@dataclass(frozen=True)
class GroupVerdict:
    is_group: bool
    missing_inverses: Tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.is_group


def is_group(c: MonoidClosure) -> GroupVerdict:
    """Group axioms on a closure. The identity sits at index 0 and the table is
    associative by construction, so only inverses need searching."""
    missing = tuple(i for i in range(c.size) if inverse_of(c, i) is None)
    return GroupVerdict(not missing, missing)


@dataclass(frozen=True)
class AbelianVerdict:
    is_abelian: bool
    violation: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.is_abelian


def is_abelian(c: MonoidClosure) -> AbelianVerdict:
    for i in range(c.size):
        for j in range(i + 1, c.size):
            if c.table[i, j] != c.table[j, i]:
                return AbelianVerdict(False, (i, j))
    return AbelianVerdict(True)


# Target algebras for homomorphisms. Each supplies the composition of the
# target, its identity, and an equality test (exact or within a tolerance).


class Target(Protocol):
    exact: bool

    @property
    def identity(self) -> Any: ...

    def combine(self, a: Any, b: Any) -> Any: ...

    def equal(self, a: Any, b: Any, tol: float) -> bool: ...


@dataclass(frozen=True)
class ModularTarget:
    """Integers mod k under addition."""

    modulus: int
    exact: bool = True

    @property
    def identity(self) -> int:
        return 0

    def combine(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def equal(self, a: int, b: int, tol: float = 0.0) -> bool:
        return a % self.modulus == b % self.modulus


@dataclass(frozen=True)
class VectorTarget:
    """Real d-vectors under addition."""

    dimension: int
    exact: bool = False

    @property
    def identity(self) -> np.ndarray:
        return np.zeros(self.dimension)

    def combine(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.asarray(a) + np.asarray(b)

    def equal(self, a: np.ndarray, b: np.ndarray, tol: float) -> bool:
        return bool(np.linalg.norm(np.asarray(a) - np.asarray(b)) <= tol)


@dataclass(frozen=True)
class ComplexTarget:
    """Nonzero complex numbers under multiplication."""

    exact: bool = False

    @property
    def identity(self) -> complex:
        return 1 + 0j

    def combine(self, a: complex, b: complex) -> complex:
        return a * b

    def equal(self, a: complex, b: complex, tol: float) -> bool:
        return abs(a - b) <= tol


@dataclass(frozen=True)
class PermutationTarget:
    """Permutations of range(m) as index arrays; combine(p, q) maps j to p[q[j]]."""

    degree: int
    exact: bool = True

    @property
    def identity(self) -> np.ndarray:
        return np.arange(self.degree)

    def combine(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.asarray(a)[np.asarray(b)]

    def equal(self, a: np.ndarray, b: np.ndarray, tol: float = 0.0) -> bool:
        return bool(np.array_equal(a, b))


@dataclass(frozen=True)
class RelationTarget:
    """Relations over a universe under composition."""

    universe: Universe
    exact: bool = True

    @property
    def identity(self) -> Relation:
        return identity(self.universe)

    def combine(self, a: Relation, b: Relation) -> Relation:
        return compose(a, b)

    def equal(self, a: Relation, b: Relation, tol: float = 0.0) -> bool:
        return a == b


@dataclass(frozen=True, eq=False)
class HomomorphismMap:
    """Assignment of a target object to every closure element, by index."""

    images: Tuple[Any, ...]
    target: Target

    def image(self, i: int) -> Any:
        return self.images[i]


@dataclass(frozen=True)
class HomomorphismVerdict:
    ok: bool
    violations: Tuple[Tuple[int, int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _check_total(h: HomomorphismMap, c: MonoidClosure) -> None:
    if len(h.images) != c.size:
        raise InputError(f"Map assigns {len(h.images)} images but the closure has {c.size} elements")


def verify_homomorphism(h: HomomorphismMap, c: MonoidClosure, tol: float = 1e-9) -> HomomorphismVerdict:
    """Check h(a o b) = h(a) * h(b) on every pair; violations are (a, b, a o b)."""
    _check_total(h, c)
    violations = []
    for a in range(c.size):
        for b in range(c.size):
            ab = int(c.table[a, b])
            expected = h.target.combine(h.images[a], h.images[b])
            if not h.target.equal(h.images[ab], expected, tol):
                violations.append((a, b, ab))
    if violations:
        logger.debug(f"Homomorphism check found {len(violations)} violation(s), first {violations[0]}")
    return HomomorphismVerdict(not violations, tuple(violations))


def image_order(h: HomomorphismMap, i: int, limit: int, tol: float = 1e-9) -> Optional[int]:
    """Order of h(i) under the target operation, or None if above ``limit``."""
    x = h.images[i]
    for m in range(1, limit + 1):
        if h.target.equal(x, h.target.identity, tol):
            return m
        x = h.target.combine(x, h.images[i])
    return None


def check_order_divides(h: HomomorphismMap, c: MonoidClosure, i: int, tol: float = 1e-9) -> bool:
    """Whether the order of h(element i) divides the order of element i.

    Elements of infinite order impose no divisibility and pass.
    """
    _check_total(h, c)
    source = element_order(c, i)
    if not source.is_finite:
        return True
    image = image_order(h, i, source.value, tol)
    logger.debug(f"Element {i}: order {source.value}, image order {image}")
    return image is not None and source.value % image == 0


@dataclass(frozen=True)
class CyclicIso:
    """Isomorphism onto Z_k: element index -> residue mod k."""

    k: int
    generator: int
    residues: Tuple[int, ...]


def iso_to_cyclic(c: MonoidClosure) -> Optional[CyclicIso]:
    """Certify the closure as cyclic, trying every element as generator."""
    if not is_group(c):
        return None
    k = c.size
    if k == 1:
        return CyclicIso(1, 0, (0,))
    for g in range(1, k):
        residues = [-1] * k
        current, exponent = 0, 0
        while residues[current] < 0:
            residues[current] = exponent
            current = int(c.table[current, g])
            exponent += 1
        if exponent != k:
            continue
        h = HomomorphismMap(tuple(residues), ModularTarget(k))
        if sorted(residues) == list(range(k)) and verify_homomorphism(h, c):
            logger.info(f"Closure is cyclic of order {k}, generated by element {g}")
            return CyclicIso(k, g, tuple(residues))
    return None


__all__ = [
    "FINITE",
    "INFINITE",
    "OrderResult",
    "MonoidClosure",
    "order",
    "generate_closure",
    "element_label",
    "element_order",
    "order_table",
    "inverse_of",
    "is_associative",
    "GroupVerdict",
    "is_group",
    "AbelianVerdict",
    "is_abelian",
    "Target",
    "ModularTarget",
    "VectorTarget",
    "ComplexTarget",
    "PermutationTarget",
    "RelationTarget",
    "HomomorphismMap",
    "HomomorphismVerdict",
    "verify_homomorphism",
    "image_order",
    "check_order_divides",
    "CyclicIso",
    "iso_to_cyclic",
]
