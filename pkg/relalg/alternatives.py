"""
Representations of relation groups that are not relation vectors.

Cyclic closures map onto complex roots of unity under multiplication, and
every finite group maps onto permutation matrices through its own Cayley
table (left-regular representation: g sends element j to g o j).
Permutations are kept as integer index arrays; matrix() materializes one.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from relalg.errors import NotAGroupError, NotCyclicError, RelalgError
from relalg.groups import (
    ComplexTarget,
    HomomorphismMap,
    MonoidClosure,
    PermutationTarget,
    element_label,
    image_order,
    is_group,
    iso_to_cyclic,
    verify_homomorphism,
)

logger = logging.getLogger(__name__)

MULTIPLICATIVE_TOL = 1e-9
UNIT_MODULUS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ScalarRepresentation:
    closure: MonoidClosure
    values: np.ndarray
    k: int
    generator: int

    def as_homomorphism(self) -> HomomorphismMap:
        return HomomorphismMap(tuple(complex(z) for z in self.values), ComplexTarget())


@dataclass(frozen=True, eq=False)
class MatrixRepresentation:
    closure: MonoidClosure
    permutations: np.ndarray

    def matrix(self, i: int) -> np.ndarray:
        """P[a][b] = 1 iff the permutation of element i sends b to a."""
        m = self.closure.size
        result = np.zeros((m, m), dtype=np.int64)
        result[self.permutations[i], np.arange(m)] = 1
        return result

    def as_homomorphism(self) -> HomomorphismMap:
        return HomomorphismMap(tuple(self.permutations), PermutationTarget(self.closure.size))


Representation = Union[ScalarRepresentation, MatrixRepresentation]


@dataclass(frozen=True)
class MultiplicativeReport:
    ok: bool
    violations: Tuple[Tuple[int, int, int], ...] = ()
    collisions: Tuple[Tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_multiplicative(rep: Representation, tol: float = MULTIPLICATIVE_TOL) -> MultiplicativeReport:
    """rho(g o h) = rho(g) rho(h) on every pair, and pairwise distinct images."""
    h = rep.as_homomorphism()
    verdict = verify_homomorphism(h, rep.closure, tol)
    collisions = []
    for i in range(len(h.images)):
        for j in range(i + 1, len(h.images)):
            if h.target.equal(h.images[i], h.images[j], tol):
                collisions.append((i, j))
    ok = verdict.ok and not collisions
    return MultiplicativeReport(ok, verdict.violations, tuple(collisions))


def roots_of_unity_repr(c: MonoidClosure) -> ScalarRepresentation:
    """Send g^j to e^(2 pi i j / k) for a generator g of a cyclic closure of size k."""
    iso = iso_to_cyclic(c)
    if iso is None:
        raise NotCyclicError(f"Closure of {c.size} elements is not a cyclic group")
    residues = np.array(iso.residues, dtype=float)
    values = np.exp(2j * np.pi * residues / iso.k)
    values.setflags(write=False)
    if np.abs(np.abs(values) - 1.0).max() > UNIT_MODULUS_TOL:
        raise RelalgError("Root of unity lost unit modulus")
    rep = ScalarRepresentation(c, values, iso.k, iso.generator)
    report = verify_multiplicative(rep)
    if not report:
        raise RelalgError(f"Roots-of-unity assignment is not multiplicative: {report}")
    logger.info(f"Built roots-of-unity representation of Z_{iso.k}")
    return rep


def cayley_repr(c: MonoidClosure) -> MatrixRepresentation:
    """Left-regular permutation representation read off the Cayley table."""
    verdict = is_group(c)
    if not verdict:
        raise NotAGroupError(
            f"Closure is not a group; elements without inverses: {list(verdict.missing_inverses)}"
        )
    permutations = np.array(c.table, dtype=np.int64, copy=True)
    permutations.setflags(write=False)
    rep = MatrixRepresentation(c, permutations)
    report = verify_multiplicative(rep)
    if not report:
        raise RelalgError(f"Cayley representation failed verification: {report}")
    logger.info(f"Built Cayley representation with {c.size} permutation matrices")
    return rep


def multiplicative_order(rep: Representation, i: int, limit: Optional[int] = None, tol: float = MULTIPLICATIVE_TOL) -> Optional[int]:
    """Order of the image of element i; None if it exceeds ``limit`` (default: closure size)."""
    return image_order(rep.as_homomorphism(), i, limit or rep.closure.size, tol)


def representation_dump(rep: Representation, generator_names: Sequence[str]) -> Dict[str, list]:
    """Element label -> [re, im] for scalars, or the permutation index array."""
    dump: Dict[str, list] = {}
    for i in range(rep.closure.size):
        label = element_label(rep.closure, i, generator_names)
        if isinstance(rep, ScalarRepresentation):
            z = complex(rep.values[i])
            dump[label] = [z.real, z.imag]
        else:
            dump[label] = rep.permutations[i].tolist()
    return dump


__all__ = [
    "MULTIPLICATIVE_TOL",
    "ScalarRepresentation",
    "MatrixRepresentation",
    "Representation",
    "MultiplicativeReport",
    "verify_multiplicative",
    "roots_of_unity_repr",
    "cayley_repr",
    "multiplicative_order",
    "representation_dump",
]
