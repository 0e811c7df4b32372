"""
Relation-as-vector representations: checking, fitting and refuting them.

An embedding sends every word to a real d-vector. A relation r is represented
when all its pair differences phi(b) - phi(a), (a, b) in r, agree; the common
difference is the relation vector. With noisy embeddings the mean difference
is used and the spread around it is reported as ``max_deviation``.

Tolerances are relative to the size of the vector being judged: a relation
passes at ``tol`` when max_deviation <= tol * (1 + |mean|).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.csgraph import connected_components

from relalg.errors import InputError, RepresentationError
from relalg.groups import order
from relalg.relations import Relation, Universe, compose, identity, power

logger = logging.getLogger(__name__)

IMPOSSIBLE = "IMPOSSIBLE"
NO_OBSTRUCTION = "NO-OBSTRUCTION-FOUND"

MODES = ("vector", "ray", "line")

# Relative singular-value cutoff for the exact-fit null space.
_RCOND = 1e-10


@dataclass(frozen=True, eq=False)
class Embedding:
    """One finite d-vector per universe word, rows in universe order."""

    universe: Universe
    vectors: np.ndarray

    def __post_init__(self) -> None:
        vectors = np.array(self.vectors, dtype=float, copy=True)
        if vectors.ndim != 2 or vectors.shape[0] != self.universe.size or vectors.shape[1] < 1:
            raise InputError(
                f"Embedding needs shape ({self.universe.size}, d) with d >= 1, got {vectors.shape}"
            )
        if not np.isfinite(vectors).all():
            raise InputError("Embedding coordinates must be finite")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def vector(self, word: str) -> np.ndarray:
        return self.vectors[self.universe.lookup(word)]

    def translated(self, offset: np.ndarray) -> "Embedding":
        return Embedding(self.universe, self.vectors + np.asarray(offset, dtype=float))


@dataclass(frozen=True, eq=False)
class RelationVectorReport:
    name: str
    mean: np.ndarray
    max_deviation: float
    pair_count: int
    is_representation: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "mean": self.mean.tolist(),
            "max_deviation": self.max_deviation,
            "pair_count": self.pair_count,
            "is_representation": self.is_representation,
        }


def _check_universe(e: Embedding, r: Relation) -> None:
    if e.universe != r.universe:
        raise InputError("The embedding and the relation use different universes")


def relation_vector(e: Embedding, r: Relation, tol: float = 1e-6, name: str = "") -> RelationVectorReport:
    """Mean pair difference of r under e and how far the pairs stray from it."""
    _check_universe(e, r)
    if r.is_empty():
        raise InputError(f"Relation {name or '<unnamed>'} is empty; there are no pairs to difference")
    sources, targets = r.index_pairs()
    differences = e.vectors[targets] - e.vectors[sources]
    mean = differences.mean(axis=0)
    if len(sources) > 1:
        max_deviation = float(np.linalg.norm(differences - mean, axis=1).max())
    else:
        max_deviation = 0.0
    threshold = tol * (1.0 + float(np.linalg.norm(mean)))
    return RelationVectorReport(name, mean, max_deviation, len(sources), max_deviation <= threshold)


def directions_equivalent(v: np.ndarray, w: np.ndarray, mode: str = "ray", tol: float = 1e-6) -> bool:
    """Compare vectors as rays (positive multiples identified) or lines (nonzero multiples).

    Two vectors within ``tol`` of zero are equivalent to each other and to
    nothing else; the zero vector has no direction.
    """
    if mode not in ("ray", "line"):
        raise InputError(f"Unknown direction mode: {mode!r}")
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    norm_v = float(np.linalg.norm(v))
    norm_w = float(np.linalg.norm(w))
    zero_v, zero_w = norm_v <= tol, norm_w <= tol
    if zero_v or zero_w:
        return zero_v and zero_w
    unit_v, unit_w = v / norm_v, w / norm_w
    if np.linalg.norm(unit_v - unit_w) <= tol:
        return True
    return mode == "line" and bool(np.linalg.norm(unit_v + unit_w) <= tol)


@dataclass(frozen=True)
class PairDistance:
    first: str
    second: str
    distance: float
    distinct: bool


@dataclass(frozen=True, eq=False)
class WellRepresentedReport:
    verdict: bool
    reports: Tuple[RelationVectorReport, ...]
    distances: Tuple[PairDistance, ...]
    vacuous: bool
    mode: str = "vector"

    def __bool__(self) -> bool:
        return self.verdict

    def as_dict(self) -> dict:
        return {
            "well_represented": self.verdict,
            "mode": self.mode,
            "vacuous_distinctness": self.vacuous,
            "relations": [report.as_dict() for report in self.reports],
            "distances": [
                {"first": d.first, "second": d.second, "distance": d.distance, "distinct": d.distinct}
                for d in self.distances
            ],
        }


def well_represented(
    e: Embedding,
    relations: Mapping[str, Relation],
    tol_rep: float = 1e-6,
    tol_distinct: float = 1e-6,
    mode: str = "vector",
) -> WellRepresentedReport:
    """Every relation is represented and all relation vectors are told apart.

    In ``vector`` mode two vectors are distinct when their Euclidean distance
    exceeds ``tol_distinct``; in ``ray`` and ``line`` mode when
    directions_equivalent rejects them.
    """
    if mode not in MODES:
        raise InputError(f"Unknown comparison mode: {mode!r}")
    reports = tuple(relation_vector(e, r, tol_rep, name) for name, r in relations.items())
    distances: List[PairDistance] = []
    for i, first in enumerate(reports):
        for second in reports[i + 1:]:
            distance = float(np.linalg.norm(first.mean - second.mean))
            if mode == "vector":
                distinct = distance > tol_distinct
            else:
                distinct = not directions_equivalent(first.mean, second.mean, mode, tol_distinct)
            distances.append(PairDistance(first.name, second.name, distance, distinct))

    vacuous = len(reports) < 2
    if vacuous:
        logger.warning("Fewer than two relations given; distinctness holds vacuously")
    verdict = all(report.is_representation for report in reports) and all(d.distinct for d in distances)
    return WellRepresentedReport(verdict, reports, tuple(distances), vacuous, mode)


def require_representation(e: Embedding, r: Relation, tol: float, name: str) -> RelationVectorReport:
    report = relation_vector(e, r, tol, name)
    if not report.is_representation:
        raise RepresentationError(
            f"Relation {name} is not represented by a single vector "
            f"(max deviation {report.max_deviation!r})",
            report,
        )
    return report


def check_homomorphism_additive(e: Embedding, r: Relation, r2: Relation, tol: float = 1e-6) -> bool:
    """phi(r o r2) = phi(r) + phi(r2) for represented relations."""
    first = require_representation(e, r, tol, "r")
    second = require_representation(e, r2, tol, "r2")
    product = require_representation(e, compose(r, r2), tol, "r o r2")
    gap = float(np.linalg.norm(product.mean - (first.mean + second.mean)))
    return gap <= 3 * tol


def check_inverse_negation(e: Embedding, r: Relation, r_inverse: Relation, tol: float = 1e-6) -> bool:
    """An inverse relation gets the negated relation vector."""
    if compose(r, r_inverse) != identity(r.universe):
        raise InputError("The second relation is not the inverse of the first")
    first = require_representation(e, r, tol, "r")
    second = require_representation(e, r_inverse, tol, "r inverse")
    return float(np.linalg.norm(first.mean + second.mean)) <= 2 * tol


@dataclass(frozen=True)
class Certificate:
    verdict: str
    witness: Tuple[str, ...] = ()
    order: Optional[int] = None
    demanded: Tuple[str, ...] = ()
    proof: str = ""

    @property
    def impossible(self) -> bool:
        return self.verdict == IMPOSSIBLE

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": list(self.witness),
            "order": self.order,
            "demanded": list(self.demanded),
            "proof": self.proof,
        }


def _shared_universe(relations: Mapping[str, Relation]) -> Optional[Universe]:
    universes = {r.universe for r in relations.values()}
    if len(universes) > 1:
        raise InputError("All relations must share one universe")
    return next(iter(universes), None)


def _name_of(relations: Mapping[str, Relation], target: Relation) -> Optional[str]:
    for name, r in relations.items():
        if r == target:
            return name
    return None


def theorem1_certificate(relations: Mapping[str, Relation]) -> Certificate:
    """Certify that no relation-as-vector representation well-represents the set.

    Looks for a relation r of finite order k >= 2 whose powers r, ..., r^k
    all belong to the set. An additive homomorphism must send r to a vector v
    with k * v = 0, which over the reals forces v = 0 and every power to 0.
    NO-OBSTRUCTION-FOUND only means no such witness exists; it does not
    prove a representation exists.
    """
    _shared_universe(relations)
    for name, r in relations.items():
        result = order(r)
        if not result.is_finite or result.value < 2:
            continue
        k = result.value
        demanded = []
        for exponent in range(1, k + 1):
            power_name = _name_of(relations, power(r, exponent))
            if power_name is None:
                break
            demanded.append(power_name)
        else:
            proof = (
                f"{name} has order {k}, so any additive image v of {name} satisfies {k}*v = 0. "
                f"Any nonzero vector in V has order infinite over a field of characteristic 0, "
                f"hence v = 0 and all {k} distinct powers {', '.join(demanded)} are sent to the "
                f"zero vector and cannot be distinguished."
            )
            logger.info(f"Impossibility witness: {name} of order {k}")
            return Certificate(IMPOSSIBLE, (name,), k, tuple(demanded), proof)
    return Certificate(NO_OBSTRUCTION, proof="No relation of finite order >= 2 has all its powers in the set.")


def commutativity_certificate(relations: Mapping[str, Relation]) -> Certificate:
    """Non-commuting relations whose two products are both demanded distinct.

    Vector addition commutes, so phi(r o r2) = phi(r) + phi(r2) = phi(r2 o r)
    and the two products collapse onto one vector.
    """
    _shared_universe(relations)
    items = list(relations.items())
    for i, (name, r) in enumerate(items):
        for name2, r2 in items[i + 1:]:
            forward, backward = compose(r, r2), compose(r2, r)
            if forward == backward:
                continue
            forward_name = _name_of(relations, forward)
            backward_name = _name_of(relations, backward)
            if forward_name is None or backward_name is None:
                continue
            proof = (
                f"{name} o {name2} = {forward_name} differs from {name2} o {name} = {backward_name}, "
                f"but vector addition commutes, so both are sent to phi({name}) + phi({name2})."
            )
            return Certificate(IMPOSSIBLE, (name, name2), None, (forward_name, backward_name), proof)
    return Certificate(NO_OBSTRUCTION, proof="Every non-commuting pair has a product outside the set.")


@dataclass(frozen=True, eq=False)
class FitResult:
    embedding: Embedding
    relation_vectors: Dict[str, np.ndarray]
    objective: float
    collapsed: bool
    degenerate: bool = False
    solution_rank: int = 0

    def as_dict(self) -> dict:
        return {
            "dimension": self.embedding.dimension,
            "objective": self.objective,
            "collapsed": self.collapsed,
            "degenerate": self.degenerate,
            "solution_rank": self.solution_rank,
            "relation_vectors": {name: v.tolist() for name, v in self.relation_vectors.items()},
        }


def fit_objective(e: Embedding, relations: Mapping[str, Relation], relation_vectors: Mapping[str, np.ndarray]) -> float:
    """Sum over relations and pairs of |phi(b) - phi(a) - v_r|^2."""
    total = 0.0
    for name, r in relations.items():
        sources, targets = r.index_pairs()
        residual = e.vectors[targets] - e.vectors[sources] - np.asarray(relation_vectors[name])
        total += float(np.sum(residual * residual))
    return total


def _incidence(u: Universe, relations: Mapping[str, Relation]) -> scipy.sparse.csr_matrix:
    """One row per pair (a, b) of relation i: +1 at b, -1 at a, -1 at word count + i."""
    rows, cols, vals = [], [], []
    row = 0
    for i, r in enumerate(relations.values()):
        sources, targets = r.index_pairs()
        for a, b in zip(sources.tolist(), targets.tolist()):
            rows += [row, row, row]
            cols += [b, a, u.size + i]
            vals += [1.0, -1.0, -1.0]
            row += 1
    shape = (row, u.size + len(relations))
    # coo -> csr sums duplicates, so a loop pair (a, a) leaves only the relation column
    return scipy.sparse.coo_matrix((vals, (rows, cols)), shape=shape).tocsr()


def _pinned_words(u: Universe, relations: Mapping[str, Relation]) -> np.ndarray:
    """Lowest word index of every connected component of the pair graph."""
    graph = np.zeros((u.size, u.size), dtype=bool)
    for r in relations.values():
        graph |= r.adjacency
    _, labels = connected_components(scipy.sparse.csr_matrix(graph), directed=False)
    pinned = {}
    for word, label in enumerate(labels.tolist()):
        pinned.setdefault(label, word)
    return np.array(sorted(pinned.values()), dtype=int)


def fit_embedding(u: Universe, relations: Mapping[str, Relation], d: int, tol: float = 1e-6) -> FitResult:
    """Fit word and relation vectors minimising the total pair residual.

    The objective is homogeneous, so the origin is always optimal. The fit
    instead returns a point of the space of exact fits: one word per
    connected component is pinned to 0, the null space of the remaining
    incidence system is found by SVD, rotated so its basis is ordered by
    relation-vector size and scaled to unit relation-vector norm, and
    coordinate j uses basis vector j mod rank. An empty null space means
    every relation vector is forced to 0 and the fit collapses.
    """
    if d < 1:
        raise InputError(f"Embedding dimension must be at least 1, got {d}")
    if not relations:
        raise InputError("Fitting needs at least one relation")
    if _shared_universe(relations) != u:
        raise InputError("The relations do not live on the given universe")
    for name, r in relations.items():
        if r.is_empty():
            raise InputError(f"Relation {name} is empty")

    names = list(relations)
    n, count = u.size, len(names)
    incidence = _incidence(u, relations)
    pinned = _pinned_words(u, relations)
    free = np.setdiff1d(np.arange(n + count), pinned)
    degenerate = all(len(r) < 2 for r in relations.values())

    solution = np.zeros((n + count, d))
    rank = 0
    if degenerate:
        logger.warning("No relation has two pairs; returning the minimum-norm fit")
    else:
        basis = scipy.linalg.null_space(incidence[:, free].toarray(), rcond=_RCOND)
        rank = basis.shape[1]
        if rank:
            relation_rows = np.searchsorted(free, np.arange(n, n + count))
            left, scales, right = np.linalg.svd(basis[relation_rows], full_matrices=False)
            keep = scales > _RCOND
            basis = (basis @ right.T)[:, keep] / scales[keep]
            rank = basis.shape[1]
            for column in range(rank):
                block = basis[relation_rows, column]
                if block[np.argmax(np.abs(block))] < 0:
                    basis[:, column] = -basis[:, column]
            for j in range(d):
                solution[free, j] = basis[:, j % rank] if rank else 0.0

    embedding = Embedding(u, solution[:n])
    relation_vectors = {name: solution[n + i].copy() for i, name in enumerate(names)}
    objective = fit_objective(embedding, relations, relation_vectors)
    collapsed = all(np.linalg.norm(v) <= tol for v in relation_vectors.values())
    logger.info(f"Fitted d={d}: objective {objective!r}, rank {rank}, collapsed {collapsed}")
    return FitResult(embedding, relation_vectors, objective, collapsed, degenerate, rank)


__all__ = [
    "IMPOSSIBLE",
    "NO_OBSTRUCTION",
    "MODES",
    "Embedding",
    "RelationVectorReport",
    "relation_vector",
    "require_representation",
    "directions_equivalent",
    "PairDistance",
    "WellRepresentedReport",
    "well_represented",
    "check_homomorphism_additive",
    "check_inverse_negation",
    "Certificate",
    "theorem1_certificate",
    "commutativity_certificate",
    "FitResult",
    "fit_objective",
    "fit_embedding",
]
