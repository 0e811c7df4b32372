"""
Word vectors built from context-word conditional distributions.

psi sends a word w to the vector (log P[c|w])_c over the context vocabulary,
so the vector of a represented relation is the per-context log ratio
log(P[c|w'] / P[c|w]). Probabilities are estimated from counts with additive
smoothing; logs are natural.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from relalg.errors import InputError
from relalg.groups import OrderResult, order
from relalg.relations import Relation, Universe
from relalg.vectors import Embedding, RelationVectorReport, relation_vector, require_representation

logger = logging.getLogger(__name__)

ZERO_VECTOR = "ZERO-VECTOR"
ESCAPE = "ESCAPE"
CONTRADICTION = "CONTRADICTION"


@dataclass(frozen=True, eq=False)
class CountTable:
    words: Universe
    contexts: Tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        if not self.contexts:
            raise InputError("A count table needs at least one context word")
        if len(set(self.contexts)) != len(self.contexts):
            raise InputError("Context labels must be distinct")
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if counts.shape != (self.words.size, len(self.contexts)):
            raise InputError(
                f"Counts shape {counts.shape} does not match "
                f"{self.words.size} words x {len(self.contexts)} contexts"
            )
        if (counts < 0).any():
            raise InputError("Counts must be nonnegative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    def count(self, word: str, context: str) -> int:
        return int(self.counts[self.words.lookup(word), self.contexts.index(context)])


@dataclass(frozen=True, eq=False)
class ConditionalModel:
    table: CountTable
    alpha: float
    probabilities: np.ndarray

    def probability(self, context: str, word: str) -> float:
        return float(self.probabilities[self.table.words.lookup(word), self.table.contexts.index(context)])


def count_table(words: Sequence[str], contexts: Sequence[str], counts) -> CountTable:
    return CountTable(Universe(tuple(words)), tuple(contexts), np.asarray(counts))


def build_conditional(t: CountTable, alpha: float = 0.5) -> ConditionalModel:
    """P[c|w] = (count(w, c) + alpha) / (sum_c' count(w, c') + alpha |C|)."""
    if alpha < 0 or not np.isfinite(alpha):
        raise InputError(f"Smoothing alpha must be a finite nonnegative number, got {alpha}")
    if alpha == 0:
        rows, cols = np.nonzero(t.counts == 0)
        if len(rows):
            word, context = t.words.words[rows[0]], t.contexts[cols[0]]
            raise InputError(f"Zero count for ({word!r}, {context!r}) with alpha = 0; log P would be undefined")
    smoothed = t.counts.astype(float) + alpha
    probabilities = smoothed / smoothed.sum(axis=1, keepdims=True)
    probabilities.setflags(write=False)
    logger.debug(f"Built conditional model over {t.words.size} words and {len(t.contexts)} contexts, alpha={alpha}")
    return ConditionalModel(t, alpha, probabilities)


def psi(m: ConditionalModel) -> Embedding:
    """Embedding w -> (log P[c|w])_c with one coordinate per context word."""
    return Embedding(m.table.words, np.log(m.probabilities))


def psi_relation_vector(m: ConditionalModel, r: Relation, tol: float = 1e-6, name: str = "") -> RelationVectorReport:
    return relation_vector(psi(m), r, tol, name)


@dataclass(frozen=True, eq=False)
class EscapeReport:
    status: str
    vector_norm: float
    kmax: int
    order: OrderResult
    power_norms: Tuple[float, ...] = ()
    relation: Optional[RelationVectorReport] = None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "vector_norm": self.vector_norm,
            "kmax": self.kmax,
            "order": self.order.value if self.order.is_finite else "infinite",
            "escaped_up_to": len(self.power_norms),
        }


def classify_escape(report: RelationVectorReport, relation_order: OrderResult, kmax: int, tol: float) -> EscapeReport:
    """Decide the escape status of a represented relation from its vector and order.

    A nonzero vector v has k*v nonzero for every k >= 1, so the image of r^k
    never returns to the zero vector. If r nonetheless has finite order >= 2,
    the representation contradicts the order-divides property.
    """
    if kmax < 1:
        raise InputError(f"kmax must be positive, got {kmax}")
    norm = float(np.linalg.norm(report.mean))
    if norm <= tol:
        return EscapeReport(ZERO_VECTOR, norm, kmax, relation_order, relation=report)
    power_norms = []
    for k in range(1, kmax + 1):
        scaled = float(np.linalg.norm(k * report.mean))
        if scaled <= tol:
            break
        power_norms.append(scaled)
    if relation_order.is_finite and relation_order.value >= 2:
        status = CONTRADICTION
    else:
        status = ESCAPE
    return EscapeReport(status, norm, kmax, relation_order, tuple(power_norms), report)


def escape_check(e: Embedding, r: Relation, kmax: int = 50, tol: float = 1e-6) -> EscapeReport:
    report = require_representation(e, r, tol, "r")
    return classify_escape(report, order(r), kmax, tol)


def power_escape_check(m: ConditionalModel, r: Relation, kmax: int = 50, tol: float = 1e-6) -> EscapeReport:
    """Check that the psi image of r^k escapes the zero vector for 1 <= k <= kmax."""
    result = escape_check(psi(m), r, kmax, tol)
    logger.info(f"Escape check: {result.status} (|psi(r)| = {result.vector_norm!r})")
    return result


__all__ = [
    "ZERO_VECTOR",
    "ESCAPE",
    "CONTRADICTION",
    "CountTable",
    "ConditionalModel",
    "count_table",
    "build_conditional",
    "psi",
    "psi_relation_vector",
    "EscapeReport",
    "classify_escape",
    "escape_check",
    "power_escape_check",
]
