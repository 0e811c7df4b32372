"""
The weekdays walkthrough: successor on the seven days, its cyclic group,
why no vector embedding can tell its powers apart, and two representations
that can.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Tuple

import numpy as np

from relalg import alternatives, groups, vectors
from relalg.relations import Relation, identity, power, successor, universe_from_words

logger = logging.getLogger(__name__)

WEEKDAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")


def _powers(s: Relation, k: int) -> Dict[str, Relation]:
    return {("s" if j == 1 else f"s{j}"): power(s, j) for j in range(1, k + 1)}


def _periodic(s: Relation, k: int, up_to: int) -> bool:
    """s^a = s^b exactly when a = b mod k, for 0 <= a, b <= up_to."""
    table = [power(s, a) for a in range(up_to + 1)]
    return all((table[a] == table[b]) == (a % k == b % k) for a in range(up_to + 1) for b in range(up_to + 1))


def weekdays() -> Tuple[dict, List[str]]:
    """Run the walkthrough; returns the JSON payload and the transcript lines."""
    u = universe_from_words(WEEKDAYS)
    s = successor(u)
    lines = ["W = {" + ", ".join(u.words) + "}"]
    lines.append("s = {" + ", ".join(f"({a}, {b})" for a, b in s.pairs()) + "}")
    lines.append(f"s o s sends Monday to {dict(power(s, 2).pairs())['Monday']}")

    result = groups.order(s)
    k = result.value
    periodic = _periodic(s, k, 3 * k)
    lines.append(f"order(s) = {result}")
    lines.append(f"s^{k} = e: {power(s, k) == identity(u)}")
    lines.append(f"s^a = s^b iff a = b (mod {k}) for 0 <= a, b <= {3 * k}: {periodic}")

    closure = groups.generate_closure([s])
    group = groups.is_group(closure)
    abelian = groups.is_abelian(closure)
    cyclic = groups.iso_to_cyclic(closure)
    lines.append(
        f"closure of s: {closure.size} elements, group {group.is_group}, "
        f"abelian {abelian.is_abelian}, cyclic k = {cyclic.k if cyclic else None}"
    )

    relations = _powers(s, k)
    certificate = vectors.theorem1_certificate(relations)
    lines.append(f"certify {{{', '.join(relations)}}}: {certificate.verdict} (witness order {certificate.order})")
    lines.append(f"  {certificate.proof}")

    fit = vectors.fit_embedding(u, relations, 2)
    largest = max(float(np.linalg.norm(v)) for v in fit.relation_vectors.values())
    lines.append(
        f"fit d=2: objective {fit.objective!r}, largest relation vector {largest!r}, collapsed {fit.collapsed}"
    )

    roots = alternatives.roots_of_unity_repr(closure)
    roots_check = alternatives.verify_multiplicative(roots)
    z = complex(roots.values[closure.generator_indices[0]])
    generator_order = alternatives.multiplicative_order(roots, closure.generator_indices[0])
    lines.append(f"roots of unity: s -> e^(2πi/{roots.k}) = ({z.real!r}, {z.imag!r}), order {generator_order}")
    lines.append(f"  multiplicative and injective: {roots_check.ok}")

    cayley = alternatives.cayley_repr(closure)
    cayley_check = alternatives.verify_multiplicative(cayley)
    matrix = cayley.matrix(closure.generator_indices[0])
    returns = bool(np.array_equal(np.linalg.matrix_power(matrix, k), np.eye(closure.size, dtype=np.int64)))
    lines.append(f"cayley: P_s is a {closure.size}x{closure.size} permutation matrix, P_s^{k} = I: {returns}")
    lines.append(f"  multiplicative and injective: {cayley_check.ok}")

    payload = {
        "universe": list(u.words),
        "order": k,
        "periodic": periodic,
        "closure_size": closure.size,
        "is_group": group.is_group,
        "is_abelian": abelian.is_abelian,
        "cyclic_k": cyclic.k if cyclic else None,
        "certificate": certificate.as_dict(),
        "fit": fit.as_dict(),
        "roots": {"k": roots.k, "generator": [z.real, z.imag], "order": generator_order, "verified": roots_check.ok},
        "cayley": {"size": closure.size, "generator_returns": returns, "verified": cayley_check.ok},
    }
    logger.info("Weekdays walkthrough finished")
    return payload, lines


__all__ = ["WEEKDAYS", "weekdays"]
