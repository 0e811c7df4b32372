"""
Command-line front end.

Every subcommand builds one JSON-ready payload and prints either the payload
(--json) or human lines rendered from the same values, so both outputs carry
identical numbers. Exit codes: 0 success, 1 a check failed (audit), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import Config
from relalg import alternatives, conditional, demo, files, groups, vectors
from relalg.errors import InputError, RelalgError, RepresentationError
from relalg.expressions import evaluate, format_expr, parse_relation_expr

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2

Outcome = Tuple[int, dict, List[str]]


def _generator_names(raw: str) -> List[str]:
    names = [name.strip() for name in raw.split(",") if name.strip()]
    if not names:
        raise InputError("--generators needs at least one relation name")
    return names


def _closure(spec: files.RelationSpec, names: Sequence[str], config: Config) -> groups.MonoidClosure:
    return groups.generate_closure([spec.relation(name) for name in names], cap=config.max_closure)


def cmd_eval(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    expr = parse_relation_expr(args.expr)
    result = evaluate(expr, spec.relations, spec.universe)
    pairs = [list(pair) for pair in result.pairs()]
    payload = {"expr": format_expr(expr), "size": len(pairs), "pairs": pairs}
    lines = [f"{payload['expr']} = {len(pairs)} pair(s)"] + [f"  ({a}, {b})" for a, b in pairs]
    return EXIT_OK, payload, lines


def cmd_order(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    result = groups.order(spec.relation(args.relation))
    payload = {
        "relation": args.relation,
        "kind": result.kind,
        "value": result.value,
        "witness": list(result.witness) if result.witness else None,
    }
    return EXIT_OK, payload, [f"order({args.relation}) = {result}"]


def cmd_analyze(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    names = _generator_names(args.generators)
    closure = _closure(spec, names, config)

    def label(i: int) -> str:
        return groups.element_label(closure, i, names)

    group = groups.is_group(closure)
    abelian = groups.is_abelian(closure)
    cyclic = groups.iso_to_cyclic(closure)
    orders = groups.order_table(closure)
    payload = {
        "generators": names,
        "closure_size": closure.size,
        "is_group": group.is_group,
        "missing_inverses": [label(i) for i in group.missing_inverses],
        "is_abelian": abelian.is_abelian,
        "abelian_violation": [label(i) for i in abelian.violation] if abelian.violation else None,
        "cyclic_k": cyclic.k if cyclic else None,
        "cyclic_generator": label(cyclic.generator) if cyclic else None,
        "generator_orders": {name: str(orders[i]) for name, i in zip(names, closure.generator_indices)},
        "element_orders": {label(i): str(result) for i, result in enumerate(orders)},
    }
    lines = [
        f"closure size = {closure.size}",
        f"group: {group.is_group}" + (f" (no inverse for {', '.join(payload['missing_inverses'])})" if not group else ""),
        f"abelian: {abelian.is_abelian}" + (f" ({' / '.join(payload['abelian_violation'])} do not commute)" if not abelian else ""),
        f"cyclic k = {payload['cyclic_k']}" + (f" (generator {payload['cyclic_generator']})" if cyclic else ""),
    ]
    lines += [f"order({name}) = {value}" for name, value in payload["generator_orders"].items()]
    return EXIT_OK, payload, lines


def cmd_certify(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    by_order = vectors.theorem1_certificate(spec.relations)
    by_commutation = vectors.commutativity_certificate(spec.relations)
    verdict = vectors.IMPOSSIBLE if (by_order.impossible or by_commutation.impossible) else vectors.NO_OBSTRUCTION
    payload = {"verdict": verdict, "finite_order": by_order.as_dict(), "nonabelian": by_commutation.as_dict()}
    lines = [f"verdict: {verdict}"]
    if by_order.impossible:
        lines.append(f"witness: {by_order.witness[0]} of order {by_order.order}")
    if by_commutation.impossible:
        lines.append(f"non-commuting witness: {' and '.join(by_commutation.witness)}")
    for certificate in (by_order, by_commutation):
        if certificate.impossible:
            lines.append(f"  {certificate.proof}")
    return EXIT_OK, payload, lines


def cmd_fit(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    tol = config.tol_rep if args.tol is None else args.tol
    result = vectors.fit_embedding(spec.universe, spec.relations, args.dim, tol)
    files.save_embedding(args.out, result.embedding)
    payload = dict(result.as_dict(), out=str(args.out))
    lines = [
        f"objective = {result.objective!r}",
        f"collapsed = {result.collapsed}",
        f"solution rank = {result.solution_rank}" + (" (degenerate)" if result.degenerate else ""),
    ]
    lines += [f"v({name}) = {vector.tolist()!r}" for name, vector in result.relation_vectors.items()]
    lines.append(f"embedding written to {args.out}")
    return EXIT_OK, payload, lines


def cmd_audit(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    embedding = files.load_embedding(args.embedding, spec.universe)
    tol_rep = config.tol_rep if args.tol_rep is None else args.tol_rep
    tol_distinct = config.tol_distinct if args.tol_distinct is None else args.tol_distinct
    report = vectors.well_represented(embedding, spec.relations, tol_rep, tol_distinct, args.mode)
    lines = [f"well-represented: {report.verdict}" + (" (distinctness vacuous)" if report.vacuous else "")]
    for item in report.reports:
        lines.append(
            f"  {item.name}: representation {item.is_representation}, "
            f"max deviation {item.max_deviation!r}, pairs {item.pair_count}"
        )
    for distance in report.distances:
        if not distance.distinct:
            lines.append(f"  {distance.first} and {distance.second} are not distinct (distance {distance.distance!r})")
    return (EXIT_OK if report else EXIT_CHECK_FAILED), report.as_dict(), lines


def cmd_repr(args: argparse.Namespace, config: Config) -> Outcome:
    spec = files.load_relation_spec(args.spec)
    names = _generator_names(args.generators)
    closure = _closure(spec, names, config)
    if args.kind == "roots":
        rep = alternatives.roots_of_unity_repr(closure)
    else:
        rep = alternatives.cayley_repr(closure)
    check = alternatives.verify_multiplicative(rep)
    dump = alternatives.representation_dump(rep, names)
    payload = {
        "kind": args.kind,
        "closure_size": closure.size,
        "verified": check.ok,
        "violations": [list(v) for v in check.violations],
        "collisions": [list(c) for c in check.collisions],
        "images": dump,
    }
    lines = [f"{args.kind} representation of {closure.size} elements, verified: {check.ok}"]
    if isinstance(rep, alternatives.ScalarRepresentation):
        payload["k"] = rep.k
        generator = groups.element_label(closure, rep.generator, names)
        lines.append(f"{generator} -> e^(2πi/{rep.k})")
    for label, image in dump.items():
        lines.append(f"  {label} -> {image!r}")
    if args.out:
        files.save_json(args.out, payload)
    return EXIT_OK, payload, lines


def cmd_psi(args: argparse.Namespace, config: Config) -> Outcome:
    table = files.load_counts(args.counts)
    alpha = config.alpha if args.alpha is None else args.alpha
    model = conditional.build_conditional(table, alpha)
    embedding = conditional.psi(model)
    files.save_embedding(args.out, embedding)
    payload = {
        "words": list(table.words.words),
        "contexts": list(table.contexts),
        "alpha": alpha,
        "dimension": embedding.dimension,
        "out": str(args.out),
    }
    lines = [
        f"psi embedding of {table.words.size} words over {len(table.contexts)} contexts (alpha = {alpha!r})",
        f"written to {args.out}",
    ]
    return EXIT_OK, payload, lines


def cmd_demo(args: argparse.Namespace, config: Config) -> Outcome:
    payload, lines = demo.weekdays()
    return EXIT_OK, payload, lines


COMMANDS: Dict[str, Callable[[argparse.Namespace, Config], Outcome]] = {
    "eval": cmd_eval,
    "order": cmd_order,
    "analyze": cmd_analyze,
    "certify": cmd_certify,
    "fit": cmd_fit,
    "audit": cmd_audit,
    "repr": cmd_repr,
    "psi": cmd_psi,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable report")

    parser = argparse.ArgumentParser(prog="relalg", description="Algebra of finite word relations")
    parser.add_argument("--env", default=".env", help="settings file (default: .env)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a relation expression")
    p.add_argument("--spec", required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("order", parents=[common], help="order of a relation under composition")
    p.add_argument("--spec", required=True)
    p.add_argument("--relation", required=True)

    p = sub.add_parser("analyze", parents=[common], help="closure, group and cyclic structure")
    p.add_argument("--spec", required=True)
    p.add_argument("--generators", required=True)

    p = sub.add_parser("certify", parents=[common], help="impossibility certificate for vector representations")
    p.add_argument("--spec", required=True)

    p = sub.add_parser("fit", parents=[common], help="fit word and relation vectors")
    p.add_argument("--spec", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", required=True)

    p = sub.add_parser("audit", parents=[common], help="check an embedding for well-representedness")
    p.add_argument("--spec", required=True)
    p.add_argument("--embedding", required=True)
    p.add_argument("--tol-rep", type=float)
    p.add_argument("--tol-distinct", type=float)
    p.add_argument("--mode", choices=vectors.MODES, default="vector")

    p = sub.add_parser("repr", parents=[common], help="roots-of-unity or Cayley representation")
    p.add_argument("--spec", required=True)
    p.add_argument("--generators", required=True)
    p.add_argument("--kind", choices=("roots", "cayley"), required=True)
    p.add_argument("--out", help="also write the representation dump as JSON")

    p = sub.add_parser("psi", parents=[common], help="log conditional-probability embedding from counts")
    p.add_argument("--counts", required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--out", required=True)

    p = sub.add_parser("demo", parents=[common], help="end-to-end transcript")
    p.add_argument("name", choices=("weekdays",))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config(args.env)
        logging.getLogger().setLevel(config.log_level)
        code, payload, lines = COMMANDS[args.command](args, config)
    except RepresentationError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_CHECK_FAILED
    except RelalgError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_INPUT

    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))
    return code


__all__ = ["build_parser", "main", "COMMANDS"]
