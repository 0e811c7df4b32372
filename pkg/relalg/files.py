"""
File formats read and written by relalg.

Relation spec (JSON, UTF-8):
    {"universe": ["Monday", ...],
     "relations": {"s": [["Monday", "Tuesday"], ...]},
     "derived": {"s2": "s^2", ...}}            # optional, evaluated in order

Embedding (text): first line "N d", then N lines "word x_1 ... x_d".
Floats are written with 17 significant digits so a write/read round trip is exact.

Counts (TSV, UTF-8): "word<TAB>context<TAB>count" per line; repeated
(word, context) lines add up and unseen pairs count 0.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from relalg.conditional import CountTable
from relalg.errors import InputError
from relalg.expressions import RESERVED, evaluate_text
from relalg.relations import Relation, Universe, relation_from_pairs, universe_from_words
from relalg.vectors import Embedding

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True, eq=False)
class RelationSpec:
    universe: Universe
    relations: Dict[str, Relation]
    derived: Tuple[str, ...] = ()

    def relation(self, name: str) -> Relation:
        try:
            return self.relations[name]
        except KeyError:
            raise InputError(f"Unknown relation name: {name!r}") from None


def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise InputError(f"{path} is not valid UTF-8: {e}") from e


def _write_text(path: PathLike, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}") from e


def _check_name(name: object) -> str:
    if not isinstance(name, str) or not name:
        raise InputError(f"Relation names must be nonempty strings, got {name!r}")
    if name in RESERVED:
        raise InputError(f"Relation name {name!r} is reserved in relation expressions")
    return name


def parse_relation_spec(document: dict) -> RelationSpec:
    if not isinstance(document, dict):
        raise InputError("A relation spec must be a JSON object")
    labels = document.get("universe")
    if not isinstance(labels, list) or not all(isinstance(label, str) for label in labels):
        raise InputError("'universe' must be an array of strings")
    universe = universe_from_words(labels)

    raw_relations = document.get("relations", {})
    if not isinstance(raw_relations, dict):
        raise InputError("'relations' must be an object mapping names to pair arrays")
    relations: Dict[str, Relation] = {}
    for name, pairs in raw_relations.items():
        _check_name(name)
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(w, str) for w in p) for p in pairs
        ):
            raise InputError(f"Relation {name!r} must be an array of 2-element string arrays")
        relations[name] = relation_from_pairs(universe, [tuple(p) for p in pairs])

    raw_derived = document.get("derived", {})
    if not isinstance(raw_derived, dict):
        raise InputError("'derived' must be an object mapping names to expressions")
    derived: List[str] = []
    for name, text in raw_derived.items():
        _check_name(name)
        if name in relations:
            raise InputError(f"Derived relation {name!r} is already defined")
        if not isinstance(text, str):
            raise InputError(f"Derived relation {name!r} needs an expression string")
        relations[name] = evaluate_text(text, relations, universe)
        derived.append(name)
    return RelationSpec(universe, relations, tuple(derived))


def load_relation_spec(path: PathLike) -> RelationSpec:
    try:
        document = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e
    spec = parse_relation_spec(document)
    logger.info(f"Loaded {len(spec.relations)} relation(s) over {spec.universe.size} words from {path}")
    return spec


def save_embedding(path: PathLike, e: Embedding) -> None:
    lines = [f"{e.universe.size} {e.dimension}"]
    for word, vector in zip(e.universe.words, e.vectors):
        if not word or any(ch.isspace() for ch in word):
            raise InputError(f"Word {word!r} cannot be written to an embedding file")
        lines.append(" ".join([word] + [f"{x:.17g}" for x in vector]))
    _write_text(path, "\n".join(lines) + "\n")
    logger.info(f"Wrote {e.universe.size} vectors of dimension {e.dimension} to {path}")


def load_embedding(path: PathLike, universe: Optional[Universe] = None) -> Embedding:
    """Read an embedding file, optionally aligned to ``universe`` (extra words are dropped)."""
    lines = [line for line in _read_text(path).splitlines() if line.strip()]
    if not lines:
        raise InputError(f"{path} is empty")
    header = lines[0].split()
    try:
        count, dimension = int(header[0]), int(header[1])
    except (IndexError, ValueError):
        raise InputError(f"{path}: first line must be 'N d', got {lines[0]!r}") from None
    if len(header) != 2 or count < 1 or dimension < 1:
        raise InputError(f"{path}: invalid header {lines[0]!r}")
    if len(lines) - 1 != count:
        raise InputError(f"{path}: header announces {count} words, found {len(lines) - 1}")

    words: List[str] = []
    vectors = np.empty((count, dimension))
    for number, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != dimension + 1:
            raise InputError(f"{path}:{number}: expected a word and {dimension} numbers")
        try:
            vectors[len(words)] = [float(x) for x in fields[1:]]
        except ValueError:
            raise InputError(f"{path}:{number}: malformed number") from None
        words.append(fields[0])

    file_universe = universe_from_words(words)
    if universe is None:
        return Embedding(file_universe, vectors)
    missing = [word for word in universe.words if word not in file_universe]
    if missing:
        raise InputError(f"{path}: no vector for word(s) {', '.join(missing)}")
    rows = [file_universe.lookup(word) for word in universe.words]
    if len(rows) < count:
        logger.debug(f"Ignoring {count - len(rows)} word(s) of {path} outside the universe")
    return Embedding(universe, vectors[rows])


def load_counts(path: PathLike) -> CountTable:
    words: Dict[str, int] = {}
    contexts: Dict[str, int] = {}
    records: List[Tuple[int, int, int]] = []
    for number, line in enumerate(_read_text(path).splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise InputError(f"{path}:{number}: expected word<TAB>context<TAB>count")
        word, context, raw_count = (field.strip() for field in fields)
        try:
            count = int(raw_count)
        except ValueError:
            raise InputError(f"{path}:{number}: count {raw_count!r} is not an integer") from None
        if count < 0:
            raise InputError(f"{path}:{number}: negative count")
        records.append((words.setdefault(word, len(words)), contexts.setdefault(context, len(contexts)), count))
    if not records:
        raise InputError(f"{path} holds no count records")

    counts = np.zeros((len(words), len(contexts)), dtype=np.int64)
    for w, c, count in records:
        counts[w, c] += count
    logger.info(f"Loaded counts for {len(words)} words and {len(contexts)} contexts from {path}")
    return CountTable(universe_from_words(list(words)), tuple(contexts), counts)


def save_json(path: PathLike, payload: dict) -> None:
    _write_text(path, json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


__all__ = [
    "RelationSpec",
    "parse_relation_spec",
    "load_relation_spec",
    "save_embedding",
    "load_embedding",
    "load_counts",
    "save_json",
]
