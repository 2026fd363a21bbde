# src/classify.py
"""
Wilf classes of tree patterns.

Input:
 - arity m and pattern leaf count L
Output:
 - WilfClassReport: every L-leaf pattern grouped by its avoidance sequence
   av(0..N), each class with a fitted functional equation
 - data/reports/*.json (write_report) and *.csv (write_report_csv)

Equal sequence prefixes only show "equivalent up to N". A class is
equation-certified when every member's fitted equation is identical.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from bijections import find_relabeling
from errors import InconsistencyError, LiteralSyntaxError, ReportFormatError, TreeDomainError
from genfunc import (FIT_TERMS, PowerSeries, build_system, fit_algebraic_equation, minimal_equation,
                     series_from_system)
from trees import avoid_counts, check_arity, enumerate_trees, is_leaf_count
from words import WordSet, parse_wordset, reflect_wordset, tree_to_wordset, wordset_to_tree

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEAVES = 19
BRUTE_LIMIT = 19
METHODS = ("brute", "genfunc", "both")

# Twenty-term listings of the ternary classes with 5, 7 and 9 leaves.
KNOWN_SEQUENCES = {
    "5": (0, 1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132, 0, 429, 0, 1430, 0, 4862),
    "7.1": (0, 1, 0, 1, 0, 3, 0, 11, 0, 45, 0, 197, 0, 903, 0, 4279, 0, 20793, 0, 103049),
    "7.2": (0, 1, 0, 1, 0, 3, 0, 11, 0, 46, 0, 207, 0, 979, 0, 4797, 0, 24138, 0, 123998),
    "9.1": (0, 1, 0, 1, 0, 3, 0, 12, 0, 54, 0, 261, 0, 1323, 0, 6939, 0, 37341, 0, 205011),
    "9.2": (0, 1, 0, 1, 0, 3, 0, 12, 0, 54, 0, 261, 0, 1324, 0, 6954, 0, 37493, 0, 206316),
    "9.3": (0, 1, 0, 1, 0, 3, 0, 12, 0, 54, 0, 262, 0, 1337, 0, 7072, 0, 38426, 0, 213197),
}


@dataclass(frozen=True)
class WilfClass:
    members: tuple[WordSet, ...]
    sequence: tuple[int, ...]
    equation: str | None = None
    equation_certified: bool = False
    reflection_reduced: bool = False

    @property
    def label(self) -> str | None:
        return known_label(self.sequence)


@dataclass(frozen=True)
class WilfClassReport:
    arity: int
    pattern_leaves: int
    terms: int
    method: str
    classes: tuple[WilfClass, ...]

    @property
    def members(self) -> list[WordSet]:
        return [member for wilf_class in self.classes for member in wilf_class.members]


def known_label(sequence) -> str | None:
    """The class label whose listing is the only one agreeing with `sequence` on their common terms."""
    terms = tuple(sequence)[: len(next(iter(KNOWN_SEQUENCES.values())))]
    matches = [label for label, listing in KNOWN_SEQUENCES.items() if listing[: len(terms)] == terms]
    return matches[0] if len(matches) == 1 else None


# --- sequences ---

def resolve_method(method: str | None, max_leaves: int) -> str:
    if method is None:
        return "brute" if max_leaves <= BRUTE_LIMIT else "genfunc"
    if method not in METHODS:
        raise TreeDomainError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    return method


def avoidance_sequence(t: WordSet, max_leaves: int = DEFAULT_MAX_LEAVES, method: str | None = None) -> PowerSeries:
    """av_t(0..N) by brute force, by the equation system, or both cross-checked."""
    if max_leaves < 1:
        raise TreeDomainError(f"need N >= 1, got {max_leaves}")
    method = resolve_method(method, max_leaves)
    if not t.words:
        return PowerSeries((0,) * (max_leaves + 1))
    brute = genfunc = None
    if method in ("brute", "both"):
        brute = PowerSeries(tuple(avoid_counts(wordset_to_tree(t), max_leaves)))
    if method in ("genfunc", "both"):
        genfunc = series_from_system(build_system(t), max_leaves)
    if brute is not None and genfunc is not None and brute != genfunc:
        n = next(n for n, (b, g) in enumerate(zip(brute, genfunc)) if b != g)
        raise InconsistencyError(f"{t}: brute force gives av({n}) = {brute[n]}, equation system gives {genfunc[n]}")
    return brute if brute is not None else genfunc


# --- classification ---

def pattern_family(m: int, L: int, reflection_reduced: bool = False) -> list[WordSet]:
    """Every L-leaf pattern; with reflection_reduced only the smaller literal of each mirror pair."""
    patterns = [tree_to_wordset(T) for T in enumerate_trees(m, L)]
    if reflection_reduced:
        patterns = [W for W in patterns if str(W) <= str(reflect_wordset(W))]
    return patterns


def _fit_class(members: tuple[WordSet, ...]) -> tuple[str | None, bool]:
    representative = members[0]
    if not representative.words:
        return None, False
    series = series_from_system(build_system(representative), FIT_TERMS - 1)
    equation = minimal_equation(series)
    if equation is None:
        logger.warning("no algebraic equation found for %s within the degree scan", representative)
        return None, False
    bounds = equation.degree_a, equation.degree_x
    certified = all(
        fit_algebraic_equation(series_from_system(build_system(W), FIT_TERMS - 1), *bounds) == equation
        for W in members[1:]
    )
    return str(equation), certified


def classify_patterns(m: int, L: int, max_leaves: int = DEFAULT_MAX_LEAVES, method: str | None = None,
                      reflection_reduced: bool = False, fit: bool = True, n_jobs: int = 1,
                      backend: str | None = None, progress: bool = False) -> WilfClassReport:
    """
    Group all L-leaf m-ary patterns by av(0..N).

    Patterns are processed in parallel with joblib; the merge is sorted so
    the report does not depend on n_jobs. Classes come most permissive
    first (sequences descending), members by literal.
    """
    check_arity(m)
    if not is_leaf_count(m, L):
        raise TreeDomainError(f"no {m}-ary tree has {L} leaves")
    if max_leaves < L:
        raise TreeDomainError(f"need N >= L, got N={max_leaves} and L={L}")
    method = resolve_method(method, max_leaves)
    patterns = pattern_family(m, L, reflection_reduced)
    logger.info("Computing sequences for %d patterns (m=%d, L=%d, N=%d, %s)...", len(patterns), m, L, max_leaves, method)

    results = Parallel(n_jobs=n_jobs, backend=backend, return_as="generator")(
        delayed(avoidance_sequence)(W, max_leaves, method) for W in patterns)
    sequences = list(tqdm(results, total=len(patterns), desc=f"{L}-leaf patterns", disable=not progress))

    grouped: dict[tuple[int, ...], list[WordSet]] = {}
    for W, series in zip(patterns, sequences):
        grouped.setdefault(series.coefficients, []).append(W)
    ordered = sorted(grouped.items(), reverse=True)
    member_lists = [tuple(sorted(members, key=str)) for _, members in ordered]

    if fit:
        logger.info("Fitting equations for %d classes...", len(member_lists))
        fits = Parallel(n_jobs=n_jobs, backend=backend)(delayed(_fit_class)(members) for members in member_lists)
    else:
        fits = [(None, False)] * len(member_lists)

    classes = tuple(
        WilfClass(members, sequence, equation, certified, reflection_reduced)
        for (sequence, _), members, (equation, certified) in zip(ordered, member_lists, fits)
    )
    logger.info("Found %d classes among %d patterns", len(classes), len(patterns))
    return WilfClassReport(m, L, max_leaves, method, classes)


def relabel_orbits(members, arity: int) -> list[tuple[WordSet, ...]]:
    """Split a class into groups whose members are letter relabelings of each other."""
    orbits: list[list[WordSet]] = []
    for W in members:
        if W.arity != arity:
            raise TreeDomainError(f"{W} has arity {W.arity}, expected {arity}")
        home = next((orbit for orbit in orbits if find_relabeling(orbit[0], W) is not None), None)
        if home is None:
            orbits.append([W])
        else:
            home.append(W)
    return [tuple(orbit) for orbit in orbits]


# --- persistence ---

def report_to_dict(report: WilfClassReport) -> dict:
    return {
        "arity": report.arity,
        "pattern_leaves": report.pattern_leaves,
        "terms": report.terms,
        "method": report.method,
        "classes": [
            {
                "members": [str(W) for W in c.members],
                "sequence": list(c.sequence),
                "equation": c.equation,
                "equation_certified": c.equation_certified,
                "reflection_reduced": c.reflection_reduced,
            }
            for c in report.classes
        ],
    }


def write_report(report: WilfClassReport, path) -> Path:
    if not report.classes:
        raise TreeDomainError("refusing to write a report with no classes")
    path = Path(path)
    os.makedirs(path.parent, exist_ok=True)
    path.write_text(json.dumps(report_to_dict(report), indent=2) + "\n", encoding="utf-8")
    logger.info("Wrote %s (%d classes)", path, len(report.classes))
    return path


def _field(obj: dict, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ReportFormatError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ReportFormatError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
    return value


def report_from_dict(data: dict, source: str = "report") -> WilfClassReport:
    arity = _field(data, "arity", int, source)
    try:
        check_arity(arity)
    except TreeDomainError as exc:
        raise ReportFormatError(f"{source}.arity: {exc}") from None
    classes = []
    for i, entry in enumerate(_field(data, "classes", list, source)):
        where = f"{source}.classes[{i}]"
        members = []
        for j, literal in enumerate(_field(entry, "members", list, where)):
            try:
                members.append(parse_wordset(literal, arity))
            except (LiteralSyntaxError, TypeError) as exc:
                raise ReportFormatError(f"{where}.members[{j}]: {exc}") from None
        sequence = _field(entry, "sequence", list, where)
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in sequence):
            raise ReportFormatError(f"{where}.sequence: expected integers")
        equation = entry.get("equation")
        if equation is not None and not isinstance(equation, str):
            raise ReportFormatError(f"{where}.equation: expected string or null")
        classes.append(WilfClass(tuple(members), tuple(sequence), equation,
                                 _field(entry, "equation_certified", bool, where),
                                 bool(entry.get("reflection_reduced", False))))
    if not classes:
        raise ReportFormatError(f"{source}.classes: a report needs at least one class")
    return WilfClassReport(arity, _field(data, "pattern_leaves", int, source), _field(data, "terms", int, source),
                           _field(data, "method", str, source), tuple(classes))


def read_report(path) -> WilfClassReport:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return report_from_dict(data, str(path))


def report_frame(report: WilfClassReport) -> pd.DataFrame:
    rows = [
        {
            "label": c.label if report.arity == 3 else None,
            "size": len(c.members),
            "members": " ".join(str(W) for W in c.members),
            "sequence": ", ".join(map(str, c.sequence)),
            "equation": c.equation,
            "certified": c.equation_certified,
        }
        for c in report.classes
    ]
    return pd.DataFrame(rows, columns=["label", "size", "members", "sequence", "equation", "certified"])


def write_report_csv(report: WilfClassReport, path) -> Path:
    path = Path(path)
    os.makedirs(path.parent, exist_ok=True)
    report_frame(report).to_csv(path, index=False)
    logger.info("Wrote %s", path)
    return path


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    for leaves in (5, 7):
        for c in classify_patterns(3, leaves).classes:
            print(c.label, [str(W) for W in c.members], c.equation)
