# src/cli.py
"""
Command-line frontend.

    python src/cli.py avoid series --pattern "{11}" --terms 26 --method genfunc
    python src/cli.py biject relabel --perm 2,1,3 --input "{233,32}"
    python src/cli.py classify --leaves 9 --out data/reports/ternary_9.json

Results go to stdout, diagnostics and logging to stderr. Exit codes:
0 success, 1 domain/precondition/algorithm error, 2 usage or literal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from bijections import (PRESETS, cut_forward, cut_inverse, format_colored, parse_colored, parse_permutation,
                        relabel, schroder_to_ternary, ternary_to_schroder)
from classify import (DEFAULT_MAX_LEAVES, METHODS, avoidance_sequence, classify_patterns, report_to_dict,
                      write_report, write_report_csv)
from errors import LiteralSyntaxError, ReportFormatError, TreeDomainError
from genfunc import (FIT_TERMS, MAX_FIT_DEGREE, PowerSeries, build_system, eliminate, fit_algebraic_equation,
                     format_system, minimal_equation, series_from_system)
from trees import (DEFAULT_ARITY, MAryTree, avoiders, check_arity, contains, count_trees, enumerate_trees, format_tree,
                   is_leaf_count, parse_tree)
from words import parse_pattern, parse_wordset, tree_to_wordset, wordset_to_tree

logger = logging.getLogger(__name__)

LITERAL_KINDS = ("wordset", "tree", "colored-binary", "permutation")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_literal(text: str, kind: str, arity: int = DEFAULT_ARITY):
    """Typed value of a CLI literal; errors cite the byte offset."""
    if kind == "wordset":
        return parse_wordset(text, arity)
    if kind == "tree":
        return parse_tree(text, arity)
    if kind == "colored-binary":
        return parse_colored(text)
    if kind == "permutation":
        return parse_permutation(text)
    raise UsageError(f"unknown literal kind {kind!r}; choose from {', '.join(LITERAL_KINDS)}")


def _host_tree(text: str, arity: int) -> MAryTree:
    """A host tree given either as a word set or as a parenthesized tree."""
    if text.lstrip().startswith("{"):
        return wordset_to_tree(parse_wordset(text, arity))
    return parse_tree(text, arity)


def _emit(out, args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(text, file=out)


def _sequence_text(values) -> str:
    return ", ".join(str(v) for v in values)


# --- trees / pattern / avoid ---

def cmd_trees_enumerate(args, out) -> int:
    trees = enumerate_trees(args.arity, args.leaves)
    rows = [(format_tree(T), str(tree_to_wordset(T))) for T in trees]
    _emit(out, args, "\n".join(f"{tree}\t{words}" for tree, words in rows),
          [{"tree": tree, "words": words} for tree, words in rows])
    return 0


def cmd_trees_count(args, out) -> int:
    if args.internal is not None:
        count = count_trees(args.arity, args.internal)
    else:
        m, n = check_arity(args.arity), args.leaves
        count = count_trees(m, (n - 1) // (m - 1)) if is_leaf_count(m, n) else 0
    _emit(out, args, str(count), {"arity": args.arity, "count": count})
    return 0


def cmd_pattern_contains(args, out) -> int:
    host = _host_tree(args.host, args.arity)
    pattern = parse_pattern(args.pattern, args.arity)
    found = contains(host, wordset_to_tree(pattern))
    if found is None:
        text = "avoids"
    else:
        text = f"contains at {found.path or 'e'}"
    _emit(out, args, text, {"contains": found is not None, "occurrence": None if found is None else found.path})
    return 0


def cmd_avoid_count(args, out) -> int:
    pattern = parse_pattern(args.pattern, args.arity)
    found = avoiders(wordset_to_tree(pattern), args.leaves)
    words = [str(tree_to_wordset(T)) for T in found]
    text = str(len(found)) if not args.list else "\n".join([str(len(found)), *words])
    payload = {"pattern": str(pattern), "leaves": args.leaves, "count": len(found)}
    if args.list:
        payload["avoiders"] = words
    _emit(out, args, text, payload)
    return 0


def cmd_avoid_series(args, out) -> int:
    pattern = parse_pattern(args.pattern, args.arity)
    if args.terms < 2:
        raise UsageError(f"--terms must be at least 2, got {args.terms}")
    series = avoidance_sequence(pattern, args.terms - 1, args.method)
    _emit(out, args, _sequence_text(series), {"pattern": str(pattern), "sequence": list(series.coefficients)})
    return 0


# --- genfunc ---

def cmd_genfunc_system(args, out) -> int:
    system = build_system(parse_pattern(args.pattern, args.arity))
    text = format_system(system)
    _emit(out, args, text, {"pattern": str(system.target), "variables": system.keys, "equations": text.splitlines()})
    return 0


def cmd_genfunc_eliminate(args, out) -> int:
    system = build_system(parse_pattern(args.pattern, args.arity))
    equation = eliminate(system)
    _emit(out, args, str(equation), {"pattern": str(system.target), "equation": str(equation)})
    return 0


def _parse_sequence(text: str) -> PowerSeries:
    values = []
    for item in text.split(","):
        item = item.strip()
        try:
            values.append(int(item))
        except ValueError:
            raise LiteralSyntaxError(f"sequence term {item!r} is not an integer", None, "comma-separated integers") from None
    return PowerSeries(tuple(values))


def cmd_genfunc_fit(args, out, err) -> int:
    if args.sequence is not None:
        series = _parse_sequence(args.sequence)
        source = "sequence"
    else:
        series = series_from_system(build_system(parse_pattern(args.pattern, args.arity)), args.terms - 1)
        source = args.pattern
    if args.deg_a is not None or args.deg_x is not None:
        if args.deg_a is None or args.deg_x is None:
            raise UsageError("--deg-a and --deg-x go together")
        equation = fit_algebraic_equation(series, args.deg_a, args.deg_x)
    else:
        equation = minimal_equation(series, args.max_degree)
    if equation is None:
        print(f"no algebraic equation found for {source}", file=err)
        return 1
    _emit(out, args, str(equation), {"equation": str(equation), "degree_a": equation.degree_a,
                                     "degree_x": equation.degree_x})
    return 0


# --- classify ---

def cmd_classify(args, out) -> int:
    if args.terms < 2:
        raise UsageError(f"--terms must be at least 2, got {args.terms}")
    report = classify_patterns(args.arity, args.leaves, args.terms - 1, args.method,
                               reflection_reduced=args.reflection, fit=not args.no_fit,
                               n_jobs=args.jobs, progress=args.progress)
    if args.out:
        write_report(report, args.out)
    if args.csv:
        write_report_csv(report, args.csv)
    lines = []
    for wilf_class in report.classes:
        name = (wilf_class.label if report.arity == 3 else None) or "-"
        lines.append(f"class {name} ({len(wilf_class.members)}): {' '.join(str(W) for W in wilf_class.members)}")
        lines.append(f"  {_sequence_text(wilf_class.sequence)}")
        if wilf_class.equation:
            mark = " [certified]" if wilf_class.equation_certified else ""
            lines.append(f"  {wilf_class.equation} = 0{mark}")
    _emit(out, args, "\n".join(lines), report_to_dict(report))
    return 0


# --- bijections ---

def cmd_biject_relabel(args, out) -> int:
    if (args.perm is None) == (args.preset is None):
        raise UsageError("give exactly one of --perm and --preset")
    W = parse_wordset(args.input, args.arity)
    b = PRESETS[args.preset].permutation if args.preset else parse_permutation(args.perm)
    image = relabel(W, b)
    _emit(out, args, str(image), {"input": str(W), "permutation": str(b), "output": str(image)})
    return 0


def cmd_biject_cut_forward(args, out) -> int:
    W = parse_wordset(args.input, args.arity)
    image = cut_forward(W)
    _emit(out, args, str(image), {"input": str(W), "output": str(image)})
    return 0


def cmd_biject_cut_inverse(args, out) -> int:
    W = parse_wordset(args.input, args.arity)
    image = cut_inverse(W)
    _emit(out, args, str(image), {"input": str(W), "output": str(image)})
    return 0


def cmd_biject_to_ternary(args, out) -> int:
    B = parse_colored(args.input)
    T = schroder_to_ternary(B)
    _emit(out, args, str(tree_to_wordset(T)), {"input": format_colored(B), "tree": format_tree(T),
                                                "output": str(tree_to_wordset(T))})
    return 0


def cmd_biject_from_ternary(args, out) -> int:
    T = _host_tree(args.input, args.arity)
    B = ternary_to_schroder(T)
    _emit(out, args, format_colored(B), {"input": str(tree_to_wordset(T)), "output": format_colored(B)})
    return 0


# --- parser ---

def _arity(text: str) -> int:
    try:
        return check_arity(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--arity", type=_arity, default=DEFAULT_ARITY, help="tree arity m (default 3)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = _Parser(prog="cli.py", description="Pattern avoidance in ternary and m-ary trees.")
    groups = parser.add_subparsers(dest="command", required=True)

    trees = groups.add_parser("trees", help="count and list trees").add_subparsers(dest="action", required=True)
    p = trees.add_parser("enumerate", parents=[common], help="list every tree with N leaves")
    p.add_argument("--leaves", type=int, required=True)
    p.set_defaults(func=cmd_trees_enumerate)
    p = trees.add_parser("count", parents=[common], help="number of trees")
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--internal", type=int)
    size.add_argument("--leaves", type=int)
    p.set_defaults(func=cmd_trees_count)

    pattern = groups.add_parser("pattern", help="pattern containment").add_subparsers(dest="action", required=True)
    p = pattern.add_parser("contains", parents=[common], help="first occurrence of a pattern in a tree")
    p.add_argument("--host", "--tree", dest="host", required=True, help="word set or tree literal")
    p.add_argument("--pattern", required=True, help="word set literal or label such as t73")
    p.set_defaults(func=cmd_pattern_contains)

    avoid = groups.add_parser("avoid", help="avoidance counts").add_subparsers(dest="action", required=True)
    p = avoid.add_parser("count", parents=[common], help="av_t(n) by enumeration")
    p.add_argument("--pattern", required=True)
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--list", action="store_true", help="also print the avoiders")
    p.set_defaults(func=cmd_avoid_count)
    p = avoid.add_parser("series", parents=[common], help="av_t(0), av_t(1), ...")
    p.add_argument("--pattern", required=True)
    p.add_argument("--terms", type=int, default=DEFAULT_MAX_LEAVES + 1, help="number of coefficients")
    p.add_argument("--method", choices=METHODS)
    p.set_defaults(func=cmd_avoid_series)

    genfunc = groups.add_parser("genfunc", help="generating-function systems").add_subparsers(dest="action", required=True)
    p = genfunc.add_parser("system", parents=[common], help="print the equation system")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_genfunc_system)
    p = genfunc.add_parser("eliminate", parents=[common], help="bivariate equation P(x, a) = 0")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_genfunc_eliminate)
    p = genfunc.add_parser("fit", parents=[common], help="fit an algebraic equation to a series")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--pattern")
    source.add_argument("--sequence", help="comma-separated coefficients starting at n = 0")
    p.add_argument("--terms", type=int, default=FIT_TERMS, help="coefficients computed for --pattern")
    p.add_argument("--deg-a", type=int)
    p.add_argument("--deg-x", type=int)
    p.add_argument("--max-degree", type=int, default=MAX_FIT_DEGREE)
    p.set_defaults(func=cmd_genfunc_fit, wants_err=True)

    p = groups.add_parser("classify", parents=[common], help="Wilf classes of all L-leaf patterns")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--terms", type=int, default=DEFAULT_MAX_LEAVES + 1, help="number of coefficients")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--reflection", action="store_true", help="fold mirror-image patterns")
    p.add_argument("--no-fit", action="store_true", help="skip equation fitting")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--progress", action="store_true")
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--csv", help="CSV table path")
    p.set_defaults(func=cmd_classify)

    biject = groups.add_parser("biject", help="bijections between avoidance classes").add_subparsers(dest="action", required=True)
    p = biject.add_parser("relabel", parents=[common], help="permute child indices")
    p.add_argument("--input", required=True)
    p.add_argument("--perm")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.set_defaults(func=cmd_biject_relabel)
    for name, func, what in (("cut-forward", cmd_biject_cut_forward, "{1,2}-avoider to {12}-avoider"),
                             ("cut-inverse", cmd_biject_cut_inverse, "{12}-avoider to {1,2}-avoider"),
                             ("schroder-to-ternary", cmd_biject_to_ternary, "colored binary tree to {1,3}-avoider"),
                             ("schroder-from-ternary", cmd_biject_from_ternary, "{1,3}-avoider to colored binary tree")):
        p = biject.add_parser(name, parents=[common], help=what)
        p.add_argument("--input", required=True)
        p.set_defaults(func=func)
    return parser


def _configure_logging(verbose: int, stream) -> None:
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=stream, format="%(levelname)s %(name)s: %(message)s", force=True)


def run(argv=None, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    _configure_logging(args.verbose, err)
    logger.debug("dispatching to %s", args.func.__name__)
    try:
        if getattr(args, "wants_err", False):
            return args.func(args, out, err)
        return args.func(args, out)
    except (UsageError, LiteralSyntaxError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (TreeDomainError, ReportFormatError, RuntimeError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
