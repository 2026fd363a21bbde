# src/genfunc.py
"""
Avoidance generating functions as polynomial systems.

For a pattern t, g_p counts t-avoiding trees with root pattern p. The
system is seeded with g_v = x + g_star (v the single vertex) and every
discovered root pattern p contributes

    g_p = prod_i g_{p_i} - prod_i g_{p_i & t_i}

where p_i, t_i are the child subtrees and & overlays two patterns at a
common root. From the system we get truncated series (fixed point), a
bivariate eliminant P(x, a) with a = g_v (iterated resultants), and exact
minimal equations fitted to series coefficients.

Series are numpy object arrays of Python ints, index = leaf count.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix

from errors import ArityMismatchError, DegeneracyError, DivergenceError, TreeDomainError, UnsupportedPatternError
from trees import LEAF, MAryTree
from words import WordSet, tree_to_wordset, wordset_to_tree

logger = logging.getLogger(__name__)

VERIFY_ORDER = 30
FIT_TERMS = 40
MAX_FIT_DEGREE = 10
FIT_SLACK = 10

X = sp.Symbol("x")
A = sp.Symbol("a")

REFERENCE_ORACLES = ("t51-catalan", "t71-schroeder", "t73-quadconv")


# --- series ---

@dataclass(frozen=True)
class PowerSeries:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @classmethod
    def from_array(cls, values) -> "PowerSeries":
        return cls(tuple(values))

    def as_array(self) -> np.ndarray:
        return np.array(list(self.coefficients), dtype=object)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n):
        return self.coefficients[n]

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.coefficients)


def _zeros(n: int) -> np.ndarray:
    return np.zeros(n + 1, dtype=object)


def _monomial_series(power: int, n: int) -> np.ndarray:
    out = _zeros(n)
    if power <= n:
        out[power] = 1
    return out


def _mul(u: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(u, v)[: n + 1]


def _product(factors: list[np.ndarray], n: int) -> np.ndarray:
    return reduce(lambda u, v: _mul(u, v, n), factors)


def _shift(u: np.ndarray, k: int, n: int) -> np.ndarray:
    """x^k * u truncated to order n."""
    out = _zeros(n)
    if k <= n:
        out[k:] = u[: n + 1 - k]
    return out


# --- pattern intersection ---

def _overlay(s: tuple, t: tuple) -> tuple:
    if not s:
        return t
    if not t:
        return s
    return tuple(map(_overlay, s, t))


def intersect(s: WordSet, t: WordSet) -> WordSet:
    """Pattern obtained by drawing s and t with a common root."""
    if s.arity != t.arity:
        raise ArityMismatchError(s.arity, t.arity)
    node = _overlay(wordset_to_tree(s).root, wordset_to_tree(t).root)
    return tree_to_wordset(MAryTree(s.arity, node))


# --- the system ---

@dataclass(frozen=True)
class Rule:
    """g_p = prod g_children - prod g_overlaps, by variable key."""

    children: tuple[str, ...]
    overlaps: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class PatternSystem:
    target: WordSet
    variables: dict[str, int]
    rules: dict[str, Rule]
    equations: tuple[sp.Poly, ...]

    @property
    def keys(self) -> list[str]:
        return list(self.variables)

    @property
    def base_key(self) -> str:
        return self.keys[0]

    @property
    def star_key(self) -> str:
        return self.keys[1]

    @property
    def symbols(self) -> tuple[sp.Symbol, ...]:
        return (X, *sp.symbols(f"g0:{len(self.variables)}"))


def build_system(t: WordSet) -> PatternSystem:
    """
    Discover root patterns breadth-first and write one equation per pattern.

    Patterns are discovered level by level: the star first, then the child
    subtrees and overlaps of each processed pattern that are neither
    processed nor already queued.
    """
    if not t.words:
        raise UnsupportedPatternError("every tree contains the single-vertex pattern; its avoidance series is 0")
    m = t.arity
    target = wordset_to_tree(t).root
    star = (LEAF,) * m
    names: dict[tuple, str] = {}

    def key(node: tuple) -> str:
        if node not in names:
            names[node] = str(tree_to_wordset(MAryTree(m, node)))
        return names[node]

    variables = {key(LEAF): 0}
    rules: dict[str, Rule] = {}
    seen = {LEAF, star}
    queue = [star]
    while queue:
        pending = []
        for p in queue:
            overlaps = tuple(map(_overlay, p, target))
            rules[key(p)] = Rule(tuple(map(key, p)), tuple(map(key, overlaps)))
            variables[key(p)] = len(variables)
            for q in (*p, *overlaps):
                if q not in seen:
                    seen.add(q)
                    pending.append(q)
        queue = pending
    logger.debug("system for %s has %d variables", t, len(variables))

    x, *g = (X, *sp.symbols(f"g0:{len(variables)}"))
    index = variables
    equations = [sp.Poly(g[0] - x - g[index[key(star)]], x, *g, domain=sp.ZZ)]
    for name, rule in rules.items():
        lhs = g[index[name]]
        rhs = sp.Mul(*(g[index[c]] for c in rule.children)) - sp.Mul(*(g[index[o]] for o in rule.overlaps))
        equations.append(sp.Poly(lhs - rhs, x, *g, domain=sp.ZZ))
    return PatternSystem(t, dict(variables), rules, tuple(equations))


def _format_product(keys: tuple[str, ...], order: dict[str, int]) -> str:
    powers: dict[str, int] = {}
    for k in sorted(keys, key=order.__getitem__):
        powers[k] = powers.get(k, 0) + 1
    return "*".join(f"g{k}" if e == 1 else f"g{k}^{e}" for k, e in powers.items())


def format_system(system: PatternSystem) -> str:
    lines = [f"g{system.base_key} = x + g{system.star_key}"]
    for name, rule in system.rules.items():
        if sorted(rule.children) == sorted(rule.overlaps):
            rhs = "0"
        else:
            rhs = f"{_format_product(rule.children, system.variables)} - {_format_product(rule.overlaps, system.variables)}"
        lines.append(f"g{name} = {rhs}")
    return "\n".join(lines)


def series_from_system(system: PatternSystem, max_leaves: int) -> PowerSeries:
    """
    Coefficients av(0..N) of g_v by fixed point modulo x^(N+1).

    Each sweep raises the x-adic valuation of the change by at least one,
    so the values are exact after N+1 sweeps and sweep N+2 confirms it.
    Not stabilizing by then raises DivergenceError.
    """
    if max_leaves < 1:
        raise TreeDomainError(f"need at least one term beyond av(0), got N={max_leaves}")
    n = max_leaves
    x = _monomial_series(1, n)
    values = {k: _zeros(n) for k in system.variables}
    for sweep in range(1, n + 3):
        updated = {}
        for name, rule in system.rules.items():
            updated[name] = (_product([values[c] for c in rule.children], n)
                             - _product([values[o] for o in rule.overlaps], n))
        updated[system.base_key] = x + updated[system.star_key]
        if all(np.array_equal(updated[k], values[k]) for k in values):
            logger.debug("series for %s stable after %d sweeps", system.target, sweep)
            return PowerSeries.from_array(values[system.base_key])
        values = updated
    raise DivergenceError(f"system for {system.target} did not stabilize within {n + 2} sweeps")


# --- bivariate equations ---

@dataclass(frozen=True)
class BivariatePoly:
    """
    Integer polynomial in (x, a): terms are (a-degree, x-degree, coefficient).

    Always primitive and sign-normalized: the a^1 x^0 coefficient is
    negative when present, otherwise the graded leading coefficient is
    positive.
    """

    terms: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_coefficients(cls, coefficients: dict[tuple[int, int], int]) -> "BivariatePoly":
        """coefficients maps (x-degree, a-degree) to an integer."""
        nonzero = {mono: int(c) for mono, c in coefficients.items() if c}
        if not nonzero:
            raise DegeneracyError("the zero polynomial is not an equation")
        content = reduce(math.gcd, (abs(c) for c in nonzero.values()))
        if (0, 1) in nonzero:
            sign = -1 if nonzero[(0, 1)] > 0 else 1
        else:
            lead = max(nonzero, key=lambda mono: (mono[0] + mono[1], mono[1], mono[0]))
            sign = 1 if nonzero[lead] > 0 else -1
        terms = sorted(((j, i, sign * c // content) for (i, j), c in nonzero.items()),
                       key=lambda term: (-term[0], -term[1]))
        return cls(tuple(terms))

    @classmethod
    def from_poly(cls, poly: sp.Poly) -> "BivariatePoly":
        """From a sympy Poly with generators (x, a)."""
        return cls.from_coefficients({mono: int(c) for mono, c in poly.terms()})

    def coefficients(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for j, i, c in self.terms}

    @property
    def degree_a(self) -> int:
        return max(j for j, _, _ in self.terms)

    @property
    def degree_x(self) -> int:
        return max(i for _, i, _ in self.terms)

    def as_expr(self) -> sp.Expr:
        return sp.Add(*(c * X**i * A**j for j, i, c in self.terms))

    def to_poly(self) -> sp.Poly:
        return sp.Poly(self.as_expr(), X, A, domain=sp.ZZ)

    def __str__(self) -> str:
        pieces = []
        for j, i, c in self.terms:
            factors = []
            if abs(c) != 1 or (i == 0 and j == 0):
                factors.append(str(abs(c)))
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("a" if j == 1 else f"a^{j}")
            body = "*".join(factors)
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)


def evaluate(P: BivariatePoly, series: PowerSeries) -> np.ndarray:
    """P(x, S(x)) truncated to the order of S."""
    s = series.as_array()
    n = len(s) - 1
    total = _zeros(n)
    power = _monomial_series(0, n)
    for j in range(P.degree_a + 1):
        for (i, jj), c in P.coefficients().items():
            if jj == j:
                total = total + c * _shift(power, i, n)
        power = _mul(power, s, n)
    return total


def annihilates(P: BivariatePoly, series: PowerSeries) -> bool:
    return not any(evaluate(P, series))


def pseudo_remainder(P: BivariatePoly, Q: BivariatePoly) -> sp.Poly:
    """Pseudo-remainder of P by Q as polynomials in a over Z[x]."""
    return sp.Poly(P.as_expr(), A, X).prem(sp.Poly(Q.as_expr(), A, X))


def series_from_equation(P: BivariatePoly, max_leaves: int) -> PowerSeries:
    """
    Coefficients of the power-series root of P(x, a) = 0 with a(0) = 0.

    Needs the a^1 x^0 coefficient to be -1 and no constant term; then
    a <- a + P(x, a) gains at least one correct coefficient per sweep.
    """
    coefficients = P.coefficients()
    if coefficients.get((0, 1)) != -1:
        raise TreeDomainError(f"{P}: the coefficient of a must be -1 to extract a series")
    if (0, 0) in coefficients:
        raise TreeDomainError(f"{P}: a constant term rules out a(0) = 0")
    n = max_leaves
    current = PowerSeries((0,) * (n + 1))
    for _ in range(n + 2):
        following = PowerSeries.from_array(current.as_array() + evaluate(P, current))
        if following == current:
            return current
        current = following
    raise DivergenceError(f"series of {P} did not stabilize within {n + 2} sweeps")


# --- elimination ---

def _tidy(poly: sp.Poly) -> sp.Poly:
    _, poly = poly.primitive()
    poly = poly.sqf_part()
    return -poly if poly.LC() < 0 else poly


def eliminate(system: PatternSystem) -> BivariatePoly:
    """
    Eliminate every auxiliary variable, last-discovered first, by resultants.

    Each step pivots on the equation of lowest degree in the variable and
    replaces the others by their resultant with the pivot, then takes
    primitive and squarefree parts. The eliminant may carry extra factors;
    it is certified against the series of the system.
    """
    gens = system.symbols
    a = gens[1]
    polys = [_tidy(eq) for eq in system.equations]
    for step, var in enumerate(reversed(gens[2:]), 1):
        holders = [p for p in polys if p.degree(var) > 0]
        if not holders:
            continue
        pivot = min(holders, key=lambda p: (p.degree(var), len(p.terms()), p.total_degree()))
        kept = [p for p in polys if p.degree(var) <= 0]
        for p in holders:
            if p is pivot:
                continue
            resultant = sp.resultant(p.as_expr(), pivot.as_expr(), var)
            reduced = sp.Poly(resultant, *gens, domain=sp.ZZ)
            if reduced.is_zero:
                raise DegeneracyError(f"zero resultant eliminating {var} (step {step}) for {system.target}")
            reduced = _tidy(reduced)
            if reduced.is_ground:
                raise DegeneracyError(f"inconsistent equations eliminating {var} (step {step}) for {system.target}")
            kept.append(reduced)
        logger.debug("eliminated %s: %d equations left", var, len(kept))
        polys = list(dict.fromkeys(kept))

    series = series_from_system(system, VERIFY_ORDER)
    candidates = sorted((p for p in polys if p.degree(a) > 0), key=lambda p: (p.degree(a), p.total_degree()))
    for poly in candidates:
        bivariate = sp.Poly(poly.as_expr().subs(a, A), X, A, domain=sp.ZZ)
        P = BivariatePoly.from_poly(bivariate)
        if annihilates(P, series):
            return P
    raise DegeneracyError(f"no eliminant for {system.target} annihilates its series to order {VERIFY_ORDER}")


# --- fitting ---

def fit_algebraic_equation(series: PowerSeries, deg_a: int, deg_x: int) -> BivariatePoly | None:
    """
    The unique (up to scaling) P with deg_a, deg_x bounds and P(x, S) = 0.

    Solves for the coefficients c_ij of x^i a^j as an exact rational
    nullspace over all available coefficients of S. Returns None when the
    nullspace is not one-dimensional or its polynomial does not involve a.
    """
    unknowns = (deg_a + 1) * (deg_x + 1)
    if len(series) < unknowns + FIT_SLACK:
        raise TreeDomainError(
            f"fitting degrees ({deg_a}, {deg_x}) needs {unknowns + FIT_SLACK} coefficients, got {len(series)}")
    s = series.as_array()
    n = len(s) - 1
    columns, monomials = [], []
    power = _monomial_series(0, n)
    for j in range(deg_a + 1):
        for i in range(deg_x + 1):
            columns.append(_shift(power, i, n))
            monomials.append((i, j))
        power = _mul(power, s, n)
    rows = [[sp.ZZ(int(column[r])) for column in columns] for r in range(n + 1)]
    matrix = DomainMatrix(rows, (n + 1, len(columns)), sp.ZZ).convert_to(sp.QQ)
    basis = matrix.nullspace().to_Matrix()
    if basis.rows != 1:
        return None
    vector = [sp.Rational(v) for v in basis.row(0)]
    scale = math.lcm(*(v.q for v in vector))
    coefficients = {mono: int(v * scale) for mono, v in zip(monomials, vector) if v != 0}
    if not any(j for (_, j) in coefficients):
        return None
    return BivariatePoly.from_coefficients(coefficients)


def minimal_equation(series: PowerSeries, max_degree: int = MAX_FIT_DEGREE) -> BivariatePoly | None:
    """Scan (deg_a, deg_x) by increasing deg_a + deg_x, then deg_a, for the first verified fit."""
    for total in range(1, max_degree + 1):
        for deg_a in range(1, total + 1):
            deg_x = total - deg_a
            if len(series) < (deg_a + 1) * (deg_x + 1) + FIT_SLACK:
                continue
            found = fit_algebraic_equation(series, deg_a, deg_x)
            if found is not None:
                logger.debug("minimal equation found at degrees (%d, %d): %s", deg_a, deg_x, found)
                return found
    return None


# --- hand-derived recurrences ---

def _convolution(av: list[int], n: int) -> int:
    return sum(av[k] * av[n - k - 1] for k in range(1, n - 1))


def _quadruple(av: list[int], n: int) -> int:
    total = 0
    for l in range(1, n - 3):
        for m in range(1, n - l - 2):
            for k in range(1, n - l - m - 1):
                total += av[l] * av[m] * av[k] * av[n - l - m - k - 1]
    return total


_RECURRENCES = {
    "t51-catalan": lambda av, n: _convolution(av, n),
    "t71-schroeder": lambda av, n: 2 * _convolution(av, n) - av[n - 2],
    "t73-quadconv": lambda av, n: _convolution(av, n) + _quadruple(av, n),
}


def reference_sequence(name: str, max_leaves: int) -> PowerSeries:
    """av(0..N) from the recurrence `name`, with av(0) = 0, av(1) = 1, av(2) = 0."""
    if name not in _RECURRENCES:
        raise TreeDomainError(f"unknown reference sequence {name!r}; known: {', '.join(REFERENCE_ORACLES)}")
    if max_leaves < 2:
        raise TreeDomainError(f"reference sequences start at N=2, got {max_leaves}")
    av = [0, 1, 0]
    for n in range(3, max_leaves + 1):
        av.append(_RECURRENCES[name](av, n))
    return PowerSeries(tuple(av[: max_leaves + 1]))
