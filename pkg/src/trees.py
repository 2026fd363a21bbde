# src/trees.py
"""
Strict m-ary trees: counting, enumeration, reflection and contiguous
pattern containment.

A node is a plain tuple: () is a leaf, an internal vertex is the tuple of
its m children. MAryTree pairs a root node with its arity; both are
immutable and hashable, so trees can be used as dict keys and shared
between workers.

Literal form (CLI I/O):
    tree := "." | "(" tree{m} ")"       e.g. "(...)" is the 3-leaf star
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

from errors import ArityMismatchError, LiteralSyntaxError, TreeDomainError

logger = logging.getLogger(__name__)

DEFAULT_ARITY = 3
MAX_ARITY = 9
LEAF: tuple = ()

TREE_GRAMMAR = 'tree := "." | "(" tree{m} ")"'


def check_arity(m: int) -> int:
    if not isinstance(m, int) or not 2 <= m <= MAX_ARITY:
        raise TreeDomainError(f"arity must be an integer in 2..{MAX_ARITY}, got {m!r}")
    return m


def leaf_count(node: tuple) -> int:
    if not node:
        return 1
    return sum(leaf_count(child) for child in node)


def internal_count(node: tuple) -> int:
    if not node:
        return 0
    return 1 + sum(internal_count(child) for child in node)


@dataclass(frozen=True)
class MAryTree:
    arity: int
    root: tuple = LEAF

    def __post_init__(self):
        check_arity(self.arity)

    @property
    def leaves(self) -> int:
        return leaf_count(self.root)

    @property
    def internal(self) -> int:
        return internal_count(self.root)

    def __str__(self) -> str:
        return format_tree(self)


@dataclass(frozen=True)
class PatternOccurrence:
    """Vertex of the host tree (child-index word, "" for the root) where the pattern is anchored."""

    path: str


def _same_arity(T: MAryTree, t: MAryTree) -> None:
    if T.arity != t.arity:
        raise ArityMismatchError(T.arity, t.arity)


# --- counting and enumeration ---

def count_trees(m: int, k: int) -> int:
    """Number of m-ary trees with k internal vertices: binom(mk, k) / ((m-1)k + 1)."""
    check_arity(m)
    if k < 0:
        raise TreeDomainError(f"internal vertex count must be >= 0, got {k}")
    return comb(m * k, k) // ((m - 1) * k + 1)


def is_leaf_count(m: int, n: int) -> bool:
    """True when some m-ary tree has exactly n leaves."""
    return n >= 1 and (n - 1) % (m - 1) == 0


def _compositions(n: int, parts: int, step: int) -> Iterator[tuple[int, ...]]:
    """Ordered splits of n leaves over `parts` subtrees, lexicographic."""
    if parts == 1:
        if n >= 1 and (n - 1) % step == 0:
            yield (n,)
        return
    for first in range(1, n - parts + 2, step):
        for rest in _compositions(n - first, parts - 1, step):
            yield (first, *rest)


@lru_cache(maxsize=None)
def _shapes(m: int, n: int) -> tuple[tuple, ...]:
    if not is_leaf_count(m, n):
        return ()
    if n == 1:
        return (LEAF,)
    found = []
    for parts in _compositions(n, m, m - 1):
        found.extend(itertools.product(*(_shapes(m, k) for k in parts)))
    return tuple(found)


def enumerate_trees(m: int, n: int) -> list[MAryTree]:
    """All strict m-ary trees with n leaves in canonical order (empty unless n = 1 mod m-1)."""
    check_arity(m)
    if n < 0:
        raise TreeDomainError(f"leaf count must be >= 0, got {n}")
    return [MAryTree(m, node) for node in _shapes(m, n)]


# --- reflection and containment ---

def _mirror(node: tuple) -> tuple:
    return tuple(_mirror(child) for child in reversed(node))


def reflect(T: MAryTree) -> MAryTree:
    return MAryTree(T.arity, _mirror(T.root))


def occurs_at(node: tuple, pattern: tuple) -> bool:
    """Does `pattern` occur with its root on `node`? Pattern leaves match anything."""
    if not pattern:
        return True
    if not node:
        return False
    return all(map(occurs_at, node, pattern))


def _preorder(node: tuple, path: str = "") -> Iterator[tuple[str, tuple]]:
    yield path, node
    for i, child in enumerate(node, 1):
        yield from _preorder(child, path + str(i))


def contains(T: MAryTree, t: MAryTree) -> PatternOccurrence | None:
    """First occurrence of t in T in depth-first preorder, or None when T avoids t."""
    _same_arity(T, t)
    for path, node in _preorder(T.root):
        if occurs_at(node, t.root):
            return PatternOccurrence(path)
    return None


# --- avoiders ---

def _avoider_table(pattern: tuple, m: int, n_max: int) -> dict[int, list[tuple]]:
    """
    Av_t(n) for every n <= n_max, built bottom-up.

    A tree avoids t iff each child subtree avoids t and t does not occur at
    its root, so only avoiding subtrees are ever combined.
    """
    table: dict[int, list[tuple]] = {}
    for n in range(1, n_max + 1):
        if not is_leaf_count(m, n):
            table[n] = []
        elif n == 1:
            table[n] = [LEAF] if pattern else []
        else:
            found = []
            for parts in _compositions(n, m, m - 1):
                for children in itertools.product(*(table[k] for k in parts)):
                    if not occurs_at(children, pattern):
                        found.append(children)
            table[n] = found
    return table


def avoiders(t: MAryTree, n: int) -> list[MAryTree]:
    """Av_t(n): the n-leaf trees avoiding t, in enumerate_trees order."""
    if n < 0:
        raise TreeDomainError(f"leaf count must be >= 0, got {n}")
    if n == 0:
        return []
    table = _avoider_table(t.root, t.arity, n)
    return [MAryTree(t.arity, node) for node in table[n]]


def avoid_count(t: MAryTree, n: int) -> int:
    return len(avoiders(t, n))


def avoid_counts(t: MAryTree, n_max: int) -> list[int]:
    """[av_t(0), ..., av_t(n_max)] from one shared table; av_t(0) = 0."""
    if n_max < 0:
        raise TreeDomainError(f"leaf count must be >= 0, got {n_max}")
    table = _avoider_table(t.root, t.arity, n_max)
    logger.debug("avoider table for %s built up to n=%d", t, n_max)
    return [0] + [len(table[n]) for n in range(1, n_max + 1)]


# --- literal form ---

def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def format_tree(T: MAryTree) -> str:
    def render(node: tuple) -> str:
        if not node:
            return "."
        return "(" + "".join(render(child) for child in node) + ")"

    return render(T.root)


def parse_tree(text: str, arity: int = DEFAULT_ARITY) -> MAryTree:
    check_arity(arity)
    hint = TREE_GRAMMAR
    stripped = text.strip()
    start = len(text) - len(text.lstrip())

    def fail(message: str, pos: int):
        raise LiteralSyntaxError(message, _byte_offset(text, start + pos), hint)

    def node_at(pos: int) -> tuple[tuple, int]:
        if pos >= len(stripped):
            fail("unexpected end of tree literal", pos)
        char = stripped[pos]
        if char == ".":
            return LEAF, pos + 1
        if char != "(":
            fail(f"unexpected {char!r} in tree literal", pos)
        children = []
        pos += 1
        while pos < len(stripped) and stripped[pos] != ")":
            child, pos = node_at(pos)
            children.append(child)
        if pos >= len(stripped):
            fail("unclosed '('", pos)
        if len(children) != arity:
            fail(f"vertex has {len(children)} children, arity is {arity}", pos)
        return tuple(children), pos + 1

    root, end = node_at(0)
    if end != len(stripped):
        fail(f"trailing {stripped[end]!r} after tree literal", end)
    return MAryTree(arity, root)


if __name__ == "__main__":
    for m in (2, 3, 4):
        sizes = [len(enumerate_trees(m, n)) for n in range(1, 12)]
        print(f"m={m}: tree counts by leaves 1..11 -> {sizes}")
