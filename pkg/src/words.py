# src/words.py
"""
Word notation for m-ary trees.

A tree is the prefix-free set of child-index paths (letters 1..m, 1 = leftmost
child) from the root to its m-leaf parents, i.e. internal vertices whose
children are all leaves. The single leaf is {} and the m-leaf star is {e},
e being the empty word.

Literal form:
    wordset := "{" [item ("," item)*] "}"      item := "e" | digit+
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from errors import ArityMismatchError, MalformedWordSetError, TreeDomainError
from trees import DEFAULT_ARITY, LEAF, MAryTree, check_arity


WORDSET_GRAMMAR = '"{" [item ("," item)*] "}" with item := "e" | digit+'

# Ternary patterns with at most seven leaves, up to reflection.
NAMED_PATTERNS = {
    "t31": ("",),
    "t51": ("1",),
    "t52": ("2",),
    "t71": ("1", "2"),
    "t72": ("1", "3"),
    "t73": ("11",),
    "t74": ("12",),
    "t75": ("13",),
    "t76": ("21",),
    "t77": ("22",),
}


def _problem(words: tuple[str, ...], arity: int) -> str | None:
    letters = "".join(str(i) for i in range(1, arity + 1))
    for word in words:
        bad = next((c for c in word if c not in letters), None)
        if bad is not None:
            return f"letter {bad!r} of word {word or 'e'!r} is outside 1..{arity}"
    for first, second in zip(words, words[1:]):
        if first == second:
            return f"duplicate word {first or 'e'!r}"
        if second.startswith(first):
            return f"word {first or 'e'!r} is a prefix of {second!r}"
    return None


@dataclass(frozen=True)
class WordSet:
    arity: int
    words: tuple[str, ...] = ()

    def __post_init__(self):
        check_arity(self.arity)
        ordered = tuple(sorted(self.words))
        problem = _problem(ordered, self.arity)
        if problem:
            raise MalformedWordSetError(problem)
        object.__setattr__(self, "words", ordered)

    @classmethod
    def of(cls, words: Iterable[str], arity: int = DEFAULT_ARITY) -> "WordSet":
        return cls(arity, tuple(words))

    def __str__(self) -> str:
        return "{" + ",".join(word or "e" for word in self.words) + "}"

    def __len__(self) -> int:
        return len(self.words)


def prefixes(words: Iterable[str]) -> set[str]:
    """Every prefix of every word, the words themselves and e included: the internal vertices."""
    return {word[:k] for word in words for k in range(len(word) + 1)}


def drop_prefixes(words: Iterable[str]) -> tuple[str, ...]:
    """Remove duplicates and words that are proper prefixes of other words."""
    ordered = sorted(set(words))
    return tuple(w for w, nxt in zip(ordered, ordered[1:] + [None]) if nxt is None or not nxt.startswith(w))


# --- tree <-> word set ---

def _parent_paths(node: tuple, path: str = ""):
    if not node:
        return
    if not any(node):
        yield path
        return
    for i, child in enumerate(node, 1):
        yield from _parent_paths(child, path + str(i))


def tree_to_wordset(T: MAryTree) -> WordSet:
    return WordSet(T.arity, tuple(_parent_paths(T.root)))


def wordset_to_tree(W: WordSet) -> MAryTree:
    internal = prefixes(W.words)

    def grow(path: str) -> tuple:
        if path not in internal:
            return LEAF
        return tuple(grow(path + str(i)) for i in range(1, W.arity + 1))

    return MAryTree(W.arity, grow(""))


def reflect_wordset(W: WordSet) -> WordSet:
    m = W.arity
    table = str.maketrans({str(i): str(m + 1 - i) for i in range(1, m + 1)})
    return WordSet(m, tuple(word.translate(table) for word in W.words))


def lift_arity(W: WordSet, M: int) -> WordSet:
    """Read the same words as an M-ary tree, M >= arity of W."""
    check_arity(M)
    if M < W.arity:
        raise TreeDomainError(f"cannot lift arity {W.arity} word set to smaller arity {M}")
    return WordSet(M, W.words)


# --- containment ---

def find_word_occurrence(T: WordSet, t: WordSet) -> str | None:
    """
    Anchor word p of the first occurrence of t in T, or None.

    t occurs at vertex p when every word L of t extends p inside T, i.e.
    p + L is a prefix of some word of T. Anchors are tried in lexicographic
    order, which for child-index words is depth-first preorder.
    """
    if T.arity != t.arity:
        raise ArityMismatchError(T.arity, t.arity)
    if not t.words:
        return ""
    internal = prefixes(T.words)
    for anchor in sorted(internal):
        if all(anchor + word in internal for word in t.words):
            return anchor
    return None


def word_contains(T: WordSet, t: WordSet) -> bool:
    return find_word_occurrence(T, t) is not None


# --- literals ---

_ITEM = re.compile(r"e|[0-9]+")


def parse_wordset(text: str, arity: int = DEFAULT_ARITY) -> WordSet:
    check_arity(arity)

    def offset(pos: int) -> int:
        return len(text[:pos].encode("utf-8"))

    def fail(message: str, pos: int):
        raise MalformedWordSetError(message, offset(pos), WORDSET_GRAMMAR)

    def skip(pos: int) -> int:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return pos

    pos = skip(0)
    if pos >= len(text) or text[pos] != "{":
        fail("word set must start with '{'", pos)
    pos = skip(pos + 1)
    items: list[tuple[str, int]] = []
    if pos < len(text) and text[pos] == "}":
        pos += 1
    else:
        while True:
            match = _ITEM.match(text, pos)
            if not match:
                fail("expected a word or 'e'", pos)
            word = "" if match.group() == "e" else match.group()
            for i, letter in enumerate(word):
                if not 1 <= int(letter) <= arity:
                    fail(f"letter {letter!r} outside 1..{arity}", pos + i)
            items.append((word, pos))
            pos = skip(match.end())
            if pos < len(text) and text[pos] == ",":
                pos = skip(pos + 1)
                continue
            if pos < len(text) and text[pos] == "}":
                pos += 1
                break
            fail("expected ',' or '}'", pos)
    if skip(pos) != len(text):
        fail("trailing characters after word set", skip(pos))

    seen: dict[str, int] = {}
    for word, at in items:
        if word in seen:
            fail(f"duplicate word {word or 'e'!r}", at)
        seen[word] = at
    for word, at in items:
        for other in seen:
            if other != word and other.startswith(word):
                fail(f"word {word or 'e'!r} is a prefix of {other!r}", at)
    return WordSet(arity, tuple(seen))


def named_pattern(label: str) -> WordSet:
    try:
        return WordSet(3, NAMED_PATTERNS[label])
    except KeyError:
        raise TreeDomainError(f"unknown pattern label {label!r}; known: {', '.join(NAMED_PATTERNS)}") from None


def parse_pattern(text: str, arity: int = DEFAULT_ARITY) -> WordSet:
    """Word-set literal, or one of the ternary labels t31 ... t77."""
    label = text.strip()
    if label in NAMED_PATTERNS:
        if arity != 3:
            raise TreeDomainError(f"label {label} names a ternary pattern, arity is {arity}")
        return named_pattern(label)
    return parse_wordset(text, arity)
