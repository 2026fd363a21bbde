# src/bijections.py
"""
Leaf-preserving bijections between avoidance classes of ternary trees.

- relabel: permute child indices letterwise in the word notation. Five
  named presets send Av(source) onto Av(target).
- cut_forward / cut_inverse: between {1,2}-avoiders and {12}-avoiders.
- schroder_to_ternary / ternary_to_schroder: colored binary trees with n
  vertices (right edges solid or dashed) against {1,3}-avoiders with
  2n+1 leaves.

Colored-binary literal:
    node := "(" left right ")"    left := "." | node
    right := "." | "s:" node | "d:" node
The empty binary tree is written ".".
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from errors import ArityMismatchError, DivergenceError, LiteralSyntaxError, PreconditionError, TreeDomainError
from trees import LEAF, MAryTree, check_arity
from words import WordSet, drop_prefixes, find_word_occurrence

logger = logging.getLogger(__name__)

COLORED_GRAMMAR = 'node := "(" left right ")", left := "." | node, right := "." | "s:" node | "d:" node'
PERMUTATION_GRAMMAR = "comma-separated images b(1),...,b(m) of 1..m"

NO_T71 = WordSet(3, ("1", "2"))
NO_T74 = WordSet(3, ("12",))
NO_T72 = WordSet(3, ("1", "3"))


# --- letter relabeling ---

@dataclass(frozen=True)
class LetterPermutation:
    """b(1), ..., b(m) as a tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        check_arity(len(images))
        if sorted(images) != list(range(1, len(images) + 1)):
            raise TreeDomainError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @property
    def arity(self) -> int:
        return len(self.images)

    def apply(self, word: str) -> str:
        return "".join(str(self.images[int(letter) - 1]) for letter in word)

    def inverse(self) -> "LetterPermutation":
        inverse = [0] * self.arity
        for i, image in enumerate(self.images, 1):
            inverse[image - 1] = i
        return LetterPermutation(tuple(inverse))

    def __str__(self) -> str:
        return ",".join(map(str, self.images))


@dataclass(frozen=True)
class Preset:
    source: WordSet
    target: WordSet
    permutation: LetterPermutation


PRESETS = {
    "t51-t52": Preset(WordSet(3, ("1",)), WordSet(3, ("2",)), LetterPermutation((2, 1, 3))),
    "t73-t77": Preset(WordSet(3, ("11",)), WordSet(3, ("22",)), LetterPermutation((2, 1, 3))),
    "t71-t72": Preset(WordSet(3, ("1", "2")), WordSet(3, ("1", "3")), LetterPermutation((1, 3, 2))),
    "t74-t75": Preset(WordSet(3, ("12",)), WordSet(3, ("13",)), LetterPermutation((1, 3, 2))),
    "t75-t76": Preset(WordSet(3, ("13",)), WordSet(3, ("21",)), LetterPermutation((2, 3, 1))),
}


def relabel(W: WordSet, b: LetterPermutation) -> WordSet:
    if W.arity != b.arity:
        raise ArityMismatchError(W.arity, b.arity)
    return WordSet(W.arity, tuple(b.apply(word) for word in W.words))


def find_relabeling(P: WordSet, Q: WordSet) -> LetterPermutation | None:
    """
    First letter permutation (lexicographic in the images) with relabel(P, b) == Q.

    Such a b sends Av(P) onto Av(Q) leaf-preservingly. A permutation found
    at arity m, extended by fixing m+1..M, also works after lift_arity(., M).
    """
    if P.arity != Q.arity:
        raise ArityMismatchError(P.arity, Q.arity)
    if len(P) != len(Q):
        return None
    for images in itertools.permutations(range(1, P.arity + 1)):
        b = LetterPermutation(images)
        if relabel(P, b) == Q:
            return b
    return None


def parse_permutation(text: str) -> LetterPermutation:
    pieces = text.split(",")
    images, pos = [], 0
    for piece in pieces:
        item = piece.strip()
        if not item.isdigit():
            where = len(text[: pos + len(piece) - len(piece.lstrip())].encode("utf-8"))
            raise LiteralSyntaxError(f"expected a letter, got {item!r}", where, PERMUTATION_GRAMMAR)
        images.append(int(item))
        pos += len(piece) + 1
    try:
        return LetterPermutation(tuple(images))
    except TreeDomainError as exc:
        raise LiteralSyntaxError(str(exc), None, PERMUTATION_GRAMMAR) from None


# --- cut bijection ---

def _require_ternary(W: WordSet) -> None:
    if W.arity != 3:
        raise ArityMismatchError(W.arity, 3)


def _split_first_cut(word: str) -> tuple[str, str] | None:
    k = word.find("12")
    if k < 0:
        return None
    start = k
    while start > 0 and word[start - 1] == "1":
        start -= 1
    return word[: k + 1], word[:start] + word[k + 1:]


def cut_forward(W: WordSet) -> WordSet:
    """
    {1,2}-avoider to {12}-avoider.

    Each word is cut at its first 12: the run of 1's ending there stays on
    the first piece, the rest of the word continues after the prefix before
    the run. Pieces are cut again until no word contains 12; words that
    became prefixes of others are dropped.
    """
    _require_ternary(W)
    anchor = find_word_occurrence(W, NO_T71)
    if anchor is not None:
        raise PreconditionError(f"{W} contains {NO_T71} at vertex {anchor or 'e'}", anchor)
    pending, done = list(W.words), []
    while pending:
        word = pending.pop()
        pieces = _split_first_cut(word)
        if pieces is None:
            done.append(word)
        else:
            pending.extend(pieces)
    return WordSet(3, drop_prefixes(done))


def cut_inverse(W: WordSet, descending: bool = False) -> WordSet:
    """
    {12}-avoider to {1,2}-avoider, depth by depth from the root.

    At a vertex p with both an internal child 1 and an internal child 2,
    every word p2s becomes p12s. Vertices of one depth are visited in
    lexicographic order (reversed with `descending`, same result).
    """
    _require_ternary(W)
    anchor = find_word_occurrence(W, NO_T74)
    if anchor is not None:
        raise PreconditionError(f"{W} contains {NO_T74} at vertex {anchor or 'e'}", anchor)
    words = list(W.words)
    cap = sum(map(len, words)) + len(words) * max(map(len, words), default=0)
    inserted = 0
    depth = 0
    while depth < max(map(len, words), default=0):
        vertices = sorted({w[:depth] for w in words if len(w) > depth}, reverse=descending)
        for p in vertices:
            below = {w[depth] for w in words if len(w) > depth and w.startswith(p)}
            if not {"1", "2"} <= below:
                continue
            moved = p + "2"
            hits = [i for i, w in enumerate(words) if w.startswith(moved)]
            for i in hits:
                words[i] = p + "12" + words[i][depth + 1:]
            inserted += len(hits)
            if inserted > cap:
                raise DivergenceError(f"cut inverse of {W} exceeded {cap} insertions")
        depth += 1
    logger.debug("cut inverse of %s inserted %d letters", W, inserted)
    return WordSet(3, drop_prefixes(words))


# --- colored binary trees ---

class EdgeColor(str, Enum):
    SOLID = "s"
    DASHED = "d"


@dataclass(frozen=True)
class BinaryNode:
    """A vertex; `color` is set exactly when there is a right child."""

    left: "BinaryNode | None" = None
    right: "BinaryNode | None" = None
    color: EdgeColor | None = None

    def __post_init__(self):
        if (self.right is None) != (self.color is None):
            raise TreeDomainError("a right edge needs exactly one color, and only a right edge has one")


ColoredBinaryTree = BinaryNode | None


def vertex_count(B: ColoredBinaryTree) -> int:
    if B is None:
        return 0
    return 1 + vertex_count(B.left) + vertex_count(B.right)


@lru_cache(maxsize=None)
def _colored(n: int) -> tuple:
    if n == 0:
        return (None,)
    found = []
    for k in range(n):
        for left in _colored(k):
            for right in _colored(n - 1 - k):
                if right is None:
                    found.append(BinaryNode(left))
                else:
                    found.extend(BinaryNode(left, right, color) for color in EdgeColor)
    return tuple(found)


def enumerate_colored(n: int) -> list[ColoredBinaryTree]:
    """All colored binary trees with n vertices; there are s_n of them (1, 1, 3, 11, 45, ...)."""
    if n < 0:
        raise TreeDomainError(f"vertex count must be >= 0, got {n}")
    return list(_colored(n))


def schroder_to_ternary(B: ColoredBinaryTree) -> MAryTree:
    """Solid right child -> child 1, left child -> child 2, dashed right child -> child 3."""

    def image(node: BinaryNode | None) -> tuple:
        if node is None:
            return LEAF
        below = image(node.right)
        solid = below if node.color is EdgeColor.SOLID else LEAF
        dashed = below if node.color is EdgeColor.DASHED else LEAF
        return solid, image(node.left), dashed

    return MAryTree(3, image(B))


def ternary_to_schroder(T: MAryTree) -> ColoredBinaryTree:
    if T.arity != 3:
        raise ArityMismatchError(T.arity, 3)

    def image(node: tuple, path: str) -> BinaryNode | None:
        if not node:
            return None
        first, center, last = node
        if first and last:
            raise PreconditionError(f"{T} contains {NO_T72} at vertex {path or 'e'}", path)
        left = image(center, path + "2")
        if first:
            return BinaryNode(left, image(first, path + "1"), EdgeColor.SOLID)
        if last:
            return BinaryNode(left, image(last, path + "3"), EdgeColor.DASHED)
        return BinaryNode(left)

    return image(T.root, "")


def format_colored(B: ColoredBinaryTree) -> str:
    if B is None:
        return "."
    left = format_colored(B.left)
    right = "." if B.right is None else f"{B.color.value}:{format_colored(B.right)}"
    return f"({left} {right})"


def parse_colored(text: str) -> ColoredBinaryTree:
    def offset(pos: int) -> int:
        return len(text[:pos].encode("utf-8"))

    def fail(message: str, pos: int):
        raise LiteralSyntaxError(message, offset(pos), COLORED_GRAMMAR)

    def skip(pos: int) -> int:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return pos

    def expect_node(pos: int) -> tuple[BinaryNode, int]:
        pos = skip(pos)
        if pos >= len(text) or text[pos] != "(":
            fail("expected '('", pos)
        left, pos = child(skip(pos + 1))
        pos = skip(pos)
        right, color = None, None
        if text.startswith(("s:", "d:"), pos):
            color = EdgeColor(text[pos])
            right, pos = expect_node(pos + 2)
        elif pos < len(text) and text[pos] == ".":
            pos += 1
        else:
            fail("expected '.', 's:' or 'd:' for the right child", pos)
        pos = skip(pos)
        if pos >= len(text) or text[pos] != ")":
            fail("expected ')'", pos)
        return BinaryNode(left, right, color), pos + 1

    def child(pos: int) -> tuple[BinaryNode | None, int]:
        if pos < len(text) and text[pos] == ".":
            return None, pos + 1
        return expect_node(pos)

    start = skip(0)
    tree, end = child(start)
    if skip(end) != len(text):
        fail("trailing characters after colored binary tree", skip(end))
    return tree


if __name__ == "__main__":
    for n in range(6):
        print(f"colored binary trees with {n} vertices: {len(enumerate_colored(n))}")
