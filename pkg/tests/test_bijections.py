import pytest

from bijections import (PRESETS, BinaryNode, EdgeColor, LetterPermutation, cut_forward, cut_inverse,
                        enumerate_colored, find_relabeling, format_colored, parse_colored, parse_permutation, relabel,
                        schroder_to_ternary, ternary_to_schroder, vertex_count)
from errors import ArityMismatchError, LiteralSyntaxError, PreconditionError, TreeDomainError
from trees import avoiders, enumerate_trees
from words import WordSet, lift_arity, parse_wordset, tree_to_wordset, word_contains, wordset_to_tree

W = parse_wordset
SIZES = (1, 3, 5, 7, 9, 11, 13)
COLORED_EXAMPLE = "(((. d:(..)) .) s:(. d:(..)))"


def avoiding_wordsets(pattern: WordSet, n: int) -> list[WordSet]:
    return [tree_to_wordset(T) for T in avoiders(wordset_to_tree(pattern), n)]


# --- relabel ---

@pytest.mark.parametrize("words, images, expected", [
    ("{233,32}", (2, 1, 3), "{133,31}"),
    ("{121,1232,322,331}", (1, 3, 2), "{131,1323,221,233}"),
    ("{1,21,3212}", (2, 3, 1), "{2,32,1323}"),
])
def test_relabel_examples(words, images, expected):
    assert relabel(W(words), LetterPermutation(images)) == W(expected)


def test_relabel_arity_mismatch():
    with pytest.raises(ArityMismatchError):
        relabel(WordSet(4, ("14",)), LetterPermutation((2, 1, 3)))


def test_permutation_validation():
    with pytest.raises(TreeDomainError):
        LetterPermutation((1, 1, 2))
    b = LetterPermutation((2, 3, 1))
    assert b.inverse() == LetterPermutation((3, 1, 2))
    assert str(b) == "2,3,1"


@pytest.mark.parametrize("name", sorted(PRESETS))
@pytest.mark.parametrize("n", SIZES)
def test_presets_map_avoiders_onto_avoiders(name, n):
    preset = PRESETS[name]
    source = avoiding_wordsets(preset.source, n)
    images = [relabel(V, preset.permutation) for V in source]
    assert len(set(images)) == len(images)
    assert set(images) == set(avoiding_wordsets(preset.target, n))
    assert all(wordset_to_tree(V).leaves == n for V in images)


@pytest.mark.parametrize("pattern", ["{1}", "{12}", "{21}", "{13}"])
@pytest.mark.parametrize("n", SIZES)
def test_relabel_images_avoid_the_relabelled_pattern(pattern, n):
    for images in [(1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]:
        b = LetterPermutation(images)
        target = relabel(W(pattern), b)
        assert not any(word_contains(relabel(V, b), target) for V in avoiding_wordsets(W(pattern), n))


def test_find_relabeling():
    b = find_relabeling(W("{11213}"), W("{22321}"))
    assert b == LetterPermutation((2, 3, 1))
    assert relabel(W("{13231,22321}"), b) == W("{21312,33132}")
    assert find_relabeling(W("{11}"), W("{12}")) is None
    assert find_relabeling(W("{1,2}"), W("{11}")) is None


def test_relabeling_lifts_to_higher_arity():
    P, Q = W("{12}"), W("{23}")
    b = find_relabeling(P, Q)
    lifted = LetterPermutation(b.images + (4,))
    assert relabel(lift_arity(P, 4), lifted) == lift_arity(Q, 4)


def test_parse_permutation():
    assert parse_permutation(" 2, 1 ,3") == LetterPermutation((2, 1, 3))
    with pytest.raises(LiteralSyntaxError) as info:
        parse_permutation("2,x,3")
    assert info.value.offset == 2
    with pytest.raises(LiteralSyntaxError):
        parse_permutation("1,1,2")


# --- cut bijection ---

def test_cut_worked_example():
    assert cut_forward(W("{1232311121}")) == W("{1,2323111,232321}")
    assert cut_inverse(W("{1,2323111,232321}")) == W("{1232311121}")


def test_cut_small_examples():
    assert cut_forward(W("{3,2323}")) == W("{3,2323}")
    assert cut_forward(W("{12,13}")) == W("{2,13}")
    assert cut_inverse(W("{2,13}")) == W("{12,13}")
    assert cut_inverse(W("{3}")) == W("{3}")
    assert cut_forward(WordSet(3)) == WordSet(3)


def test_cut_preconditions():
    with pytest.raises(PreconditionError) as info:
        cut_forward(W("{1,2}"))
    assert info.value.occurrence == ""
    with pytest.raises(PreconditionError) as info:
        cut_inverse(W("{2,312}"))
    assert info.value.occurrence == "3"
    with pytest.raises(ArityMismatchError):
        cut_forward(WordSet(4, ("4",)))


@pytest.mark.parametrize("n", SIZES)
def test_cut_is_a_bijection(n):
    source = avoiding_wordsets(W("{1,2}"), n)
    target = avoiding_wordsets(W("{12}"), n)
    images = [cut_forward(V) for V in source]
    assert set(images) == set(target)
    assert len(set(images)) == len(source)
    assert all(cut_inverse(image) == V for image, V in zip(images, source))
    assert all(cut_forward(cut_inverse(V)) == V for V in target)


@pytest.mark.parametrize("n", (7, 9, 11))
def test_cut_inverse_ignores_vertex_order_within_a_depth(n):
    for V in avoiding_wordsets(W("{12}"), n):
        assert cut_inverse(V, descending=True) == cut_inverse(V)


# --- colored binary trees ---

@pytest.mark.parametrize("n, expected", list(enumerate([1, 1, 3, 11, 45, 197])))
def test_colored_tree_counts(n, expected):
    trees = enumerate_colored(n)
    assert len(trees) == len(set(trees)) == expected
    assert all(vertex_count(B) == n for B in trees)


def test_colored_example_tree():
    B = parse_colored(COLORED_EXAMPLE)
    assert vertex_count(B) == 6
    assert tree_to_wordset(schroder_to_ternary(B)) == W("{13,223}")
    assert ternary_to_schroder(wordset_to_tree(W("{13,223}"))) == B
    assert format_colored(B) == "(((. d:(. .)) .) s:(. d:(. .)))"


def test_smallest_cases():
    assert tree_to_wordset(schroder_to_ternary(BinaryNode())) == W("{e}")
    assert schroder_to_ternary(None).leaves == 1
    assert ternary_to_schroder(wordset_to_tree(W("{e}"))) == BinaryNode()
    assert ternary_to_schroder(wordset_to_tree(WordSet(3))) is None
    assert parse_colored(" . ") is None


@pytest.mark.parametrize("n", range(0, 7))
def test_schroder_image_is_exactly_the_avoiders(n):
    images = [schroder_to_ternary(B) for B in enumerate_colored(n)]
    assert len(set(images)) == len(images)
    assert set(images) == set(avoiders(wordset_to_tree(W("{1,3}")), 2 * n + 1))


def test_three_vertex_images_are_the_eleven_seven_leaf_avoiders():
    images = {schroder_to_ternary(B) for B in enumerate_colored(3)}
    assert len(images) == 11
    assert all(T.leaves == 7 for T in images)


def test_schroder_roundtrip():
    trees = [B for n in range(6) for B in enumerate_colored(n)]
    assert len(trees) == 258
    for B in trees:
        assert ternary_to_schroder(schroder_to_ternary(B)) == B
        assert parse_colored(format_colored(B)) == B


def test_ternary_to_schroder_precondition():
    with pytest.raises(PreconditionError) as info:
        ternary_to_schroder(wordset_to_tree(W("{2,31,33}")))
    assert info.value.occurrence == "3"
    with pytest.raises(ArityMismatchError):
        ternary_to_schroder(enumerate_trees(2, 3)[0])


def test_binary_node_color_invariant():
    with pytest.raises(TreeDomainError):
        BinaryNode(None, BinaryNode(), None)
    with pytest.raises(TreeDomainError):
        BinaryNode(None, None, EdgeColor.SOLID)


@pytest.mark.parametrize("text, offset", [("(. x)", 3), ("(. .", 4), ("(. .) .", 6), ("(s:(. .) .)", 1)])
def test_colored_literal_errors(text, offset):
    with pytest.raises(LiteralSyntaxError) as info:
        parse_colored(text)
    assert info.value.offset == offset
