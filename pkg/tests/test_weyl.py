"""Weyl group elements as integer matrices: lengths, words, codecs."""

import random

import pytest

from flagloci.rootsys import build_root_system
from flagloci.weyl import (
    GroupTooLargeError,
    all_reduced_words,
    element_to_perm,
    enumerate_group,
    from_word,
    identity,
    inverse,
    inversion_set,
    is_involution,
    is_reduced,
    kernel_dim,
    left_descents,
    length,
    longest_element,
    multiply,
    perm_from_string,
    perm_string,
    perm_to_element,
    reduced_word,
    reflection,
    reflection_length,
    right_descents,
    roots_of_word,
    simple_reflection,
)


def test_group_orders_by_enumeration():
    for t, n in (("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("B3", 48)):
        assert len(enumerate_group(build_root_system(t))) == n


def test_cap_raises():
    with pytest.raises(GroupTooLargeError):
        enumerate_group(build_root_system("E8"), cap=1000)


def test_identity_and_simple_lengths():
    rs = build_root_system("B2")
    assert length(identity(rs)) == 0
    for i in (1, 2):
        assert length(simple_reflection(rs, i)) == 1


def test_longest_element():
    for t in ("A2", "A3", "B2", "G2", "F4"):
        rs = build_root_system(t)
        w0 = longest_element(rs)
        assert length(w0) == len(rs.positive_roots)
        assert is_involution(w0)
        assert not right_descents(multiply(w0, w0))


def test_reduced_word_round_trip():
    rs = build_root_system("B3")
    for w in enumerate_group(rs):
        word = reduced_word(w)
        assert len(word) == length(w)
        assert from_word(rs, word).matrix == w.matrix
        assert is_reduced(rs, word)


def test_all_reduced_words_a2():
    rs = build_root_system("A2")
    w0 = longest_element(rs)
    words = all_reduced_words(w0)
    assert sorted(words) == [(1, 2, 1), (2, 1, 2)]


def test_inversion_set_size_is_length():
    rs = build_root_system("A3")
    for w in enumerate_group(rs):
        inv = inversion_set(w)
        assert len(inv) == length(w)
        assert all(r in rs._pos_set for r in inv)


def test_roots_of_word():
    rs = build_root_system("A2")
    assert roots_of_word(rs, (1, 2, 1)) == [(1, 0), (1, 1), (0, 1)]
    with pytest.raises(Exception):
        roots_of_word(rs, (1, 1))


def test_descents():
    rs = build_root_system("A2")
    w = from_word(rs, (1, 2))
    assert right_descents(w) == [2]
    assert left_descents(w) == [1]


def test_reflection_length_matches_brute_force():
    # oracle: breadth-first distance from w to e in the reflection generators
    for t in ("A2", "B2"):
        rs = build_root_system(t)
        refl = [reflection(rs, b) for b in rs.positive_roots]

        def brute(w):
            if length(w) == 0:
                return 0
            seen = {w.matrix}
            layer = [w]
            for k in range(1, 6):
                nxt = []
                for x in layer:
                    for r in refl:
                        y = multiply(r, x)
                        if length(y) == 0:
                            return k
                        if y.matrix not in seen:
                            seen.add(y.matrix)
                            nxt.append(y)
                layer = nxt
            raise AssertionError("unreachable")

        for w in enumerate_group(rs):
            assert reflection_length(w) == brute(w)


def test_reflection_length_longest():
    assert reflection_length(longest_element(build_root_system("A2"))) == 1
    assert reflection_length(longest_element(build_root_system("B2"))) == 2
    assert reflection_length(longest_element(build_root_system("A3"))) == 2
    assert reflection_length(longest_element(build_root_system("G2"))) == 2
    assert reflection_length(longest_element(build_root_system("B3"))) == 3


def test_kernel_dim():
    assert kernel_dim(((1, 0), (0, 1))) == 0
    assert kernel_dim(((0, 0), (0, 0))) == 2
    assert kernel_dim(((1, 1), (1, 1))) == 1


def test_reflection_matrices_are_involutions():
    rs = build_root_system("G2")
    for b in rs.positive_roots:
        r = reflection(rs, b)
        assert is_involution(r)
        assert reflection_length(r) == 1


def test_perm_codec_round_trip():
    rs = build_root_system("A3")
    for w in enumerate_group(rs):
        p = element_to_perm(w)
        assert sorted(p) == [1, 2, 3, 4]
        assert perm_to_element(rs, p).matrix == w.matrix
        assert perm_from_string(rs, perm_string(w)).matrix == w.matrix


def test_perm_composition_convention():
    # multiply(a, b) acts as the permutation a-after-b
    rs = build_root_system("A3")
    els = enumerate_group(rs)
    rng = random.Random(0)
    for _ in range(50):
        a, b = rng.choice(els), rng.choice(els)
        pa, pb = element_to_perm(a), element_to_perm(b)
        assert element_to_perm(multiply(a, b)) == tuple(pa[pb[i] - 1] for i in range(4))


def test_perm_string_of_longest():
    rs = build_root_system("A3")
    assert perm_string(longest_element(rs)) == "4321"
    assert perm_string(identity(rs)) == "1234"


def test_simple_reflection_as_transposition():
    rs = build_root_system("A3")
    assert element_to_perm(simple_reflection(rs, 1)) == (2, 1, 3, 4)
    assert element_to_perm(simple_reflection(rs, 3)) == (1, 2, 4, 3)
