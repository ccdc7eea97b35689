"""Two-letter words, flattening, and the reversal correlation identity."""

import random

import pytest

from isingdeg import (
    GroupSpec,
    correlate,
    correlate_fast,
    d_stab,
    d_sym,
    flatten,
    reverse_word,
    substitute,
    verify_reversal_identity,
    word,
)
from isingdeg import catalog
from isingdeg.symmetry import phi_orbit_bits


def test_flatten_word21():
    sigma = flatten(word(*catalog.WORD_21))
    assert sigma.group.order == 21
    assert sigma.to_text() == "++--+-++-++--+--+--+-"


def test_flatten_length_accounting():
    w = word("UVUUVVV", "++-", "-+-")
    assert w.flat_length == 4 * 3 + 3 * 3 == 21
    w2 = word("UUV", "+-", "----")
    assert w2.flat_length == 2 * 2 + 1 * 4
    assert flatten(w2).group.order == w2.flat_length


def test_flatten_degenerate_cases():
    with pytest.raises(ValueError):
        flatten(word("U", "+", "-"))  # length 1 is no cyclic configuration
    assert flatten(word("UV", "+", "-")).to_text() == "+-"
    with pytest.raises(ValueError):
        word("UV", "", "-")
    with pytest.raises(ValueError):
        word("", "+", "-")
    # an unused empty letter is acceptable
    assert flatten(word("UU", "+-", "")).to_text() == "+-+-"


def test_reverse_word_examples():
    w = word("UVUUVVV", "++-", "-+-")
    assert reverse_word(w).letters == "VVVUUVU"
    assert reverse_word(word("U", "+-", "-")).letters == "U"
    assert reverse_word(word("UV", "+-", "-")).letters == "VU"
    assert reverse_word(w).u == w.u and reverse_word(w).v == w.v


def test_reversal_identity_word21():
    report = verify_reversal_identity(word(*catalog.WORD_21))
    assert report.equal
    assert not report.same_phi_orbit
    assert report.corr_word.values[0] == 21


def test_reversal_identity_palindrome():
    report = verify_reversal_identity(word("UVU", "++-", "-+-"))
    assert report.equal
    assert report.same_phi_orbit


def test_reversal_identity_randomized():
    rng = random.Random(424242)
    for _ in range(500):
        lu = rng.randint(1, 6)
        lv = rng.randint(1, 6)
        lw = rng.randint(1, 7)
        u = "".join(rng.choice("+-") for _ in range(lu))
        v = "".join(rng.choice("+-") for _ in range(lv))
        letters = "".join(rng.choice("UV") for _ in range(lw))
        w = word(letters, u, v)
        if w.flat_length < 2:
            continue
        report = verify_reversal_identity(w)
        assert report.equal, (letters, u, v)


def test_reversal_against_naive_correlation():
    rng = random.Random(77)
    for _ in range(40):
        letters = "".join(rng.choice("UV") for _ in range(rng.randint(2, 5)))
        u = "".join(rng.choice("+-") for _ in range(rng.randint(1, 4)))
        v = "".join(rng.choice("+-") for _ in range(rng.randint(1, 4)))
        w = word(letters, u, v)
        if w.flat_length < 2:
            continue
        sigma = flatten(w)
        tau = flatten(reverse_word(w))
        assert correlate(sigma).values == correlate(tau).values


def test_substitute_expansion():
    p = word("UV", "++-", "-+-")
    q = word("VU", "++-", "-+-")
    expanded = substitute("UVU", p, q)
    assert expanded.letters == "UV" + "VU" + "UV"
    assert expanded.u == p.u and expanded.v == p.v
    with pytest.raises(ValueError):
        substitute("UV", p, word("V", "--", "-+-"))


def test_iterated_substitution_preserves_identity():
    rng = random.Random(1001)
    for _ in range(60):
        u = "".join(rng.choice("+-") for _ in range(rng.randint(1, 3)))
        v = "".join(rng.choice("+-") for _ in range(rng.randint(1, 3)))
        inner_p = word("".join(rng.choice("UV") for _ in range(rng.randint(1, 3))), u, v)
        inner_q = word("".join(rng.choice("UV") for _ in range(rng.randint(1, 3))), u, v)
        outer = "".join(rng.choice("UV") for _ in range(rng.randint(2, 4)))
        deep = substitute(outer, inner_p, inner_q)
        reversed_outer = substitute(outer[::-1], inner_p, inner_q)
        if deep.flat_length < 2:
            continue
        assert correlate_fast(flatten(deep)).values == correlate_fast(flatten(reversed_outer)).values


def test_word21_end_to_end_degeneracy_gap():
    sigma = flatten(word(*catalog.WORD_21))
    tau = flatten(reverse_word(word(*catalog.WORD_21)))
    assert tau.bits not in phi_orbit_bits(sigma)
    assert d_stab(sigma) > d_sym(sigma)
