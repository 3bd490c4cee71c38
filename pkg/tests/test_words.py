from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import composition_strategy, convergent_word_strategy, word_strategy
from polymzv.errors import InvalidInput
from polymzv.words import (
    FormalSum,
    Letter,
    as_word,
    composition_from_word,
    convergent_words,
    format_composition,
    format_rational,
    is_convergent,
    parse_composition,
    reverse_complement,
    shuffle,
    shuffle_all,
    shuffle_sum,
    word_from_composition,
)


def test_letter_complement():
    assert len(Letter) == 2
    assert Letter.E0.complement() is Letter.E1
    assert Letter.E1.complement() is Letter.E0


@pytest.mark.parametrize(
    "comp, word",
    [((1, 2), "110"), ((2,), "10"), ((1, 1, 3), "11100"), ((2, 2), "1010")],
)
def test_composition_word_block_rule(comp, word):
    assert word_from_composition(comp) == word
    assert composition_from_word(word) == comp


@pytest.mark.parametrize("bad", ["", "0", "01", "0110"])
def test_composition_from_word_rejects(bad):
    with pytest.raises(InvalidInput):
        composition_from_word(bad)


def test_composition_rejects_zero_parts():
    with pytest.raises(InvalidInput):
        word_from_composition((1, 0))
    with pytest.raises(InvalidInput):
        word_from_composition(())


@pytest.mark.parametrize("w, expected", [("10", True), ("01", False), ("", True), ("1", False), ("0", False), ("1100", True)])
def test_is_convergent(w, expected):
    assert is_convergent(w) is expected


def test_as_word_accepts_letters_and_digits():
    assert as_word([Letter.E1, Letter.E0]) == "10"
    assert as_word([1, 1, 0]) == "110"
    with pytest.raises(InvalidInput):
        as_word("102")


def test_shuffle_examples():
    assert shuffle("0", "1") == FormalSum({"01": 1, "10": 1})
    assert shuffle("10", "10") == FormalSum({"1010": 2, "1100": 4})
    assert shuffle("110", "") == FormalSum.of("110")
    assert shuffle("", "110") == FormalSum.of("110")


def test_shuffle_sum_examples():
    b = FormalSum({"10": 3})
    assert shuffle_sum(FormalSum.zero(), b) == 0
    assert shuffle_sum(FormalSum.of("10", 2), FormalSum.unit()) == FormalSum.of("10", 2)
    assert shuffle_sum(FormalSum({"0": 1, "1": 1}), FormalSum.unit()) == FormalSum({"0": 1, "1": 1})


@pytest.mark.parametrize("w, expected", [("10", "10"), ("110", "100"), ("", ""), ("1010", "1010"), ("11100", "11000")])
def test_reverse_complement(w, expected):
    assert reverse_complement(w) == expected


@given(word_strategy(), word_strategy())
def test_shuffle_commutative_and_mass(u, v):
    s = shuffle(u, v)
    assert s == shuffle(v, u)
    assert s.mass() == comb(len(u) + len(v), len(u))
    assert all(len(w) == len(u) + len(v) for w in s)


@given(word_strategy(max_size=4), word_strategy(max_size=4), word_strategy(max_size=4))
def test_shuffle_associative(u, v, w):
    left = shuffle_sum(shuffle(u, v), FormalSum.of(w))
    right = shuffle_sum(FormalSum.of(u), shuffle(v, w))
    assert left == right
    assert left == shuffle_all([u, v, w])


@given(convergent_word_strategy(), convergent_word_strategy())
def test_shuffle_of_convergent_words_is_convergent(u, v):
    assert shuffle(u, v).is_convergent()


@given(word_strategy(max_size=5), word_strategy(max_size=5))
def test_reverse_complement_commutes_with_shuffle(u, v):
    lhs = FormalSum({reverse_complement(w): c for w, c in shuffle(u, v).items()})
    assert lhs == shuffle(reverse_complement(u), reverse_complement(v))


@given(word_strategy(max_size=10))
def test_reverse_complement_involution(w):
    assert reverse_complement(reverse_complement(w)) == w
    assert is_convergent(reverse_complement(w)) == is_convergent(w)


def test_composition_roundtrip_exhaustive_weight_12():
    count = 0
    for w in (format(i, "b") for i in range(1, 2**12)):
        # every word starting with 1 of length <= 12 is the image of one composition
        c = composition_from_word(w)
        assert word_from_composition(c) == w
        assert sum(c) == len(w)
        count += 1
    assert count == 2**12 - 1


@given(composition_strategy(max_parts=6, max_part=6))
def test_word_from_composition_inverse(c):
    assert composition_from_word(word_from_composition(c)) == c


def test_convergent_words_enumeration():
    ws = list(convergent_words(4))
    assert ws == ["10", "100", "110", "1000", "1010", "1100", "1110"]


def test_formal_sum_canonical_form():
    a = FormalSum({"10": 1, "110": Fraction(1, 2)})
    b = FormalSum({"10": -1})
    s = a + b
    assert "10" not in s and dict(s) == {"110": Fraction(1, 2)}
    assert a - a == 0
    assert FormalSum({"10": 0}) == FormalSum.zero()
    assert 2 * a == a + a
    assert (a / 2) * 2 == a
    assert -a + a == 0


def test_formal_sum_json_roundtrip_and_pretty():
    a = FormalSum({"110": 2, "10": Fraction(-1, 3), "01": 1})
    obj = a.to_json()
    assert obj == {"01": "1", "10": "-1/3", "110": "2"}
    assert FormalSum.from_json(obj) == a
    assert FormalSum({"110": 2, "10": -1}).pretty() == "-zeta(2) + 2*zeta(1,2)"
    assert FormalSum.zero().pretty() == "0"


def test_text_formats():
    assert parse_composition("zeta(1,2)") == (1, 2)
    assert parse_composition("(3)") == (3,)
    assert format_composition((1, 1, 3)) == "zeta(1,1,3)"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    with pytest.raises(InvalidInput):
        parse_composition("zeta(1,)")


@given(st.dictionaries(word_strategy(max_size=5), st.fractions(max_denominator=50), max_size=6))
def test_formal_sum_json_property(terms):
    a = FormalSum(terms)
    assert FormalSum.from_json(a.to_json()) == a
    assert all(c != 0 for c in a.values())
