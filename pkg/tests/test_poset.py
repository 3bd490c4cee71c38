import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polymzv.errors import CycleError, DivergentInput, InvalidInput, LimitExceeded
from polymzv.poset import (
    LabeledPoset,
    build_poset,
    count_linear_extensions,
    evaluate,
    evaluate_regularized,
    extension_word_sum_bruteforce,
    extension_words,
    linear_extensions,
    load_poset,
    poset_is_convergent,
    word_of_extension,
)
from polymzv.verify import chain_poset, example3_poset, example5_poset, random_poset
from polymzv.words import FormalSum


def brute_extensions(P):
    n = P.size
    return {
        perm
        for perm in itertools.permutations(P.vertices)
        if all(not P.less(perm[j], perm[i]) for i in range(n) for j in range(i + 1, n))
    }


def test_build_example3_closure():
    P = example3_poset()
    assert P.less("t1", "t3") and P.less("t2", "t3")
    assert not P.less("t1", "t2") and not P.less("t3", "t1")


def test_transitive_closure():
    P = build_poset([("a", "1"), ("b", "0"), ("c", "0")], [("a", "b"), ("b", "c")])
    assert P.less("a", "c")
    assert ("a", "c") in P.closure and ("a", "c") not in P.covers


def test_cycle_rejected():
    with pytest.raises(CycleError):
        build_poset([("a", "0"), ("b", "1")], [("a", "b"), ("b", "a")])
    with pytest.raises(CycleError):
        build_poset([("a", "0")], [("a", "a")])


def test_bad_input_rejected():
    with pytest.raises(InvalidInput):
        build_poset([("a", "0"), ("a", "1")], [])
    with pytest.raises(InvalidInput):
        build_poset([("a", "2")], [])
    with pytest.raises(InvalidInput):
        build_poset([("a", "0")], [("a", "z")])


def test_antichain():
    P = build_poset([("a", "1"), ("b", "0")], [])
    assert P.closure == frozenset()
    assert linear_extensions(P) == [("a", "b"), ("b", "a")]


def test_example3_extensions_and_words():
    P = example3_poset()
    exts = linear_extensions(P)
    assert exts == [("t1", "t2", "t3"), ("t2", "t1", "t3")]
    assert [word_of_extension(P, e) for e in exts] == ["110", "110"]


def test_chain_has_one_extension():
    for n in range(1, 8):
        assert count_linear_extensions(chain_poset("1" + "0" * (n - 1))) == 1


def test_example5_extensions():
    P = example5_poset()
    exts = linear_extensions(P)
    assert len(exts) == 3
    assert word_of_extension(P, ("t1", "t2", "t3", "t4", "t5")) == "11100"


def test_word_of_extension_rejects_non_extensions():
    with pytest.raises(InvalidInput):
        word_of_extension(example3_poset(), ("t3", "t1", "t2"))


def test_extension_limit():
    P = build_poset([(f"v{i}", "0") for i in range(6)], [])
    with pytest.raises(LimitExceeded):
        linear_extensions(P, limit=100)
    assert len(linear_extensions(P, limit=720)) == 720


@pytest.mark.parametrize(
    "P, expected",
    [
        (example3_poset(), True),
        (build_poset([("a", "0")], []), False),
        (build_poset([("a", "1"), ("b", "0")], []), False),
        (chain_poset("10"), True),
    ],
)
def test_convergence(P, expected):
    assert poset_is_convergent(P) is expected
    words = brute_extensions(P)
    assert expected == all(word_of_extension(P, e)[0] == "1" and word_of_extension(P, e)[-1] == "0" for e in words)


def test_evaluate_examples():
    assert evaluate(example3_poset()) == FormalSum({"110": 2})
    assert evaluate(example5_poset()) == FormalSum({"10110": 1, "11010": 1, "11100": 1})
    assert evaluate(chain_poset("10")) == FormalSum.of("10")
    with pytest.raises(DivergentInput):
        evaluate(build_poset([("a", "0")], []))


def test_evaluate_regularized_examples():
    assert evaluate_regularized(example3_poset()) == FormalSum({"110": 2})
    assert evaluate_regularized(build_poset([("a", "0")], [])) == 0
    assert evaluate_regularized(build_poset([("a", "0"), ("b", "1")], [])) == 0


def test_json_roundtrip(tmp_path):
    P = example5_poset()
    path = tmp_path / "p.json"
    import json

    path.write_text(json.dumps(P.to_json()))
    Q = load_poset(str(path))
    assert Q == P
    with pytest.raises(InvalidInput):
        LabeledPoset.from_json({"vertices": [{"name": "x"}]})


@given(st.integers(0, 2**32), st.integers(1, 8))
def test_extensions_match_permutation_filter(seed, n):
    P = random_poset(random.Random(seed), n)
    exts = linear_extensions(P)
    assert len(exts) == len(set(exts))
    assert set(exts) == brute_extensions(P)
    assert count_linear_extensions(P) == len(exts)
    assert extension_words(P) == extension_word_sum_bruteforce(P)


@given(st.integers(0, 2**32), st.integers(1, 7))
def test_extensions_are_lexicographic(seed, n):
    P = random_poset(random.Random(seed), n)
    keys = [tuple(P.index(v) for v in e) for e in linear_extensions(P)]
    assert keys == sorted(keys)


@given(st.integers(0, 2**32), st.integers(1, 7), st.randoms())
def test_relabeling_invariance(seed, n, rnd):
    P = random_poset(random.Random(seed), n)
    order = list(P.vertices)
    rnd.shuffle(order)
    Q = P.relabel(order)
    assert extension_words(Q) == extension_words(P)
    assert poset_is_convergent(Q) == poset_is_convergent(P)


@given(st.integers(0, 2**32), st.integers(1, 7))
def test_regularized_agrees_when_convergent(seed, n):
    P = random_poset(random.Random(seed), n)
    if poset_is_convergent(P):
        assert evaluate_regularized(P) == evaluate(P)
