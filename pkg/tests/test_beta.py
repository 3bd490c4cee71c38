import itertools
from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polymzv.beta import (
    ConnectedSumSpec,
    SeriesFamily,
    as_beta_index,
    beta_exact,
    beta_product_formula,
    beta_single_formula,
    connected_sum_partial,
    eq_series_partial,
    series_params,
    split_series_partial,
)
from polymzv.errors import InvalidInput
from polymzv.verify import beta_identity_failures

beta_index = st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5)), min_size=1, max_size=4)


def beta_by_polynomials(pairs):
    """Iterated integration of explicit polynomials, innermost variable first."""
    # running antiderivative F(t) = int_0^t (...) as {exponent: coeff}
    F = {0: Fraction(1)}
    for a, b in pairs:
        integrand = {}
        for j in range(b):
            c = comb(b - 1, j) * (-1) ** j
            for e, w in F.items():
                key = e + a - 1 + j
                integrand[key] = integrand.get(key, 0) + c * w
        F = {e + 1: w / (e + 1) for e, w in integrand.items()}
    return sum(F.values(), Fraction(0))


@pytest.mark.parametrize(
    "pairs, value",
    [([(1, 1)], 1), ([(2, 3)], Fraction(1, 12)), ([(2, 1), (3, 1)], Fraction(1, 10))],
)
def test_beta_examples(pairs, value):
    assert beta_exact(pairs) == value


@pytest.mark.parametrize("n1, n2, value", [(1, 1, Fraction(1, 2)), (2, 2, Fraction(1, 12)), (3, 1, Fraction(1, 12))])
def test_single_formula_examples(n1, n2, value):
    assert beta_single_formula(n1, n2) == value


def test_single_formula_agrees_with_exact():
    for n1 in range(1, 12):
        for n2 in range(1, 13 - n1):
            assert beta_single_formula(n1, n2) == beta_exact([(n1, n2 + 1)])


def test_bad_indices():
    with pytest.raises(InvalidInput):
        as_beta_index([])
    with pytest.raises(InvalidInput):
        beta_exact([(0, 1)])
    with pytest.raises(InvalidInput):
        beta_exact([(1,)])
    with pytest.raises(InvalidInput):
        beta_single_formula(0, 1)


@given(beta_index)
def test_beta_matches_polynomial_oracle(pairs):
    assert beta_exact(pairs) == beta_by_polynomials(pairs)


@given(beta_index)
def test_beta_identities(pairs):
    assert beta_identity_failures(pairs) == []


@given(st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_product_formula(alphas):
    assert beta_exact([(a, 1) for a in alphas]) == beta_product_formula(alphas)


def test_beta_numeric_spot_check():
    # 2-fold integral by quadrature
    f = lambda t2: mpmath.quad(lambda t1: t1 * (1 - t1) ** 2, [0, t2]) * t2**2 * (1 - t2)
    assert abs(mpmath.quad(f, [0, 1]) - mpmath.mpf(53) / 10080) < mpmath.mpf(10) ** -30
    assert beta_exact([(2, 3), (3, 2)]) == Fraction(53, 10080)


# --- connected sums -------------------------------------------------------


def nested_top(ks, m):
    """Brute force: sum over 0<m_1<..<m_r=m of prod m_i^-k_i."""
    r = len(ks)
    total = Fraction(0)
    for head in itertools.combinations(range(1, m), r - 1):
        idx = head + (m,)
        term = Fraction(1)
        for i, k in zip(idx, ks):
            term /= i**k
        total += term
    return total


def connected_sum_brute(k, l, M):
    return sum(
        nested_top(k, m) * nested_top(l, n) * Fraction(factorial(m) * factorial(n), factorial(m + n))
        for m in range(1, M + 1)
        for n in range(1, M + 1)
    )


def test_connected_sum_examples():
    spec = ConnectedSumSpec((1,), (1,))
    assert connected_sum_partial(spec, 1) == Fraction(1, 2)
    assert connected_sum_partial(spec, 0) == 0
    assert connected_sum_partial(ConnectedSumSpec((2, 1), (3,)), 0) == 0


def test_connected_sum_11_tends_to_zeta2():
    # sum_n (1/n) sum_m B(m, n+1) = sum_n 1/n^2
    spec = ConnectedSumSpec((1,), (1,))
    s = connected_sum_partial(spec, 150)
    gap = mpmath.zeta(2) - mpmath.mpf(s.numerator) / s.denominator
    assert 0 < gap < 2 / 150


def test_eq4_is_connected_sum_2_1():
    for M in (1, 5, 17):
        assert eq_series_partial(SeriesFamily.EQ4, M) == connected_sum_partial(ConnectedSumSpec((2,), (1,)), M)


@given(
    st.lists(st.integers(1, 3), min_size=1, max_size=3),
    st.lists(st.integers(1, 3), min_size=1, max_size=3),
    st.integers(1, 7),
)
def test_connected_sum_matches_brute_force(k, l, M):
    spec = ConnectedSumSpec(tuple(k), tuple(l))
    assert connected_sum_partial(spec, M) == connected_sum_brute(k, l, M)


@given(
    st.lists(st.integers(1, 4), min_size=1, max_size=3),
    st.lists(st.integers(1, 4), min_size=1, max_size=3),
    st.integers(1, 12),
)
def test_index_shift_forms_agree(k, l, M):
    spec = ConnectedSumSpec(tuple(k), tuple(l))
    base = connected_sum_partial(spec, M)
    assert connected_sum_partial(spec, M, "shift_k") == base
    assert connected_sum_partial(spec, M, "shift_l") == base


def test_unknown_connected_form():
    with pytest.raises(InvalidInput):
        connected_sum_partial(ConnectedSumSpec((1,), (1,)), 3, "sideways")


# --- series families, checked against the term formulas summed naively ----


def B(n1, n2):
    return Fraction(factorial(n1 - 1) * factorial(n2), factorial(n1 + n2))


def rising(n1, n2):
    # n2! / (n1 (n1+1) ... (n1+n2))
    den = 1
    for j in range(n2 + 1):
        den *= n1 + j
    return Fraction(factorial(n2), den)


def brute(family, M, p):
    rng = range(1, M + 1)
    if family == "eq4":
        return sum(Fraction(1, n1 * n2) * rising(n1, n2) for n1 in rng for n2 in rng)
    if family in ("eq5", "eq6"):
        k, l = p["k"], p.get("l", 1)
        return sum(Fraction(1, n1**k * n2**l) * rising(n1, n2) for n1 in rng for n2 in rng)
    if family == "eq7":
        k, l = p["k"], p["l"]
        total = Fraction(0)
        for n1 in rng:
            for ms in itertools.combinations(rng, l):
                prod = 1
                for m in ms:
                    prod *= m
                total += Fraction(1, n1**k * prod) * rising(n1, ms[-1])
        return total
    ks = p["k"]
    r = len(ks)
    total = Fraction(0)
    if family == "cor-triple":
        for ns in itertools.product(rng, repeat=r):
            term = Fraction(1)
            s = 0
            for n, k in zip(ns, ks):
                s += n
                term /= n**k * s
            total += term
        return total
    if family == "cor-shifted":
        for ms in itertools.product(rng, repeat=r):
            for ns in itertools.product(*(range(1, m) for m in ms)):
                term = Fraction(1)
                t = 0
                for n, m, k in zip(ns, ms, ks):
                    t += m
                    term /= n**k * t
                total += term / t
        return total
    for ns in itertools.product(rng, repeat=r):
        term = Fraction(1, sum(ns) ** p["r"])
        for n, k in zip(ns, ks):
            term /= n**k
        total += term
    return total


CASES = [
    ("eq4", {}),
    ("eq5", {"k": 2, "l": 2}),
    ("eq5", {"k": 3, "l": 2}),
    ("eq6", {"k": 1}),
    ("eq6", {"k": 3}),
    ("eq7", {"k": 1, "l": 2}),
    ("eq7", {"k": 2, "l": 3}),
    ("cor-triple", {"k": [1, 2]}),
    ("cor-triple", {"k": [2, 1, 1]}),
    ("cor-shifted", {"k": [1, 1]}),
    ("cor-shifted", {"k": [2, 1, 3]}),
    ("cor-zho", {"k": [1], "r": 1}),
    ("cor-zho", {"k": [1, 2], "r": 2}),
]


@pytest.mark.parametrize("family, params", CASES)
@pytest.mark.parametrize("M", [1, 2, 5])
def test_series_partial_matches_term_formulas(family, params, M):
    assert eq_series_partial(family, M, params) == brute(family, M, series_params(family, params))


def test_series_examples():
    assert eq_series_partial(SeriesFamily.EQ4, 1) == Fraction(1, 2)
    assert eq_series_partial("cor-zho", 10, {"k": [1], "r": 1}) == sum(Fraction(1, n * n) for n in range(1, 11))
    assert eq_series_partial("eq6", 0, {"k": 2}) == 0


@pytest.mark.parametrize(
    "family, params",
    [
        ("eq5", {"k": 1, "l": 2}),
        ("eq5", {"k": 2}),
        ("eq6", {"k": 0}),
        ("eq7", {"k": 1, "l": 0}),
        ("cor-triple", {}),
        ("cor-zho", {"k": [1]}),
        ("cor-zho", {"k": [0], "r": 1}),
    ],
)
def test_series_rejects_out_of_range(family, params):
    with pytest.raises(InvalidInput):
        eq_series_partial(family, 3, params)


def test_unknown_family():
    with pytest.raises(ValueError):
        eq_series_partial("eq9", 3)


def test_split_series_matches_beta_terms():
    for letter, shift in (("0", 0), ("1", 1)):
        M = 4
        expected = sum(
            nested_top((2,), m)
            * nested_top((1, 1), n)
            * Fraction(factorial(m - 1 + shift) * factorial(n - shift), factorial(m + n))
            for m in range(1, M + 1)
            for n in range(1, M + 1)
        )
        assert split_series_partial((2,), (1, 1), letter, M) == expected
