"""Exact multiple Beta values and exact partial sums of the associated series.

The multiple Beta function at positive integers,

    B(a1,b1; ...; aN,bN) = int_{0<t1<...<tN<1} prod t_i^(a_i-1) (1-t_i)^(b_i-1) dt,

is computed by expanding every (1-t_i)^(b_i-1) binomially and summing the
pure-power base case

    B(a1,1; ...; aN,1) = 1 / (a1 (a1+a2) ... (a1+...+aN)).

The series helpers return exact ``Fraction`` partial sums with every
summation index bounded by ``M``.  Tail bounds live in :mod:`polymzv.numeric`.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial, lcm

from .errors import InvalidInput
from .words import Composition, Letter, as_composition

__all__ = [
    "BetaIndex",
    "as_beta_index",
    "beta_exact",
    "beta_product_formula",
    "beta_single_formula",
    "ConnectedSumSpec",
    "connected_sum_partial",
    "split_series_partial",
    "SeriesFamily",
    "series_params",
    "eq_series_partial",
]

BetaIndex = tuple[tuple[int, int], ...]


def as_beta_index(pairs) -> BetaIndex:
    try:
        idx = tuple((int(a), int(b)) for a, b in pairs)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"beta index must be a list of [alpha, beta] pairs: {pairs!r}") from exc
    if not idx:
        raise InvalidInput("beta index must be nonempty")
    if any(a < 1 or b < 1 for a, b in idx):
        raise InvalidInput(f"beta index entries must be positive integers: {idx}")
    return idx


def beta_exact(pairs) -> Fraction:
    """Exact B(a1,b1; ...; aN,bN) for positive integer arguments.

    Expanding (1-t_i)^(b_i-1) = sum_j C(b_i-1, j) (-1)^j t_i^j turns the
    integral into sum prod C(.)(-1)^j / (s_1 s_2 ... s_N), with s_i the
    partial sums of the shifted exponents a_i + j_i.  The sum over the j's
    is organized by the running partial sum s, so the work is polynomial in
    the arguments rather than prod b_i.
    """
    idx = as_beta_index(pairs)
    # acc[s] = signed weight of all expansion prefixes with partial sum s,
    # already divided by s_1 ... s_i
    acc: dict[int, Fraction] = {0: Fraction(1)}
    for a, b in idx:
        nxt: dict[int, Fraction] = {}
        for j in range(b):
            c = comb(b - 1, j) * (-1) ** j
            shift = a + j
            for s, w in acc.items():
                t = s + shift
                nxt[t] = nxt.get(t, 0) + c * w
        acc = {s: w / s for s, w in nxt.items() if w}
    return sum(acc.values(), Fraction(0))


def beta_product_formula(alphas: Sequence[int]) -> Fraction:
    """B(a1,1; ...; aN,1) = 1 / (a1 (a1+a2) ... (a1+...+aN))."""
    out, s = Fraction(1), 0
    for a in alphas:
        if a < 1:
            raise InvalidInput("alphas must be positive")
        s += a
        out /= s
    return out


def beta_single_formula(n1: int, n2: int) -> Fraction:
    """B(n1, n2+1) = (n1-1)! n2! / (n1+n2)!."""
    if n1 < 1 or n2 < 1:
        raise InvalidInput("n1 and n2 must be >= 1")
    return Fraction(factorial(n1 - 1) * factorial(n2), factorial(n1 + n2))


# ---------------------------------------------------------------------------
# exact partial sums


def _nested(ks: Sequence[int], M: int) -> list[Fraction]:
    """P[m] = sum_{0<m_1<...<m_r<=m} prod m_i^-k_i for m = 0..M (P = 1 for r = 0)."""
    P = [Fraction(1)] * (M + 1)
    for k in ks:
        Q = [Fraction(0)] * (M + 1)
        for m in range(1, M + 1):
            Q[m] = Q[m - 1] + P[m - 1] / m**k
        P = Q
    return P


def _top(ks: Sequence[int], M: int) -> list[Fraction]:
    """T[m] = sum over 0<m_1<...<m_r = m of prod m_i^-k_i (index 0 unused)."""
    if not ks:
        raise InvalidInput("need at least one index")
    lower = _nested(ks[:-1], M)
    return [Fraction(0)] + [lower[m - 1] / Fraction(m) ** ks[-1] for m in range(1, M + 1)]


def _as_integers(vals: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    return [v.numerator * (den // v.denominator) for v in vals], den


def _bilinear(a: Sequence[Fraction], b: Sequence[Fraction], M: int, fa, fb) -> Fraction:
    """sum_{m,n=1..M} a[m] b[n] fa(m) fb(n) / (m+n)! in exact integer arithmetic."""
    if M < 1:
        return Fraction(0)
    alpha, da = _as_integers(a[1 : M + 1])
    beta, db = _as_integers(b[1 : M + 1])
    top = 2 * M
    # F[s] = top! / s!
    F = [1] * (top + 1)
    for s in range(top - 1, -1, -1):
        F[s] = F[s + 1] * (s + 1)
    bw = [beta[n - 1] * fb(n) for n in range(1, M + 1)]
    total = 0
    for m in range(1, M + 1):
        am = alpha[m - 1]
        if not am:
            continue
        inner = 0
        for n in range(1, M + 1):
            if bw[n - 1]:
                inner += bw[n - 1] * F[m + n]
        total += am * fa(m) * inner
    return Fraction(total, da * db * factorial(top))


def _fact_shift(d: int):
    return lambda n: factorial(n + d)


@dataclass(frozen=True)
class ConnectedSumSpec:
    """Indices of the connected sum

    Z(k; l) = sum_{0<m_1<..<m_r, 0<n_1<..<n_s} m^-k n^-l * m_r! n_s! / (m_r + n_s)!
    """

    k: Composition
    l: Composition

    def __post_init__(self):
        object.__setattr__(self, "k", as_composition(self.k))
        object.__setattr__(self, "l", as_composition(self.l))


def connected_sum_partial(spec: ConnectedSumSpec, M: int, form: str = "standard") -> Fraction:
    """Exact partial sum of Z(k; l) over m_r, n_s <= M.

    ``form`` selects which printed term formula is summed:
    ``"standard"`` uses m_r! n_s!/(m_r+n_s)!; ``"shift_k"`` lowers k_r by one
    and uses (m_r-1)! n_s!/(m_r+n_s)!; ``"shift_l"`` lowers l_s by one and
    uses m_r! (n_s-1)!/(m_r+n_s)!.  All three agree term by term.
    """
    if M < 1:
        return Fraction(0)
    k, l = list(spec.k), list(spec.l)
    if form == "standard":
        return _bilinear(_top(k, M), _top(l, M), M, _fact_shift(0), _fact_shift(0))
    if form == "shift_k":
        k[-1] -= 1
        return _bilinear(_top_allow_zero(k, M), _top(l, M), M, _fact_shift(-1), _fact_shift(0))
    if form == "shift_l":
        l[-1] -= 1
        return _bilinear(_top(k, M), _top_allow_zero(l, M), M, _fact_shift(0), _fact_shift(-1))
    raise InvalidInput(f"unknown connected-sum form {form!r}")


def _top_allow_zero(ks: Sequence[int], M: int) -> list[Fraction]:
    lower = _nested(ks[:-1], M)
    return [Fraction(0)] + [lower[m - 1] / Fraction(m) ** ks[-1] for m in range(1, M + 1)]


def split_series_partial(z_comp, omz_comp, letter, M: int) -> Fraction:
    """Partial sum of the series for int Li_a(z) Li_b(1-z) omega(z).

    sum_{0<m_1<..<m_s, 0<n_1<..<n_t} m^-a n^-b B(m_s + i, n_t + 1 - i) with
    i = 0 for omega = dz/z and i = 1 for dz/(1-z); all of m_s, n_t <= M.
    """
    i = 0 if Letter(str(letter)) is Letter.E0 else 1
    a, b = _top(as_composition(z_comp), M), _top(as_composition(omz_comp), M)
    # B(m+i, n+1-i) = (m-1+i)! (n-i)! / (m+n)!
    return _bilinear(a, b, M, _fact_shift(i - 1), _fact_shift(-i))


class SeriesFamily(str, Enum):
    EQ4 = "eq4"
    EQ5 = "eq5"
    EQ6 = "eq6"
    EQ7 = "eq7"
    COR_TRIPLE = "cor-triple"
    COR_SHIFTED = "cor-shifted"
    COR_ZHO = "cor-zho"


def series_params(family, params: Mapping | None = None) -> dict:
    """Validate and normalize the parameters of a series family."""
    fam = SeriesFamily(family)
    p = dict(params or {})

    def pos_int(name, minimum=1):
        if name not in p:
            raise InvalidInput(f"{fam.value} needs parameter {name!r}")
        v = int(p[name])
        if v < minimum:
            raise InvalidInput(f"{fam.value}: {name} must be >= {minimum}, got {v}")
        return v

    if fam is SeriesFamily.EQ4:
        return {}
    if fam is SeriesFamily.EQ5:
        return {"k": pos_int("k", 2), "l": pos_int("l", 2)}
    if fam is SeriesFamily.EQ6:
        return {"k": pos_int("k")}
    if fam is SeriesFamily.EQ7:
        return {"k": pos_int("k"), "l": pos_int("l")}
    if "k" not in p:
        raise InvalidInput(f"{fam.value} needs parameter 'k' (a list of positive integers)")
    ks = as_composition(p["k"] if isinstance(p["k"], (list, tuple)) else [p["k"]])
    if fam is SeriesFamily.COR_ZHO:
        return {"k": ks, "r": pos_int("r")}
    return {"k": ks}


def _eq_pair(k: int, l_weights: list[Fraction], M: int) -> Fraction:
    # sum 1/n1^k * w(n2) * n2! / (n1 (n1+1) ... (n1+n2)),   n2!/(n1...(n1+n2)) = (n1-1)! n2!/(n1+n2)!
    a = [Fraction(0)] + [Fraction(1, n**k) for n in range(1, M + 1)]
    return _bilinear(a, l_weights, M, _fact_shift(-1), _fact_shift(0))


def _cor_triple(ks: Composition, M: int) -> Fraction:
    # D_j[s]: sum over n_1..n_j <= M with n_1+..+n_j = s of prod n^-k / (s_1 ... s_j)
    D = {n: Fraction(1, n ** ks[0]) / n for n in range(1, M + 1)}
    for k in ks[1:]:
        nxt: dict[int, Fraction] = {}
        for s, w in D.items():
            for n in range(1, M + 1):
                t = s + n
                nxt[t] = nxt.get(t, 0) + w / n**k
        D = {t: w / t for t, w in nxt.items()}
    return sum(D.values(), Fraction(0))


def _cor_shifted(ks: Composition, M: int) -> Fraction:
    # sum_{n_i < m_i <= M} prod n_i^-k_i / (t_1 ... t_{r-1} t_r^2),  t_j = m_1 + ... + m_j
    gs = []
    for k in ks:
        g = [Fraction(0)] * (M + 1)
        for m in range(2, M + 1):
            g[m] = g[m - 1] + Fraction(1, (m - 1) ** k)
        gs.append(g)
    D = {m: gs[0][m] / m for m in range(2, M + 1)}
    for g in gs[1:]:
        nxt: dict[int, Fraction] = {}
        for s, w in D.items():
            for m in range(2, M + 1):
                t = s + m
                nxt[t] = nxt.get(t, 0) + w * g[m]
        D = {t: w / t for t, w in nxt.items()}
    return sum((w / t for t, w in D.items()), Fraction(0))


def _cor_zho(ks: Composition, r: int, M: int) -> Fraction:
    # sum_{n_i <= M} prod n_i^-k_i / (n_1 + ... + n_s)^r
    C = {0: Fraction(1)}
    for k in ks:
        nxt: dict[int, Fraction] = {}
        for s, w in C.items():
            for n in range(1, M + 1):
                nxt[s + n] = nxt.get(s + n, 0) + w / n**k
        C = nxt
    return sum((w / Fraction(s) ** r for s, w in C.items()), Fraction(0))


def eq_series_partial(family, M: int, params: Mapping | None = None) -> Fraction:
    """Exact partial sum, all summation indices <= M, of one of the series families.

    * ``eq4``: sum 1/(n1 n2) * n2!/(n1 (n1+1) ... (n1+n2))
    * ``eq5`` (k, l >= 2) and ``eq6`` (k >= 1, l = 1): sum 1/(n1^k n2^l) * n2!/(n1 ... (n1+n2))
    * ``eq7`` (k, l >= 1): sum over n1, 0<m_1<..<m_l of 1/(n1^k m_1..m_l) * m_l!/(n1 ... (n1+m_l))
    * ``cor-triple`` (k): sum prod n_i^-k_i / (n1 (n1+n2) ... (n1+..+n_r))
    * ``cor-shifted`` (k): sum_{n_i<m_i} prod n_i^-k_i / (m1 (m1+m2) ... (m1+..+m_r)^2)
    * ``cor-zho`` (k, r): sum prod n_i^-k_i / (n1+..+n_s)^r
    """
    fam = SeriesFamily(family)
    p = series_params(fam, params)
    if M < 1:
        return Fraction(0)
    if fam is SeriesFamily.EQ4:
        return _eq_pair(1, [Fraction(0)] + [Fraction(1, n) for n in range(1, M + 1)], M)
    if fam in (SeriesFamily.EQ5, SeriesFamily.EQ6):
        l = p.get("l", 1)
        return _eq_pair(p["k"], [Fraction(0)] + [Fraction(1, n**l) for n in range(1, M + 1)], M)
    if fam is SeriesFamily.EQ7:
        return _eq_pair(p["k"], _top((1,) * p["l"], M), M)
    if fam is SeriesFamily.COR_TRIPLE:
        return _cor_triple(p["k"], M)
    if fam is SeriesFamily.COR_SHIFTED:
        return _cor_shifted(p["k"], M)
    return _cor_zho(p["k"], p["r"], M)
