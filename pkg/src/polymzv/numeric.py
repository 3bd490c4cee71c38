"""Arbitrary-precision evaluation of polylogarithms, MZV words and series tails.

Words are evaluated by cutting the simplex at an interior point ``a``:

    I(0; w; 1) = sum_p I(0; w[:p]; a) * I(a; w[p:]; 1)

The left factor is ``Li_{prefix}(a)``, and substituting t -> 1-t turns the
right factor into ``Li_{rc(suffix)}(1-a)``.  Both are power series in a
point of (0,1) and converge geometrically, with an explicit tail majorant.

All error bounds are rigorous except for :func:`riemann_oracle`, whose
bound is an empirical grid-doubling estimate.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from . import beta as _beta
from .errors import DivergentInput, DivergentWord, InvalidInput, ToleranceUnreachable
from .poset import LabeledPoset, count_linear_extensions, poset_is_convergent
from .words import (
    Composition,
    FormalSum,
    Letter,
    as_composition,
    as_word,
    composition_from_word,
    is_convergent,
    reverse_complement,
)

__all__ = [
    "PrecisionConfig",
    "NumericValue",
    "li_value",
    "zeta_word",
    "formal_sum_value",
    "riemann_oracle",
    "series_tail_bound",
    "connected_sum_tail_bound",
]


@dataclass(frozen=True)
class PrecisionConfig:
    prec_bits: int = 128
    tolerance: float = 1e-20
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidInput("tolerance must be positive")
        if self.max_terms < 1:
            raise InvalidInput("max_terms must be positive")
        # need a few guard bits past the tolerance
        need = -mpmath.log(self.tolerance, 2) + 16
        if self.prec_bits < need:
            raise InvalidInput(
                f"{self.prec_bits} bits cannot reach tolerance {self.tolerance}; need at least {int(need) + 1}"
            )


@dataclass(frozen=True)
class NumericValue:
    value: mpmath.mpf
    error_bound: mpmath.mpf
    rigorous: bool = True

    def __post_init__(self):
        if not (self.error_bound >= 0 and mpmath.isfinite(self.error_bound)):
            raise InvalidInput(f"bad error bound {self.error_bound!r}")

    def __add__(self, other: "NumericValue") -> "NumericValue":
        return NumericValue(
            self.value + other.value, self.error_bound + other.error_bound, self.rigorous and other.rigorous
        )

    def __mul__(self, other: "NumericValue") -> "NumericValue":
        a, b = self, other
        err = abs(a.value) * b.error_bound + abs(b.value) * a.error_bound + a.error_bound * b.error_bound
        return NumericValue(a.value * b.value, err, a.rigorous and b.rigorous)

    def contains(self, x, slack=0) -> bool:
        return abs(self.value - x) <= self.error_bound + slack

    def to_json(self, digits: int | None = None) -> dict[str, str]:
        if digits is None:
            digits = max(17, mpmath.libmp.repr_dps(mpmath.mp.prec) - 2)
        return {"value": mpmath.nstr(self.value, digits, strip_zeros=False), "error_bound": _ceil_str(self.error_bound)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "NumericValue":
        return cls(mpmath.mpf(obj["value"]), mpmath.mpf(obj["error_bound"]))


def _ceil_str(x, digits: int = 3) -> str:
    """Decimal string of ``x`` rounded up to ``digits`` significant digits."""
    x = mpmath.mpf(x)
    if x == 0:
        return "0.0"
    e = int(mpmath.floor(mpmath.log10(x))) - digits + 1
    m = int(mpmath.ceil(x / mpmath.mpf(10) ** e))
    if len(str(m)) > digits:
        m, e = -(-m // 10), e + 1
    ms = str(m)
    return f"{ms[0]}.{ms[1:]}e{e + len(ms) - 1}"


def _point(x) -> Fraction:
    try:
        q = Fraction(x)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"not a rational point: {x!r}") from exc
    return q


@lru_cache(maxsize=4096)
def _li(c: Composition, x: Fraction, prec: int, tol_exp: int, max_terms: int):
    tol = mpmath.mpf(2) ** tol_exp
    r = len(c)
    with mpmath.workprec(prec):
        z = mpmath.mpf(x.numerator) / x.denominator
        fact = mpmath.factorial(r - 1)
        # P[j]: nested sum over the first j indices, all below the current n
        P = [mpmath.mpf(1)] + [mpmath.mpf(0)] * (r - 1)
        total = mpmath.mpf(0)
        zn = mpmath.mpf(1)
        ulp = mpmath.mpf(2) ** (-prec)
        for n in range(1, max_terms + 1):
            zn *= z
            total += P[r - 1] * zn / mpmath.mpf(n) ** c[-1]
            for j in range(r - 1, 0, -1):
                P[j] += P[j - 1] / mpmath.mpf(n) ** c[j - 1]
            if n < 8:
                continue
            # terms beyond n are <= a_m = z^m (1+ln m)^(r-1) / ((r-1)! m^k_r), with
            # a_{m+1}/a_m <= q for all m > n
            q = z * ((1 + mpmath.log(n + 2)) / (1 + mpmath.log(n + 1))) ** (r - 1)
            if q >= 1:
                continue
            a_next = zn * z * (1 + mpmath.log(n + 1)) ** (r - 1) / (fact * mpmath.mpf(n + 1) ** c[-1])
            tail = a_next / (1 - q)
            rounding = 8 * n * (r + 2) * ulp * (abs(total) + 1)
            if tail + rounding <= tol:
                return total, tail + rounding
        raise ToleranceUnreachable(f"Li{c}({x}) did not reach 2^{tol_exp} within {max_terms} terms")


def _tol_exp(tol) -> int:
    return int(mpmath.floor(mpmath.log(mpmath.mpf(tol), 2)))


def li_value(c, z, cfg: PrecisionConfig = PrecisionConfig()) -> NumericValue:
    """Li_{k_1..k_r}(z) = sum_{0<n_1<..<n_r} z^{n_r} / (n_1^k_1 ... n_r^k_r), 0 < z < 1."""
    c = as_composition(c)
    x = _point(z)
    if not 0 < x < 1:
        raise InvalidInput(f"li_value needs 0 < z < 1, got {x}")
    v, e = _li(c, x, cfg.prec_bits, _tol_exp(cfg.tolerance), cfg.max_terms)
    return NumericValue(v, e)


def _half(part: str, x: Fraction, cfg: PrecisionConfig, tol) -> NumericValue:
    if not part:
        return NumericValue(mpmath.mpf(1), mpmath.mpf(0))
    v, e = _li(composition_from_word(part), x, cfg.prec_bits, _tol_exp(tol), cfg.max_terms)
    return NumericValue(v, e)


def zeta_word(w, cfg: PrecisionConfig = PrecisionConfig(), split=Fraction(1, 2)) -> NumericValue:
    """Numeric value of a convergent word by splitting the simplex at ``split``."""
    w = as_word(w)
    if not is_convergent(w):
        raise DivergentWord(f"word {w!r} is divergent; regularize it first")
    if not w:
        return NumericValue(mpmath.mpf(1), mpmath.mpf(0))
    a = _point(split)
    if not 0 < a < 1:
        raise InvalidInput(f"split point must lie in (0,1), got {a}")
    with mpmath.workprec(cfg.prec_bits):
        # both halves stay O(1) for interior split points; tighten until the combined bound fits
        tol = mpmath.mpf(cfg.tolerance)
        sub = tol / (8 * (len(w) + 1))
        while True:
            acc = NumericValue(mpmath.mpf(0), mpmath.mpf(0))
            for p in range(len(w) + 1):
                left = _half(w[:p], a, cfg, sub)
                right = _half(reverse_complement(w[p:]), 1 - a, cfg, sub)
                acc = acc + left * right
            if acc.error_bound <= tol:
                return acc
            sub /= 16
            if sub < mpmath.mpf(2) ** (-cfg.prec_bits + 8):
                raise ToleranceUnreachable(f"zeta_word({w!r}) cannot reach {cfg.tolerance}")


def formal_sum_value(fs: FormalSum, cfg: PrecisionConfig = PrecisionConfig(), split=Fraction(1, 2)) -> NumericValue:
    """sum c_w zeta(w) with error bounds weighted by |c_w|."""
    bad = [w for w in fs if not is_convergent(w)]
    if bad:
        raise DivergentWord(f"divergent words {bad}; regularize first")
    with mpmath.workprec(cfg.prec_bits):
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        weight = sum((abs(c) for c in fs.values()), Fraction(0)) or Fraction(1)
        sub = PrecisionConfig(cfg.prec_bits, max(cfg.tolerance / float(weight), 2.0 ** (-cfg.prec_bits + 20)), cfg.max_terms)
        for w, c in fs.sorted_items():
            v = zeta_word(w, sub, split)
            cm = mpmath.mpf(c.numerator) / c.denominator
            total += cm * v.value
            err += abs(cm) * v.error_bound
        return NumericValue(total, err)


# ---------------------------------------------------------------------------
# midpoint-rule oracle for tiny posets


def _pair_weight(P: LabeledPoset, a: int, b: int, n: int) -> np.ndarray:
    """W[i, j]: fraction of the (i, j) cell pair consistent with the order of a, b."""
    idx = np.arange(n)
    lt = (idx[:, None] < idx[None, :]).astype(float)
    eq = np.eye(n) * 0.5
    if P.below[b] >> a & 1:
        return lt + eq
    if P.below[a] >> b & 1:
        return lt.T + eq
    return np.ones((n, n))


def _midpoint(P: LabeledPoset, n: int) -> float:
    t = (np.arange(n) + 0.5) / n
    fs = [(1 / t if f is Letter.E0 else 1 / (1 - t)) / n for f in P.forms]
    size = P.size
    if size == 1:
        return float(fs[0].sum())
    if size == 2:
        return float(fs[0] @ _pair_weight(P, 0, 1, n) @ fs[1])
    W01, W12, W02 = (_pair_weight(P, a, b, n) for a, b in ((0, 1), (1, 2), (0, 2)))
    total = float((((fs[0][:, None] * W01 * fs[1][None, :]) @ (W12 * fs[2][None, :])) * W02).sum())
    # all-three-equal cells: the pairwise product is wrong there, the true share is e(P)/3!
    diag = fs[0] * fs[1] * fs[2]
    naive = np.diag(W01) * np.diag(W12) * np.diag(W02)
    return total + float((diag * (count_linear_extensions(P) / 6 - naive)).sum())


def riemann_oracle(P: LabeledPoset, grid: int = 512) -> NumericValue:
    """Midpoint-rule estimate of a convergent poset integral, |V| <= 3.

    The error bound is 2 |E(grid) - E(grid/2)|: an empirical estimate, not
    a rigorous one, reported with ``rigorous=False``.
    """
    if not 1 <= P.size <= 3:
        raise InvalidInput(f"riemann_oracle handles 1 to 3 vertices, got {P.size}")
    if not poset_is_convergent(P):
        raise DivergentInput("riemann_oracle needs a convergent poset")
    if grid < 4 or grid % 2:
        raise InvalidInput("grid must be an even integer >= 4")
    fine, coarse = _midpoint(P, grid), _midpoint(P, grid // 2)
    return NumericValue(mpmath.mpf(fine), mpmath.mpf(2 * abs(fine - coarse)), rigorous=False)


# ---------------------------------------------------------------------------
# rigorous tails of the cube-truncated series


def _log_power_tail(p: int, q, M: int) -> mpmath.mpf:
    """Upper bound for sum_{m>M} (1+ln m)^p / (p! m^q), q > 1.

    Compares with the integral once the summand is decreasing, i.e. once
    q (1 + ln m) >= p; earlier terms are summed directly.
    """
    with mpmath.workprec(96):
        q = mpmath.mpf(q)
        if q <= 1:
            raise InvalidInput("tail exponent must exceed 1")
        fp = mpmath.factorial(p)
        total = mpmath.mpf(0)
        X = M
        while q * (1 + mpmath.log(X)) < p:
            X += 1
            total += (1 + mpmath.log(X)) ** p / (fp * mpmath.mpf(X) ** q)
        u = (q - 1) * (1 + mpmath.log(X))
        integral = mpmath.mpf(X) ** (1 - q) / (q - 1) ** (p + 1) * sum(u**j / mpmath.factorial(j) for j in range(p + 1))
        return (total + integral) * (1 + mpmath.mpf(2) ** -60)


def connected_sum_tail_bound(spec: "_beta.ConnectedSumSpec", M: int) -> mpmath.mpf:
    """Bound on Z(k; l) minus its partial sum over m_r, n_s <= M.

    The m_r-weight is at most (1+ln m)^(r-1) / ((r-1)! m^k_r) and summing the
    coupling against the whole l-side gives at most m^-s, and symmetrically.
    """
    k, l = spec.k, spec.l
    r, s = len(k), len(l)
    return _log_power_tail(r - 1, k[-1] + s, M) + _log_power_tail(s - 1, l[-1] + r, M)


def _zeta_real(x) -> mpmath.mpf:
    with mpmath.workprec(96):
        return mpmath.zeta(x) * (1 + mpmath.mpf(2) ** -60)


def series_tail_bound(family, M: int, params: Mapping | None = None) -> mpmath.mpf:
    """Rigorous bound on |S - S_M| for :func:`polymzv.beta.eq_series_partial`."""
    fam = _beta.SeriesFamily(family)
    p = _beta.series_params(fam, params)
    F = _beta.SeriesFamily
    if M < 1:
        raise InvalidInput("M must be >= 1")
    if fam in (F.EQ4, F.EQ5, F.EQ6):
        k, l = p.get("k", 1), p.get("l", 1)
        # n1 > M: the n2-sum is at most 1/n1^2;  n2 > M: the n1-sum is at most 1/n2
        return _log_power_tail(0, k + 2, M) + _log_power_tail(0, l + 1, M)
    if fam is F.EQ7:
        k, l = p["k"], p["l"]
        return _log_power_tail(0, k + l + 1, M) + _log_power_tail(l - 1, 2, M)
    ks = p["k"]
    with mpmath.workprec(96):
        if fam is F.COR_TRIPLE:
            # 1/(s_1..s_r) <= prod 1/n_i
            out = mpmath.mpf(0)
            for j, kj in enumerate(ks):
                rest = mpmath.fprod(_zeta_real(ki + 1) for i, ki in enumerate(ks) if i != j)
                out += _log_power_tail(0, kj + 1, M) * rest
            return out
        if fam is F.COR_ZHO:
            # AM-GM: (n_1+..+n_s)^r >= s^r prod n_i^(r/s)
            s, r = len(ks), p["r"]
            a = [k + mpmath.mpf(r) / s for k in ks]
            out = mpmath.mpf(0)
            for j in range(s):
                rest = mpmath.fprod(_zeta_real(a[i]) for i in range(s) if i != j)
                out += _log_power_tail(0, a[j], M) * rest
            return out * mpmath.mpf(s) ** -r
        # cor-shifted: 1/(t_1..t_{r-1} t_r^2) <= prod 1/m_i * 1/t_r and t_r >= r (prod m_i)^(1/r);
        # the inner n_i-sum is at most zeta(k_i) or 1 + ln m
        r = len(ks)
        q = 1 + mpmath.mpf(1) / r
        out = mpmath.mpf(0)
        tails, fulls = [], []
        for k in ks:
            if k >= 2:
                zk = _zeta_real(k)
                tails.append(zk * _log_power_tail(0, q, M))
                fulls.append(zk * (1 + _log_power_tail(0, q, 1)))
            else:
                tails.append(_log_power_tail(1, q, M))
                fulls.append(mpmath.mpf(1) + _log_power_tail(1, q, 1))
        for j in range(r):
            out += tails[j] * mpmath.fprod(fulls[i] for i in range(r) if i != j)
        return out / r
