"""End-to-end identity checks, runnable from the CLI and the acceptance tests.

Each check returns a :class:`CheckResult` with the measured deltas and the
tolerance they were held to.  Independent references come from mpmath's
Riemann zeta, closed forms, brute-force enumeration or a second algorithm,
never from the code path being checked.
"""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import beta, numeric, polylog, poset, regularization, words
from .errors import UnknownCatalog
from .words import FormalSum

__all__ = [
    "VerifyConfig",
    "CheckResult",
    "CATALOG",
    "run_check",
    "run_catalog",
    "example3_poset",
    "example5_poset",
    "example5_series_partial",
    "example5_series_estimate",
    "series_integrand",
    "random_poset",
]


@dataclass(frozen=True)
class VerifyConfig:
    precision: numeric.PrecisionConfig = field(default_factory=numeric.PrecisionConfig)
    seed: int = 20240601
    max_extensions: int = poset.DEFAULT_MAX_EXTENSIONS


@dataclass
class CheckResult:
    name: str
    criterion: int
    passed: bool
    summary: str
    measured: dict[str, str] = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.criterion:>2} {self.name}: {self.summary} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "passed": self.passed,
            "summary": self.summary,
            "measured": self.measured,
            "seconds": round(self.seconds, 4),
        }


def _e(x) -> str:
    return mpmath.nstr(mpmath.mpf(x), 3)


# ---------------------------------------------------------------------------
# fixtures


def example3_poset() -> poset.LabeledPoset:
    return poset.build_poset([("t1", "1"), ("t2", "1"), ("t3", "0")], [("t1", "t3"), ("t2", "t3")])


def example5_poset() -> poset.LabeledPoset:
    verts = [("t1", "1"), ("t2", "1"), ("t3", "1"), ("t4", "0"), ("t5", "0")]
    rels = [("t1", "t2"), ("t2", "t3"), ("t3", "t5"), ("t1", "t4"), ("t4", "t5")]
    return poset.build_poset(verts, rels)


def chain_poset(w: str) -> poset.LabeledPoset:
    ids = [f"t{i}" for i in range(1, len(w) + 1)]
    return poset.build_poset(list(zip(ids, w)), list(zip(ids, ids[1:])))


def example5_series_partial(M: int) -> float:
    """Partial sum, n2, n3, n4 <= M, of the triple series printed for the 5-vertex example."""
    n = np.arange(1, M + 1, dtype=float)
    b, c = n[:, None], n[None, :]
    total = 0.0
    for a in n:
        s = a + b + c
        terms = (
            1 / (a * (a + b) * c**2 * s)
            - 1 / ((a + c) * a * b * c * s)
            - 1 / (a * (a + b) * s**2 * c)
            + 1 / (a * b * s**2 * c)
        )
        total += float(terms.sum())
    return total


def example5_series_estimate(M: int = 60) -> tuple[float, float, float]:
    """(S_M, extrapolated limit, tail estimate) for the 5-vertex series.

    The tail decays like log^2(M)/M, so the limit is fitted from partial sums
    at M, 2M, 4M, 8M with the model S + (a log^2 M + b log M + c)/M.  The
    tail estimate is |limit - S_M| padded by the spread of two reduced fits.
    This is an empirical estimate, not a bound.
    """
    Ms = [M, 2 * M, 4 * M, 8 * M]
    vals = [example5_series_partial(m) for m in Ms]

    def fit(ms, vs, basis):
        A = np.array([[1.0] + [f(m) for f in basis] for m in ms])
        return float(np.linalg.solve(A, np.array(vs))[0])

    L = np.log
    full = fit(Ms, vals, [lambda m: L(m) ** 2 / m, lambda m: L(m) / m, lambda m: 1 / m])
    alt1 = fit(Ms[1:], vals[1:], [lambda m: L(m) ** 2 / m, lambda m: L(m) / m])
    alt2 = fit(Ms[1:], vals[1:], [lambda m: L(m) / m, lambda m: 1 / m])
    spread = max(abs(full - alt1), abs(full - alt2))
    return vals[0], full, abs(full - vals[0]) + 2 * spread


def series_integrand(family, params=None) -> polylog.IntegrandSpec:
    """The polylog integrand whose integral each series family computes."""
    fam = beta.SeriesFamily(family)
    p = beta.series_params(fam, params)
    F = beta.SeriesFamily
    if fam is F.EQ4:
        return polylog.simple_spec([([(1,)], [(1,)], "0")])
    if fam in (F.EQ5, F.EQ6):
        return polylog.simple_spec([([(p["k"],)], [(p.get("l", 1),)], "0")])
    if fam is F.EQ7:
        return polylog.simple_spec([([(p["k"],)], [(1,) * p["l"]], "0")])
    ks = p["k"]
    if fam is F.COR_TRIPLE:
        return polylog.simple_spec([([(k,)], [], "0") for k in ks])
    if fam is F.COR_SHIFTED:
        return polylog.simple_spec([([(k,)], [], "1") for k in ks] + [([], [], "0")])
    return polylog.simple_spec([([(k,) for k in ks], [], "0")] + [([], [], "0")] * (p["r"] - 1))


def random_poset(rng: random.Random, n: int, density: float | None = None) -> poset.LabeledPoset:
    """Random labelled poset: a hidden random order plus random forward edges."""
    density = rng.uniform(0.1, 0.6) if density is None else density
    hidden = list(range(n))
    rng.shuffle(hidden)
    ids = [f"v{i}" for i in range(n)]
    rels = [
        (ids[hidden[i]], ids[hidden[j]]) for i in range(n) for j in range(i + 1, n) if rng.random() < density
    ]
    return poset.build_poset([(v, rng.choice("01")) for v in ids], rels)


# ---------------------------------------------------------------------------
# checks


def _zeta3() -> mpmath.mpf:
    return mpmath.zeta(3)


def check_example3(cfg: VerifyConfig) -> CheckResult:
    t0 = time.perf_counter()
    with mpmath.workprec(cfg.precision.prec_bits):
        value = poset.evaluate(example3_poset())
        num = numeric.formal_sum_value(value, cfg.precision)
        elapsed = time.perf_counter() - t0
        delta = abs(num.value - 2 * _zeta3())
    exact_ok = value == FormalSum.of("110", 2)
    ok = exact_ok and delta <= 1e-12 and elapsed < 1
    return CheckResult(
        "example3",
        1,
        ok,
        f"result {value.pretty()}, |value - 2 zeta(3)| = {_e(delta)} (tol 1e-12), runtime < 1s",
        {"result": str(value.to_json()), "delta": _e(delta), "error_bound": _e(num.error_bound)},
        elapsed,
    )


def check_example5(cfg: VerifyConfig, M: int = 60) -> CheckResult:
    t0 = time.perf_counter()
    with mpmath.workprec(cfg.precision.prec_bits):
        value = poset.evaluate(example5_poset())
        num = numeric.formal_sum_value(value, cfg.precision)
        partial, limit, tail = example5_series_estimate(M)
        delta = abs(float(num.value) - partial)
    elapsed = time.perf_counter() - t0
    expected = FormalSum({"10110": 1, "11010": 1, "11100": 1})
    within_tail = delta <= tail
    within_abs = delta <= 1e-6
    ok = value == expected and within_tail and within_abs and elapsed < 30
    return CheckResult(
        "example5",
        2,
        ok,
        f"result {value.pretty()} = {mpmath.nstr(num.value, 12)}; series S_{M} = {partial:.10f}, "
        f"|value - S_{M}| = {delta:.3e} vs tail estimate {tail:.3e} ({'ok' if within_tail else 'exceeded'}) "
        f"and 1e-6 ({'ok' if within_abs else 'exceeded'}); series extrapolates to {limit:.6f}",
        {
            "result": str(value.to_json()),
            "numeric": mpmath.nstr(num.value, 15),
            "partial_sum": repr(partial),
            "series_limit_estimate": repr(limit),
            "tail_estimate": f"{tail:.3e}",
            "delta": f"{delta:.3e}",
        },
        elapsed,
    )


def check_eq4(cfg: VerifyConfig, M: int = 200) -> CheckResult:
    t0 = time.perf_counter()
    partial = beta.eq_series_partial(beta.SeriesFamily.EQ4, M)
    bound = numeric.series_tail_bound(beta.SeriesFamily.EQ4, M)
    elapsed = time.perf_counter() - t0
    with mpmath.workprec(cfg.precision.prec_bits):
        delta = _zeta3() - mpmath.mpf(partial.numerator) / partial.denominator
    ok = 0 <= delta <= bound and elapsed < 10
    nominal = "met" if delta <= 1e-4 else "not met"
    return CheckResult(
        "eq4",
        3,
        ok,
        f"|S_{M} - zeta(3)| = {_e(delta)} <= reported tail bound {_e(bound)}; nominal 1e-4 {nominal}",
        {"partial_sum": mpmath.nstr(mpmath.mpf(partial.numerator) / partial.denominator, 20), "delta": _e(delta), "bound": _e(bound)},
        elapsed,
    )


EQ_FAMILY_CASES: tuple[tuple[str, dict], ...] = (
    ("eq5", {"k": 2, "l": 2}),
    ("eq5", {"k": 2, "l": 3}),
    ("eq5", {"k": 3, "l": 2}),
    ("eq6", {"k": 1}),
    ("eq6", {"k": 2}),
    ("eq6", {"k": 3}),
    ("eq7", {"k": 1, "l": 2}),
    ("eq7", {"k": 2, "l": 2}),
)


def check_eq_families(cfg: VerifyConfig, M: int = 200) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    bad = []
    measured = {}
    with mpmath.workprec(cfg.precision.prec_bits):
        for fam, params in EQ_FAMILY_CASES:
            target = polylog.integral_value(series_integrand(fam, params))
            ref = numeric.formal_sum_value(target, cfg.precision)
            partial = beta.eq_series_partial(fam, M, params)
            bound = numeric.series_tail_bound(fam, M, params)
            delta = abs(ref.value - mpmath.mpf(partial.numerator) / partial.denominator)
            ratio = float(delta / bound)
            worst = max(worst, ratio)
            key = f"{fam}{params}"
            measured[key] = f"{target.pretty()}: delta {_e(delta)}, bound {_e(bound)}"
            if delta > 10 * bound + ref.error_bound:
                bad.append(key)
    ok = not bad
    return CheckResult(
        "eq-families",
        4,
        ok,
        f"{len(EQ_FAMILY_CASES)} series at M={M}; worst delta/bound = {worst:.3f} (tol 10)"
        + (f"; failing {bad}" if bad else ""),
        measured,
        time.perf_counter() - t0,
    )


def check_conv_splits(cfg: VerifyConfig, max_weight: int = 5) -> CheckResult:
    t0 = time.perf_counter()
    count, bad = 0, []
    for w in words.convergent_words(max_weight, min_length=3):
        for i in range(2, len(w)):
            a, b, letter = polylog.connected_sum_split(w, i)
            got = polylog.integral_value(polylog.spec_from_split(a, b, letter))
            count += 1
            if got != FormalSum.of(w):
                bad.append((w, i))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    return CheckResult(
        "conv-splits",
        5,
        ok,
        f"{count} (word, split) pairs up to weight {max_weight}, {len(bad)} mismatches",
        {"pairs": str(count), "mismatches": str(bad[:5])},
        elapsed,
    )


def check_shuffle_reg(cfg: VerifyConfig, max_len: int = 8) -> CheckResult:
    t0 = time.perf_counter()
    all_words = [w for n in range(max_len + 1) for w in words.words_of_length(n)]
    hom_fail = fix_fail = rec_fail = 0
    pairs = 0
    for u in all_words:
        for v in all_words:
            if len(u) + len(v) > max_len or len(u) > len(v):
                continue
            pairs += 1
            lhs = regularization.reg_sum(words.shuffle(u, v))
            rhs = words.shuffle_sum(regularization.reg(u), regularization.reg(v))
            hom_fail += lhs != rhs
    for w in all_words:
        if words.is_convergent(w):
            fix_fail += regularization.reg(w) != FormalSum.of(w)
        rec_fail += regularization.reconstruct(regularization.decompose(w)) != FormalSum.of(w)
    ok = hom_fail == fix_fail == rec_fail == 0
    return CheckResult(
        "shuffle-reg",
        6,
        ok,
        f"{pairs} unordered pairs with |u|+|v| <= {max_len}: {hom_fail} homomorphism failures; "
        f"{fix_fail} fixed-point and {rec_fail} reconstruction failures over {len(all_words)} words",
        {"pairs": str(pairs), "words": str(len(all_words))},
        time.perf_counter() - t0,
    )


def check_numeric_shuffle(cfg: VerifyConfig, n_pairs: int = 50) -> CheckResult:
    t0 = time.perf_counter()
    rng = random.Random(cfg.seed)
    pool = list(words.convergent_words(4))
    bad = []
    worst = mpmath.mpf(0)
    with mpmath.workprec(cfg.precision.prec_bits):
        for _ in range(n_pairs):
            u, v = rng.choice(pool), rng.choice(pool)
            prod = numeric.zeta_word(u, cfg.precision) * numeric.zeta_word(v, cfg.precision)
            rhs = numeric.formal_sum_value(words.shuffle(u, v), cfg.precision)
            delta = abs(prod.value - rhs.value)
            worst = max(worst, delta)
            if delta > prod.error_bound + rhs.error_bound:
                bad.append((u, v))
        sh = words.shuffle("10", "10")
        identity_exact = sh == FormalSum({"1010": 2, "1100": 4})
        z2sq = mpmath.zeta(2) ** 2
        d_instance = abs(numeric.formal_sum_value(sh, cfg.precision).value - z2sq)
    ok = not bad and identity_exact and d_instance <= 1e-12
    return CheckResult(
        "numeric-shuffle",
        7,
        ok,
        f"{n_pairs} random pairs, worst |delta| = {_e(worst)}, {len(bad)} outside combined bounds; "
        f"|2 zeta(2,2) + 4 zeta(1,3) - zeta(2)^2| = {_e(d_instance)} (tol 1e-12)",
        {"worst": _e(worst), "instance_delta": _e(d_instance), "failing": str(bad[:5])},
        time.perf_counter() - t0,
    )


def _bump(idx, i, da, db):
    out = list(idx)
    a, b = out[i]
    out[i] = (a + da, b + db)
    return out


def _merge(idx, i):
    """Replace entries i, i+1 by their componentwise sum."""
    (a1, b1), (a2, b2) = idx[i], idx[i + 1]
    return list(idx[:i]) + [(a1 + a2, b1 + b2)] + list(idx[i + 2 :])


def beta_identity_failures(idx) -> list[str]:
    """Names of the exact Beta identities that fail on ``idx``."""
    B = beta.beta_exact
    idx = list(idx)
    n = len(idx)
    fails = []
    base = B(idx)
    for i in range(n):
        if base != B(_bump(idx, i, 1, 0)) + B(_bump(idx, i, 0, 1)):
            fails.append(f"split@{i}")
    if base != B([(b, a) for a, b in reversed(idx)]):
        fails.append("reflection")
    if n >= 2:
        for i in range(n):
            a, b = idx[i]
            lhs = B(_bump(idx, i, 1, 0)) / a - B(_bump(idx, i, 0, 1)) / b
            if i == 0:
                rhs = -B(_merge(idx, 0)) / (a * b)
            elif i == n - 1:
                rhs = B(_merge(idx, n - 2)) / (a * b)
            else:
                rhs = -(B(_merge(idx, i)) - B(_merge(idx, i - 1))) / (a * b)
            if lhs != rhs:
                fails.append(f"parts@{i}")
    ones = [(a, 1) for a, _ in idx]
    if B(ones) != beta.beta_product_formula([a for a, _ in idx]):
        fails.append("product")
    return fails


def check_beta_identities(cfg: VerifyConfig, n_indices: int = 200) -> CheckResult:
    t0 = time.perf_counter()
    rng = random.Random(cfg.seed)
    bad = []
    for _ in range(n_indices):
        idx = [(rng.randint(1, 5), rng.randint(1, 5)) for _ in range(rng.randint(1, 4))]
        fails = beta_identity_failures(idx)
        if fails:
            bad.append((idx, fails))
    single_bad = [
        (n1, n2)
        for n1 in range(1, 12)
        for n2 in range(1, 13 - n1)
        if beta.beta_single_formula(n1, n2) != beta.beta_exact([(n1, n2 + 1)])
    ]
    ok = not bad and not single_bad
    return CheckResult(
        "beta-identities",
        8,
        ok,
        f"{n_indices} random indices: {len(bad)} with failing identities; "
        f"single-variable formula mismatches for n1+n2 <= 12: {len(single_bad)}",
        {"failing": str(bad[:3]), "single_mismatch": str(single_bad[:3])},
        time.perf_counter() - t0,
    )


def check_extensions(cfg: VerifyConfig, n_posets: int = 100, max_size: int = 7) -> CheckResult:
    t0 = time.perf_counter()
    rng = random.Random(cfg.seed)
    bad = []
    for trial in range(n_posets):
        P = random_poset(rng, rng.randint(1, max_size))
        got = set(poset.linear_extensions(P, cfg.max_extensions))
        brute = {
            perm
            for perm in itertools.permutations(P.vertices)
            if all(not P.less(perm[j], perm[i]) for i in range(len(perm)) for j in range(i + 1, len(perm)))
        }
        words_brute = FormalSum(
            (("".join(P.form(v).value for v in perm), 1) for perm in brute)
        )
        if got != brute or poset.count_linear_extensions(P) != len(brute) or poset.extension_words(P) != words_brute:
            bad.append(trial)
    return CheckResult(
        "extensions",
        9,
        not bad,
        f"{n_posets} random posets with |V| <= {max_size}: {len(bad)} disagree with permutation filtering",
        {"failing_trials": str(bad[:5])},
        time.perf_counter() - t0,
    )


def check_riemann(cfg: VerifyConfig, grid: int = 512) -> CheckResult:
    t0 = time.perf_counter()
    cases = {"zeta(2)": chain_poset("10"), "zeta(3)": chain_poset("100"), "example3": example3_poset()}
    bad = []
    measured = {}
    for name, P in cases.items():
        est = numeric.riemann_oracle(P, grid)
        ref = numeric.formal_sum_value(poset.evaluate(P), cfg.precision)
        delta = abs(est.value - ref.value)
        measured[name] = f"delta {_e(delta)}, grid-doubling estimate {_e(est.error_bound)}"
        if delta > est.error_bound + ref.error_bound:
            bad.append(name)
    return CheckResult(
        "riemann",
        10,
        not bad,
        f"grid {grid}: " + "; ".join(f"{k} {v}" for k, v in measured.items()),
        measured,
        time.perf_counter() - t0,
    )


CATALOG: dict[str, Callable[[VerifyConfig], CheckResult]] = {
    "example3": check_example3,
    "example5": check_example5,
    "eq4": check_eq4,
    "eq-families": check_eq_families,
    "conv-splits": check_conv_splits,
    "shuffle-reg": check_shuffle_reg,
    "numeric-shuffle": check_numeric_shuffle,
    "beta-identities": check_beta_identities,
    "extensions": check_extensions,
    "riemann": check_riemann,
}


def run_check(name: str, cfg: VerifyConfig | None = None) -> CheckResult:
    if name not in CATALOG:
        raise UnknownCatalog(f"unknown check {name!r}; choose from {', '.join(CATALOG)} or 'all'")
    return CATALOG[name](cfg or VerifyConfig())


def run_catalog(name: str = "all", cfg: VerifyConfig | None = None) -> list[CheckResult]:
    names = list(CATALOG) if name == "all" else [name]
    return [run_check(n, cfg) for n in names]
