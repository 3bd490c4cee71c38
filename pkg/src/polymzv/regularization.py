"""Shuffle regularization of divergent words.

The shuffle algebra is a polynomial ring over the convergent words in the
two single-letter classes ``X0 = [0]`` and ``X1 = [1]``.  Every word has a
unique expansion

    w = sum_{i,j} c_ij ⧢ [0]^{⧢i} ⧢ [1]^{⧢j},    c_ij convergent,

and the regularized value of ``w`` is the constant coefficient ``c_00``.
Under the cutoff integral over (eps, 1-eta) the classes behave like
``X0 ~ -log eps`` and ``X1 ~ -log eta``, so ``c_00`` is the value of the
asymptotic polynomial at ``log eps = log eta = 0``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .words import FormalSum, as_word, is_convergent, shuffle, shuffle_sum

__all__ = ["RegularizedValue", "decompose", "reg", "reg_sum", "reconstruct"]

# (i, j) -> {word: coeff}; i is the power of X0 = [0], j the power of X1 = [1]
_Poly = dict[tuple[int, int], dict[str, Fraction]]


@dataclass(frozen=True)
class RegularizedValue:
    constant: FormalSum
    terms: Mapping[tuple[int, int], FormalSum] = field(default_factory=dict)

    def coefficient(self, i: int, j: int) -> FormalSum:
        return self.terms.get((i, j), FormalSum.zero())

    def to_json(self) -> dict:
        return {
            "constant": self.constant.to_json(),
            "terms": [
                {"i": i, "j": j, "coeff": self.terms[(i, j)].to_json()}
                for (i, j) in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "RegularizedValue":
        constant = FormalSum.from_json(obj["constant"])
        terms = {(int(t["i"]), int(t["j"])): FormalSum.from_json(t["coeff"]) for t in obj.get("terms", [])}
        terms = {k: v for k, v in terms.items() if v}
        if constant:
            terms.setdefault((0, 0), constant)
        return cls(constant=constant, terms=terms)


def _add_into(acc: _Poly, poly, scale: Fraction, shift: tuple[int, int] = (0, 0)) -> None:
    di, dj = shift
    for (i, j), coeffs in poly:
        slot = acc.setdefault((i + di, j + dj), {})
        for w, c in coeffs:
            slot[w] = slot.get(w, 0) + scale * c


def _freeze(acc: _Poly):
    out = []
    for key in sorted(acc):
        items = tuple((w, c) for w, c in acc[key].items() if c != 0)
        if items:
            out.append((key, items))
    return tuple(out)


@lru_cache(maxsize=None)
def _decompose(w: str):
    if is_convergent(w):
        return (((0, 0), ((w, Fraction(1)),)),)
    if w.endswith("1"):
        # strip one trailing 1: v ⧢ [1] = b*w + (words with fewer trailing 1s)
        v, letter, shift = w[:-1], "1", (0, 1)
    else:
        # w starts with 0 and ends with 0: [0] ⧢ v = a*w + (words with fewer leading 0s)
        v, letter, shift = w[1:], "0", (1, 0)
    prod = shuffle(v, letter)
    mult = prod[w]
    acc: _Poly = {}
    _add_into(acc, _decompose(v), Fraction(1) / mult, shift)
    for other, c in prod.items():
        if other != w:
            _add_into(acc, _decompose(other), -c / mult)
    return _freeze(acc)


def decompose(w) -> RegularizedValue:
    """Expand ``w`` as a polynomial in X0 = [0], X1 = [1] over convergent words."""
    poly = _decompose(as_word(w))
    terms = {key: FormalSum._from_clean(dict(items)) for key, items in poly}
    return RegularizedValue(constant=terms.get((0, 0), FormalSum.zero()), terms=terms)


def reg(w) -> FormalSum:
    """Regularized value of a single word (constant term of :func:`decompose`)."""
    for key, items in _decompose(as_word(w)):
        if key == (0, 0):
            return FormalSum._from_clean(dict(items))
    return FormalSum.zero()


def reg_sum(a: FormalSum) -> FormalSum:
    acc: dict[str, Fraction] = {}
    for w, c in a.items():
        for key, items in _decompose(w):
            if key != (0, 0):
                continue
            for u, cu in items:
                acc[u] = acc.get(u, 0) + c * cu
    return FormalSum._from_clean(acc)


def reconstruct(value: RegularizedValue) -> FormalSum:
    """Reassemble ``sum c_ij ⧢ [0]^{⧢i} ⧢ [1]^{⧢j}``; inverse of :func:`decompose`."""
    out = FormalSum.zero()
    for (i, j), coeff in value.terms.items():
        # [x]^{⧢n} = n! * x^n
        power = FormalSum.of("0" * i, factorial(i))
        power = shuffle_sum(power, FormalSum.of("1" * j, factorial(j)))
        out = out + shuffle_sum(coeff, power)
    return out
