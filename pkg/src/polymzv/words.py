"""Words over the two-letter alphabet {dt/t, dt/(1-t)} and their shuffle algebra.

A word is stored as a plain ``str`` over ``"0"`` (dt/t) and ``"1"``
(dt/(1-t)), read left to right in integration order, innermost variable
first.  ``"110"`` is the integrand of zeta(1,2).  Keeping words as strings
makes them hashable, cheap to slice and directly usable as JSON keys.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InvalidInput

__all__ = [
    "Letter",
    "Word",
    "Composition",
    "FormalSum",
    "as_word",
    "as_composition",
    "word_from_composition",
    "composition_from_word",
    "is_convergent",
    "shuffle",
    "shuffle_sum",
    "shuffle_mass",
    "shuffle_all",
    "reverse_complement",
    "parse_composition",
    "format_composition",
    "parse_rational",
    "format_rational",
    "words_of_length",
    "convergent_words",
]

Word = str
Composition = tuple[int, ...]


class Letter(str, Enum):
    E0 = "0"  # dt/t
    E1 = "1"  # dt/(1-t)

    def complement(self) -> "Letter":
        return Letter.E1 if self is Letter.E0 else Letter.E0

    def __str__(self) -> str:
        return self.value


_COMPLEMENT = str.maketrans("01", "10")


def as_word(w) -> Word:
    """Coerce a string, Letter sequence or 0/1 integer sequence to a word string."""
    if isinstance(w, Letter):
        return w.value
    if isinstance(w, str):
        s = w
    else:
        s = "".join(x.value if isinstance(x, Letter) else str(x) for x in w)
    if s.strip("01"):
        raise InvalidInput(f"not a word over {{0,1}}: {w!r}")
    return s


def as_composition(parts) -> Composition:
    c = tuple(int(k) for k in parts)
    if not c:
        raise InvalidInput("a composition needs at least one part")
    if any(k < 1 for k in c):
        raise InvalidInput(f"composition parts must be >= 1: {c}")
    return c


def word_from_composition(c) -> Word:
    """(k1,...,kr) -> 1 0^(k1-1) 1 0^(k2-1) ... ; (1,2) -> '110'."""
    c = as_composition(c)
    return "".join("1" + "0" * (k - 1) for k in c)


def composition_from_word(w) -> Composition:
    w = as_word(w)
    if not w:
        raise InvalidInput("the empty word has no composition")
    if w[0] != "1":
        raise InvalidInput(f"word must start with 1 to be read as a composition: {w!r}")
    return tuple(len(block) + 1 for block in w[1:].split("1"))


def is_convergent(w) -> bool:
    w = as_word(w)
    return not w or (w[0] == "1" and w[-1] == "0")


def reverse_complement(w) -> Word:
    """Duality t -> 1-t: reverse the word and swap the letters."""
    return as_word(w)[::-1].translate(_COMPLEMENT)


def words_of_length(n: int) -> Iterator[Word]:
    for i in range(2**n):
        yield format(i, f"0{n}b") if n else ""


def convergent_words(max_length: int, min_length: int = 2) -> Iterator[Word]:
    for n in range(min_length, max_length + 1):
        for w in words_of_length(n):
            if is_convergent(w):
                yield w


_ZETA_RE = re.compile(r"^\s*(?:zeta)?\s*\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)\s*$")


def parse_composition(text: str) -> Composition:
    """Parse ``"zeta(1,2)"`` or ``"(1,2)"``."""
    m = _ZETA_RE.match(text)
    if not m:
        raise InvalidInput(f"cannot parse composition: {text!r}")
    return as_composition(int(p) for p in m.group(1).split(","))


def format_composition(c) -> str:
    return "zeta(" + ",".join(str(k) for k in as_composition(c)) + ")"


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class FormalSum(Mapping):
    """Finitely supported map word -> Fraction with zero coefficients dropped.

    Immutable; supports ``+``, ``-``, scalar ``*`` and equality.  The empty
    word ``""`` is the unit.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict[str, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                w = as_word(w)
                c = parse_rational(c)
                acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict) -> "FormalSum":
        obj = cls.__new__(cls)
        obj._terms = {w: c for w, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls._from_clean({})

    @classmethod
    def unit(cls) -> "FormalSum":
        return cls._from_clean({"": Fraction(1)})

    @classmethod
    def of(cls, w, coeff=1) -> "FormalSum":
        return cls({as_word(w): coeff})

    def __getitem__(self, w) -> Fraction:
        return self._terms[w]

    def coefficient(self, w) -> Fraction:
        return self._terms.get(as_word(w), Fraction(0))

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return FormalSum._from_clean(acc)

    def __neg__(self) -> "FormalSum":
        return FormalSum._from_clean({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "FormalSum":
        if isinstance(scalar, FormalSum):
            return NotImplemented
        s = parse_rational(scalar)
        return FormalSum._from_clean({w: c * s for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "FormalSum":
        return self * (1 / parse_rational(scalar))

    def mass(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def is_convergent(self) -> bool:
        return all(is_convergent(w) for w in self._terms)

    def sorted_items(self) -> list[tuple[str, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def to_json(self) -> dict[str, str]:
        return {w: format_rational(c) for w, c in self.sorted_items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "FormalSum":
        return cls({w: parse_rational(c) for w, c in obj.items()})

    def pretty(self) -> str:
        """Human-readable form such as ``2*zeta(1,2) - zeta(2)``."""
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_items():
            if not w:
                name = "1"
            elif is_convergent(w):
                name = format_composition(composition_from_word(w))
            else:
                name = f"I({w})"
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{format_rational(mag)}*{name}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"FormalSum({self.to_json()!r})"


@lru_cache(maxsize=None)
def _shuffle_items(u: str, v: str) -> tuple[tuple[str, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[str, int] = {}
    # xu ⧢ yv = x(u ⧢ yv) + y(xu ⧢ v)
    for w, c in _shuffle_items(u[1:], v):
        key = u[0] + w
        acc[key] = acc.get(key, 0) + c
    for w, c in _shuffle_items(u, v[1:]):
        key = v[0] + w
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def shuffle(u, v) -> FormalSum:
    """All order-preserving interleavings of ``u`` and ``v`` with multiplicity."""
    u, v = as_word(u), as_word(v)
    if len(u) > len(v):
        u, v = v, u
    return FormalSum._from_clean({w: Fraction(c) for w, c in _shuffle_items(u, v)})


def shuffle_sum(a: FormalSum, b: FormalSum) -> FormalSum:
    acc: dict[str, Fraction] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in _shuffle_items(*sorted((u, v), key=len)):
                acc[w] = acc.get(w, 0) + cu * cv * c
    return FormalSum._from_clean(acc)


def shuffle_mass(u, v) -> int:
    return comb(len(u) + len(v), len(u))


def shuffle_all(words: Iterable) -> FormalSum:
    out = FormalSum.unit()
    for w in words:
        out = shuffle_sum(out, FormalSum.of(w))
    return out
