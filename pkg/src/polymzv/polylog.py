"""Iterated integrals of products of one-variable multiple polylogarithms.

An integrand ``f_1 omega_1 ... f_N omega_N`` with every ``f_i`` a monic
monomial in ``Li_c(z)`` and ``Li_c(1-z)`` compiles to a poset:

* a spine ``z_1 < z_2 < ... < z_N`` carrying the forms omega_i;
* for each ``Li_c(z)`` factor of ``f_i`` a fresh chain below ``z_i``
  carrying the letters of ``c`` (0 < t_1 < ... < t_n < z);
* for each ``Li_c(1-z)`` factor a fresh chain above ``z_i`` carrying the
  complemented letters in reverse, since substituting t -> 1-t turns
  0 < t_1 < ... < t_n < 1-z into z < s_n < ... < s_1 < 1.

The integral is then the poset integral of that poset.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import DivergentInput, InvalidInput
from .poset import LabeledPoset, build_poset, evaluate, evaluate_regularized, poset_is_convergent
from .words import (
    Composition,
    FormalSum,
    Letter,
    as_composition,
    as_word,
    composition_from_word,
    is_convergent,
    reverse_complement,
    word_from_composition,
)

__all__ = [
    "PolylogFactor",
    "IntegrandSpec",
    "build_poset",
    "integral_value",
    "integral_value_reg",
    "check_convergence",
    "connected_sum_split",
    "spec_from_split",
    "simple_spec",
    "load_spec",
]

_build_labeled_poset = build_poset


@dataclass(frozen=True)
class PolylogFactor:
    """Monic monomial prod Li_c(z) * prod Li_c(1-z); repeats mean powers."""

    at_z: tuple[Composition, ...] = ()
    at_1mz: tuple[Composition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "at_z", tuple(as_composition(c) for c in self.at_z))
        object.__setattr__(self, "at_1mz", tuple(as_composition(c) for c in self.at_1mz))

    @property
    def weight(self) -> int:
        return sum(sum(c) for c in self.at_z) + sum(sum(c) for c in self.at_1mz)

    def __mul__(self, other: "PolylogFactor") -> "PolylogFactor":
        return PolylogFactor(self.at_z + other.at_z, self.at_1mz + other.at_1mz)

    def __str__(self) -> str:
        parts = [f"Li{c}(z)" for c in self.at_z] + [f"Li{c}(1-z)" for c in self.at_1mz]
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class IntegrandSpec:
    entries: tuple[tuple[PolylogFactor, Letter], ...] = field(default_factory=tuple)

    def __post_init__(self):
        entries = tuple((f, l if isinstance(l, Letter) else Letter(str(l))) for f, l in self.entries)
        if not entries:
            raise InvalidInput("an integrand needs at least one (factor, form) entry")
        object.__setattr__(self, "entries", entries)

    @property
    def length(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "entries": [
                {"z": [list(c) for c in f.at_z], "omz": [list(c) for c in f.at_1mz], "form": l.value}
                for f, l in self.entries
            ]
        }

    @classmethod
    def from_json(cls, obj) -> "IntegrandSpec":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            entries = [
                (PolylogFactor(tuple(e.get("z", [])), tuple(e.get("omz", []))), Letter(str(e["form"])))
                for e in obj["entries"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed integrand JSON: {exc}") from exc
        return cls(tuple(entries))

    def __str__(self) -> str:
        forms = {Letter.E0: "dz/z", Letter.E1: "dz/(1-z)"}
        return " ".join(f"[{f}]{forms[l]}" for f, l in self.entries)


def build_poset(spec: IntegrandSpec) -> LabeledPoset:
    """Compile an integrand to its poset.

    Vertex ids are ``z{i}`` for the spine, ``t{i}.{f}.{p}`` for position p of
    the f-th ``Li(z)`` chain under ``z{i}`` and ``s{i}.{f}.{p}`` for the
    f-th ``Li(1-z)`` chain over it, where ``s{i}.{f}.{p}`` carries the
    complement of letter p and ``z{i} < s..{n} < ... < s..{1}``.
    """
    verts: list[tuple[str, Letter]] = []
    rels: list[tuple[str, str]] = []
    for i, (factor, form) in enumerate(spec.entries, start=1):
        zi = f"z{i}"
        verts.append((zi, form))
        if i > 1:
            rels.append((f"z{i - 1}", zi))
        for f, comp in enumerate(factor.at_z, start=1):
            letters = word_from_composition(comp)
            ids = [f"t{i}.{f}.{p}" for p in range(1, len(letters) + 1)]
            verts.extend(zip(ids, letters))
            rels.extend(zip(ids, ids[1:] + [zi]))
        for f, comp in enumerate(factor.at_1mz, start=1):
            letters = word_from_composition(comp)
            ids = [f"s{i}.{f}.{p}" for p in range(1, len(letters) + 1)]
            verts.extend((v, "1" if x == "0" else "0") for v, x in zip(ids, letters))
            # z < s_n < ... < s_1
            chain = [zi] + ids[::-1]
            rels.extend(zip(chain, chain[1:]))
    return _build_labeled_poset(verts, rels)


def check_convergence(spec: IntegrandSpec) -> bool:
    return poset_is_convergent(build_poset(spec))


def integral_value(spec: IntegrandSpec) -> FormalSum:
    P = build_poset(spec)
    if not poset_is_convergent(P):
        raise DivergentInput(f"integral diverges: {spec}")
    return evaluate(P)


def integral_value_reg(spec: IntegrandSpec) -> FormalSum:
    return evaluate_regularized(build_poset(spec))


def connected_sum_split(w, i: int) -> tuple[Composition, Composition, Letter]:
    """Split a convergent word at 1-based interior position ``i``.

    Returns the composition of the prefix (a ``Li(z)`` factor), the
    composition of the reverse-complemented suffix (a ``Li(1-z)`` factor)
    and the letter at position ``i``, so that
    ``integral(Li_a(z) Li_b(1-z) omega)`` is the MZV of ``w``.
    """
    w = as_word(w)
    if not is_convergent(w) or not w:
        raise InvalidInput(f"word must be convergent and nonempty: {w!r}")
    if not 1 < i < len(w):
        raise InvalidInput(f"split position must satisfy 1 < i < {len(w)}, got {i}")
    prefix, letter, suffix = w[: i - 1], w[i - 1], w[i:]
    return composition_from_word(prefix), composition_from_word(reverse_complement(suffix)), Letter(letter)


def spec_from_split(z_comp, omz_comp, letter) -> IntegrandSpec:
    return IntegrandSpec(((PolylogFactor((z_comp,), (omz_comp,)), letter),))


def simple_spec(items: Iterable[tuple[Iterable, Iterable, str]]) -> IntegrandSpec:
    """Shorthand: ``[(z_comps, omz_comps, form), ...]``."""
    return IntegrandSpec(tuple((PolylogFactor(tuple(z), tuple(o)), Letter(str(f))) for z, o, f in items))


def load_spec(source) -> IntegrandSpec:
    if isinstance(source, Mapping):
        return IntegrandSpec.from_json(source)
    with open(source) as fh:
        return IntegrandSpec.from_json(json.load(fh))
