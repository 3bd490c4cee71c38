"""Form-labelled finite posets and their multiple integrals.

The integral of prod omega_v(t_v) over the region {0 < t_a < t_b < 1 whenever
a < b} splits into one simplex per linear extension (ties have measure
zero), so it equals the sum of the words read off the extensions.  Each
such word is an MZV when convergent; since all integrands are positive, the
poset integral converges iff every extension word does.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import CycleError, DivergentInput, InvalidInput, LimitExceeded
from .regularization import reg_sum
from .words import FormalSum, Letter, Word

__all__ = [
    "DEFAULT_MAX_EXTENSIONS",
    "LabeledPoset",
    "build_poset",
    "linear_extensions",
    "count_linear_extensions",
    "word_of_extension",
    "poset_is_convergent",
    "extension_words",
    "evaluate",
    "evaluate_regularized",
]

DEFAULT_MAX_EXTENSIONS = 10**6


@dataclass(frozen=True)
class LabeledPoset:
    vertices: tuple[str, ...]
    forms: tuple[Letter, ...]
    covers: frozenset[tuple[str, str]]
    # below[k]: bitmask of vertex positions strictly below vertex k
    below: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self, vid: str) -> int:
        return self.vertices.index(vid)

    def form(self, vid: str) -> Letter:
        return self.forms[self.index(vid)]

    def less(self, a: str, b: str) -> bool:
        return bool(self.below[self.index(b)] >> self.index(a) & 1)

    @property
    def closure(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (self.vertices[a], self.vertices[b])
            for b in range(self.size)
            for a in range(self.size)
            if self.below[b] >> a & 1
        )

    def minimal(self) -> list[str]:
        return [v for v, m in zip(self.vertices, self.below) if not m]

    def maximal(self) -> list[str]:
        above_any = 0
        for m in self.below:
            above_any |= m
        return [v for k, v in enumerate(self.vertices) if not above_any >> k & 1]

    def relabel(self, order: Sequence[str]) -> "LabeledPoset":
        """Same poset with the vertex list permuted."""
        return build_poset([(v, self.form(v)) for v in order], self.covers)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "form": f.value} for v, f in zip(self.vertices, self.forms)],
            "relations": [list(p) for p in sorted(self.covers)],
        }

    @classmethod
    def from_json(cls, obj) -> "LabeledPoset":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            verts = [(v["id"], v["form"]) for v in obj["vertices"]]
            rels = [tuple(r) for r in obj.get("relations", [])]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed poset JSON: {exc}") from exc
        return build_poset(verts, rels)


def build_poset(vertices: Iterable[tuple[str, object]], relations: Iterable[tuple[str, str]]) -> LabeledPoset:
    """Validate vertices and ``a < b`` pairs, and compute the transitive closure.

    Raises :class:`CycleError` if the closure is not irreflexive.
    """
    ids: list[str] = []
    forms: list[Letter] = []
    for vid, form in vertices:
        vid = str(vid)
        if vid in ids:
            raise InvalidInput(f"duplicate vertex id {vid!r}")
        try:
            forms.append(form if isinstance(form, Letter) else Letter(str(form)))
        except ValueError as exc:
            raise InvalidInput(f"vertex {vid!r}: form must be '0' or '1', got {form!r}") from exc
        ids.append(vid)
    pos = {v: k for k, v in enumerate(ids)}
    n = len(ids)
    covers = set()
    reach = [[False] * n for _ in range(n)]
    for pair in relations:
        if len(pair) != 2:
            raise InvalidInput(f"relation must be a pair: {pair!r}")
        a, b = (str(x) for x in pair)
        if a not in pos or b not in pos:
            raise InvalidInput(f"relation {pair!r} references an unknown vertex")
        covers.add((a, b))
        reach[pos[a]][pos[b]] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    for i in range(n):
        if reach[i][i]:
            raise CycleError(f"relations contain a cycle through {ids[i]!r}; not a partial order")
    below = tuple(sum(1 << i for i in range(n) if reach[i][j]) for j in range(n))
    return LabeledPoset(tuple(ids), tuple(forms), frozenset(covers), below)


def _extensions_idx(below: Sequence[int]) -> Iterator[list[int]]:
    n = len(below)
    full = (1 << n) - 1
    order: list[int] = []

    def rec(placed: int):
        if placed == full:
            yield list(order)
            return
        for k in range(n):
            if not placed >> k & 1 and below[k] & ~placed == 0:
                order.append(k)
                yield from rec(placed | 1 << k)
                order.pop()

    yield from rec(0)


def linear_extensions(P: LabeledPoset, limit: int | None = DEFAULT_MAX_EXTENSIONS) -> list[tuple[str, ...]]:
    """All total orders refining ``P``, lexicographic by vertex-list position."""
    out = []
    for order in _extensions_idx(P.below):
        if limit is not None and len(out) >= limit:
            raise LimitExceeded(f"more than {limit} linear extensions")
        out.append(tuple(P.vertices[k] for k in order))
    return out


def count_linear_extensions(P: LabeledPoset) -> int:
    """Number of linear extensions, by dynamic programming over order ideals."""
    n = P.size
    counts = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for ideal, c in counts.items():
            for k in range(n):
                if not ideal >> k & 1 and P.below[k] & ~ideal == 0:
                    key = ideal | 1 << k
                    nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return sum(counts.values())


def word_of_extension(P: LabeledPoset, order: Sequence[str]) -> Word:
    """Read the form labels in extension order (innermost variable first)."""
    seen = set()
    for v in order:
        k = P.index(v)
        for u in range(P.size):
            if P.below[k] >> u & 1 and P.vertices[u] not in seen:
                raise InvalidInput(f"{order!r} does not refine the poset: {P.vertices[u]!r} must precede {v!r}")
        seen.add(v)
    if len(seen) != P.size or len(order) != P.size:
        raise InvalidInput("extension must list every vertex exactly once")
    return "".join(P.form(v).value for v in order)


def poset_is_convergent(P: LabeledPoset) -> bool:
    """True iff every extension word starts with 1 and ends with 0.

    Any minimal vertex can come first and any maximal vertex last, so this
    is the same as: all minimal vertices carry dt/(1-t) and all maximal
    vertices carry dt/t.
    """
    if P.size == 0:
        return True
    return all(P.form(v) is Letter.E1 for v in P.minimal()) and all(
        P.form(v) is Letter.E0 for v in P.maximal()
    )


def extension_words(P: LabeledPoset) -> FormalSum:
    """Sum of extension words with multiplicity, convergent or not.

    Dynamic programming over order ideals: the words of all extensions of an
    ideal ``I + {v}`` ending in ``v`` are the words of ``I`` followed by the
    form of ``v``.  Equal to summing :func:`word_of_extension` over
    :func:`linear_extensions` without materializing the factorially many
    extensions.
    """
    n = P.size
    letters = [f.value for f in P.forms]
    layer: dict[int, dict[str, int]] = {0: {"": 1}}
    for _ in range(n):
        nxt: dict[int, dict[str, int]] = {}
        for ideal, words in layer.items():
            for k in range(n):
                if ideal >> k & 1 or P.below[k] & ~ideal:
                    continue
                slot = nxt.setdefault(ideal | 1 << k, {})
                x = letters[k]
                for w, c in words.items():
                    key = w + x
                    slot[key] = slot.get(key, 0) + c
        layer = nxt
    words = layer[(1 << n) - 1]
    return FormalSum._from_clean({w: Fraction(c) for w, c in words.items()})


def evaluate(P: LabeledPoset) -> FormalSum:
    """Exact value of a convergent poset integral as a sum of MZV words."""
    if not poset_is_convergent(P):
        raise DivergentInput("poset integral diverges; use evaluate_regularized")
    return extension_words(P)


def evaluate_regularized(P: LabeledPoset) -> FormalSum:
    """Shuffle-regularized poset integral; agrees with :func:`evaluate` when convergent."""
    return reg_sum(extension_words(P))


def extension_word_sum_bruteforce(P: LabeledPoset, limit: int | None = DEFAULT_MAX_EXTENSIONS) -> FormalSum:
    """Same as :func:`extension_words` via explicit enumeration."""
    acc: dict[str, int] = {}
    for order in linear_extensions(P, limit):
        w = word_of_extension(P, order)
        acc[w] = acc.get(w, 0) + 1
    return FormalSum(acc)


def load_poset(source) -> LabeledPoset:
    if isinstance(source, Mapping):
        return LabeledPoset.from_json(source)
    with open(source) as fh:
        return LabeledPoset.from_json(json.load(fh))
