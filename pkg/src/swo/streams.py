"""Eventually periodic utility streams and their primitive operations.

A stream is an infinite sequence over a finite ordered alphabet {0..k-1},
stored exactly as a finite preperiod followed by a repeating period word.
Construction canonicalizes the representation (primitive period, minimal
preperiod), so structural equality coincides with pointwise equality and
every comparison in this package reduces to a finite, exact computation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import AlphabetMismatch, NotOrdered, ParseError

__all__ = [
    "Alphabet",
    "UtilityStream",
    "ClassKey",
    "FiniteSupportPermutation",
    "NestedStream",
    "BetweenFlag",
    "normalize",
    "tail_equal",
    "difference_set",
    "class_key",
    "key_stream",
    "sorted_prefix",
    "symbols_upto",
    "permute",
    "permute_nested",
    "with_coordinates",
    "with_nested_coordinates",
    "lex_compare",
    "lex_value",
    "nested_almost_equal",
    "dyadic_between",
    "parse_stream",
    "render_stream",
    "parse_nested",
    "nested_to_json",
]


@dataclass(frozen=True)
class Alphabet:
    """Finite totally ordered alphabet; symbols are the integers 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("alphabet needs at least two symbols")


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    for d in range(1, n):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class UtilityStream:
    """One infinite utility stream in canonical eventually-periodic form.

    Canonical means the period word is primitive (not a power of a shorter
    word) and the preperiod is as short as possible.  A trailing preperiod
    symbol equal to the period's last symbol can always be absorbed by
    rotating the period one step to the right; the constructor applies that
    rewrite until it no longer fires, so two representations of the same
    pointwise sequence compare equal.
    """

    alphabet: Alphabet
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(int(s) for s in self.preperiod)
        per = tuple(int(s) for s in self.period)
        if not per:
            raise ValueError("period must be nonempty")
        k = self.alphabet.size
        for s in pre + per:
            if not 0 <= s < k:
                raise ValueError(f"symbol {s} outside alphabet of size {k}")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def of(cls, size: int, preperiod: Iterable[int], period: Iterable[int]) -> "UtilityStream":
        return cls(Alphabet(size), tuple(preperiod), tuple(period))

    @classmethod
    def constant(cls, size: int, symbol: int) -> "UtilityStream":
        return cls(Alphabet(size), (), (symbol,))

    @property
    def size(self) -> int:
        return self.alphabet.size

    def value_at(self, n: int) -> int:
        """Symbol at coordinate n."""
        if n < 0:
            raise ValueError("coordinates are natural numbers")
        p = len(self.preperiod)
        if n < p:
            return self.preperiod[n]
        return self.period[(n - p) % len(self.period)]

    def __getitem__(self, n: int) -> int:
        return self.value_at(n)

    def __str__(self) -> str:
        return render_stream(self)


def normalize(s: UtilityStream) -> UtilityStream:
    """Re-canonicalize a stream.  Identity on anything already constructed."""
    return UtilityStream(s.alphabet, s.preperiod, s.period)


def _require_same_alphabet(x: UtilityStream, y: UtilityStream) -> None:
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch(
            f"alphabet sizes differ: {x.alphabet.size} vs {y.alphabet.size}"
        )


def _agreement_bound(x: UtilityStream, y: UtilityStream) -> tuple[int, int]:
    """(start, span): the streams agree from `start` on iff they agree on
    [start, start+span), since both are purely periodic there with period
    dividing span."""
    start = max(len(x.preperiod), len(y.preperiod))
    span = math.lcm(len(x.period), len(y.period))
    return start, span


def tail_equal(x: UtilityStream, y: UtilityStream) -> bool:
    """Whether the streams agree at all but finitely many coordinates."""
    _require_same_alphabet(x, y)
    start, span = _agreement_bound(x, y)
    return all(x.value_at(n) == y.value_at(n) for n in range(start, start + span))


def difference_set(x: UtilityStream, y: UtilityStream) -> tuple[int, ...]:
    """Coordinates where two tail-equal streams differ.

    Only meaningful when tail_equal(x, y) holds; then every difference sits
    below the longer preperiod.
    """
    start, _ = _agreement_bound(x, y)
    return tuple(n for n in range(start) if x.value_at(n) != y.value_at(n))


@dataclass(frozen=True)
class ClassKey:
    """Phase-aligned primitive period word naming a stream's eventual tail.

    Two streams are tail-equal exactly when their keys are equal: the key is
    the unique primitive word w, read at phase 0, with w repeated agreeing
    with the stream from some point on.
    """

    alphabet: Alphabet
    word: tuple[int, ...]


def class_key(x: UtilityStream) -> ClassKey:
    p, m = len(x.preperiod), len(x.period)
    word = tuple(x.period[(i - p) % m] for i in range(m))
    return ClassKey(x.alphabet, word)


def key_stream(key: ClassKey) -> UtilityStream:
    """The purely periodic stream a class key names."""
    return UtilityStream(key.alphabet, (), key.word)


def sorted_prefix(x: UtilityStream, n: int) -> tuple[int, ...]:
    """The first n values rewritten in nondecreasing order."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    return tuple(sorted(x.value_at(i) for i in range(n)))


def symbols_upto(x: UtilityStream, n: int) -> np.ndarray:
    """First n symbols as an int64 array (kernel input)."""
    pre = np.asarray(x.preperiod, dtype=np.int64)
    if n <= pre.shape[0]:
        return pre[:n].copy()
    per = np.asarray(x.period, dtype=np.int64)
    reps = -(-(n - pre.shape[0]) // per.shape[0])
    return np.concatenate([pre, np.tile(per, reps)])[:n]


class FiniteSupportPermutation:
    """Bijection of the coordinates that moves only finitely many of them."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping[int, int]):
        moved = {int(a): int(b) for a, b in mapping.items() if int(a) != int(b)}
        if any(a < 0 or b < 0 for a, b in moved.items()):
            raise ValueError("coordinates are natural numbers")
        if set(moved) != set(moved.values()):
            raise ValueError("mapping is not a bijection of its support")
        self._map = moved

    @classmethod
    def identity(cls) -> "FiniteSupportPermutation":
        return cls({})

    @classmethod
    def swap(cls, i: int, j: int) -> "FiniteSupportPermutation":
        return cls({i: j, j: i})

    @classmethod
    def from_cycle(cls, cycle: Iterable[int]) -> "FiniteSupportPermutation":
        pts = list(cycle)
        return cls({a: b for a, b in zip(pts, pts[1:] + pts[:1])})

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._map)

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self._map)

    def __call__(self, n: int) -> int:
        return self._map.get(n, n)

    def inverse(self) -> "FiniteSupportPermutation":
        return FiniteSupportPermutation({b: a for a, b in self._map.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSupportPermutation) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{a}->{b}" for a, b in sorted(self._map.items()))
        return f"FiniteSupportPermutation({{{inner}}})"


def permute(x: UtilityStream, perm: FiniteSupportPermutation) -> UtilityStream:
    """The stream n -> x(perm(n)), canonicalized."""
    sup = perm.support
    cut = max(max(sup) + 1 if sup else 0, len(x.preperiod))
    pre = tuple(x.value_at(perm(n)) for n in range(cut))
    per = tuple(x.value_at(cut + t) for t in range(len(x.period)))
    return UtilityStream(x.alphabet, pre, per)


def with_coordinates(x: UtilityStream, overrides: Mapping[int, int]) -> UtilityStream:
    """Copy of x with finitely many coordinates replaced."""
    if not overrides:
        return x
    cut = max(max(overrides) + 1, len(x.preperiod))
    pre = tuple(overrides.get(n, x.value_at(n)) for n in range(cut))
    per = tuple(x.value_at(cut + t) for t in range(len(x.period)))
    return UtilityStream(x.alphabet, pre, per)


def lex_compare(x: UtilityStream, y: UtilityStream) -> int:
    """-1, 0 or +1 for lexicographic order; exact because a first difference,
    if any, shows up before the agreement bound."""
    _require_same_alphabet(x, y)
    start, span = _agreement_bound(x, y)
    for n in range(start + span):
        a, b = x.value_at(n), y.value_at(n)
        if a != b:
            return -1 if a < b else 1
    return 0


def lex_value(x: UtilityStream) -> Fraction:
    """Value of a binary stream read as a base-2 expansion of a real in [0, 1].

    Distinct streams can share a value (the two expansions of a dyadic
    rational); lexicographic order refines value order.
    """
    if x.alphabet.size != 2:
        raise AlphabetMismatch("binary stream required")
    p, m = len(x.preperiod), len(x.period)
    head = 0
    for b in x.preperiod:
        head = (head << 1) | b
    perint = 0
    for b in x.period:
        perint = (perint << 1) | b
    return Fraction(head, 1 << p) + Fraction(perint, (1 << m) - 1) / (1 << p)


class BetweenFlag(enum.Enum):
    STRICT = "strict"
    LEFT = "left"


def dyadic_between(a: UtilityStream, b: UtilityStream) -> tuple[UtilityStream, BetweenFlag]:
    """A finite-support binary stream weakly between a and b (lex order).

    When the open interval (a, b) is nonempty the result is the midpoint of
    the two real values truncated to the fewest bits that keep it strictly
    inside, flagged STRICT; its period is then the constant 0.  When a = b
    or the pair is lex-adjacent (two expansions of one dyadic rational, so
    nothing lies strictly between) the left endpoint comes back unchanged,
    flagged LEFT.
    """
    if a.alphabet.size != 2 or b.alphabet.size != 2:
        raise AlphabetMismatch("binary streams required")
    order = lex_compare(a, b)
    if order > 0:
        raise NotOrdered("left endpoint is lexicographically above the right")
    if order == 0:
        return a, BetweenFlag.LEFT
    va, vb = lex_value(a), lex_value(b)
    if va == vb:
        return a, BetweenFlag.LEFT
    mid = (va + vb) / 2
    k = 1
    while True:
        num = (mid.numerator << k) // mid.denominator
        if Fraction(num, 1 << k) > va:
            break
        k += 1
    bits = tuple((num >> (k - 1 - i)) & 1 for i in range(k))
    return UtilityStream(a.alphabet, bits, (0,)), BetweenFlag.STRICT


class NestedStream:
    """A stream whose coordinates are themselves binary streams.

    Finitely many exceptional coordinates precede a constant tail value;
    construction trims exceptionals equal to the tail so equality is
    structural here too.
    """

    __slots__ = ("exceptionals", "tail")

    def __init__(self, exceptionals: Iterable[UtilityStream], tail: UtilityStream):
        exc = tuple(exceptionals)
        for s in exc + (tail,):
            if s.alphabet.size != 2:
                raise AlphabetMismatch("nested coordinates must be binary streams")
        while exc and exc[-1] == tail:
            exc = exc[:-1]
        self.exceptionals = exc
        self.tail = tail

    def value_at(self, n: int) -> UtilityStream:
        if n < 0:
            raise ValueError("coordinates are natural numbers")
        if n < len(self.exceptionals):
            return self.exceptionals[n]
        return self.tail

    def __getitem__(self, n: int) -> UtilityStream:
        return self.value_at(n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NestedStream)
            and self.exceptionals == other.exceptionals
            and self.tail == other.tail
        )

    def __hash__(self) -> int:
        return hash((self.exceptionals, self.tail))

    def __repr__(self) -> str:
        exc = ", ".join(str(s) for s in self.exceptionals)
        return f"NestedStream([{exc}] | {self.tail})"


def nested_almost_equal(x: NestedStream, y: NestedStream) -> bool:
    """Whether two nested streams agree at all but finitely many coordinates.

    With a constant tail this reduces to the tails being equal streams.
    """
    return x.tail == y.tail


def permute_nested(x: NestedStream, perm: FiniteSupportPermutation) -> NestedStream:
    sup = perm.support
    cut = max(max(sup) + 1 if sup else 0, len(x.exceptionals))
    return NestedStream(tuple(x.value_at(perm(n)) for n in range(cut)), x.tail)


def with_nested_coordinates(
    x: NestedStream, overrides: Mapping[int, UtilityStream]
) -> NestedStream:
    if not overrides:
        return x
    cut = max(max(overrides) + 1, len(x.exceptionals))
    return NestedStream(
        tuple(overrides.get(n, x.value_at(n)) for n in range(cut)), x.tail
    )


# --- text form ---------------------------------------------------------------
#
# SIZE:PRE|PER, with PRE and PER written as digit words for alphabets of at
# most ten symbols and as bracketed comma-separated integers otherwise,
# e.g. 4:0033|1 and 12:[0,11]|[3].


def render_stream(s: UtilityStream) -> str:
    if s.alphabet.size <= 10:
        pre = "".join(str(d) for d in s.preperiod)
        per = "".join(str(d) for d in s.period)
    else:
        pre = "[" + ",".join(str(d) for d in s.preperiod) + "]"
        per = "[" + ",".join(str(d) for d in s.period) + "]"
    return f"{s.alphabet.size}:{pre}|{per}"


def _parse_word(text: str, base: int, size: int, what: str) -> tuple[int, ...]:
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError(base + len(text), f"unterminated bracket in {what}")
        body = text[1:-1]
        if not body:
            return ()
        out = []
        pos = base + 1
        for piece in body.split(","):
            if not piece or not piece.isdigit():
                raise ParseError(pos, f"expected an integer in {what}")
            val = int(piece)
            if val >= size:
                raise ParseError(pos, f"symbol {val} outside alphabet of size {size}")
            out.append(val)
            pos += len(piece) + 1
        return tuple(out)
    if size > 10:
        raise ParseError(base, f"{what} must be bracketed for alphabets larger than 10")
    out = []
    for i, ch in enumerate(text):
        if not ch.isdigit():
            raise ParseError(base + i, f"expected a digit in {what}")
        val = int(ch)
        if val >= size:
            raise ParseError(base + i, f"symbol {val} outside alphabet of size {size}")
        out.append(val)
    return tuple(out)


def parse_stream(text: str) -> UtilityStream:
    """Parse the SIZE:PRE|PER text form; raises ParseError with a position."""
    colon = text.find(":")
    if colon < 0:
        digits = 0
        while digits < len(text) and text[digits].isdigit():
            digits += 1
        raise ParseError(digits, "missing ':' after the alphabet size")
    head = text[:colon]
    if not head.isdigit():
        raise ParseError(0, "alphabet size must be an integer")
    size = int(head)
    if size < 2:
        raise ParseError(0, "alphabet size must be at least 2")
    rest = text[colon + 1 :]
    bar = rest.find("|")
    if bar < 0:
        raise ParseError(len(text), "missing '|' between preperiod and period")
    if rest.find("|", bar + 1) >= 0:
        raise ParseError(colon + 1 + rest.find("|", bar + 1), "more than one '|'")
    pre = _parse_word(rest[:bar], colon + 1, size, "preperiod")
    per_text = rest[bar + 1 :]
    if not per_text or per_text == "[]":
        raise ParseError(colon + 1 + bar + 1, "period must be nonempty")
    per = _parse_word(per_text, colon + 1 + bar + 1, size, "period")
    return UtilityStream(Alphabet(size), pre, per)


def nested_to_json(x: NestedStream) -> dict:
    return {
        "exceptionals": [render_stream(s) for s in x.exceptionals],
        "tail": render_stream(x.tail),
    }


def parse_nested(doc: dict) -> NestedStream:
    if not isinstance(doc, dict) or "tail" not in doc or "exceptionals" not in doc:
        raise ParseError(0, "nested stream document needs 'exceptionals' and 'tail'")
    exc = [parse_stream(t) for t in doc["exceptionals"]]
    return NestedStream(exc, parse_stream(doc["tail"]))
