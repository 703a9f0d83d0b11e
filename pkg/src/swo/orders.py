"""Prelinear welfare orders on utility streams.

Four comparison families live here.  compare_prefix ranks two streams by
their sorted length-n prefixes.  compare_limit takes the eventual verdict of
that family for tail-equal pairs, which reduces to comparing the multisets
of values over the finite difference set.  sign_profile captures the whole
verdict sequence as an eventually periodic pattern, and ultra_compare reads
one verdict off that pattern along an arithmetic progression of prefix
lengths, standing in for a choice of nonprincipal ultrafilter.  compare_sea
and compare_sea_nested combine a cross-class tiebreak with compare_limit to
give total, transitive orders that respect strong equity and finite
anonymity.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from ._accel import verdict_run
from .errors import (
    NoPeriodDetected,
    NotTailEquivalent,
    ParseError,
    SelectorAmbiguous,
)
from .streams import (
    NestedStream,
    UtilityStream,
    _require_same_alphabet,
    class_key,
    difference_set,
    key_stream,
    lex_compare,
    symbols_upto,
    tail_equal,
)

__all__ = [
    "Comparison",
    "SignProfile",
    "ResidueSelector",
    "OrderSpec",
    "compare_prefix",
    "compare_limit",
    "verdict_sequence",
    "sign_profile",
    "ultra_compare",
    "compare_sea",
    "compare_sea_nested",
    "resolve_order",
]


class Comparison(enum.IntEnum):
    """Three-way verdict; the integer value is the sign of the comparison."""

    LESS = -1
    EQUIVALENT = 0
    GREATER = 1

    @property
    def label(self) -> str:
        return {-1: "LESS", 0: "EQUIV", 1: "GREATER"}[int(self)]

    def mirror(self) -> "Comparison":
        return Comparison(-int(self))


def compare_prefix(x: UtilityStream, y: UtilityStream, n: int) -> Comparison:
    """Compare the sorted length-n prefixes lexicographically.

    Equivalent count form: at the smallest symbol whose prefix multiplicities
    differ, the stream holding more copies of it has the smaller sorted word.
    """
    _require_same_alphabet(x, y)
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    k = x.alphabet.size
    cx = [0] * k
    cy = [0] * k
    for i in range(n):
        cx[x.value_at(i)] += 1
        cy[y.value_at(i)] += 1
    for s in range(k):
        if cx[s] != cy[s]:
            return Comparison.LESS if cx[s] > cy[s] else Comparison.GREATER
    return Comparison.EQUIVALENT


def verdict_sequence(x: UtilityStream, y: UtilityStream, max_n: int):
    """compare_prefix verdict signs for every n in 1..max_n (int8 array)."""
    _require_same_alphabet(x, y)
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    return verdict_run(symbols_upto(x, max_n), symbols_upto(y, max_n), x.alphabet.size)


def _multiset_verdict(mine: Counter, theirs: Counter) -> Comparison:
    for value in sorted(set(mine) | set(theirs)):
        d = mine[value] - theirs[value]
        if d:
            return Comparison.LESS if d > 0 else Comparison.GREATER
    return Comparison.EQUIVALENT


def compare_limit(x: UtilityStream, y: UtilityStream) -> Comparison:
    """Eventual compare_prefix verdict for a tail-equal pair.

    Once the prefix covers the whole (finite) difference set the count
    differences freeze, so the verdict is read off the multisets of values
    each stream takes there: more copies of the smallest disagreeing value
    wins LESS, equal multisets give EQUIVALENT.
    """
    if not tail_equal(x, y):
        raise NotTailEquivalent("streams differ at infinitely many coordinates")
    diffs = difference_set(x, y)
    mine = Counter(x.value_at(n) for n in diffs)
    theirs = Counter(y.value_at(n) for n in diffs)
    return _multiset_verdict(mine, theirs)


@dataclass(frozen=True)
class SignProfile:
    """Eventually periodic pattern of sorted-prefix verdicts.

    signs[i] is the verdict at prefix length preperiod_length + 1 + i; the
    pattern was confirmed for at least two full periods within the scanned
    range, and the period word is primitive with the preperiod minimal for
    it.  Detection is empirical: it certifies the scanned range only.
    """

    preperiod_length: int
    period_length: int
    signs: tuple[Comparison, ...]

    def __post_init__(self):
        if len(self.signs) != self.period_length or self.period_length < 1:
            raise ValueError("signs must hold exactly one period of verdicts")

    def defined_at(self, n: int) -> bool:
        return n > self.preperiod_length

    def verdict_at(self, n: int) -> Comparison:
        if not self.defined_at(n):
            raise ValueError(
                f"profile covers prefix lengths above {self.preperiod_length}"
            )
        return self.signs[(n - self.preperiod_length - 1) % self.period_length]


def sign_profile(x: UtilityStream, y: UtilityStream, max_n: int) -> SignProfile:
    """Detect the eventually periodic verdict pattern on prefix lengths 1..max_n.

    The shortest period that holds across the scanned tail is taken, then the
    shortest preperiod for it; the pattern must fit two full periods after
    the preperiod or NoPeriodDetected is raised.
    """
    seq = verdict_sequence(x, y, max_n)
    for ell in range(1, max_n // 2 + 1):
        pre = 0
        for i in range(max_n - ell - 1, -1, -1):
            if seq[i] != seq[i + ell]:
                pre = i + 1
                break
        if pre + 2 * ell <= max_n:
            signs = tuple(Comparison(int(v)) for v in seq[pre : pre + ell])
            return SignProfile(pre, ell, signs)
    raise NoPeriodDetected(
        f"no verdict period confirmed twice within max_n={max_n}"
    )


@dataclass(frozen=True)
class ResidueSelector:
    """Arithmetic progression n = residue (mod modulus) of prefix lengths.

    Picking the eventual verdict along such a progression plays the role a
    nonprincipal ultrafilter plays in the limit construction, while staying
    computable; a selector that straddles several verdicts is rejected as
    ambiguous rather than resolved by choice.
    """

    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in [0, modulus)")


def ultra_compare(
    x: UtilityStream,
    y: UtilityStream,
    selector: ResidueSelector,
    max_n: int = 200,
) -> Comparison:
    """Eventual verdict along the selector's progression of prefix lengths.

    Raises SelectorAmbiguous when the detected profile, restricted to the
    progression, is not eventually constant.
    """
    profile = sign_profile(x, y, max_n)
    p, ell = profile.preperiod_length, profile.period_length
    m, r = selector.modulus, selector.residue
    n0 = p + 1 + ((r - (p + 1)) % m)
    g = math.gcd(m, ell)
    start = (n0 - p - 1) % g
    verdicts = {profile.signs[s] for s in range(start, ell, g)}
    if len(verdicts) > 1:
        raise SelectorAmbiguous(
            f"progression {r} mod {m} meets verdicts "
            + "/".join(sorted(v.label for v in verdicts))
        )
    return verdicts.pop()


def compare_sea(x: UtilityStream, y: UtilityStream) -> Comparison:
    """Total, transitive order respecting strong equity and finite anonymity.

    Streams in different tail classes are ranked by lexicographic comparison
    of the purely periodic streams their class keys generate; within a class
    the verdict is compare_limit.  Equity holds because a strict-compression
    pair is tail-equal and its difference multisets put the strictly smallest
    value on the compressing side; anonymity because finite permutations
    preserve both the class key and the difference multisets.
    """
    kx, ky = class_key(x), class_key(y)
    if kx != ky:
        return Comparison(lex_compare(key_stream(kx), key_stream(ky)))
    return compare_limit(x, y)


def compare_sea_nested(x: NestedStream, y: NestedStream) -> Comparison:
    """compare_sea analogue for streams of binary streams.

    Different tails rank by lexicographic comparison of the tail streams;
    equal tails leave a finite difference set, ranked by the multiset rule
    with coordinate values ordered lexicographically.
    """
    if x.tail != y.tail:
        return Comparison(lex_compare(x.tail, y.tail))
    span = max(len(x.exceptionals), len(y.exceptionals))
    diffs = [n for n in range(span) if x.value_at(n) != y.value_at(n)]
    values = sorted(
        {x.value_at(n) for n in diffs} | {y.value_at(n) for n in diffs},
        key=_LexKey,
    )
    mine = Counter(x.value_at(n) for n in diffs)
    theirs = Counter(y.value_at(n) for n in diffs)
    for value in values:
        d = mine[value] - theirs[value]
        if d:
            return Comparison.LESS if d > 0 else Comparison.GREATER
    return Comparison.EQUIVALENT


class _LexKey:
    """Sort key adapter: orders binary streams lexicographically."""

    __slots__ = ("stream",)

    def __init__(self, stream: UtilityStream):
        self.stream = stream

    def __lt__(self, other: "_LexKey") -> bool:
        return lex_compare(self.stream, other.stream) < 0


@dataclass(frozen=True)
class OrderSpec:
    """A named comparator plus the kind of object it compares."""

    name: str
    kind: str  # "stream" | "nested"
    compare: Callable[..., Comparison]


def resolve_order(text: str, max_n: int = 200) -> OrderSpec:
    """Turn an order name (sea, sea-nested, prefix:<n>, ultra:<m>,<r>) into a
    comparator."""
    if text == "sea":
        return OrderSpec("sea", "stream", compare_sea)
    if text in ("sea-nested", "sea_nested"):
        return OrderSpec("sea-nested", "nested", compare_sea_nested)
    if text.startswith("prefix:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise ParseError(len("prefix:"), "prefix order needs an integer length")
        if n < 0:
            raise ParseError(len("prefix:"), "prefix length must be nonnegative")
        return OrderSpec(text, "stream", lambda a, b: compare_prefix(a, b, n))
    if text.startswith("ultra:"):
        body = text.split(":", 1)[1]
        parts = body.split(",")
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise ParseError(len("ultra:"), "ultra order needs <modulus>,<residue>")
        sel = ResidueSelector(int(parts[0]), int(parts[1]))
        return OrderSpec(text, "stream", lambda a, b: ultra_compare(a, b, sel, max_n))
    raise ParseError(0, f"unknown order {text!r}")
