"""Universal embedding of countable strict orders into dyadic codes.

Elements arrive one at a time with a comparison oracle against everything
already placed; each gets the dyadic rational halfway into the gap the
answers pin down.  Values live strictly inside (0, 1), so new room always
exists below the minimum, above the maximum, and between any two neighbours,
which is what makes the target order universal for countable inputs.
dedekind_lift extends the finite assignment to arbitrary cuts by taking the
largest selected value, truncated or padded to a requested depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import AlreadyAssigned, EmptyCut, InconsistentComparator
from .orders import Comparison

__all__ = ["DyadicCode", "EmbedState", "embed_insert", "embed_all", "dedekind_lift"]


@dataclass(frozen=True)
class DyadicCode:
    """Binary word ending in 1, read as the dyadic rational it expands to.

    The trailing 1 makes the word canonical: each value in (0, 1) with a
    power-of-two denominator has exactly one such spelling.
    """

    word: tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.word, str):
            object.__setattr__(self, "word", tuple(int(c) for c in self.word))
        else:
            object.__setattr__(self, "word", tuple(self.word))
        if not self.word or self.word[-1] != 1:
            raise ValueError("code words are nonempty and end in 1")
        if any(b not in (0, 1) for b in self.word):
            raise ValueError("code words are binary")

    @property
    def value(self) -> Fraction:
        num = 0
        for b in self.word:
            num = (num << 1) | b
        return Fraction(num, 1 << len(self.word))

    @classmethod
    def from_fraction(cls, value: Fraction) -> "DyadicCode":
        if not 0 < value < 1:
            raise ValueError("dyadic codes live strictly inside (0, 1)")
        den = value.denominator
        if den & (den - 1):
            raise ValueError("value must have a power-of-two denominator")
        length = den.bit_length() - 1
        num = value.numerator
        return cls(tuple((num >> (length - 1 - i)) & 1 for i in range(length)))

    def bits(self) -> str:
        return "".join(str(b) for b in self.word)

    def __str__(self) -> str:
        return "." + self.bits()


class EmbedState:
    """Immutable assignment of labels to dyadic codes."""

    __slots__ = ("_codes",)

    def __init__(self, codes: Mapping[str, DyadicCode] | None = None):
        self._codes = dict(codes or {})

    @property
    def assignment(self) -> dict[str, DyadicCode]:
        return dict(self._codes)

    def labels(self) -> tuple[str, ...]:
        return tuple(self._codes)

    def code(self, label: str) -> DyadicCode:
        return self._codes[label]

    def __contains__(self, label: str) -> bool:
        return label in self._codes

    def __len__(self) -> int:
        return len(self._codes)


def embed_insert(
    state: EmbedState,
    element: str,
    comparator: Callable[[str, str], Comparison],
) -> EmbedState:
    """Assign a code to one new element.

    The comparator is asked to rank the element against every assigned label;
    a strict total order never answers EQUIVALENT for distinct elements, and
    answers that leave no gap (some lower neighbour at or above some upper
    neighbour) are rejected.  The first element lands on 1/2; later ones get
    the midpoint of their gap, half the minimum, or the point halfway from
    the maximum to 1.
    """
    if element in state:
        raise AlreadyAssigned(f"{element!r} already has a code")
    floor_val: Fraction | None = None
    ceil_val: Fraction | None = None
    for label, code in state.assignment.items():
        verdict = comparator(element, label)
        if verdict == Comparison.GREATER:
            if floor_val is None or code.value > floor_val:
                floor_val = code.value
        elif verdict == Comparison.LESS:
            if ceil_val is None or code.value < ceil_val:
                ceil_val = code.value
        else:
            raise InconsistentComparator(
                f"comparator ranks {element!r} equivalent to {label!r}"
            )
    if floor_val is not None and ceil_val is not None and floor_val >= ceil_val:
        raise InconsistentComparator(
            f"comparator answers leave no gap for {element!r}"
        )
    if floor_val is None and ceil_val is None:
        value = Fraction(1, 2)
    elif floor_val is None:
        value = ceil_val / 2
    elif ceil_val is None:
        value = (floor_val + 1) / 2
    else:
        value = (floor_val + ceil_val) / 2
    codes = state.assignment
    codes[element] = DyadicCode.from_fraction(value)
    return EmbedState(codes)


def embed_all(
    elements: Iterable[str], comparator: Callable[[str, str], Comparison]
) -> EmbedState:
    """Fold embed_insert over the elements in the given sequence."""
    state = EmbedState()
    for element in elements:
        state = embed_insert(state, element, comparator)
    return state


def dedekind_lift(state: EmbedState, cut: Callable[[str], bool], depth: int) -> str:
    """Binary word of length depth for the largest value the cut selects.

    Padding with zeros when the code is shorter than the depth, truncating
    (flooring) when longer; a cut selecting nothing has no supremum.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    selected = [code.value for label, code in state.assignment.items() if cut(label)]
    if not selected:
        raise EmptyCut("cut selects no assigned element")
    top = max(selected)
    num = (top.numerator << depth) // top.denominator
    return format(num, f"0{depth}b")
