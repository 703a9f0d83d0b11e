"""Strong equity machinery and the order law-audit harness.

A strict compression step takes utility u at one coordinate and v at another
with u < a < b < v and replaces them by a and b: the poorer coordinate gains,
the richer loses, and the step is irreversible.  is_se recognizes one step,
se_reachable searches for bounded chains of them, se_witness realizes the
canonical disjoint-cylinder pairing, and interpolate_between produces a
point between two others that differs from them only where they disagree.
audit_order samples any of the package's comparators against the laws such
an order should satisfy and reports violations as replayable data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import (
    AlphabetMismatch,
    InfiniteDifference,
    NotInCylinder,
    WindowTooSmall,
)
from .orders import Comparison, OrderSpec, resolve_order
from .streams import (
    Alphabet,
    BetweenFlag,
    FiniteSupportPermutation,
    NestedStream,
    UtilityStream,
    _require_same_alphabet,
    difference_set,
    dyadic_between,
    lex_compare,
    nested_to_json,
    parse_nested,
    parse_stream,
    permute,
    permute_nested,
    render_stream,
    tail_equal,
    with_coordinates,
    with_nested_coordinates,
)

__all__ = [
    "ReachConfig",
    "ChainCertificate",
    "LawViolation",
    "LawReport",
    "is_se",
    "se_witness",
    "se_reachable",
    "interpolate_between",
    "audit_order",
    "replay_violation",
    "random_stream",
    "random_permutation",
    "random_se_pair",
    "random_se_chain",
    "random_nested_stream",
    "random_nested_se_pair",
]


def is_se(x: UtilityStream, y: UtilityStream) -> bool:
    """Whether y arises from x by one strict compression step.

    That needs exactly two differing coordinates i, j with
    x(i) < y(i) < y(j) < x(j): both new values sit strictly inside the old
    spread.  Pairs with infinitely many differences trivially fail.
    """
    _require_same_alphabet(x, y)
    if not tail_equal(x, y):
        return False
    diffs = difference_set(x, y)
    if len(diffs) != 2:
        return False
    for i, j in (diffs, diffs[::-1]):
        if x.value_at(i) < y.value_at(i) < y.value_at(j) < x.value_at(j):
            return True
    return False


_CYLINDER = (0, 0, 3, 3)
_WITNESS = (0, 1, 2, 3)


def se_witness(x: UtilityStream) -> UtilityStream:
    """Image of x under the map rewriting a leading 0,0,3,3 to 0,1,2,3.

    The map carries the cylinder of streams opening with 0,0,3,3 onto the
    disjoint cylinder opening with 0,1,2,3, touches nothing past coordinate
    3, and its output improves its input by one strict compression step.
    """
    if x.alphabet.size != 4:
        raise NotInCylinder("witness map is defined on alphabet size 4")
    if tuple(x.value_at(n) for n in range(4)) != _CYLINDER:
        raise NotInCylinder("stream does not open with 0,0,3,3")
    return with_coordinates(x, dict(enumerate(_WITNESS)))


@dataclass(frozen=True)
class ReachConfig:
    """Bounds for the compression-chain search."""

    max_depth: int
    window: int

    def __post_init__(self):
        if self.max_depth < 1 or self.window < 1:
            raise ValueError("depth and window must be positive")


@dataclass(frozen=True)
class ChainCertificate:
    """A concrete chain of streams, consecutive pairs one compression apart."""

    steps: tuple[UtilityStream, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def holds(self) -> bool:
        if not self.steps:
            return False
        return all(
            a == b or is_se(a, b) for a, b in zip(self.steps, self.steps[1:])
        )


def _window_state(x: UtilityStream, w: int) -> tuple[int, ...]:
    return tuple(x.value_at(n) for n in range(w))


def _state_stream(x: UtilityStream, state: tuple[int, ...]) -> UtilityStream:
    w = len(state)
    cut = max(w, len(x.preperiod))
    pre = state + tuple(x.value_at(n) for n in range(w, cut))
    per = tuple(x.value_at(cut + t) for t in range(len(x.period)))
    return UtilityStream(x.alphabet, pre, per)


def _compression_moves(state: tuple[int, ...]):
    w = len(state)
    for i in range(w):
        u = state[i]
        for j in range(w):
            if i == j:
                continue
            v = state[j]
            if v - u < 3:
                continue
            for a in range(u + 1, v - 1):
                for b in range(a + 1, v):
                    nxt = list(state)
                    nxt[i], nxt[j] = a, b
                    yield tuple(nxt)


def se_reachable(
    x: UtilityStream, y: UtilityStream, cfg: ReachConfig
) -> ChainCertificate | None:
    """Shortest chain of compression steps from x to y inside the window.

    Breadth-first search over window states, so a returned certificate has
    minimal length (at most max_depth + 1 streams).  None means no chain was
    found within the bounds, which is not a proof that none exists beyond
    them.  Differences at or beyond the window cannot be repaired by moves
    inside it, hence WindowTooSmall.
    """
    _require_same_alphabet(x, y)
    if not tail_equal(x, y) or any(n >= cfg.window for n in difference_set(x, y)):
        raise WindowTooSmall(
            f"streams differ at a coordinate at or beyond window {cfg.window}"
        )
    start = _window_state(x, cfg.window)
    goal = _window_state(y, cfg.window)
    if start == goal:
        return ChainCertificate((x,))
    parents: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    frontier = [start]
    for _ in range(cfg.max_depth):
        nxt = []
        for state in frontier:
            for move in _compression_moves(state):
                if move in parents:
                    continue
                parents[move] = state
                if move == goal:
                    chain = [move]
                    while parents[chain[-1]] is not None:
                        chain.append(parents[chain[-1]])
                    chain.reverse()
                    return ChainCertificate(
                        tuple(_state_stream(x, s) for s in chain)
                    )
                nxt.append(move)
        if not nxt:
            break
        frontier = nxt
    return None


def interpolate_between(x, y):
    """A point weakly between x and y that matches them off their differences.

    For binary utility streams the coordinate order is the two-point order,
    so nothing lies strictly between differing values and the interpolant
    takes the smaller one.  For nested streams each differing coordinate
    gets a dyadic between-point of the two values, which has finite support
    whenever the open interval there is nonempty.  Both forms require a
    finite difference set.
    """
    if isinstance(x, UtilityStream) and isinstance(y, UtilityStream):
        if x.alphabet.size != 2 or y.alphabet.size != 2:
            raise AlphabetMismatch("binary streams required")
        if not tail_equal(x, y):
            raise InfiniteDifference("streams differ at infinitely many coordinates")
        cut = max(len(x.preperiod), len(y.preperiod))
        pre = tuple(min(x.value_at(n), y.value_at(n)) for n in range(cut))
        per = tuple(x.value_at(cut + t) for t in range(len(x.period)))
        return UtilityStream(x.alphabet, pre, per)
    if isinstance(x, NestedStream) and isinstance(y, NestedStream):
        if x.tail != y.tail:
            raise InfiniteDifference("nested streams with different tails")
        span = max(len(x.exceptionals), len(y.exceptionals))
        coords = []
        for n in range(span):
            a, b = x.value_at(n), y.value_at(n)
            if a == b:
                coords.append(a)
            else:
                lo, hi = (a, b) if lex_compare(a, b) < 0 else (b, a)
                coords.append(dyadic_between(lo, hi)[0])
        return NestedStream(tuple(coords), x.tail)
    raise TypeError("expected two utility streams or two nested streams")


# --- seeded generators --------------------------------------------------------


def random_stream(
    rng: random.Random, size: int, max_pre: int = 4, max_per: int = 6
) -> UtilityStream:
    pre = tuple(rng.randrange(size) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.randrange(size) for _ in range(rng.randint(1, max_per)))
    return UtilityStream(Alphabet(size), pre, per)


def random_permutation(
    rng: random.Random, max_support: int = 6, window: int = 10
) -> FiniteSupportPermutation:
    k = rng.randint(0, max_support)
    points = rng.sample(range(window), k)
    image = points[:]
    rng.shuffle(image)
    return FiniteSupportPermutation(dict(zip(points, image)))


def random_se_pair(
    rng: random.Random, size: int, span: int = 8
) -> tuple[UtilityStream, UtilityStream]:
    if size < 4:
        raise ValueError("compression pairs need at least four symbols")
    base = random_stream(rng, size)
    i, j = rng.sample(range(span), 2)
    a, b, c, d = sorted(rng.sample(range(size), 4))
    return (
        with_coordinates(base, {i: a, j: d}),
        with_coordinates(base, {i: b, j: c}),
    )


def random_se_chain(
    rng: random.Random, size: int, max_steps: int = 4, window: int = 6
) -> list[UtilityStream]:
    """A chain x0, x1, ... with one compression step between neighbours."""
    while True:
        chain = [random_stream(rng, size)]
        for _ in range(max_steps):
            state = _window_state(chain[-1], window)
            moves = list(_compression_moves(state))
            if not moves:
                break
            chain.append(_state_stream(chain[-1], rng.choice(moves)))
        if len(chain) >= 2:
            return chain


def random_binary_stream(
    rng: random.Random, max_pre: int = 3, max_per: int = 3
) -> UtilityStream:
    return random_stream(rng, 2, max_pre, max_per)


def random_nested_stream(
    rng: random.Random, max_exceptionals: int = 4
) -> NestedStream:
    exc = tuple(
        random_binary_stream(rng) for _ in range(rng.randint(0, max_exceptionals))
    )
    return NestedStream(exc, random_binary_stream(rng))


class _nested_sort_key:
    """Sort key adapter ordering binary streams lexicographically."""

    __slots__ = ("s",)

    def __init__(self, s: UtilityStream):
        self.s = s

    def __lt__(self, other) -> bool:
        return lex_compare(self.s, other.s) < 0


def _distinct_binary_quad(rng: random.Random) -> list[UtilityStream]:
    # distinct streams always order strictly under lexicographic comparison
    while True:
        streams = list({random_binary_stream(rng) for _ in range(4)})
        if len(streams) == 4:
            streams.sort(key=_nested_sort_key)
            return streams


def random_nested_se_pair(
    rng: random.Random, span: int = 6
) -> tuple[NestedStream, NestedStream]:
    base = random_nested_stream(rng)
    i, j = rng.sample(range(span), 2)
    a, b, c, d = _distinct_binary_quad(rng)
    return (
        with_nested_coordinates(base, {i: a, j: d}),
        with_nested_coordinates(base, {i: b, j: c}),
    )


# --- law audit ----------------------------------------------------------------


@dataclass(frozen=True)
class LawViolation:
    law: str
    witness: dict

    def to_json_dict(self) -> dict:
        return {"law": self.law, "witness": self.witness}


@dataclass
class LawReport:
    """Outcome of one audit run: counts per law plus replayable violations."""

    order: str
    mode: str
    samples: int
    seed: int
    checks_run: dict[str, int] = field(default_factory=dict)
    violations: list[LawViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def violations_for(self, law: str) -> list[LawViolation]:
        return [v for v in self.violations if v.law == law]

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "checks_run": dict(sorted(self.checks_run.items())),
            "violations": [v.to_json_dict() for v in self.violations],
            "passed": self.passed,
        }


def _render(kind: str, value) -> object:
    return render_stream(value) if kind == "stream" else nested_to_json(value)


def _revive(kind: str, doc):
    return parse_stream(doc) if kind == "stream" else parse_nested(doc)


class _Auditor:
    def __init__(self, spec: OrderSpec, report: LawReport):
        self.spec = spec
        self.report = report

    def bump(self, law: str) -> None:
        self.report.checks_run[law] = self.report.checks_run.get(law, 0) + 1

    def verdict(self, law: str, a, b, extra: dict) -> Comparison | None:
        try:
            return self.spec.compare(a, b)
        except Exception as exc:  # verdict failures are findings, not crashes
            self.report.violations.append(
                LawViolation(law, {**extra, "error": type(exc).__name__})
            )
            return None

    def flag(self, law: str, witness: dict) -> None:
        self.report.violations.append(LawViolation(law, witness))


def audit_order(
    order: str | OrderSpec,
    mode: str = "sea_laws",
    samples: int = 1000,
    seed: int = 0,
    alphabet: int = 4,
    max_n: int = 200,
) -> LawReport:
    """Sample a comparator against order laws; violations come back as data.

    sea_laws draws a pool of `samples` streams and checks totality (mirror
    consistency) and transitivity on 5 x samples random triples, equivalence
    under `samples` finite permutations, and strictness on `samples`
    compression pairs.  weak_prelin checks that the order extends the
    compression preorder on generated chains: equivalence on the diagonal
    and strict verdicts along every chain pair.  Identical arguments produce
    an identical report.
    """
    spec = resolve_order(order, max_n) if isinstance(order, str) else order
    if mode not in ("sea_laws", "weak_prelin"):
        raise ValueError(f"unknown audit mode {mode!r}")
    rng = random.Random(seed)
    report = LawReport(order=spec.name, mode=mode, samples=samples, seed=seed)
    auditor = _Auditor(spec, report)
    nested = spec.kind == "nested"

    def fresh_stream():
        return random_nested_stream(rng) if nested else random_stream(rng, alphabet)

    if mode == "sea_laws":
        pool = [fresh_stream() for _ in range(samples)]
        for _ in range(5 * samples):
            a, b, c = (rng.choice(pool) for _ in range(3))
            wa = {"kind": spec.kind, "x": _render(spec.kind, a), "y": _render(spec.kind, b)}
            auditor.bump("totality")
            vab = auditor.verdict("totality", a, b, wa)
            vba = auditor.verdict("totality", b, a, wa)
            if vab is not None and vba is not None and vab.mirror() != vba:
                auditor.flag(
                    "totality",
                    {**wa, "forward": vab.label, "backward": vba.label},
                )
            auditor.bump("transitivity")
            vbc = auditor.verdict("transitivity", b, c, wa)
            vac = auditor.verdict("transitivity", a, c, wa)
            if None not in (vab, vbc, vac):
                if (
                    vab != Comparison.GREATER
                    and vbc != Comparison.GREATER
                    and vac == Comparison.GREATER
                ):
                    auditor.flag(
                        "transitivity",
                        {
                            "kind": spec.kind,
                            "x": _render(spec.kind, a),
                            "y": _render(spec.kind, b),
                            "z": _render(spec.kind, c),
                            "xy": vab.label,
                            "yz": vbc.label,
                            "xz": vac.label,
                        },
                    )
        for _ in range(samples):
            x = rng.choice(pool)
            perm = random_permutation(rng)
            moved = permute_nested(x, perm) if nested else permute(x, perm)
            witness = {
                "kind": spec.kind,
                "x": _render(spec.kind, x),
                "perm": sorted(perm.mapping.items()),
            }
            auditor.bump("anonymity")
            v = auditor.verdict("anonymity", x, moved, witness)
            if v is not None and v != Comparison.EQUIVALENT:
                auditor.flag("anonymity", {**witness, "verdict": v.label})
        for _ in range(samples):
            x, y = (
                random_nested_se_pair(rng)
                if nested
                else random_se_pair(rng, alphabet)
            )
            witness = {
                "kind": spec.kind,
                "x": _render(spec.kind, x),
                "y": _render(spec.kind, y),
            }
            auditor.bump("se_strictness")
            v = auditor.verdict("se_strictness", x, y, witness)
            if v is not None and v != Comparison.LESS:
                auditor.flag("se_strictness", {**witness, "verdict": v.label})
    else:
        if nested:
            raise ValueError("weak_prelin audits utility-stream orders")
        for _ in range(samples):
            chain = random_se_chain(rng, max(alphabet, 4))
            rendered = [render_stream(s) for s in chain]
            auditor.bump("chain_reflexivity")
            v = auditor.verdict(
                "chain_reflexivity", chain[0], chain[0], {"chain": rendered}
            )
            if v is not None and v != Comparison.EQUIVALENT:
                auditor.flag(
                    "chain_reflexivity", {"chain": rendered, "verdict": v.label}
                )
            for i in range(len(chain)):
                for j in range(i + 1, len(chain)):
                    witness = {"chain": rendered, "i": i, "j": j}
                    auditor.bump("chain_strictness")
                    v = auditor.verdict(
                        "chain_strictness", chain[i], chain[j], witness
                    )
                    if v is not None and v != Comparison.LESS:
                        auditor.flag(
                            "chain_strictness", {**witness, "verdict": v.label}
                        )
    return report


def replay_violation(
    violation: LawViolation, order: str | OrderSpec, max_n: int = 200
) -> bool:
    """Re-evaluate a violation's witness; True when it still breaks the law."""
    spec = resolve_order(order, max_n) if isinstance(order, str) else order
    w = violation.witness
    kind = w.get("kind", "stream")
    try:
        if violation.law == "anonymity":
            x = _revive(kind, w["x"])
            perm = FiniteSupportPermutation({int(a): int(b) for a, b in w["perm"]})
            moved = permute_nested(x, perm) if kind == "nested" else permute(x, perm)
            return spec.compare(x, moved) != Comparison.EQUIVALENT
        if violation.law == "se_strictness":
            x, y = _revive(kind, w["x"]), _revive(kind, w["y"])
            return spec.compare(x, y) != Comparison.LESS
        if violation.law == "totality":
            x, y = _revive(kind, w["x"]), _revive(kind, w["y"])
            return spec.compare(x, y).mirror() != spec.compare(y, x)
        if violation.law == "transitivity":
            x, y, z = (_revive(kind, w[key]) for key in ("x", "y", "z"))
            return (
                spec.compare(x, y) != Comparison.GREATER
                and spec.compare(y, z) != Comparison.GREATER
                and spec.compare(x, z) == Comparison.GREATER
            )
        if violation.law == "chain_reflexivity":
            x = parse_stream(w["chain"][0])
            return spec.compare(x, x) != Comparison.EQUIVALENT
        if violation.law == "chain_strictness":
            chain = [parse_stream(t) for t in w["chain"]]
            return spec.compare(chain[w["i"]], chain[w["j"]]) != Comparison.LESS
    except Exception:
        return True
    return False
