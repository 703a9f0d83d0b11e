"""Finite condition algebra for prelinearizing a base preorder.

A condition is an ordered partition of some subset of the base's elements:
two elements share a block exactly when the base makes them equivalent, and
blocks respect the base's strict order.  Restricted to its domain, a
condition is therefore a total preorder that extends the base with the same
equivalences, and extension between conditions (larger domain, same verdicts
on the smaller) orders them the way forcing conditions are ordered.

Compatibility of two conditions is decided on the quotient by base
equivalence: contract each equivalence class of the union domain to one
node, draw the strict edges of either condition and of the base between the
nodes, and look for a cycle.  Working on classes matters: a class whose
members are split across the two domains can close a cycle that never shows
up among raw strict edges.  Reported cycles are element-level walks whose
steps are tagged with the relation that justifies them, equivalence hops
included, so they replay edge by edge.

exhaustive_common_extension is the deliberately brute-force cross-check: it
scans every ordered set partition of the union domain for a valid common
extension and is kept algorithmically independent of compatible().
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._accel import find_extension, ordered_partition_table
from .errors import (
    CoarseSelector,
    IncompatibleConditions,
    ParseError,
    UnknownElement,
    ValidationFailed,
)

__all__ = [
    "BasePreorder",
    "Condition",
    "CycleEdge",
    "CompatibilityResult",
    "Schedule",
    "validate_condition",
    "compatible",
    "replay_cycle",
    "common_extension",
    "insert_element",
    "linearize",
    "ultralimit_schedule",
    "condition_extends",
    "restrict_condition",
    "exhaustive_common_extension",
    "base_from_json",
    "condition_from_json",
    "condition_to_json",
    "condition_dot",
]


class BasePreorder:
    """Reflexive transitive relation on finitely many labelled elements."""

    __slots__ = ("elements", "_index", "_leq")

    def __init__(self, elements: Sequence[str], leq: np.ndarray):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element labels")
        n = len(self.elements)
        mat = np.asarray(leq, dtype=bool)
        if mat.shape != (n, n):
            raise ValueError("relation matrix shape mismatch")
        if not mat.trace() == n:
            raise ValueError("relation must be reflexive")
        closure = _transitive_closure(mat)
        if not np.array_equal(closure, mat):
            raise ValueError("relation must be transitive")
        self._leq = mat
        self._index = {label: i for i, label in enumerate(self.elements)}

    @classmethod
    def from_edges(
        cls, elements: Sequence[str], edges: Iterable[tuple[str, str]]
    ) -> "BasePreorder":
        """Build from generating edges; the reflexive transitive closure is
        taken, so any cycle collapses to an equivalence."""
        elements = tuple(elements)
        index = {label: i for i, label in enumerate(elements)}
        n = len(elements)
        mat = np.eye(n, dtype=bool)
        for a, b in edges:
            if a not in index or b not in index:
                raise UnknownElement(f"edge ({a}, {b}) uses an unknown label")
            mat[index[a], index[b]] = True
        return cls(elements, _transitive_closure(mat))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def has(self, label: str) -> bool:
        return label in self._index

    def leq(self, a: str, b: str) -> bool:
        return bool(self._leq[self.index(a), self.index(b)])

    def equiv(self, a: str, b: str) -> bool:
        i, j = self.index(a), self.index(b)
        return bool(self._leq[i, j] and self._leq[j, i])

    def strict(self, a: str, b: str) -> bool:
        i, j = self.index(a), self.index(b)
        return bool(self._leq[i, j] and not self._leq[j, i])

    def matrix(self) -> np.ndarray:
        return self._leq.copy()

    def classes_of(self, labels: Iterable[str]) -> list[frozenset[str]]:
        """Base-equivalence classes restricted to the given labels, in a
        deterministic order (by least label)."""
        remaining = sorted(set(labels))
        classes = []
        while remaining:
            head = remaining[0]
            cls = frozenset(l for l in remaining if self.equiv(head, l))
            classes.append(cls)
            remaining = [l for l in remaining if l not in cls]
        return classes

    def __repr__(self) -> str:
        return f"BasePreorder({len(self.elements)} elements)"


def _transitive_closure(mat: np.ndarray) -> np.ndarray:
    closure = mat.copy()
    n = closure.shape[0]
    for k in range(n):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


@dataclass(frozen=True)
class Condition:
    """Ordered partition of a domain: earlier blocks rank strictly lower."""

    blocks: tuple[frozenset[str], ...]

    def __init__(self, blocks: Iterable[Iterable[str]]):
        parts = tuple(frozenset(b) for b in blocks)
        seen: set[str] = set()
        for part in parts:
            if not part:
                raise ValueError("blocks must be nonempty")
            if part & seen:
                raise ValueError("blocks must be disjoint")
            seen |= part
        object.__setattr__(self, "blocks", parts)

    @property
    def domain(self) -> frozenset[str]:
        out: set[str] = set()
        for b in self.blocks:
            out |= b
        return frozenset(out)

    def positions(self) -> dict[str, int]:
        return {label: i for i, b in enumerate(self.blocks) for label in b}

    def __repr__(self) -> str:
        inner = " < ".join("{" + ",".join(sorted(b)) + "}" for b in self.blocks)
        return f"Condition({inner})"


def validate_condition(c: Condition, base: BasePreorder) -> bool:
    """Whether c is a genuine condition over the base.

    Block structure (nonempty, disjoint) is already enforced at construction;
    this checks that block membership coincides with base equivalence and that
    strict base order always points to a later block.  Unknown labels raise
    rather than failing quietly.
    """
    seen: set[str] = set()
    for block in c.blocks:
        seen |= block
    for label in seen:
        base.index(label)
    pos = c.positions()
    labels = sorted(seen)
    for a in labels:
        for b in labels:
            if a >= b:
                continue
            same = pos[a] == pos[b]
            if same != base.equiv(a, b):
                return False
    for a in labels:
        for b in labels:
            if a == b:
                continue
            if base.strict(a, b) and pos[a] >= pos[b]:
                return False
    return True


@dataclass(frozen=True)
class CycleEdge:
    """One step of an obstruction cycle, tagged by the relation it lives in."""

    src: str
    dst: str
    via: str  # "p" | "q" | "base" | "equiv"


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    cycle: tuple[CycleEdge, ...] | None = None


def _strict_pairs(c: Condition) -> Iterable[tuple[str, str]]:
    for i, lower in enumerate(c.blocks):
        for upper in c.blocks[i + 1 :]:
            for a in sorted(lower):
                for b in sorted(upper):
                    yield a, b


def compatible(p: Condition, q: Condition, base: BasePreorder) -> CompatibilityResult:
    """Decide whether two conditions admit a common extension.

    The strict edges of p, of q, and of the base are drawn on the
    base-equivalence classes of the union domain; the conditions are
    compatible exactly when that quotient digraph is acyclic.  An
    incompatibility comes back with an element-level cycle whose steps are
    strict edges interleaved with equivalence hops inside a class.
    """
    for c, name in ((p, "p"), (q, "q")):
        if not validate_condition(c, base):
            raise ValidationFailed(f"condition {name} does not validate")
    union = p.domain | q.domain
    classes = base.classes_of(union)
    class_of = {label: i for i, cls in enumerate(classes) for label in cls}
    edges: dict[tuple[int, int], tuple[str, str, str]] = {}

    def add(a: str, b: str, via: str) -> None:
        key = (class_of[a], class_of[b])
        if key not in edges:
            edges[key] = (a, b, via)

    for a, b in _strict_pairs(p):
        add(a, b, "p")
    for a, b in _strict_pairs(q):
        add(a, b, "q")
    for a in sorted(union):
        for b in sorted(union):
            if a != b and base.strict(a, b):
                add(a, b, "base")
    adjacency: dict[int, list[int]] = {i: [] for i in range(len(classes))}
    for (ci, cj) in sorted(edges):
        adjacency[ci].append(cj)
    loop = _find_cycle(adjacency)
    if loop is None:
        return CompatibilityResult(True)
    walk: list[CycleEdge] = []
    for ci, cj in zip(loop, loop[1:] + loop[:1]):
        src, dst, via = edges[(ci, cj)]
        if walk and walk[-1].dst != src:
            walk.append(CycleEdge(walk[-1].dst, src, "equiv"))
        walk.append(CycleEdge(src, dst, via))
    if walk[-1].dst != walk[0].src:
        walk.append(CycleEdge(walk[-1].dst, walk[0].src, "equiv"))
    return CompatibilityResult(False, tuple(walk))


def _find_cycle(adjacency: dict[int, list[int]]) -> list[int] | None:
    """First cycle of the digraph in DFS order, as a node list, else None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in adjacency}
    path: list[int] = []

    def visit(v: int) -> list[int] | None:
        color[v] = GRAY
        path.append(v)
        for w in adjacency[v]:
            if color[w] == GRAY:
                return path[path.index(w) :]
            if color[w] == WHITE:
                found = visit(w)
                if found is not None:
                    return found
        path.pop()
        color[v] = BLACK
        return None

    for v in sorted(adjacency):
        if color[v] == WHITE:
            found = visit(v)
            if found is not None:
                return found
    return None


def replay_cycle(
    cycle: Sequence[CycleEdge], p: Condition, q: Condition, base: BasePreorder
) -> bool:
    """Check an obstruction cycle edge by edge against its claimed relations."""
    if not cycle:
        return False
    if any(cycle[i].dst != cycle[(i + 1) % len(cycle)].src for i in range(len(cycle))):
        return False
    if all(edge.via == "equiv" for edge in cycle):
        return False
    pos_p, pos_q = p.positions(), q.positions()
    for edge in cycle:
        if edge.via == "p":
            if edge.src not in pos_p or edge.dst not in pos_p:
                return False
            if pos_p[edge.src] >= pos_p[edge.dst]:
                return False
        elif edge.via == "q":
            if edge.src not in pos_q or edge.dst not in pos_q:
                return False
            if pos_q[edge.src] >= pos_q[edge.dst]:
                return False
        elif edge.via == "base":
            if not base.strict(edge.src, edge.dst):
                return False
        elif edge.via == "equiv":
            if edge.src == edge.dst or not base.equiv(edge.src, edge.dst):
                return False
        else:
            return False
    return True


def _tie_rank(base: BasePreorder, tie_break: Sequence[str] | None) -> dict[str, int]:
    listed = list(tie_break or ())
    for label in listed:
        base.index(label)
    rest = sorted(l for l in base.elements if l not in set(listed))
    return {label: i for i, label in enumerate(listed + rest)}


def common_extension(
    p: Condition,
    q: Condition,
    base: BasePreorder,
    tie_break: Sequence[str] | None = None,
) -> Condition:
    """Least-commitment common extension of two compatible conditions.

    Topologically sorts the base-equivalence classes of the union domain
    along the strict edges of p, q and the base, breaking ties between
    simultaneously available classes by the tie_break label order.
    """
    verdict = compatible(p, q, base)
    if not verdict.compatible:
        raise IncompatibleConditions(
            "conditions admit no common extension", cycle=verdict.cycle
        )
    rank = _tie_rank(base, tie_break)
    union = p.domain | q.domain
    classes = base.classes_of(union)
    class_of = {label: i for i, cls in enumerate(classes) for label in cls}
    succs: dict[int, set[int]] = {i: set() for i in range(len(classes))}
    indeg = {i: 0 for i in range(len(classes))}
    pairs = set(_strict_pairs(p)) | set(_strict_pairs(q))
    for a in union:
        for b in union:
            if a != b and base.strict(a, b):
                pairs.add((a, b))
    for a, b in pairs:
        ci, cj = class_of[a], class_of[b]
        if cj not in succs[ci]:
            succs[ci].add(cj)
            indeg[cj] += 1
    key = {i: min(rank[l] for l in cls) for i, cls in enumerate(classes)}
    ready = sorted((i for i in indeg if indeg[i] == 0), key=key.get)
    ordered: list[int] = []
    while ready:
        node = ready.pop(0)
        ordered.append(node)
        for nxt in sorted(succs[node]):
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
        ready.sort(key=key.get)
    result = Condition(classes[i] for i in ordered)
    if not validate_condition(result, base):
        raise ValidationFailed("common extension failed to validate")
    return result


def insert_element(
    c: Condition,
    base: BasePreorder,
    element: str,
    tie_break: Sequence[str] | None = None,
) -> Condition:
    """Extend a condition by one element.

    An element base-equivalent to something already placed joins that block.
    Otherwise it becomes a new singleton block within the window of positions
    the base's strict order allows, sliding past exactly those blocks whose
    tie_break key is below its own; with no constraints and least tie rank
    that is the bottom.  Inserting an element already in the domain is a
    no-op.
    """
    if not validate_condition(c, base):
        raise ValidationFailed("condition does not validate")
    base.index(element)
    if element in c.domain:
        return c
    for i, block in enumerate(c.blocks):
        if base.equiv(element, next(iter(block))):
            blocks = list(c.blocks)
            blocks[i] = block | {element}
            return Condition(blocks)
    pos = c.positions()
    lo = 0
    hi = len(c.blocks)
    for label, at in pos.items():
        if base.strict(label, element):
            lo = max(lo, at + 1)
        elif base.strict(element, label):
            hi = min(hi, at)
    if lo > hi:
        raise ValidationFailed("no position is consistent with the base order")
    rank = _tie_rank(base, tie_break)
    gap = lo
    while gap < hi and min(rank[l] for l in c.blocks[gap]) < rank[element]:
        gap += 1
    blocks = list(c.blocks)
    blocks.insert(gap, frozenset({element}))
    return Condition(blocks)


def linearize(
    base: BasePreorder,
    start: Condition | None = None,
    order_of_insertion: Sequence[str] | None = None,
) -> Condition:
    """Extend a condition to a total one by folding insert_element.

    Elements are inserted in the given sequence (any elements missing from
    it follow in label order) and the same sequence serves as the tie_break,
    so the result is determined by the insertion order alone.
    """
    c = start if start is not None else Condition(())
    seq = list(order_of_insertion or ())
    seq += sorted(set(base.elements) - set(seq))
    for element in seq:
        c = insert_element(c, base, element, tie_break=seq)
    return c


@dataclass(frozen=True)
class Schedule:
    """Periodic assignment of conditions to the naturals, one per residue."""

    period: tuple[Condition, ...]

    def __init__(self, period: Iterable[Condition]):
        entries = tuple(period)
        if not entries:
            raise ValueError("schedule needs at least one entry")
        object.__setattr__(self, "period", entries)

    def at(self, n: int) -> Condition:
        return self.period[n % len(self.period)]


def ultralimit_schedule(
    s: Schedule, sel, base: BasePreorder | None = None
) -> Condition:
    """The condition a residue selector picks from a periodic schedule.

    The selector's progression meets the schedule at the indices congruent
    to its residue modulo gcd(modulus, schedule length); when those entries
    all coincide that entry is the limit, otherwise the selector is too
    coarse for this schedule.  With a base supplied, entries and the result
    are validated.
    """
    length = len(s.period)
    if base is not None:
        for i, entry in enumerate(s.period):
            if not validate_condition(entry, base):
                raise ValidationFailed(f"schedule entry {i} does not validate")
    g = math.gcd(sel.modulus, length)
    hits = [s.period[h] for h in range(sel.residue % g, length, g)]
    first = hits[0]
    if any(entry != first for entry in hits[1:]):
        raise CoarseSelector(
            f"progression {sel.residue} mod {sel.modulus} meets "
            f"{len(set(hits))} distinct schedule entries"
        )
    return first


def condition_extends(big: Condition, small: Condition) -> bool:
    """Whether big agrees with small on small's whole domain."""
    if not small.domain <= big.domain:
        return False
    pos_b, pos_s = big.positions(), small.positions()
    labels = sorted(small.domain)
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            ds = (pos_s[a] > pos_s[b]) - (pos_s[a] < pos_s[b])
            db = (pos_b[a] > pos_b[b]) - (pos_b[a] < pos_b[b])
            if ds != db:
                return False
    return True


def restrict_condition(c: Condition, labels: Iterable[str]) -> Condition:
    keep = set(labels)
    return Condition(b & keep for b in c.blocks if b & keep)


def exhaustive_common_extension(
    p: Condition, q: Condition, base: BasePreorder
) -> Condition | None:
    """Brute-force oracle: scan all ordered set partitions of the union domain
    for a valid condition extending both inputs; None when none exists."""
    labels = sorted(p.domain | q.domain)
    n = len(labels)
    if n == 0:
        return Condition(())
    index = [base.index(l) for l in labels]
    leq = base.matrix()[np.ix_(index, index)]
    pos_p, pos_q = p.positions(), q.positions()
    pvec = np.array([pos_p.get(l, -1) for l in labels], dtype=np.int64)
    qvec = np.array([pos_q.get(l, -1) for l in labels], dtype=np.int64)
    table = ordered_partition_table(n)
    row = find_extension(table, leq, pvec, qvec)
    if row < 0:
        return None
    assign = table[row]
    blocks = [
        frozenset(labels[i] for i in range(n) if assign[i] == b)
        for b in range(int(assign.max()) + 1)
    ]
    return Condition(blocks)


# --- JSON and DOT forms -------------------------------------------------------


def base_from_json(doc: Mapping) -> BasePreorder:
    """Load {"elements": [...], "edges": [[a, b], ...]}; the closure is taken
    on load and cycles collapse to equivalences."""
    if "elements" not in doc:
        raise ParseError(0, "base document needs an 'elements' list")
    edges = [tuple(e) for e in doc.get("edges", ())]
    try:
        return BasePreorder.from_edges(tuple(doc["elements"]), edges)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def condition_from_json(doc: Mapping) -> Condition:
    if "blocks" not in doc:
        raise ParseError(0, "condition document needs a 'blocks' list")
    try:
        return Condition(tuple(block) for block in doc["blocks"])
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def condition_to_json(c: Condition) -> dict:
    return {"blocks": [sorted(b) for b in c.blocks]}


def condition_dot(c: Condition, base: BasePreorder) -> str:
    """DOT rendering of a condition over its base: blocks as ranked clusters
    in order, base cover edges dashed."""
    lines = [
        "digraph condition {",
        "  rankdir=BT;",
        '  node [shape=box, style=rounded];',
    ]
    for i, block in enumerate(c.blocks):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="block {i}";')
        lines.append("    rank=same;")
        for label in sorted(block):
            lines.append(f'    "{label}";')
        lines.append("  }")
    for i in range(len(c.blocks) - 1):
        a = sorted(c.blocks[i])[0]
        b = sorted(c.blocks[i + 1])[0]
        lines.append(f'  "{a}" -> "{b}" [style=bold, color=gray];')
    domain = sorted(c.domain)
    for a in domain:
        for b in domain:
            if a == b or not base.strict(a, b):
                continue
            if any(
                base.strict(a, m) and base.strict(m, b)
                for m in domain
                if m not in (a, b)
            ):
                continue  # not a cover edge
            lines.append(f'  "{a}" -> "{b}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
