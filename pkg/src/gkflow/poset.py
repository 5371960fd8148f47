"""Posets, labelings, compatibility relations and sequence statistics.

Elements are opaque strings.  Internally each element is identified with its
position in ``Poset.elements``; every iteration order below follows that list
so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    Axiom1Violation,
    Axiom2Violation,
    Axiom3Violation,
    CycleError,
    LabelingError,
    NotAdjacentableError,
    NotHOrderedError,
    OverlapError,
    PosetError,
    UnknownElementError,
)

Pair = tuple[str, str]


@dataclass(frozen=True)
class Poset:
    """Finite strict partial order.

    ``lt[i][j]`` is true iff ``elements[i] < elements[j]``.
    """

    elements: tuple[str, ...]
    lt: tuple[tuple[bool, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise PosetError("element names must be distinct")
        if len(self.lt) != n or any(len(row) != n for row in self.lt):
            raise PosetError("order matrix has the wrong shape")
        for i in range(n):
            if self.lt[i][i]:
                raise CycleError(f"{self.elements[i]} < {self.elements[i]}")
            for j in range(n):
                if self.lt[i][j] and self.lt[j][i]:
                    raise CycleError(f"{self.elements[i]} and {self.elements[j]} are mutually below each other")
                if self.lt[i][j]:
                    for k in range(n):
                        if self.lt[j][k] and not self.lt[i][k]:
                            raise PosetError("order matrix is not transitive")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElementError(f"unknown element {x!r}") from None

    def less(self, x: str, y: str) -> bool:
        return self.lt[self.index(x)][self.index(y)]

    def comparable(self, x: str, y: str) -> bool:
        i, j = self.index(x), self.index(y)
        return self.lt[i][j] or self.lt[j][i]

    def relations(self) -> list[Pair]:
        """All pairs ``(x, y)`` with ``x < y``, in element order."""
        e = self.elements
        return [(e[i], e[j]) for i in range(self.n) for j in range(self.n) if self.lt[i][j]]

    def covers(self) -> list[Pair]:
        """The cover relations (Hasse diagram edges)."""
        n, lt, e = self.n, self.lt, self.elements
        out = []
        for i in range(n):
            for j in range(n):
                if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(n)):
                    out.append((e[i], e[j]))
        return out


def transitive_closure(covers: Iterable[Pair], elements: Sequence[str]) -> Poset:
    """Build the poset generated by ``covers`` (any generating relation works)."""
    elements = tuple(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise PosetError("element names must be distinct")
    n = len(elements)
    rel = [[False] * n for _ in range(n)]
    for x, y in covers:
        for z in (x, y):
            if z not in index:
                raise UnknownElementError(f"unknown element {z!r}")
        rel[index[x]][index[y]] = True
    # Warshall
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    for i in range(n):
        if rel[i][i]:
            raise CycleError(f"cover relations contain a cycle through {elements[i]!r}")
    return Poset(elements, tuple(tuple(r) for r in rel))


@dataclass(frozen=True)
class Labeling:
    """Bijection ``h`` from elements to ranks ``1..n``.

    Stored as ``order``, the inverse map: ``order[r - 1]`` is the element of
    rank ``r``.
    """

    order: tuple[str, ...]
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise LabelingError("labeling assigns one element two ranks")
        object.__setattr__(self, "_rank", {e: r for r, e in enumerate(self.order, start=1)})

    @classmethod
    def from_mapping(cls, h: Mapping[str, int], elements: Sequence[str] | None = None) -> "Labeling":
        n = len(h)
        if sorted(h.values()) != list(range(1, n + 1)):
            raise LabelingError(f"h is not a bijection onto 1..{n}: {dict(h)}")
        if elements is not None and set(elements) != set(h):
            raise LabelingError("h must be defined on exactly the poset's elements")
        inv = [""] * n
        for e, r in h.items():
            inv[r - 1] = e
        return cls(tuple(inv))

    def h(self, x: str) -> int:
        try:
            return self._rank[x]
        except KeyError:
            raise UnknownElementError(f"unknown element {x!r}") from None

    def h_inv(self, r: int) -> str:
        return self.order[r - 1]

    def as_dict(self) -> dict[str, int]:
        return dict(self._rank)


@dataclass(frozen=True)
class CompatRelation:
    pairs: frozenset[Pair]

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Instance:
    """A validated triple (poset, labeling, compatibility relation)."""

    poset: Poset
    labeling: Labeling
    cp: CompatRelation

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    def h(self, x: str) -> int:
        return self.labeling.h(x)

    @property
    def forced(self) -> frozenset[Pair]:
        return forced_pairs(self.poset, self.labeling)


def forced_pairs(poset: Poset, labeling: Labeling) -> frozenset[Pair]:
    """Pairs that every compatibility relation must contain."""
    return frozenset((x, y) for x, y in poset.relations() if labeling.h(x) < labeling.h(y))


def h_increasing_pairs(labeling: Labeling) -> frozenset[Pair]:
    o = labeling.order
    return frozenset((o[i], o[j]) for i in range(len(o)) for j in range(i + 1, len(o)))


def validate_instance(poset: Poset, labeling: Labeling, cp: CompatRelation | Iterable[Pair]) -> Instance:
    """Check the three axioms and return the validated instance.

    All violations are collected; the raised exception's type is that of the
    lowest-numbered axiom that fails.
    """
    if not isinstance(cp, CompatRelation):
        cp = CompatRelation(frozenset((str(x), str(y)) for x, y in cp))
    if set(labeling.order) != set(poset.elements):
        raise LabelingError("labeling and poset have different elements")
    for x, y in cp.pairs:
        poset.index(x)
        poset.index(y)

    def key(p):
        return (poset.index(p[0]), poset.index(p[1]))

    h = labeling.h
    missing = sorted(forced_pairs(poset, labeling) - cp.pairs, key=key)
    backwards = sorted((p for p in cp.pairs if h(p[0]) >= h(p[1])), key=key)
    succ: dict[str, list[str]] = {}
    for x, y in cp.pairs:
        succ.setdefault(x, []).append(y)
    open_pairs = set()
    for x, y in cp.pairs:
        for z in succ.get(y, ()):
            if (x, z) not in cp.pairs:
                open_pairs.add((x, z))
    violations = {1: missing, 2: backwards, 3: sorted(open_pairs, key=key)}
    for axiom, exc in ((1, Axiom1Violation), (2, Axiom2Violation), (3, Axiom3Violation)):
        if violations[axiom]:
            raise exc(violations)
    return Instance(poset, labeling, cp)


class SequenceKind(str, Enum):
    ADJACENTABLE = "adjacentable"
    H_ORDERED_ONLY = "h_ordered_only"
    NEITHER = "neither"


def _check_members(seq: Sequence[str], inst: Instance) -> None:
    for x in seq:
        inst.poset.index(x)


def is_h_ordered(seq: Sequence[str], inst: Instance) -> bool:
    _check_members(seq, inst)
    h = inst.h
    return all(h(a) < h(b) for a, b in zip(seq, seq[1:]))


def is_adjacentable(seq: Sequence[str], inst: Instance) -> bool:
    _check_members(seq, inst)
    return all((a, b) in inst.cp for a, b in zip(seq, seq[1:]))


def classify_sequence(seq: Sequence[str], inst: Instance) -> SequenceKind:
    if is_adjacentable(seq, inst):
        return SequenceKind.ADJACENTABLE
    if is_h_ordered(seq, inst):
        return SequenceKind.H_ORDERED_ONLY
    return SequenceKind.NEITHER


def asc(seq: Sequence[str], inst: Instance) -> int:
    """Number of poset ascents between neighbours, plus one; 0 when empty."""
    if not is_adjacentable(seq, inst):
        raise NotAdjacentableError(f"{tuple(seq)} is not adjacentable")
    if not seq:
        return 0
    return 1 + sum(inst.poset.less(a, b) for a, b in zip(seq, seq[1:]))


def desc(seq: Sequence[str], inst: Instance) -> int:
    """Longest subsequence with no earlier element below a later one."""
    if not is_h_ordered(seq, inst):
        raise NotHOrderedError(f"{tuple(seq)} is not h-ordered")
    idx = [inst.poset.index(x) for x in seq]
    lt = inst.poset.lt
    m = len(idx)
    # ok[i][j] for i < j: positions i and j may both be kept
    ok = [[not lt[idx[i]][idx[j]] for j in range(m)] for i in range(m)]
    best = 0

    def extend(chosen: list[int], start: int):
        nonlocal best
        if len(chosen) + (m - start) <= best:
            return
        if start == m:
            best = len(chosen)
            return
        if all(ok[c][start] for c in chosen):
            chosen.append(start)
            extend(chosen, start + 1)
            chosen.pop()
        extend(chosen, start + 1)

    extend([], 0)
    return best


def semi_overlapping(sa: Sequence[str], sb: Sequence[str], inst: Instance) -> bool:
    """True iff C_P links the two sequences in both directions."""
    _check_members(sa, inst)
    _check_members(sb, inst)
    if set(sa) & set(sb):
        raise OverlapError(f"{tuple(sa)} and {tuple(sb)} share elements")
    back = any((t, s) in inst.cp for t in sb for s in sa)
    fwd = any((s, t) in inst.cp for s in sa for t in sb)
    return back and fwd


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build from possibly zero-padded weakly decreasing parts."""
        return cls(tuple(p for p in parts if p != 0))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def prefix_sums(self) -> list[int]:
        out, s = [], 0
        for p in self.parts:
            s += p
            out.append(s)
        return out

    def conjugate(self) -> "Partition":
        return conjugate(self)


def conjugate(p: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not p.parts:
        return Partition(())
    return Partition(tuple(sum(1 for q in p.parts if q >= i) for i in range(1, p.parts[0] + 1)))
