"""The flow network built from an instance, plus residual reachability.

Vertices are integers laid out as::

    0            b_0 (source)
    1 .. n       t_1 .. t_n
    n+1 .. 2n    b_1 .. b_n
    2n+1         t_{n+1} (sink)

which is also the fixed order used by the breadth-first search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, TYPE_CHECKING

from .errors import InvariantViolation
from .poset import Instance

if TYPE_CHECKING:
    from .solver import SolverState

SOURCE_TO_TOP = 1
BOTTOM_TO_SINK = 2
TOP_TO_BOTTOM = 3
BOTTOM_TO_TOP = 4

FAMILY_COLORS = {SOURCE_TO_TOP: "green", BOTTOM_TO_SINK: "red", TOP_TO_BOTTOM: "blue", BOTTOM_TO_TOP: "black"}


class Vertex(NamedTuple):
    kind: str  # "b" or "t"
    index: int

    @property
    def name(self) -> str:
        return f"{self.kind}{self.index}"


class Edge(NamedTuple):
    id: int
    tail: int
    head: int
    cost: int
    family: int
    capacity: int = 1


class Arc(NamedTuple):
    """A residual arc: ``forward`` arcs push flow, backward arcs cancel it."""

    tail: int
    head: int
    edge: int
    forward: bool


@dataclass(frozen=True)
class FlowNetwork:
    n: int
    order: tuple[str, ...]  # order[i - 1] is the element behind t_i / b_i
    edges: tuple[Edge, ...]
    out_edges: tuple[tuple[int, ...], ...]
    in_edges: tuple[tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return 2 * self.n + 2

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return 2 * self.n + 1

    def top(self, i: int) -> int:
        return i if 1 <= i <= self.n else self.sink

    def bottom(self, i: int) -> int:
        return 0 if i == 0 else self.n + i

    def vertex(self, v: int) -> Vertex:
        if v == 0:
            return Vertex("b", 0)
        if v <= self.n:
            return Vertex("t", v)
        if v <= 2 * self.n:
            return Vertex("b", v - self.n)
        return Vertex("t", self.n + 1)

    def vertex_name(self, v: int) -> str:
        return self.vertex(v).name

    def find_edge(self, tail: int, head: int) -> Edge | None:
        for e in self.out_edges[tail]:
            if self.edges[e].head == head:
                return self.edges[e]
        return None

    def family_counts(self) -> dict[int, int]:
        counts = {f: 0 for f in FAMILY_COLORS}
        for e in self.edges:
            counts[e.family] += 1
        return counts


def build_network(inst: Instance) -> FlowNetwork:
    n = inst.n
    order = inst.labeling.order
    less = inst.poset.less
    sink = 2 * n + 1
    spec: list[tuple[int, int, int, int]] = []
    for i in range(1, n + 1):
        spec.append((0, i, 0, SOURCE_TO_TOP))
    for i in range(1, n + 1):
        spec.append((n + i, sink, -1, BOTTOM_TO_SINK))
    for i in range(1, n + 1):
        spec.append((i, n + i, 0, TOP_TO_BOTTOM))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            x, y = order[i - 1], order[j - 1]
            if (x, y) not in inst.cp:
                continue
            if not i < j:
                raise InvariantViolation(f"compatibility pair ({x},{y}) is not h-increasing")
            cost = -1 if less(x, y) else 0
            spec.append((n + i, j, cost, BOTTOM_TO_TOP))

    edges = tuple(Edge(k, t, h, c, f) for k, (t, h, c, f) in enumerate(spec))
    out_edges: list[list[int]] = [[] for _ in range(2 * n + 2)]
    in_edges: list[list[int]] = [[] for _ in range(2 * n + 2)]
    for e in edges:
        out_edges[e.tail].append(e.id)
        in_edges[e.head].append(e.id)
    return FlowNetwork(
        n=n,
        order=tuple(order),
        edges=edges,
        out_edges=tuple(tuple(x) for x in out_edges),
        in_edges=tuple(tuple(x) for x in in_edges),
    )


def admissible_edges(net: FlowNetwork, state: "SolverState") -> list[Arc]:
    """Residual arcs whose cost is exactly matched by the potential difference."""
    p, f = state.potential, state.flow
    arcs = []
    for e in net.edges:
        if p[e.head] - p[e.tail] != e.cost:
            continue
        if f[e.id] < e.capacity:
            arcs.append(Arc(e.tail, e.head, e.id, True))
        if f[e.id] > 0:
            arcs.append(Arc(e.head, e.tail, e.id, False))
    return arcs


def reachable_set(net: FlowNetwork, state: "SolverState") -> tuple[set[int], dict[int, Arc]]:
    """Vertices reachable from the source over admissible arcs.

    Returns the set and, for every reached vertex other than the source, the
    arc through which BFS first reached it.
    """
    adj: list[list[Arc]] = [[] for _ in range(net.num_vertices)]
    for a in admissible_edges(net, state):
        adj[a.tail].append(a)
    for lst in adj:
        lst.sort(key=lambda a: (a.head, a.edge))
    seen = {net.source}
    parent: dict[int, Arc] = {}
    queue = deque([net.source])
    while queue:
        v = queue.popleft()
        for a in adj[v]:
            if a.head not in seen:
                seen.add(a.head)
                parent[a.head] = a
                queue.append(a.head)
    return seen, parent


def path_to(parent: dict[int, Arc], target: int, source: int = 0) -> list[Arc]:
    path = []
    v = target
    while v != source:
        a = parent[v]
        path.append(a)
        v = a.tail
    path.reverse()
    return path


def to_dot(net: FlowNetwork) -> str:
    """Graphviz rendering with the four edge families colour-coded."""
    lines = ["digraph G {", "  rankdir=LR;", "  node [shape=circle];"]
    lines.append('  b0 [label="b0"];')
    for i in range(1, net.n + 1):
        elem = net.order[i - 1]
        lines.append(f'  t{i} [label="t{i}", xlabel="{_esc(elem)}"];')
        lines.append(f'  b{i} [label="b{i}", xlabel="{_esc(elem)}"];')
    lines.append(f'  t{net.n + 1} [label="t{net.n + 1}"];')
    for e in net.edges:
        lines.append(
            f"  {net.vertex_name(e.tail)} -> {net.vertex_name(e.head)} "
            f'[color={FAMILY_COLORS[e.family]}, label="{e.cost}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')
