"""Primal-dual unit-step min-cost flow on the instance network.

The solver keeps an integral flow and integer potentials in complementary
slackness, and alternates two moves: push one unit along an admissible
source-sink path, or raise by one the potential of every vertex the source
cannot reach.  The potential of the sink, read at each augmentation, gives the
parts of lambda; the flow value at each sink relabel gives the parts of mu.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .errors import ConjugacyViolation, DecompositionError, InvariantViolation
from .network import BOTTOM_TO_TOP, FlowNetwork, build_network, path_to, reachable_set
from .poset import Instance, Partition, asc, conjugate, desc, is_h_ordered, semi_overlapping

AUGMENT = "augment"
RELABEL = "relabel"


class Event(NamedTuple):
    kind: str
    v_after: int
    p_abs: int

    def format(self) -> str:
        return f"event={self.kind} v={self.v_after} p_abs={self.p_abs}"


@dataclass
class SolverState:
    flow: list[int]
    potential: list[int]
    v: int = 0
    trace: list[Event] = field(default_factory=list)

    def p_abs(self, net: FlowNetwork) -> int:
        return abs(self.potential[net.sink])

    def cost(self, net: FlowNetwork) -> int:
        return sum(e.cost * self.flow[e.id] for e in net.edges)

    def copy(self) -> "SolverState":
        return SolverState(list(self.flow), list(self.potential), self.v, list(self.trace))


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


@dataclass
class InvariantReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __str__(self) -> str:
        return "; ".join(f"{c.name}: {c.detail}" for c in self.failures()) or "all checks pass"


@dataclass
class DualityResult:
    lambda_: Partition
    mu: Partition
    a_table: list[int]
    d_table: list[int]
    # flow value v -> v adjacentable sequences realising A'_v
    witnesses_A: dict[int, list[tuple[str, ...]]] | None = None
    # p -> p pairwise non-semi-overlapping sequences realising D'_p
    witnesses_D: dict[int, list[tuple[str, ...]]] | None = None


def initialize(net: FlowNetwork) -> SolverState:
    pot = [0] * net.num_vertices
    for i in range(1, net.n + 1):
        pot[net.top(i)] = -i
        pot[net.bottom(i)] = -i
    pot[net.sink] = -(net.n + 1)
    return SolverState(flow=[0] * len(net.edges), potential=pot)


def _pp_count(net: FlowNetwork, state: SolverState) -> int:
    p = state.p_abs(net)
    pot = state.potential
    return sum(
        1
        for i in range(1, net.n + 1)
        if pot[net.top(i)] == pot[net.bottom(i)] and -p + 1 <= pot[net.top(i)] <= 0
    )


def check_invariants(net: FlowNetwork, state: SolverState) -> InvariantReport:
    """Evaluate every maintained invariant; never raises."""
    f, p = state.flow, state.potential
    name = net.vertex_name
    checks = []

    bad = [e.id for e in net.edges if f[e.id] not in (0, 1)]
    checks.append(Check("capacity", not bad, f"edges {bad}" if bad else ""))

    bad_v = []
    for v in range(net.num_vertices):
        if v in (net.source, net.sink):
            continue
        inflow = sum(f[e] for e in net.in_edges[v])
        outflow = sum(f[e] for e in net.out_edges[v])
        if inflow != outflow:
            bad_v.append(name(v))
    value = sum(f[e] for e in net.out_edges[net.source])
    if value != state.v:
        bad_v.append(f"value {value} != v {state.v}")
    checks.append(Check("conservation", not bad_v, ", ".join(bad_v)))

    bad_s = []
    for e in net.edges:
        gap = p[e.head] - p[e.tail]
        if gap < e.cost and f[e.id] != 0:
            bad_s.append(f"{name(e.tail)}->{name(e.head)} carries flow with gap {gap} < cost {e.cost}")
        if gap > e.cost and f[e.id] != e.capacity:
            bad_s.append(f"{name(e.tail)}->{name(e.head)} unsaturated with gap {gap} > cost {e.cost}")
    checks.append(Check("slackness", not bad_s, "; ".join(bad_s)))

    bad_l1 = [
        f"{name(e.tail)}->{name(e.head)}"
        for e in net.edges
        if e.family == BOTTOM_TO_TOP and f[e.id] == 1 and p[e.head] - p[e.tail] != e.cost
    ]
    checks.append(Check("lemma_flow_edge_tight", not bad_l1, ", ".join(bad_l1)))

    bad_l2 = [i for i in range(1, net.n + 1) if p[net.top(i)] < p[net.bottom(i)] - 1]
    checks.append(Check("lemma_top_bottom_gap", not bad_l2, f"indices {bad_l2}" if bad_l2 else ""))

    pp = _pp_count(net, state)
    pa = state.p_abs(net)
    lhs, rhs = pp + (-state.cost(net)), net.n + state.v * pa
    checks.append(Check("potential_bound", lhs >= rhs, "" if lhs >= rhs else f"P_p + A'_v = {lhs} < {rhs}"))
    return InvariantReport(checks)


def step(net: FlowNetwork, state: SolverState, *, check: bool = True) -> Event:
    """Perform one augmentation or one relabel, mutating ``state``."""
    if state.v >= net.n:
        raise InvariantViolation("step called on a maximal flow")
    reach, parent = reachable_set(net, state)
    p_abs = state.p_abs(net)
    if net.sink in reach:
        for arc in path_to(parent, net.sink, net.source):
            state.flow[arc.edge] += 1 if arc.forward else -1
        state.v += 1
        event = Event(AUGMENT, state.v, p_abs)
    else:
        for u in range(net.num_vertices):
            if u not in reach:
                state.potential[u] += 1
        event = Event(RELABEL, state.v, state.p_abs(net))
        if event.p_abs != p_abs - 1:
            raise InvariantViolation(f"relabel moved p_abs from {p_abs} to {event.p_abs}")
    state.trace.append(event)
    if check:
        report = check_invariants(net, state)
        if not report.ok:
            raise InvariantViolation(f"after {event.format()}: {report}")
    return event


def run(
    net: FlowNetwork,
    *,
    check: bool = True,
    on_step: Callable[[SolverState, Event | None], None] | None = None,
) -> tuple[SolverState, list[Event]]:
    """Run to maximal flow value ``n``.

    ``on_step`` is called with the initial state (event ``None``) and after
    every event.
    """
    state = initialize(net)
    if check:
        report = check_invariants(net, state)
        if not report.ok:
            raise InvariantViolation(f"initial state: {report}")
    if on_step:
        on_step(state, None)
    budget = (net.n + 2) ** 2 + net.n
    steps = 0
    while state.v < net.n:
        steps += 1
        if steps > budget:
            raise InvariantViolation(f"no maximal flow after {budget} steps")
        event = step(net, state, check=check)
        if on_step:
            on_step(state, event)
    _check_trace(net, state)
    return state, state.trace


def _check_trace(net: FlowNetwork, state: SolverState) -> None:
    last_p = net.n + 1
    v = 0
    for ev in state.trace:
        if ev.p_abs > last_p:
            raise InvariantViolation("p_abs increased along the trace")
        if ev.kind == AUGMENT:
            if ev.v_after != v + 1:
                raise InvariantViolation("augment did not raise the flow value by one")
            if ev.p_abs > net.n:
                raise InvariantViolation(f"augment at p_abs {ev.p_abs} > n")
            v += 1
        else:
            if ev.p_abs != last_p - 1 or ev.v_after != v:
                raise InvariantViolation("relabel must lower p_abs by one and keep the flow")
        last_p = ev.p_abs
    if v != net.n:
        raise InvariantViolation(f"final flow value {v} != n = {net.n}")
    # every unit pays -1 into the sink; the rest of the cost is poset ascents
    ascents = sum(1 for e in net.edges if e.family == BOTTOM_TO_TOP and e.cost == -1 and state.flow[e.id])
    if state.cost(net) != -(state.v + ascents):
        raise InvariantViolation("final cost does not split into sink and ascent edges")


def extract_partitions(trace: list[Event], n: int) -> DualityResult:
    """Read lambda from augmentations and mu from sink relabels."""
    lam_raw = [ev.p_abs for ev in trace if ev.kind == AUGMENT]
    if len(lam_raw) != n:
        raise InvariantViolation(f"trace holds {len(lam_raw)} augmentations, expected {n}")
    lam = Partition.from_parts(lam_raw)
    # mu_p is the flow value when p_abs leaves p; if the run stops at p_abs = p
    # first, the final flow value n stands in.
    leaving = {ev.p_abs + 1: ev.v_after for ev in trace if ev.kind == RELABEL}
    lam1 = lam.parts[0] if lam.parts else 0
    mu = Partition.from_parts(leaving.get(p, n) for p in range(1, lam1 + 1))
    if mu != conjugate(lam):
        raise ConjugacyViolation(f"mu {mu.parts} is not the conjugate of lambda {lam.parts}")
    if lam.size != n:
        raise ConjugacyViolation(f"lambda {lam.parts} does not sum to {n}")
    return DualityResult(lam, mu, lam.prefix_sums(), mu.prefix_sums())


def flow_witnesses(net: FlowNetwork, state: SolverState) -> list[tuple[str, ...]]:
    """Split the flow into source-sink paths and read each as a sequence."""
    f = state.flow
    used: set[int] = set()
    out = []
    for e0 in net.out_edges[net.source]:
        if not f[e0]:
            continue
        seq = []
        v = net.edges[e0].head
        used.add(e0)
        while v != net.sink:
            if 1 <= v <= net.n:
                seq.append(net.order[v - 1])
            nxt = [e for e in net.out_edges[v] if f[e] and e not in used]
            if len(nxt) != 1:
                raise DecompositionError(f"vertex {net.vertex_name(v)} has {len(nxt)} outgoing flow edges")
            used.add(nxt[0])
            v = net.edges[nxt[0]].head
        out.append(tuple(seq))
    return out


def potential_witnesses(
    net: FlowNetwork, state: SolverState, inst: Instance | None = None
) -> tuple[int, list[tuple[str, ...]]]:
    """Count ``P_p`` and group the counted indices by potential level.

    Family ``i`` (1-based) collects the elements whose top and bottom
    potentials both equal ``1 - i``.  When ``inst`` is given, the families are
    checked to be h-ordered, fully descending and pairwise non-semi-overlapping.
    """
    p = state.p_abs(net)
    pot = state.potential
    families: list[list[str]] = [[] for _ in range(p)]
    for i in range(1, net.n + 1):
        a, b = pot[net.top(i)], pot[net.bottom(i)]
        if a == b and -p + 1 <= a <= 0:
            families[-a].append(net.order[i - 1])
    fams = [tuple(fam) for fam in families]
    count = sum(len(f) for f in fams)
    if inst is not None:
        for fam in fams:
            if not is_h_ordered(fam, inst) or desc(fam, inst) != len(fam):
                raise InvariantViolation(f"potential family {fam} is not a descending h-ordered sequence")
        for i in range(len(fams)):
            for j in range(i + 1, len(fams)):
                if semi_overlapping(fams[i], fams[j], inst):
                    raise InvariantViolation(f"potential families {fams[i]} and {fams[j]} semi-overlap")
    return count, fams


def solve(inst: Instance, *, witnesses: bool = False, check: bool = True) -> tuple[DualityResult, SolverState]:
    """Build the network, run to completion and extract the partitions."""
    net = build_network(inst)
    wit_a: dict[int, list[tuple[str, ...]]] = {}
    wit_d: dict[int, list[tuple[str, ...]]] = {}

    def record(state: SolverState, event: Event | None) -> None:
        if event is None or event.kind == AUGMENT:
            seqs = flow_witnesses(net, state)
            if sum(asc(s, inst) for s in seqs) != -state.cost(net):
                raise DecompositionError("flow witnesses do not account for the flow cost")
            wit_a[state.v] = seqs
        p = state.p_abs(net)
        if 1 <= p <= net.n and p not in wit_d:
            wit_d[p] = potential_witnesses(net, state, inst)[1]

    state, trace = run(net, check=check, on_step=record if witnesses else None)
    result = extract_partitions(trace, inst.n)
    if witnesses:
        result.witnesses_A = wit_a
        result.witnesses_D = wit_d
    return result, state
