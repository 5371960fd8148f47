"""Solver-versus-oracle comparisons shared by the CLI and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import oracles
from .corollaries import build_classical_instance, build_localized_instance
from .generate import random_linear_extension
from .network import build_network
from .poset import Instance, Labeling, Poset, conjugate
from .solver import AUGMENT, RELABEL, Event, SolverState, extract_partitions, potential_witnesses, run


@dataclass
class Comparison:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyResult:
    label: str
    n: int
    lambda_: list[int] = field(default_factory=list)
    mu: list[int] = field(default_factory=list)
    comparisons: list[Comparison] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.comparisons)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.comparisons.append(Comparison(name, bool(ok), "" if ok else detail))


def _padded_prefix(parts: Sequence[int], n: int) -> list[int]:
    out, s = [], 0
    for k in range(n):
        s += parts[k] if k < len(parts) else 0
        out.append(s)
    return out


def check_trace(trace: Sequence[Event], n: int) -> tuple[bool, str]:
    last_p, v = n + 1, 0
    aug_p = []
    for ev in trace:
        if ev.kind == AUGMENT:
            if ev.v_after != v + 1:
                return False, "augment did not add one unit"
            v = ev.v_after
            aug_p.append(ev.p_abs)
        elif ev.kind == RELABEL:
            if ev.p_abs != last_p - 1:
                return False, f"relabel from {last_p} to {ev.p_abs}"
        last_p = ev.p_abs
    if any(a < b for a, b in zip(aug_p, aug_p[1:])):
        return False, f"augment p_abs not weakly decreasing: {aug_p}"
    if v != n:
        return False, f"final flow value {v} != {n}"
    return True, ""


def verify_general(inst: Instance, label: str = "instance", budget: oracles.OracleBudget = oracles.DEFAULT_BUDGET) -> VerifyResult:
    """Run the solver (invariants asserted per step) and compare with the oracles."""
    n = inst.n
    net = build_network(inst)
    states: list[tuple[int, int, int, int]] = []

    def record(state: SolverState, event: Event | None) -> None:
        pp, _ = potential_witnesses(net, state, inst)
        states.append((state.p_abs(net), state.v, -state.cost(net), pp))

    _, trace = run(net, on_step=record)
    res = extract_partitions(trace, n)
    out = VerifyResult(label, n, list(res.lambda_.parts), list(res.mu.parts))

    a_oracle = [oracles.brute_A(inst, k, budget) for k in range(1, n + 1)]
    d_oracle = [oracles.brute_D(inst, k, budget) for k in range(1, n + 1)]
    a_solver = _padded_prefix(res.lambda_.parts, n)
    d_solver = _padded_prefix(conjugate(res.lambda_).parts, n)
    out.add("a_table", a_solver == a_oracle, f"solver {a_solver} oracle {a_oracle}")
    out.add("d_table", d_solver == d_oracle, f"solver {d_solver} oracle {d_oracle}")
    out.add("conjugacy", res.mu == conjugate(res.lambda_) and res.lambda_.size == n,
            f"lambda {res.lambda_.parts} mu {res.mu.parts}")

    bad_cost = [(v, c) for _, v, c, _ in states if c != oracles.brute_A(inst, v, budget)]
    out.add("min_cost_equals_A", not bad_cost, f"(v, -cost) mismatches {bad_cost}")
    bad_eq = [
        (p, v) for p, v, _, _ in states
        if oracles.brute_D(inst, p, budget) + oracles.brute_A(inst, v, budget) != n + v * p
    ]
    out.add("duality_equality", not bad_eq, f"(p, v) failures {bad_eq}")
    bad_pp = [(p, pp) for p, _, _, pp in states if pp != oracles.brute_D(inst, p, budget)]
    out.add("potential_count_equals_D", not bad_pp, f"(p, P_p) mismatches {bad_pp}")
    ok, why = check_trace(trace, n)
    out.add("trace", ok, why)
    return out


def verify_localized(perm: Sequence[int], budget: oracles.OracleBudget = oracles.DEFAULT_BUDGET) -> VerifyResult:
    perm = [int(x) for x in perm]
    n = len(perm)
    inst = build_localized_instance(perm)
    net = build_network(inst)
    _, trace = run(net)
    res = extract_partitions(trace, n)
    out = VerifyResult("perm=" + ",".join(map(str, perm)), n, list(res.lambda_.parts), list(res.mu.parts))
    a_star = [oracles.localized_star(perm, k, "A_star", budget) for k in range(1, n + 1)]
    d_star = [oracles.localized_star(perm, k, "D_star", budget) for k in range(1, n + 1)]
    a_solver = _padded_prefix(res.lambda_.parts, n)
    d_solver = _padded_prefix(res.mu.parts, n)
    out.add("a_star", a_solver == a_star, f"solver {a_solver} oracle {a_star}")
    out.add("d_star", d_solver == d_star, f"solver {d_solver} oracle {d_star}")
    out.add("conjugacy", res.mu == conjugate(res.lambda_), f"lambda {res.lambda_.parts} mu {res.mu.parts}")
    ok, why = check_trace(trace, n)
    out.add("trace", ok, why)
    return out


def verify_classical(
    poset: Poset,
    h: Labeling | None = None,
    label: str = "poset",
    extensions: int = 3,
    seed: int = 0,
    budget: oracles.OracleBudget = oracles.DEFAULT_BUDGET,
) -> VerifyResult:
    n = poset.n
    inst = build_classical_instance(poset, h)
    _, trace = run(build_network(inst))
    res = extract_partitions(trace, n)
    out = VerifyResult(label, n, list(res.lambda_.parts), list(res.mu.parts))
    chains = [oracles.brute_chain_antichain(poset, k, "chains", budget) for k in range(1, n + 1)]
    antichains = [oracles.brute_chain_antichain(poset, k, "antichains", budget) for k in range(1, n + 1)]
    a_solver = _padded_prefix(res.lambda_.parts, n)
    d_solver = _padded_prefix(res.mu.parts, n)
    out.add("chains", a_solver == chains, f"solver {a_solver} oracle {chains}")
    out.add("antichains", d_solver == antichains, f"solver {d_solver} oracle {antichains}")
    out.add("conjugacy", res.mu == conjugate(res.lambda_), f"lambda {res.lambda_.parts} mu {res.mu.parts}")

    rng = random.Random(seed)
    seen: dict[tuple, tuple[int, ...]] = {inst.labeling.order: res.lambda_.parts}
    for _ in range(10 * extensions):
        if len(seen) >= extensions:
            break
        ext = random_linear_extension(poset, rng)
        if ext.order in seen:
            continue
        _, tr = run(build_network(build_classical_instance(poset, ext)))
        seen[ext.order] = extract_partitions(tr, n).lambda_.parts
    lams = set(seen.values())
    out.add("extension_independence", len(lams) == 1, f"lambdas {sorted(lams)} over {len(seen)} extensions")
    return out
