"""Exhaustive reference computations for small inputs.

Every oracle enumerates families of disjoint blocks.  Elements are visited in
a fixed order and each is either skipped, appended to an existing block, or
opens a new block, so each family is produced exactly once.  The tables hold
the best value for each exact number of nonempty blocks; the value for "at
most k blocks" is a running maximum, which models empty members.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from bisect import bisect_right
from typing import Callable, Sequence

from .errors import BudgetExceeded
from .poset import Instance, Partition, Poset, asc, desc, semi_overlapping


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 7
    max_states: int = 2_000_000

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")


DEFAULT_BUDGET = OracleBudget()


class _Counter:
    def __init__(self, budget: OracleBudget):
        self.budget = budget
        self.states = 0

    def tick(self):
        self.states += 1
        if self.states > self.budget.max_states:
            raise BudgetExceeded(f"search exceeded {self.budget.max_states} states")


def _check_size(n: int, budget: OracleBudget) -> None:
    if n > budget.max_n:
        raise BudgetExceeded(f"n = {n} exceeds oracle budget {budget.max_n}")


def _enumerate_families(
    items: Sequence,
    can_append: Callable[[list, object], bool],
    counter: _Counter,
    leaf: Callable[[list[list]], None],
) -> None:
    blocks: list[list] = []

    def rec(pos: int):
        counter.tick()
        if pos == len(items):
            leaf(blocks)
            return
        x = items[pos]
        rec(pos + 1)
        for b in blocks:
            if can_append(b, x):
                b.append(x)
                rec(pos + 1)
                b.pop()
        blocks.append([x])
        rec(pos + 1)
        blocks.pop()

    rec(0)


def _at_most(best_exact: list[int], k: int) -> int:
    return max(best_exact[: k + 1])


@lru_cache(maxsize=4096)
def _a_table(inst: Instance, budget: OracleBudget) -> tuple[int, ...]:
    n = inst.n
    best = [0] * (n + 1)
    order = inst.labeling.order
    cp = inst.cp

    def leaf(blocks):
        m = len(blocks)
        val = sum(asc(b, inst) for b in blocks)
        if val > best[m]:
            best[m] = val

    # adjacentable sequences are h-ordered, so visiting in h order and
    # appending at the end reaches every one of them
    _enumerate_families(order, lambda b, x: (b[-1], x) in cp, _Counter(budget), leaf)
    return tuple(best)


@lru_cache(maxsize=4096)
def _d_table(inst: Instance, budget: OracleBudget) -> tuple[int, ...]:
    n = inst.n
    best = [0] * (n + 1)
    order = inst.labeling.order

    def leaf(blocks):
        m = len(blocks)
        val = sum(desc(b, inst) for b in blocks)
        if val <= best[m]:
            return
        for i, j in combinations(range(m), 2):
            if semi_overlapping(blocks[i], blocks[j], inst):
                return
        best[m] = val

    _enumerate_families(order, lambda b, x: True, _Counter(budget), leaf)
    return tuple(best)


def brute_A(inst: Instance, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Max total ascent count of ``k`` disjoint adjacentable sequences."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    _check_size(inst.n, budget)
    return _at_most(_a_table(inst, budget), k)


def brute_D(inst: Instance, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Max total desc of ``k`` disjoint, pairwise non-semi-overlapping h-ordered sequences."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    _check_size(inst.n, budget)
    return _at_most(_d_table(inst, budget), k)


@lru_cache(maxsize=4096)
def _chain_table(poset: Poset, mode: str, budget: OracleBudget) -> tuple[int, ...]:
    n = poset.n
    lt = poset.lt
    best = [0] * (n + 1)
    if mode == "chains":
        ok = lambda b, x: all(lt[y][x] or lt[x][y] for y in b)
    elif mode == "antichains":
        ok = lambda b, x: not any(lt[y][x] or lt[x][y] for y in b)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    def leaf(blocks):
        m = len(blocks)
        val = sum(len(b) for b in blocks)
        if val > best[m]:
            best[m] = val

    _enumerate_families(range(n), ok, _Counter(budget), leaf)
    return tuple(best)


def brute_chain_antichain(poset: Poset, k: int, mode: str, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Max number of elements covered by ``k`` disjoint chains (or antichains)."""
    _check_size(poset.n, budget)
    return _at_most(_chain_table(poset, mode, budget), k)


def _check_perm(perm: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"not a permutation of 1..{len(perm)}: {perm}")
    return perm


def _longest_decreasing(seq: Sequence[int]) -> int:
    best = [1] * len(seq)
    for j in range(len(seq)):
        for i in range(j):
            if seq[i] > seq[j]:
                best[j] = max(best[j], best[i] + 1)
    return max(best, default=0)


@lru_cache(maxsize=4096)
def _star_table(perm: tuple[int, ...], mode: str, budget: OracleBudget) -> tuple[int, ...]:
    n = len(perm)
    best = [0] * (n + 1)
    if mode == "A_star":

        def leaf(blocks):
            m = len(blocks)
            val = sum(1 + sum(a < b for a, b in zip(blk, blk[1:])) for blk in blocks)
            if val > best[m]:
                best[m] = val

        _enumerate_families(perm, lambda b, x: True, _Counter(budget), leaf)
    elif mode == "D_star":
        counter = _Counter(budget)
        # cut positions split sigma(1..n) into consecutive blocks
        for m in range(1, n + 1):
            for cuts in combinations(range(1, n), m - 1):
                counter.tick()
                bounds = (0, *cuts, n)
                val = sum(_longest_decreasing(perm[a:b]) for a, b in zip(bounds, bounds[1:]))
                best[m] = max(best[m], val)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return tuple(best)


def localized_star(perm: Sequence[int], k: int, mode: str, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Permutation quantities: ``A_star`` (ascents of k disjoint subsequences)
    or ``D_star`` (longest decreasing runs over k consecutive blocks)."""
    perm = _check_perm(perm)
    _check_size(len(perm), budget)
    return _at_most(_star_table(perm, mode, budget), k)


def rsk_shape(perm: Sequence[int]) -> Partition:
    """Shape of the RSK insertion tableau (row insertion)."""
    rows: list[list[int]] = []
    for x in _check_perm(perm):
        for row in rows:
            pos = bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                break
            row[pos], x = x, row[pos]
        else:
            rows.append([x])
    return Partition(tuple(len(r) for r in rows))


def differences(table: Sequence[int]) -> list[int]:
    """Turn cumulative values ``T_1, T_2, ...`` into increments."""
    out, prev = [], 0
    for t in table:
        out.append(t - prev)
        prev = t
    return out


def partition_from(fn: Callable[[int], int], n: int) -> Partition:
    """Partition whose prefix sums are ``fn(1), ..., fn(n)``."""
    return Partition.from_parts(differences([fn(k) for k in range(1, n + 1)]))
