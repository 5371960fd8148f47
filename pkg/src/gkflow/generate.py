"""Seeded random posets, labelings and instances for test corpora."""

from __future__ import annotations

import random
from typing import Iterator

from .poset import (
    Instance,
    Labeling,
    Poset,
    forced_pairs,
    h_increasing_pairs,
    transitive_closure,
    validate_instance,
)

CP_FAMILIES = ("minimal", "full", "intermediate")


def element_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"e{i}" for i in range(1, n + 1)]


def random_poset(n: int, rng: random.Random, density: float | None = None) -> Poset:
    """Random DAG over a hidden random order, closed transitively."""
    names = element_names(n)
    if density is None:
        density = rng.choice((0.15, 0.3, 0.5, 0.8))
    hidden = list(range(n))
    rng.shuffle(hidden)
    covers = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                covers.append((names[hidden[a]], names[hidden[b]]))
    return transitive_closure(covers, names)


def random_labeling(poset: Poset, rng: random.Random) -> Labeling:
    order = list(poset.elements)
    rng.shuffle(order)
    return Labeling(tuple(order))


def random_linear_extension(poset: Poset, rng: random.Random) -> Labeling:
    n, lt = poset.n, poset.lt
    done = [False] * n
    order = []
    while len(order) < n:
        ready = [i for i in range(n) if not done[i] and all(done[j] for j in range(n) if lt[j][i])]
        i = rng.choice(ready)
        done[i] = True
        order.append(poset.elements[i])
    return Labeling(tuple(order))


def resolve_cp(poset: Poset, labeling: Labeling, family: str, rng: random.Random | None = None):
    """Compatibility relation of the named family.

    ``intermediate`` closes the forced pairs together with a random subset of
    h-increasing pairs; the closure stays h-increasing, so it is always valid.
    """
    if family == "minimal":
        return forced_pairs(poset, labeling)
    if family == "full":
        return h_increasing_pairs(labeling)
    if family == "intermediate":
        rng = rng or random.Random(0)
        base = set(forced_pairs(poset, labeling))
        base |= {p for p in sorted(h_increasing_pairs(labeling)) if rng.random() < 0.35}
        closed = transitive_closure(base, poset.elements)
        return frozenset(closed.relations())
    raise ValueError(f"unknown compatibility family {family!r}")


def random_instance(n: int, rng: random.Random, family: str | None = None) -> Instance:
    poset = random_poset(n, rng)
    labeling = random_labeling(poset, rng)
    family = family or rng.choice(CP_FAMILIES)
    return validate_instance(poset, labeling, resolve_cp(poset, labeling, family, rng))


def generate_instances(n: int, seed: int, count: int) -> Iterator[tuple[str, Instance]]:
    """``count`` instances of size ``n``; compatibility families rotate."""
    rng = random.Random(seed)
    for i in range(count):
        family = CP_FAMILIES[i % len(CP_FAMILIES)]
        yield family, random_instance(n, rng, family)


def random_permutation(n: int, rng: random.Random) -> list[int]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm
