"""Special instances: permutations (localized) and linear extensions (classical),
plus the antichain exchange used to make antichain families non-semi-overlapping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvariantViolation, NotLinearExtension
from .poset import Instance, Labeling, Poset, h_increasing_pairs, transitive_closure, validate_instance


def build_localized_instance(perm: Sequence[int]) -> Instance:
    """Natural order on ``1..n`` labelled by the inverse permutation."""
    perm = [int(x) for x in perm]
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    elements = [str(i) for i in range(1, n + 1)]
    poset = transitive_closure([(str(i), str(i + 1)) for i in range(1, n)], elements)
    labeling = Labeling(tuple(str(x) for x in perm))  # h(perm[i]) = i + 1
    return validate_instance(poset, labeling, h_increasing_pairs(labeling))


def default_linear_extension(poset: Poset) -> Labeling:
    """Topological order, ties broken by position in the element list."""
    n = poset.n
    lt = poset.lt
    placed: list[int] = []
    done = [False] * n
    while len(placed) < n:
        for i in range(n):
            if not done[i] and all(done[j] for j in range(n) if lt[j][i]):
                done[i] = True
                placed.append(i)
                break
    return Labeling(tuple(poset.elements[i] for i in placed))


def is_linear_extension(poset: Poset, labeling: Labeling) -> bool:
    return all(labeling.h(x) < labeling.h(y) for x, y in poset.relations())


def build_classical_instance(poset: Poset, h: Labeling | None = None) -> Instance:
    if h is None:
        h = default_linear_extension(poset)
    elif not is_linear_extension(poset, h):
        bad = [(x, y) for x, y in poset.relations() if h.h(x) > h.h(y)]
        raise NotLinearExtension(f"labeling reverses {bad}")
    return validate_instance(poset, h, poset.relations())


@dataclass(frozen=True)
class AntichainFamily:
    """Disjoint antichains of a classical instance, each kept in h order."""

    inst: Instance
    members: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        h = self.inst.h
        members = tuple(tuple(sorted(m, key=h)) for m in self.members)
        object.__setattr__(self, "members", members)
        seen: set[str] = set()
        for m in members:
            if seen & set(m):
                raise ValueError("antichains must be disjoint")
            seen |= set(m)
            for a in m:
                for b in m:
                    if self.inst.poset.less(a, b):
                        raise ValueError(f"{m} is not an antichain")

    def key(self) -> tuple[int, ...]:
        """Concatenated h-ranks of the members; decreases at each exchange."""
        return tuple(self.inst.h(x) for m in self.members for x in m)

    @property
    def size(self) -> int:
        return sum(len(m) for m in self.members)


def antichain_exchange(family: AntichainFamily, i: int, j: int) -> AntichainFamily:
    """Swap the elements of member ``i`` lying above member ``j`` with those below."""
    if not i < j:
        raise ValueError("need i < j")
    less = family.inst.poset.less
    di, dj = family.members[i], family.members[j]
    above = {x for x in di if any(less(y, x) for y in dj)}
    below = {y for y in dj if any(less(y, x) for x in di)}
    if not above and not below:
        return family
    members = list(family.members)
    members[i] = tuple(x for x in di if x not in above) + tuple(below)
    members[j] = tuple(y for y in dj if y not in below) + tuple(above)
    return AntichainFamily(family.inst, tuple(members))


def iter_exchanges(family: AntichainFamily) -> Iterator[AntichainFamily]:
    """Yield the family after every productive exchange until none applies."""
    m = len(family.members)
    bound = max(m, 1) ** family.size
    steps = 0
    while True:
        for i in range(m):
            for j in range(i + 1, m):
                nxt = antichain_exchange(family, i, j)
                if nxt is not family:
                    if not nxt.key() < family.key():
                        raise InvariantViolation("exchange did not decrease the family key")
                    family = nxt
                    steps += 1
                    if steps > bound:
                        raise InvariantViolation("antichain exchange exceeded its termination bound")
                    yield family
                    break
            else:
                continue
            break
        else:
            return


def normalize_antichains(family: AntichainFamily, inst: Instance | None = None) -> AntichainFamily:
    """Exchange until no member has elements above a later member."""
    if inst is not None and inst != family.inst:
        raise ValueError("family belongs to a different instance")
    for family in iter_exchanges(family):
        pass
    return family
