import itertools

import pytest
from hypothesis import given, strategies as st

from gkflow.errors import (
    Axiom1Violation,
    Axiom2Violation,
    Axiom3Violation,
    CycleError,
    NotAdjacentableError,
    NotHOrderedError,
    OverlapError,
    UnknownElementError,
)
from gkflow.generate import random_instance, random_labeling, random_poset
from gkflow.poset import (
    Labeling,
    Partition,
    SequenceKind,
    asc,
    classify_sequence,
    conjugate,
    desc,
    forced_pairs,
    h_increasing_pairs,
    semi_overlapping,
    transitive_closure,
    validate_instance,
)

from conftest import EX_CP, EX_H


def test_closure_of_example_covers():
    p = transitive_closure([("a", "b"), ("b", "d"), ("c", "d"), ("d", "e")], "abcde")
    assert set(p.relations()) == {
        ("a", "b"), ("a", "d"), ("a", "e"), ("b", "d"), ("b", "e"), ("c", "d"), ("c", "e"), ("d", "e"),
    }
    assert set(p.covers()) == {("a", "b"), ("b", "d"), ("c", "d"), ("d", "e")}


def test_closure_empty_and_errors():
    assert transitive_closure([], "ab").relations() == []
    with pytest.raises(CycleError):
        transitive_closure([("a", "b"), ("b", "a")], "ab")
    with pytest.raises(UnknownElementError):
        transitive_closure([("a", "z")], "ab")


def test_validate_example(example):
    assert example.forced == {("a", "b"), ("a", "d"), ("a", "e"), ("b", "d")}


def test_validate_missing_forced_pair(example):
    cp = [p for p in EX_CP if p != ("a", "b")]
    with pytest.raises(Axiom1Violation) as info:
        validate_instance(example.poset, example.labeling, cp)
    assert info.value.pairs == [("a", "b")]
    # dropping (a,b) also breaks transitivity through e; both are reported
    assert info.value.violations[3] == [("a", "b")]


def test_validate_backwards_pair(example):
    with pytest.raises(Axiom2Violation) as info:
        validate_instance(example.poset, example.labeling, EX_CP + [("e", "a")])
    assert ("e", "a") in info.value.pairs


def test_validate_not_transitive(example):
    lab = Labeling(tuple("abcde"))
    poset = transitive_closure([], "abcde")
    with pytest.raises(Axiom3Violation) as info:
        validate_instance(poset, lab, [("a", "b"), ("b", "c")])
    assert info.value.pairs == [("a", "c")]


def test_classify(example):
    assert classify_sequence(("a", "e", "b", "d"), example) is SequenceKind.ADJACENTABLE
    # h runs 1, 5, 4: not even h-ordered
    assert classify_sequence(("a", "c", "d"), example) is SequenceKind.NEITHER
    # h runs 2, 3, 5 but (b, c) is not compatible
    assert classify_sequence(("e", "b", "c"), example) is SequenceKind.H_ORDERED_ONLY
    assert classify_sequence((), example) is SequenceKind.ADJACENTABLE
    with pytest.raises(UnknownElementError):
        classify_sequence(("z",), example)


def test_asc(example):
    assert asc(("a", "e", "b", "d"), example) == 3
    assert asc((), example) == 0
    assert asc(("c",), example) == 1
    with pytest.raises(NotAdjacentableError):
        asc(("e", "b", "c"), example)


def test_desc(example):
    assert desc(("a", "e", "b", "d"), example) == 2
    assert desc(("e", "b", "c"), example) == 3
    assert desc((), example) == 0
    with pytest.raises(NotHOrderedError):
        desc(("c", "d"), example)


def _desc_by_subsets(seq, inst):
    best = 0
    for r in range(len(seq) + 1):
        for sub in itertools.combinations(seq, r):
            if all(not inst.poset.less(sub[i], sub[j]) for i in range(r) for j in range(i + 1, r)):
                best = max(best, r)
    return best


def test_desc_matches_subset_enumeration():
    import random

    rng = random.Random(5)
    for _ in range(60):
        inst = random_instance(rng.randint(1, 7), rng)
        seq = [x for x in inst.labeling.order if rng.random() < 0.7]
        assert desc(seq, inst) == _desc_by_subsets(seq, inst)


def test_semi_overlapping(example):
    assert semi_overlapping(("a", "e", "d"), ("b", "c"), example)
    assert not semi_overlapping(("a", "e"), ("b", "c"), example)
    assert not semi_overlapping(("a",), (), example)
    with pytest.raises(OverlapError):
        semi_overlapping(("a", "e"), ("e",), example)


def test_conjugate_examples():
    assert conjugate(Partition((3, 1, 1))) == Partition((3, 1, 1))
    assert conjugate(Partition((4, 2))) == Partition((2, 2, 1, 1))
    assert conjugate(Partition(())) == Partition(())


def test_partition_rejects_increasing():
    with pytest.raises(ValueError):
        Partition((1, 2))


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def test_conjugate_involution_exhaustive():
    count = 0
    for n in range(13):
        for parts in _partitions(n):
            p = Partition(parts)
            q = conjugate(p)
            assert conjugate(q) == p
            assert q.size == p.size == n
            count += 1
    assert count == sum(1 for n in range(13) for _ in _partitions(n))


@given(st.integers(0, 10_000), st.integers(0, 7))
def test_forced_and_full_relations_are_valid(seed, n):
    import random

    rng = random.Random(seed)
    poset = random_poset(n, rng)
    lab = random_labeling(poset, rng)
    validate_instance(poset, lab, forced_pairs(poset, lab))
    validate_instance(poset, lab, h_increasing_pairs(lab))


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_sequence_statistics_bounded(seed, n):
    import random

    rng = random.Random(seed)
    inst = random_instance(n, rng)
    elems = list(inst.elements)
    for r in range(min(n, 3) + 1):
        for seq in itertools.permutations(elems, r):
            kind = classify_sequence(seq, inst)
            if kind is SequenceKind.ADJACENTABLE:
                assert all(inst.h(a) < inst.h(b) for a, b in zip(seq, seq[1:]))
                assert asc(seq, inst) <= len(seq)
            if kind is not SequenceKind.NEITHER:
                assert desc(seq, inst) <= len(seq)


@given(st.integers(0, 10_000))
def test_semi_overlapping_symmetric(seed):
    import random

    rng = random.Random(seed)
    inst = random_instance(rng.randint(2, 6), rng)
    order = list(inst.labeling.order)
    sa = [x for x in order if rng.random() < 0.5]
    sb = [x for x in order if x not in sa and rng.random() < 0.7]
    assert semi_overlapping(sa, sb, inst) == semi_overlapping(sb, sa, inst)


def test_labeling_bijection():
    lab = Labeling.from_mapping(EX_H)
    assert [lab.h_inv(lab.h(x)) for x in "abcde"] == list("abcde")
    from gkflow.errors import LabelingError

    with pytest.raises(LabelingError):
        Labeling.from_mapping({"a": 1, "b": 1})
