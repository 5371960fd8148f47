import pytest

from gkflow.errors import InvariantViolation
from gkflow.network import build_network
from gkflow.oracles import brute_A, brute_D
from gkflow.poset import Labeling, Partition, asc, conjugate, transitive_closure, validate_instance
from gkflow.solver import (
    AUGMENT,
    RELABEL,
    check_invariants,
    extract_partitions,
    flow_witnesses,
    initialize,
    potential_witnesses,
    run,
    solve,
    step,
)

from conftest import corpus


def chain3():
    p = transitive_closure([("x", "y"), ("y", "z")], "xyz")
    return validate_instance(p, Labeling(tuple("xyz")), p.relations())


def antichain3():
    p = transitive_closure([], "xyz")
    return validate_instance(p, Labeling(("y", "x", "z")), [])


def test_initialize(example):
    net = build_network(example)
    state = initialize(net)
    assert state.potential[net.sink] == -6
    assert state.potential[net.top(3)] == state.potential[net.bottom(3)] == -3
    assert state.potential[net.source] == 0
    assert check_invariants(net, state).ok

    p = transitive_closure([], ["x"])
    one = build_network(validate_instance(p, Labeling(("x",)), []))
    assert initialize(one).potential == [0, -1, -1, -2]


def test_first_events(example):
    net = build_network(example)
    state = initialize(net)
    ev = step(net, state)
    assert ev.kind == RELABEL
    while ev.kind == RELABEL:
        before = list(state.flow)
        ev = step(net, state)
        if ev.kind == RELABEL:
            assert state.flow == before
    assert ev.p_abs == 3


def test_augment_leaves_potentials(example):
    net = build_network(example)
    state = initialize(net)
    while True:
        pot = list(state.potential)
        ev = step(net, state)
        if ev.kind == AUGMENT:
            assert state.potential == pot
            break


def test_example_result(example):
    result, state = solve(example, witnesses=True)
    assert result.lambda_ == Partition((3, 1, 1))
    assert result.mu == Partition((3, 1, 1))
    assert result.a_table == [3, 4, 5]
    assert result.d_table == [3, 4, 5]
    assert state.v == 5
    (seq,) = result.witnesses_A[1]
    assert asc(seq, example) == 3
    assert sum(asc(s, example) for s in result.witnesses_A[5]) == 5


def test_small_posets():
    assert solve(chain3())[0].lambda_ == Partition((3,))
    assert solve(antichain3())[0].lambda_ == Partition((1, 1, 1))
    p = transitive_closure([], ["x"])
    r, _ = solve(validate_instance(p, Labeling(("x",)), []))
    assert r.lambda_ == r.mu == Partition((1,))


def test_empty_poset():
    p = transitive_closure([], [])
    r, state = solve(validate_instance(p, Labeling(()), []))
    assert r.lambda_ == r.mu == Partition(())
    assert state.trace == []


def test_localized_perm_2431():
    from gkflow.corollaries import build_localized_instance

    r, _ = solve(build_localized_instance((2, 4, 3, 1)))
    assert r.lambda_ == Partition((2, 1, 1))
    assert r.mu == Partition((3, 1))


def test_zero_flow_witnesses(example):
    net = build_network(example)
    assert flow_witnesses(net, initialize(net)) == []


def test_potential_witnesses_initial_and_final(example):
    net = build_network(example)
    state = initialize(net)
    count, fams = potential_witnesses(net, state, example)
    # window {-5..0} at p = 6 holds every level -1..-5
    assert count == 5 and len(fams) == 6 and fams[0] == ()
    state, _ = run(net)
    count, fams = potential_witnesses(net, state, example)
    assert state.p_abs(net) == 0 and count == 0 and fams == []


def test_potential_witnesses_empty_when_no_pair_matches(example):
    net = build_network(example)
    state = initialize(net)
    for i in range(1, 6):
        state.potential[net.top(i)] += 1
    assert potential_witnesses(net, state) == (0, [(), (), (), (), (), ()])


def test_check_invariants_detects_gap(example):
    net = build_network(example)
    state = initialize(net)
    state.potential[net.top(1)] = state.potential[net.bottom(1)] - 2
    fails = {c.name: c for c in check_invariants(net, state).failures()}
    assert "lemma_top_bottom_gap" in fails
    assert "[1]" in fails["lemma_top_bottom_gap"].detail


def test_check_invariants_detects_slackness(example):
    net = build_network(example)
    state = initialize(net)
    # push one unit down b0 -> t1 -> b1 -> sink where b0->t1 has gap -1 < 0
    for tail, head in ((net.source, net.top(1)), (net.top(1), net.bottom(1)), (net.bottom(1), net.sink)):
        state.flow[net.find_edge(tail, head).id] = 1
    state.v = 1
    names = {c.name for c in check_invariants(net, state).failures()}
    assert "slackness" in names
    assert "conservation" not in names


def test_step_raises_on_corrupt_state(example):
    net = build_network(example)
    state = initialize(net)
    state.potential[net.top(2)] = -10
    with pytest.raises(InvariantViolation):
        step(net, state)


def test_extract_rejects_bad_trace():
    from gkflow.solver import Event

    with pytest.raises(InvariantViolation):
        extract_partitions([Event(AUGMENT, 1, 1)], 2)


def test_corpus_against_oracles():
    for _, inst in corpus(max_n=5, per_size=10, seed=3):
        net = build_network(inst)
        seen = []

        def rec(state, ev):
            seen.append((state.p_abs(net), state.v, -state.cost(net)))
            wit = flow_witnesses(net, state)
            assert len(wit) == state.v
            assert sum(asc(s, inst) for s in wit) == -state.cost(net)

        state, trace = run(net, on_step=rec)
        res = extract_partitions(trace, inst.n)
        assert res.mu == conjugate(res.lambda_)
        for p, v, c in seen:
            assert c == brute_A(inst, v)
            assert brute_D(inst, p) + brute_A(inst, v) == inst.n + v * p
        relabels = sum(ev.kind == RELABEL for ev in trace)
        assert relabels <= (inst.n + 1) * (inst.n + 2)
        lam_raw = [ev.p_abs for ev in trace if ev.kind == AUGMENT]
        assert lam_raw == sorted(lam_raw, reverse=True) and lam_raw[0] <= inst.n


def test_bfs_path_is_deterministic(example):
    net = build_network(example)
    s1, _ = run(net)
    s2, _ = run(net)
    assert s1.flow == s2.flow and s1.trace == s2.trace
