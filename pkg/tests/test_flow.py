import random

import pytest
from hypothesis import given, settings, strategies as st

from connaug.flow import (
    INF,
    build_split_network,
    max_flow,
    min_cost_q_connect,
    node_in,
    node_out,
    sides_to_biset,
    sink_sides_to_biset,
)
from connaug.instance import InfeasibleError, Instance

from helpers import brute_q_connect, brute_separator


def flow(n, edges, directed, u, v, limit=INF):
    net = build_split_network(n, edges, directed)
    return max_flow(net, node_out(u), node_in(v), limit)


def test_path_and_disconnected():
    assert flow(3, [(0, 1), (1, 2)], False, 0, 2).value == 1
    assert flow(4, [(0, 1), (2, 3)], False, 0, 3).value == 0


def test_cycle10(cycle10):
    for u in cycle10.terminals:
        for v in cycle10.terminals:
            if u != v:
                assert flow(cycle10.n, cycle10.jedges, False, u, v).value == 2


def test_cycle10_cut_and_limit(cycle10):
    net = build_split_network(cycle10.n, cycle10.jedges, False, edge_capacity=INF)
    res = max_flow(net, node_out(0), node_in(2), 3)
    assert res.value == 2 and not res.saturated
    inner, outer = sides_to_biset(res, cycle10.n)
    # minimal source side: terminal 0 plus its two subdivision neighbours as boundary
    assert inner == {0} and outer - inner == {5, 9}
    inner2, outer2 = sink_sides_to_biset(res, cycle10.n)
    assert 2 not in outer2 and len(outer2 - inner2) == 2
    assert max_flow(net, node_out(0), node_in(2), 1).value == 1


def test_zero_capacity():
    net = build_split_network(3, [], False)
    res = max_flow(net, node_out(0), node_in(2))
    assert res.value == 0 and res.source_side == {node_out(0)}


def test_conservation(cycle10):
    net = build_split_network(cycle10.n, cycle10.jedges, False)
    res = max_flow(net, node_out(0), node_in(3))
    excess = [0] * net.n
    for a in range(0, len(net.head), 2):
        f = res.flow_on(a)
        assert 0 <= f <= net.cap[a]
        excess[net.tail(a)] -= f
        excess[net.head[a]] += f
    for x in range(net.n):
        if x not in (res.source, res.sink):
            assert excess[x] == 0
    assert excess[res.sink] == res.value


def test_min_cost_example(flow_example):
    plan = min_cost_q_connect(flow_example, 0, 2, 2)
    assert plan.cost == 5 and plan.edges == (0, 1)


def test_min_cost_already_connected(flow_example):
    assert min_cost_q_connect(flow_example, 0, 2, 1) == ((), 0)


def test_min_cost_infeasible(flow_example):
    with pytest.raises(InfeasibleError) as exc:
        min_cost_q_connect(flow_example, 0, 2, 4)
    assert exc.value.witness == (0, 2)


def random_instance(rng, n, m, directed, model):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
    rng.shuffle(pairs)
    j = pairs[: rng.randint(0, n)]
    cands = tuple((u, v, rng.randint(0, 6)) for u, v in pairs[len(j) : len(j) + m])
    ncost = tuple(rng.randint(0, 6) for _ in range(n)) if model == "node" else ()
    return Instance(directed, model, n, (0, 1), 0, tuple(j), cands, ncost)


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10**6),
    n=st.integers(3, 7),
    directed=st.booleans(),
    model=st.sampled_from(["edge", "node"]),
    q=st.integers(1, 3),
)
def test_min_cost_matches_brute_force(seed, n, directed, model, q):
    rng = random.Random(seed)
    inst = random_instance(rng, n, rng.randint(0, 9), directed, model)
    ref = brute_q_connect(inst, 0, 1, q)
    if ref is None:
        with pytest.raises(InfeasibleError):
            min_cost_q_connect(inst, 0, 1, q)
    else:
        assert min_cost_q_connect(inst, 0, 1, q).cost == ref


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 9), directed=st.booleans())
def test_menger_matches_separators(seed, n, directed):
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
    edges = [e for e in pairs if rng.random() < 0.4 and e not in ((0, 1), (1, 0))]
    assert flow(n, edges, directed, 0, 1).value == brute_separator(n, edges, directed, 0, 1)
