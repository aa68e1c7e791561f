import random

import pytest
from hypothesis import given, settings, strategies as st

from connaug.generate import GenParams, gen_random
from connaug.instance import InfeasibleError, Instance, edge_set_cost, normalize
from connaug.oracle import GuardExceeded, opt_augment, opt_rooted
from connaug.verify import check_rooted, check_subset

from helpers import brute_augment


def test_already_feasible():
    inst = Instance(False, "edge", 4, (0, 1), 1, ((0, 2), (2, 1), (0, 3), (3, 1)), ((0, 1, 4),))
    assert opt_augment(inst) == ((), 0)


def test_mandatory_bridge():
    inst = Instance(False, "edge", 3, (0, 1), 0, (), ((0, 2, 1), (2, 1, 1)))
    assert opt_augment(inst) == ((0, 1), 2)


def test_flow_example_lifted(flow_example):
    # undirected copy of the flow example, so both directions count
    inst = Instance(False, "edge", 4, (0, 2), 1, flow_example.jedges, flow_example.cedges)
    edges, cost = opt_augment(inst)
    assert cost == 5 and edges == (0, 1)


def test_rooted_analogues(flow_example):
    assert opt_rooted(flow_example, 2, 1) == ((), 0)
    assert opt_rooted(flow_example, 2, 2) == ((0, 1), 5)
    bridge = Instance(False, "edge", 3, (0, 1), 0, (), ((0, 2, 1), (2, 1, 1)))
    assert opt_rooted(bridge, 0, 1) == ((0, 1), 2)


def test_guard_and_infeasible(cycle5):
    big = Instance(False, "edge", 8, (0, 1), 0, (), tuple((0, v, 1) for v in range(1, 8)) + tuple((1, v, 1) for v in range(2, 8)) + tuple((2, v, 1) for v in range(3, 8)) + ((3, 4, 1), (3, 5, 1)))
    with pytest.raises(GuardExceeded):
        opt_augment(big)
    with pytest.raises(InfeasibleError):
        opt_augment(cycle5)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), directed=st.booleans(), node=st.booleans())
def test_matches_brute_force(seed, directed, node):
    rng = random.Random(seed)
    n = rng.randint(4, 7)
    k = rng.randint(0, 2)
    t = rng.randint(k + 2, min(n, 5)) if k + 2 <= min(n, 5) else k + 1
    p = GenParams(n=n, t=t, k=k, directed=directed, cost_model="node" if node else "edge", seed=seed, max_edges=10)
    try:
        inst = normalize(gen_random(p))
    except Exception:
        return
    pairs_ok = lambda edges: check_subset(inst, edges, k + 1) is None
    edges, cost = opt_augment(inst)
    assert cost == brute_augment(inst, pairs_ok) == edge_set_cost(inst, edges)
    assert pairs_ok(list(inst.jedges) + inst.edge_pairs(edges))
    # minimality spot check: dropping a paid edge never stays feasible and cheaper
    for i in edges:
        rest = [j for j in edges if j != i]
        if edge_set_cost(inst, rest) < cost:
            assert not pairs_ok(list(inst.jedges) + inst.edge_pairs(rest))
    s = inst.terminals[0]
    r_edges, r_cost = opt_rooted(inst, s, k + 1)
    rooted_ok = lambda e: check_rooted(inst, e, s, k + 1) is None
    assert r_cost == brute_augment(inst, rooted_ok)
