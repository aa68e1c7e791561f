import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from connaug import bounds
from connaug.bisets import ResidualContext
from connaug.cover import Star, edge_cover, phase1, phase2, star_cover
from connaug.generate import GenParams, gen_random
from connaug.instance import Instance, normalize


def test_star_semantics():
    s = Star(3, (0, 1), "into-center")
    assert s.edges() == [(0, 3), (1, 3)]
    assert Star(3, (0,), "out-of-center").edges() == [(3, 0)]


def test_phase1_nothing_to_do(cycle10):
    T = cycle10.terminals
    ctx = ResidualContext(cycle10, [(u, v) for u in T for v in T if u < v])
    assert phase1(ctx).edges == []


def test_phase1_cycle(cycle10):
    ctx = ResidualContext(cycle10)
    p1 = phase1(ctx)
    assert p1.entry == (5, 5)
    assert len(p1.edges) <= 5  # symmetric: one side counts
    assert max(p1.exit) <= Fraction(5, 3)


def test_phase2_cycle_covers(cycle10):
    ctx = ResidualContext(cycle10)
    p2 = phase2(phase1(ctx).fwd)
    assert p2.covered
    assert len(p2.edges) <= bounds.phase2_bound(5, 2)


def test_phase2_single_core():
    # directed 0 -> 1 with k=0: the only deficient side is {1}, which cannot reach 0
    inst = normalize(Instance(True, "edge", 2, (0, 1), 0, ((0, 1),), ()))
    ctx = ResidualContext(inst)
    assert [sorted(c.inner) for c in ctx.cores()] == [[1]]
    p2 = phase2(ctx)
    assert p2.transversal == [1] and p2.edges == [(1, 0)] and p2.covered


def test_edge_cover_covers(cycle10):
    cov = edge_cover(ResidualContext(cycle10))
    assert ResidualContext(cycle10, cov.edges).cores() == []


def test_greedy_stars_cycle(cycle10):
    sc = star_cover(ResidualContext(cycle10))
    (side,) = sc.sides
    for nu, nxt in side.steps:
        assert bounds.recurrence_holds(5, 2, nu, nxt)
    assert side.count <= side.j + side.nu_j
    assert ResidualContext(cycle10, [e for s in sc.stars for e in s.edges()]).cores() == []


def test_outcover_steps_cycle(cycle10):
    sc = star_cover(ResidualContext(cycle10), mode="outcover", steps=5)
    (side,) = sc.sides
    assert side.outcover[0][0] >= 2  # 5 * 3/5 - 1
    assert side.drops_ok
    assert ResidualContext(cycle10, [e for s in sc.stars for e in s.edges()]).cores() == []


def test_no_stars_when_clean(cycle10):
    T = cycle10.terminals
    ctx = ResidualContext(cycle10, [(u, v) for u in T for v in T if u < v])
    sc = star_cover(ctx)
    assert sc.stars == []


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), directed=st.booleans(), mode=st.sampled_from(["greedy", "outcover"]))
def test_covers_on_random_instances(seed, directed, mode):
    rng = random.Random(seed)
    n = rng.randint(6, 10)
    k = rng.randint(1, 2)
    t = rng.randint(k + 2, min(n, 7))
    inst = normalize(gen_random(GenParams(n=n, t=t, k=k, directed=directed, seed=seed)))
    fwd = ResidualContext(inst)
    rev = fwd.flip() if directed else None
    cov = edge_cover(fwd, rev)
    assert cov.phase2.covered
    entry = cov.phase1.entry
    assert len(cov.phase1.edges) <= (entry[0] + entry[1] if directed else entry[0])
    assert max(cov.phase1.exit) <= bounds.ratio(t, k)
    sc = star_cover(fwd, rev, mode, steps=None if mode == "greedy" else 3)
    assert sc.finish.covered
    for side in sc.sides:
        if mode == "greedy":
            assert all(bounds.recurrence_holds(t, k, a, b) for a, b in side.steps)
            assert side.count <= side.j + side.nu_j
        else:
            assert side.drops_ok
            assert all(found >= need for found, need in side.outcover)
