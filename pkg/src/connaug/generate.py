"""Seeded random instances and the fixed benchmark suite."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .instance import Instance, InstanceError, canon, normalize, validate
from .verify import check_subset


@dataclass(frozen=True)
class GenParams:
    n: int = 12
    t: int = 6
    k: int = 2
    directed: bool = False
    cost_model: str = "edge"
    density: float = 0.3
    cost_lo: int = 1
    cost_hi: int = 10
    unit_costs: bool = False
    seed: int = 0
    max_edges: int | None = None
    attempts: int = 60


def gen_random(p: GenParams) -> Instance:
    """Deterministic instance: J is an overlay of random Hamiltonian cycles, just k-connecting T.

    Candidates are sampled with probability ``density`` (all pairs at cost 1 with
    ``unit_costs``), then topped up in random order until the terminals can reach
    (k+1)-connectivity. With ``max_edges`` the candidate set is instead grown in
    random order only until feasible, and generation fails if that needs more.
    """
    if p.t < p.k + 1 or p.t > p.n:
        raise InstanceError("need k+1 <= |T| <= n")
    rng = random.Random(p.seed)
    nodes = list(range(p.n))
    terminals = tuple(sorted(rng.sample(nodes, p.t)))
    jset: set[tuple[int, int]] = set()
    jedges: list[tuple[int, int]] = []

    def stub(edges):
        return Instance(p.directed, p.cost_model, p.n, terminals, p.k, tuple(edges), ())

    for _ in range(p.attempts):
        if check_subset(stub(jedges), jedges, p.k) is None:
            break
        order = nodes[:]
        rng.shuffle(order)
        for i, u in enumerate(order):
            e = canon(u, order[(i + 1) % p.n], p.directed)
            if e not in jset:
                jset.add(e)
                jedges.append(e)
    else:
        raise InstanceError(f"could not make T {p.k}-connected in {p.attempts} attempts")
    # thin J back to a minimal k-connecting subgraph so the instance is actually deficient
    order = jedges[:]
    rng.shuffle(order)
    for e in order:
        trial = [f for f in jedges if f != e]
        if check_subset(stub(trial), trial, p.k) is None:
            jedges = trial
            jset.discard(e)

    free = [
        canon(u, v, p.directed)
        for u in nodes
        for v in nodes
        if u != v and (p.directed or u < v) and canon(u, v, p.directed) not in jset
    ]
    free = sorted(set(free))
    rng.shuffle(free)

    def cost():
        return 1 if p.unit_costs else rng.randint(p.cost_lo, p.cost_hi)

    def feasible(cands):
        return check_subset(stub(jedges), jedges + [e for e in cands], p.k + 1) is None

    if p.unit_costs:
        picked = sorted(free)
    elif p.max_edges is not None:
        picked = []
        for e in free:
            if feasible(picked):
                break
            picked.append(e)
        if len(picked) > p.max_edges or not feasible(picked):
            raise InstanceError("candidate budget exceeded")
    else:
        picked = [e for e in free if rng.random() < p.density]
        rest = [e for e in free if e not in set(picked)]
        while not feasible(picked) and rest:
            picked.append(rest.pop())
    cedges = tuple((u, v, cost()) for u, v in sorted(picked))
    ncost: tuple[int, ...] = ()
    if p.cost_model == "node":
        tset = set(terminals)
        ncost = tuple(0 if v in tset else cost() for v in nodes)
    inst = Instance(p.directed, p.cost_model, p.n, terminals, p.k, tuple(jedges), cedges, ncost)
    validate(inst)
    return inst


SUITE_SIZE = 200


def suite_params(i: int) -> GenParams:
    """Parameters of suite instance ``i``; every third one is oracle-sized (at most 18 candidates)."""
    rng = random.Random(1000 + i)
    directed = i % 2 == 1
    model = "node" if (i // 2) % 2 else "edge"
    if i % 3 == 0:
        n = rng.randint(6, 9)
        t = rng.randint(4, min(n, 7))
        k = rng.randint(1, min(3 if directed else 4, t - 2))
        return GenParams(n, t, k, directed, model, 0.0, 1, 9, False, i, 18)
    n = rng.randint(8, 40 if not directed else 28)
    t = rng.randint(4, min(n, 10))
    k = rng.randint(1, min(4, t - 2))
    return GenParams(n, t, k, directed, model, round(rng.uniform(0.05, 0.3), 3), 1, 20, False, i)


def suite_instance(i: int) -> Instance:
    """Suite instance ``i``; retries with derived seeds if the draw fails."""
    p = suite_params(i)
    for attempt in range(50):
        q = GenParams(**{**asdict(p), "seed": p.seed * 1000 + attempt})
        try:
            inst = gen_random(q)
            normalize(inst)
            return inst
        except InstanceError:
            continue
    raise InstanceError(f"suite instance {i} could not be generated")


def suite() -> list[Instance]:
    return [suite_instance(i) for i in range(SUITE_SIZE)]
