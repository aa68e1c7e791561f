"""Exact optimum by branch and bound over candidate edges (tiny instances only).

At each node a failing pair and a minimum node cut separating it in J plus the
chosen edges are found; any feasible completion must buy an undecided edge
crossing that cut, so the children are "buy the i-th crossing edge, skip the
earlier ones". The bound adds a cheapest repair of the failing pair.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .flow import INF, FlowNetwork, max_flow, min_cost_q_connect, node_in, node_out
from .instance import Edge, InfeasibleError, Instance, edge_set_cost, normalize
from .verify import PairChecker, Witness, check_rooted

DEFAULT_CAP = 18


class GuardExceeded(ValueError):
    """Too many candidate edges for the exact search."""


def _cut_sides(inst: Instance, edges: Sequence[Edge], a: int, b: int, q: int) -> tuple[set[int], set[int]] | None:
    """(inner, complement) of a minimal cut of size < q from a to b, or None.

    Edges directly joining a and b get a private middle node so they can be cut.
    """
    n = inst.n
    extra = [e for e in edges if e == (a, b) or (not inst.directed and e == (b, a))]
    net = FlowNetwork(2 * (n + len(extra)))
    for w in range(n + len(extra)):
        net.add_arc(node_in(w), node_out(w), 1)
    m = n
    for u, v in sorted(edges):
        if (u, v) == (a, b) or (not inst.directed and (v, u) == (a, b)):
            pairs = [(u, m), (m, v)]
            m += 1
        else:
            pairs = [(u, v)]
        for x, y in pairs:
            net.add_arc(node_out(x), node_in(y), INF)
            if not inst.directed:
                net.add_arc(node_out(y), node_in(x), INF)
    res = max_flow(net, node_out(a), node_in(b), q)
    if res.value >= q:
        return None
    side = res.source_side
    inner = {w for w in range(n) if node_out(w) in side}
    outer = inner | {w for w in range(n) if node_in(w) in side}
    return inner, set(range(n)) - outer


def _search(
    inst: Instance,
    cap: int,
    q: int,
    failure: Callable[[tuple[Edge, ...]], Witness | None],
) -> tuple[tuple[int, ...], int]:
    m = len(inst.cedges)
    if m > cap:
        raise GuardExceeded(f"{m} candidate edges exceed the oracle cap {cap}")
    allidx = tuple(range(m))
    if failure(inst.jedges + tuple(inst.edge_pairs(allidx))) is not None:
        w = failure(inst.jedges + tuple(inst.edge_pairs(allidx)))
        raise InfeasibleError(f"no augmentation exists: {w.u},{w.v} stay short with every candidate edge", (w.u, w.v))
    order = sorted(allidx, key=lambda i: (inst.cedges[i][2], i))
    best_cost = edge_set_cost(inst, allidx) + 1
    best = allidx

    def lower(chosen: frozenset[int], banned: frozenset[int], w: Witness) -> int:
        base = edge_set_cost(inst, chosen)
        allowed = [i for i in allidx if i not in chosen and i not in banned]
        stats: dict = {}
        try:
            plan = min_cost_q_connect(
                inst, w.u, w.v, q, extra_free=tuple(inst.edge_pairs(chosen)), allowed=allowed, stats=stats
            )
        except InfeasibleError:
            return INF
        if inst.cost_model == "edge":
            return base + plan.cost
        return max(base, plan.cost) if stats.get("exact", False) else base

    def rec(chosen: frozenset[int], banned: frozenset[int]) -> None:
        nonlocal best, best_cost
        cost = edge_set_cost(inst, chosen)
        if cost >= best_cost:
            return
        edges = inst.jedges + tuple(inst.edge_pairs(sorted(chosen)))
        w = failure(edges)
        if w is None:
            best, best_cost = tuple(sorted(chosen)), cost
            return
        if lower(chosen, banned, w) >= best_cost:
            return
        sides = _cut_sides(inst, edges, w.u, w.v, q)
        if sides is None:
            raise AssertionError("failing pair without a small cut")
        inner, comp = sides
        crossing = []
        for i in order:
            if i in chosen or i in banned:
                continue
            u, v, _ = inst.cedges[i]
            if (u in inner and v in comp) or (not inst.directed and v in inner and u in comp):
                crossing.append(i)
        skipped = set()
        for i in crossing:
            rec(chosen | {i}, banned | skipped)
            skipped.add(i)

    rec(frozenset(), frozenset())
    return best, best_cost


def opt_augment(inst: Instance, cap: int = DEFAULT_CAP) -> tuple[tuple[int, ...], int]:
    """Minimum-cost candidate set making the terminals (k+1)-connected."""
    norm = normalize(inst)
    q = norm.k + 1
    pairs = [(u, v) for u in norm.terminals for v in norm.terminals if u != v and (norm.directed or u < v)]

    def failure(edges):
        return PairChecker(norm, edges).first_failure(pairs, q)

    return _search(norm, cap, q, failure)


def opt_rooted(
    inst: Instance,
    s: int,
    q: int,
    cap: int = DEFAULT_CAP,
    both: bool = False,
    targets: Sequence[int] | None = None,
) -> tuple[tuple[int, ...], int]:
    """Minimum-cost candidate set making the targets q-connected to s (and from s if ``both``)."""

    def failure(edges):
        return check_rooted(inst, edges, s, q, both=both, targets=targets)

    return _search(inst, cap, q, failure)
