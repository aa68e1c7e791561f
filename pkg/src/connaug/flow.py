"""Node-split flow networks: max flow with extremal min cuts, and min-cost q-flows.

Every original node ``w`` becomes an arc ``in(w) -> out(w)`` of capacity 1, so
unit flows correspond to internally-disjoint paths and minimum cuts to node
separators.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .instance import Edge, Instance, InfeasibleError, edge_set_cost

INF = 1 << 60


def node_in(w: int) -> int:
    return 2 * w


def node_out(w: int) -> int:
    return 2 * w + 1


class FlowNetwork:
    """Arc-list residual network; arc ``i`` and ``i ^ 1`` are a forward/backward pair."""

    __slots__ = ("n", "head", "cap", "cost", "tag", "adj")

    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.tag: list = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, cap: int, cost: int = 0, tag=None) -> int:
        i = len(self.head)
        self.head += (v, u)
        self.cap += (cap, 0)
        self.cost += (cost, -cost)
        self.tag += (tag, None)
        self.adj[u].append(i)
        self.adj[v].append(i + 1)
        return i

    def tail(self, a: int) -> int:
        return self.head[a ^ 1]

    def mark(self) -> tuple[int, int]:
        return len(self.head), self.n

    def rollback(self, mark: tuple[int, int]) -> None:
        """Drop every arc and node added after ``mark`` (LIFO only)."""
        arcs, n = mark
        head, adj = self.head, self.adj
        for i in range(len(head) - 2, arcs - 1, -2):
            adj[head[i + 1]].pop()
            adj[head[i]].pop()
        del head[arcs:], self.cap[arcs:], self.cost[arcs:], self.tag[arcs:]
        del adj[n:]
        self.n = n


@dataclass
class FlowResult:
    net: FlowNetwork
    source: int
    sink: int
    value: int
    limit: int
    residual: list[int]

    @property
    def saturated(self) -> bool:
        """True when the flow stopped at ``limit`` (no cut information then)."""
        return self.value >= self.limit

    def flow_on(self, a: int) -> int:
        return self.net.cap[a] - self.residual[a]

    @cached_property
    def source_side(self) -> frozenset[int]:
        """Residual-reachable set from the source: the inclusion-minimal source side."""
        head, adj, res = self.net.head, self.net.adj, self.residual
        seen = {self.source}
        stack = [self.source]
        while stack:
            x = stack.pop()
            for a in adj[x]:
                if res[a] > 0:
                    y = head[a]
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return frozenset(seen)

    @cached_property
    def sink_side(self) -> frozenset[int]:
        """Nodes that can still reach the sink: the inclusion-minimal sink side."""
        head, adj, res = self.net.head, self.net.adj, self.residual
        seen = {self.sink}
        stack = [self.sink]
        while stack:
            y = stack.pop()
            for b in adj[y]:
                if res[b ^ 1] > 0:
                    x = head[b]
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
        return frozenset(seen)

    @cached_property
    def min_cut_arcs(self) -> tuple[int, ...]:
        side = self.source_side
        head, cap = self.net.head, self.net.cap
        return tuple(
            a
            for x in sorted(side)
            for a in self.net.adj[x]
            if cap[a] > 0 and head[a] not in side
        )


def max_flow(net: FlowNetwork, source: int, sink: int, limit: int = INF) -> FlowResult:
    """Shortest-augmenting-path max flow, stopping once ``limit`` units are routed."""
    res = net.cap[:]
    value = augment(net, res, source, sink, limit)
    return FlowResult(net, source, sink, value, limit, res)


def augment(net: FlowNetwork, res: list[int], source: int, sink: int, limit: int, value: int = 0) -> int:
    """Push more flow on an existing residual vector (mutated in place) until ``limit``."""
    head, adj = net.head, net.adj
    n = net.n
    while value < limit:
        parent = [-1] * n
        parent[source] = -2
        queue = [source]
        found = False
        for x in queue:
            for a in adj[x]:
                if res[a] > 0:
                    y = head[a]
                    if parent[y] == -1:
                        parent[y] = a
                        if y == sink:
                            found = True
                            break
                        queue.append(y)
            if found:
                break
        if not found:
            break
        push = limit - value
        y = sink
        while y != source:
            a = parent[y]
            if res[a] < push:
                push = res[a]
            y = head[a ^ 1]
        y = sink
        while y != source:
            a = parent[y]
            res[a] -= push
            res[a ^ 1] += push
            y = head[a ^ 1]
        value += push
    return value


def min_cost_flow(net: FlowNetwork, source: int, sink: int, q: int) -> tuple[int, int, list[int]]:
    """Successive shortest paths with Johnson potentials; arc costs must be non-negative.

    Returns ``(value, cost, residual)``; ``value < q`` when fewer units fit.
    """
    n = net.n
    res = net.cap[:]
    head, adj, cost = net.head, net.adj, net.cost
    pot = [0] * n
    value = total = 0
    while value < q:
        dist = [INF] * n
        parent = [-1] * n
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            px = pot[x]
            for a in adj[x]:
                if res[a] > 0:
                    y = head[a]
                    nd = d + cost[a] + px - pot[y]
                    if nd < dist[y]:
                        dist[y] = nd
                        parent[y] = a
                        heapq.heappush(heap, (nd, y))
        if dist[sink] >= INF:
            break
        for x in range(n):
            if dist[x] < INF:
                pot[x] += dist[x]
        push = q - value
        y = sink
        while y != source:
            a = parent[y]
            push = min(push, res[a])
            y = head[a ^ 1]
        y = sink
        while y != source:
            a = parent[y]
            res[a] -= push
            res[a ^ 1] += push
            total += push * cost[a]
            y = head[a ^ 1]
        value += push
    return value, total, res


# ---------------------------------------------------------------- split networks


class SplitNetwork(FlowNetwork):
    """Split graph of ``(V, arcs)``; original node ``w`` lives at ``in(w)``/``out(w)``."""

    __slots__ = ("originals",)

    def pair(self, u: int, v: int) -> tuple[int, int]:
        return node_out(u), node_in(v)


def build_split_network(
    n: int,
    edges: Iterable[Edge],
    directed: bool,
    edge_capacity: int = 1,
    node_capacity: int = 1,
) -> SplitNetwork:
    """Split network over nodes ``0..n-1``.

    ``edge_capacity=1`` counts parallel direct edges as separate paths;
    ``edge_capacity=INF`` forces every finite cut to consist of node arcs.
    Undirected edges become an antiparallel arc pair.
    """
    net = SplitNetwork(2 * n)
    net.originals = n
    for w in range(n):
        net.add_arc(node_in(w), node_out(w), node_capacity, tag=("node", w))
    for u, v in sorted(edges):
        net.add_arc(node_out(u), node_in(v), edge_capacity, tag=("edge", u, v))
        if not directed:
            net.add_arc(node_out(v), node_in(u), edge_capacity, tag=("edge", v, u))
    return net


def sides_to_biset(res: FlowResult, originals: int) -> tuple[frozenset[int], frozenset[int]]:
    """(inner, outer) of the biset induced by the minimal source side of a node cut."""
    side = res.source_side
    inner = frozenset(w for w in range(originals) if node_out(w) in side)
    outer = inner | frozenset(w for w in range(originals) if node_in(w) in side)
    return inner, outer


def sink_sides_to_biset(res: FlowResult, originals: int) -> tuple[frozenset[int], frozenset[int]]:
    """(inner, outer) of the biset whose complement is the minimal sink side."""
    side = res.sink_side
    comp = frozenset(w for w in range(originals) if node_in(w) in side)
    outer = frozenset(range(originals)) - comp
    inner = frozenset(w for w in outer if node_out(w) not in side)
    return inner, outer


# ---------------------------------------------------------------- min-cost q-connect


class FlowPlan(NamedTuple):
    edges: tuple[int, ...]
    cost: int


def _qconnect_network(
    inst: Instance,
    free: Sequence[Edge],
    allowed: Iterable[int],
    arc_cost,
) -> SplitNetwork:
    net = build_split_network(inst.n, free, inst.directed)
    for i in allowed:
        u, v, c = inst.cedges[i]
        cst = arc_cost(i)
        if cst is None:
            continue
        net.add_arc(node_out(u), node_in(v), 1, cst, tag=("cand", i))
        if not inst.directed:
            net.add_arc(node_out(v), node_in(u), 1, cst, tag=("cand", i))
    return net


def _used_candidates(net: SplitNetwork, res: list[int]) -> tuple[int, ...]:
    used = set()
    for a in range(0, len(net.head), 2):
        tag = net.tag[a]
        if tag and tag[0] == "cand" and net.cap[a] > res[a]:
            used.add(tag[1])
    return tuple(sorted(used))


def _undirected_used(inst: Instance, net: SplitNetwork, res: list[int]) -> tuple[int, ...]:
    per_dir: dict[tuple[int, int], int] = {}
    for a in range(0, len(net.head), 2):
        tag = net.tag[a]
        if tag and tag[0] == "cand":
            f = net.cap[a] - res[a]
            if f:
                tail = net.head[a ^ 1] // 2
                per_dir[(tag[1], tail)] = per_dir.get((tag[1], tail), 0) + f
    used = set()
    for (i, tail), f in per_dir.items():
        u, v, _ = inst.cedges[i]
        other = v if tail == u else u
        if f > per_dir.get((i, other), 0):
            used.add(i)
    return tuple(sorted(used))


def min_cost_q_connect(
    inst: Instance,
    u: int,
    v: int,
    q: int,
    extra_free: Sequence[Edge] = (),
    allowed: Iterable[int] | None = None,
    budget: int = 400,
    stats: dict | None = None,
) -> FlowPlan:
    """Cheapest candidate-edge set giving ``q`` internally-disjoint u->v paths together with J.

    ``extra_free`` edges are treated as already bought. Edge costs are solved exactly
    by one min-cost flow. Node costs (each touched non-terminal paid once) are not
    additive along a flow; they are solved by branch and bound on which nodes get
    paid, bounded below by a flow that charges half a node's cost per incident
    candidate arc. ``budget`` caps the search nodes; the incumbent is returned if it
    runs out and ``stats['exact']`` is then False.
    """
    if u == v:
        raise ValueError("u and v must differ")
    allowed = tuple(range(len(inst.cedges))) if allowed is None else tuple(sorted(allowed))
    free = tuple(inst.jedges) + tuple(extra_free)
    src, dst = node_out(u), node_in(v)
    if stats is not None:
        stats["exact"] = True

    def used_of(net, res):
        return _used_candidates(net, res) if inst.directed else _undirected_used(inst, net, res)

    if inst.cost_model == "edge":
        net = _qconnect_network(inst, free, allowed, lambda i: inst.cedges[i][2])
        value, _, res = min_cost_flow(net, src, dst, q)
        if value < q:
            raise InfeasibleError(f"fewer than {q} disjoint paths between {u} and {v} even with all candidates", (u, v))
        edges = used_of(net, res)
        return FlowPlan(edges, edge_set_cost(inst, edges))

    tset = inst.terminal_set
    ncost = inst.node_cost

    def charge(x, paid):
        return 0 if x in tset or x in paid else ncost[x]

    def solve(paid: frozenset[int], banned: frozenset[int], full: bool):
        def arc_cost(i):
            a, b, _ = inst.cedges[i]
            if a in banned or b in banned:
                return None
            w = charge(a, paid) + charge(b, paid)
            return 2 * w if full else w

        net = _qconnect_network(inst, free, allowed, arc_cost)
        value, flow_cost, res = min_cost_flow(net, src, dst, q)
        if value < q:
            return None
        return flow_cost, used_of(net, res)

    root = solve(frozenset(), frozenset(), False)
    if root is None:
        raise InfeasibleError(f"fewer than {q} disjoint paths between {u} and {v} even with all candidates", (u, v))
    best_edges = root[1]
    best = edge_set_cost(inst, best_edges)
    upper = solve(frozenset(), frozenset(), True)
    ub_cost = edge_set_cost(inst, upper[1])
    if ub_cost < best:
        best, best_edges = ub_cost, upper[1]

    nodes = 0
    stack = [(frozenset(), frozenset(), root)]
    exhausted = False
    while stack:
        paid, banned, sol = stack.pop()
        if sol is None:
            continue
        nodes += 1
        if nodes > budget:
            exhausted = True
            break
        half_cost, edges = sol
        lower2 = 2 * sum(ncost[x] for x in paid) + half_cost
        c = edge_set_cost(inst, edges)
        if c < best:
            best, best_edges = c, edges
        if lower2 >= 2 * best:
            continue
        touched = {x for i in edges for x in inst.cedges[i][:2] if charge(x, paid) > 0}
        if not touched:
            continue
        pick = min(touched, key=lambda x: (-ncost[x], x))
        stack.append((paid, banned | {pick}, solve(paid, banned | {pick}, False)))
        stack.append((paid | {pick}, banned, solve(paid | {pick}, banned, False)))
    if stats is not None:
        stats["exact"] = not exhausted
        stats["nodes"] = nodes
    return FlowPlan(tuple(best_edges), best)
