"""Menger-based connectivity checks: the ground truth for feasibility."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .flow import build_split_network, max_flow, node_in, node_out
from .instance import Edge, Instance, terminal_pairs


class Witness(NamedTuple):
    u: int
    v: int
    deficiency: int


def _graph_edges(inst: Instance, active: Iterable[Edge], with_j: bool) -> list[Edge]:
    edges = list(inst.jedges) if with_j else []
    edges.extend(active)
    return edges


def local_conn(inst: Instance, active: Iterable[Edge], u: int, v: int, with_j: bool = False) -> int:
    """Maximum number of internally-disjoint u->v paths in ``(V, active)``.

    Parallel direct u-v edges each count as one path. Pass ``with_j=True`` to
    add the instance's J edges to ``active``.
    """
    if u == v:
        raise ValueError("u and v must differ")
    net = build_split_network(inst.n, _graph_edges(inst, active, with_j), inst.directed)
    return max_flow(net, node_out(u), node_in(v)).value


class PairChecker:
    """Reuses one split network for many pair queries on a fixed edge set."""

    def __init__(self, inst: Instance, edges: Sequence[Edge], n: int | None = None):
        self.inst = inst
        self.net = build_split_network(inst.n if n is None else n, edges, inst.directed)

    def conn(self, u: int, v: int, limit: int) -> int:
        return max_flow(self.net, node_out(u), node_in(v), limit).value

    def first_failure(self, pairs: Iterable[Edge], q: int) -> Witness | None:
        for u, v in pairs:
            c = self.conn(u, v, q)
            if c < q:
                return Witness(u, v, q - c)
        return None


def check_rooted(
    inst: Instance,
    active: Iterable[Edge],
    s: int,
    q: int,
    both: bool = False,
    targets: Iterable[int] | None = None,
    with_j: bool = False,
) -> Witness | None:
    """None when every target has ``q`` disjoint paths to ``s`` (and from ``s`` if ``both``).

    ``active`` is the full edge set; ``with_j=True`` adds the J edges to it.
    """
    if q <= 0:
        return None
    checker = PairChecker(inst, _graph_edges(inst, active, with_j))
    targets = sorted(set(inst.terminals if targets is None else targets) - {s})
    for v in targets:
        c = checker.conn(v, s, q)
        if c < q:
            return Witness(v, s, q - c)
        if both and inst.directed:
            c = checker.conn(s, v, q)
            if c < q:
                return Witness(s, v, q - c)
    return None


def check_subset(
    inst: Instance,
    active: Iterable[Edge],
    q: int,
    with_j: bool = False,
) -> Witness | None:
    """None when all terminal pairs have ``q`` disjoint paths; else the first failing pair.

    Pairs are scanned in lexicographic order (unordered pairs for undirected graphs).
    """
    if q <= 0:
        return None
    checker = PairChecker(inst, _graph_edges(inst, active, with_j))
    return checker.first_failure(terminal_pairs(inst.terminals, inst.directed), q)
