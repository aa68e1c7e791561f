"""Rooted augmentation solvers and the root gadget.

A rooted request asks that every target be (q)-connected to (or from) a root.
Solvers are pluggable; the shipped one buys, per target, a cheapest q-flow and
returns the union, which is a |T|-approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Protocol, Sequence

from .flow import min_cost_q_connect
from .instance import Edge, InfeasibleError, Instance, edge_set_cost
from .verify import check_rooted

DIRECTIONS = ("to-root", "from-root", "both")


@dataclass(frozen=True)
class RootedRequest:
    instance: Instance
    root: int
    targets: tuple[int, ...]
    q: int
    direction: str = "to-root"
    free: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if not self.targets:
            raise ValueError("rooted request needs at least one target")
        if self.root in self.targets:
            raise ValueError("root cannot be a target")


class RootedSolver(Protocol):
    name: str

    def rho(self, inst: Instance) -> int: ...

    def solve(self, req: RootedRequest) -> tuple[int, ...]: ...


class TrivialRootedSolver:
    """Union of per-target min-cost q-flows."""

    name = "trivial"

    def __init__(self, budget: int = 400):
        self.budget = budget
        self.exact = True

    def rho(self, inst: Instance) -> int:
        return len(inst.terminals)

    def solve(self, req: RootedRequest) -> tuple[int, ...]:
        inst, s = req.instance, req.root
        chosen: set[int] = set()
        for v in sorted(req.targets):
            legs = []
            if req.direction in ("to-root", "both") or not inst.directed:
                legs.append((v, s))
            if inst.directed and req.direction in ("from-root", "both"):
                legs.append((s, v))
            for a, b in legs:
                stats: dict = {}
                try:
                    plan = min_cost_q_connect(inst, a, b, req.q, extra_free=req.free, budget=self.budget, stats=stats)
                except InfeasibleError as exc:
                    raise InfeasibleError(f"rooted target {v} cannot reach q={req.q}: {exc}", (a, b)) from None
                self.exact = self.exact and stats.get("exact", True)
                chosen.update(plan.edges)
        return tuple(sorted(chosen))


SOLVERS = {"trivial": TrivialRootedSolver}


def gadget_terminals(inst: Instance) -> tuple[int, ...]:
    """The k+1 smallest terminal ids."""
    return inst.terminals[: inst.k + 1]


def gadget_instance(inst: Instance, anchors: Sequence[int]) -> tuple[Instance, int]:
    """Add a cost-free root joined to ``anchors`` by J edges (both orientations if directed)."""
    s = inst.n
    extra: list[Edge] = []
    for a in anchors:
        extra.append((a, s))
        if inst.directed:
            extra.append((s, a))
    g = replace(
        inst,
        n=inst.n + 1,
        jedges=inst.jedges + tuple((min(e), max(e)) if not inst.directed else e for e in extra),
        node_cost=inst.node_cost + (0,) if inst.cost_model == "node" else (),
    )
    return g, s


@dataclass(frozen=True)
class GadgetResult:
    edges: tuple[int, ...]
    cost: int
    anchors: tuple[int, ...]
    calls: int


def root_gadget_augment(inst: Instance, solver: RootedSolver | None = None) -> GadgetResult:
    """Edges making every terminal (k+1)-connected to and from a root attached to k+1 terminals.

    The root is removed afterwards; what remains is the bought edge set. Every
    residual tight biset then has terminals of the anchor set on both sides.
    """
    solver = solver or TrivialRootedSolver()
    anchors = gadget_terminals(inst)
    g, s = gadget_instance(inst, anchors)
    q = inst.k + 1
    directions = ["to-root", "from-root"] if inst.directed else ["to-root"]
    chosen: set[int] = set()
    for d in directions:
        req = RootedRequest(g, s, inst.terminals, q, d)
        chosen.update(solver.solve(req))
    edges = tuple(sorted(chosen))
    w = check_rooted(g, g.jedges + tuple(g.edge_pairs(edges)), s, q, both=True)
    if w is not None:
        raise AssertionError(f"root gadget left {w} short")
    return GadgetResult(edges, edge_set_cost(inst, edges), anchors, len(directions))
