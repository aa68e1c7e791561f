"""End-to-end solves: gadget, abstract cover, realization, verification, certificate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import bounds
from .bisets import ResidualContext
from .cover import Star, edge_cover, star_cover
from .flow import min_cost_q_connect
from .instance import (
    Edge,
    InfeasibleError,
    Instance,
    Solution,
    edge_set_cost,
    make_solution,
    normalize,
)
from .rooted import SOLVERS, RootedRequest, TrivialRootedSolver, root_gadget_augment
from .verify import Witness, check_subset


def realize_edges(inst: Instance, abstract: Iterable[Edge], free: Sequence[Edge] = ()) -> tuple[int, ...]:
    """Union of cheapest (k+1)-flows, one per abstract edge."""
    chosen: set[int] = set()
    for u, v in abstract:
        chosen.update(min_cost_q_connect(inst, u, v, inst.k + 1, extra_free=free).edges)
    return tuple(sorted(chosen))


_DIRECTION = {"into-center": "to-root", "out-of-center": "from-root", "undirected": "to-root"}


def realize_stars(inst: Instance, stars: Iterable[Star], solver=None, free: Sequence[Edge] = ()) -> tuple[int, ...]:
    """One rooted request per star, solved by ``solver``; the union of the results."""
    solver = solver or TrivialRootedSolver()
    chosen: set[int] = set()
    for st in stars:
        req = RootedRequest(inst, st.center, st.leaves, inst.k + 1, _DIRECTION[st.orientation], tuple(free))
        chosen.update(solver.solve(req))
    return tuple(sorted(chosen))


@dataclass(frozen=True)
class Report:
    feasible: bool
    cost: int
    residual_cores: int
    witness: Witness | None

    def to_json(self) -> dict:
        doc = {"feasible": self.feasible, "cost": self.cost, "residual_cores": self.residual_cores}
        if self.witness is not None:
            doc["witness"] = {"u": self.witness.u, "v": self.witness.v, "deficiency": self.witness.deficiency}
        return doc


def residual_contexts(inst: Instance, bought: Sequence[Edge]) -> tuple[ResidualContext, ResidualContext | None]:
    """Contexts for the family left after folding ``bought`` into J."""
    base = normalize(inst.with_jedges(bought), check=False)
    fwd = ResidualContext(base)
    return fwd, (fwd.flip() if inst.directed else None)


def verify(inst: Instance, indices: Iterable[int]) -> Report:
    """Feasibility at k+1, cost, and the number of residual cores (zero iff feasible)."""
    norm = normalize(inst, check=False)
    idx = tuple(sorted(set(indices)))
    for i in idx:
        if not 0 <= i < len(inst.cedges):
            raise ValueError(f"edge index {i} out of range")
    pairs = norm.edge_pairs(idx)
    w = check_subset(norm, norm.jedges + tuple(pairs), norm.k + 1)
    fwd, _ = residual_contexts(norm, pairs)
    return Report(w is None, edge_set_cost(inst, idx), len(fwd.cores()), w)


def _finish(norm: Instance, bought: set[int]) -> bool:
    """Repair loop: buy a cheapest (k+1)-flow for each failing pair. True if anything was added."""
    used = False
    while True:
        w = check_subset(norm, norm.jedges + tuple(norm.edge_pairs(sorted(bought))), norm.k + 1)
        if w is None:
            return used
        plan = min_cost_q_connect(norm, w.u, w.v, norm.k + 1, extra_free=tuple(norm.edge_pairs(sorted(bought))))
        if not plan.edges:
            raise AssertionError(f"repair made no progress on {w}")
        used = True
        bought.update(plan.edges)


def _prepare(inst: Instance, solver):
    norm = normalize(inst)
    w = check_subset(norm, tuple(norm.jedges) + tuple(norm.edge_pairs(range(len(norm.cedges)))), norm.k + 1)
    if w is not None:
        raise InfeasibleError(f"no augmentation exists: terminals {w.u},{w.v} stay short with every candidate edge", (w.u, w.v))
    gad = root_gadget_augment(norm, solver)
    f0 = norm.edge_pairs(gad.edges)
    fwd, rev = residual_contexts(norm, f0)
    return norm, gad, f0, fwd, rev


def _gadget_report(gad, fwd: ResidualContext, rev: ResidualContext | None) -> dict:
    anchors = set(gad.anchors)
    ok = True
    counts = []
    for ctx in (fwd, rev if rev is not None else fwd.flip()):
        for c in ctx.cores():
            if not (c.inner & anchors and c.complement & anchors):
                ok = False
        counts.append(ctx.nu_small())
    return {"gadget_anchors": sorted(anchors), "gadget_nu": counts, "gadget_ok": ok}


def _make(inst, norm, bought, cert) -> Solution:
    sol = make_solution(inst, bought, cert)
    rep = verify(inst, sol.edges)
    if not rep.feasible:
        raise AssertionError(f"solution failed verification at {rep.witness}")
    return sol


def solve_variant_i(inst: Instance, rooted: str = "trivial") -> Solution:
    """Gadget, edge cover of the residual family, realization by (k+1)-flows."""
    solver = SOLVERS[rooted]()
    norm, gad, f0, fwd, rev = _prepare(inst, solver)
    cert = {"variant": "i", "rooted_solver": solver.name, "q": norm.k + 1}
    cert.update(_gadget_report(gad, fwd, rev))
    cov = edge_cover(fwd, rev)
    p1, p2 = cov.phase1, cov.phase2
    bought = set(gad.edges)
    bought.update(realize_edges(norm, cov.edges, free=f0))
    repair = _finish(norm, bought)
    t, k = len(norm.terminals), norm.k
    b = 2 if norm.directed else 1
    rho = solver.rho(norm)
    bound = bounds.variant_i_ratio(t, k, b, rho)
    cert.update(
        gadget_cost=gad.cost,
        gadget_calls=gad.calls,
        phase1_edges=len(p1.edges),
        phase1_entry=list(p1.entry),
        phase1_exit=list(p1.exit),
        phase2_edges=len(p2.edges),
        transversal=p2.transversal,
        phase2_delta=p2.delta,
        phase2_nu_small=p2.nu_small,
        phase2_nu_rev=p2.nu_rev,
        phase2_covered=p2.covered,
        abstract_edges=[list(e) for e in cov.edges],
        stars=0,
        rooted_calls=gad.calls,
        rho=rho,
        b=b,
        bound_value_num=bound.numerator,
        bound_value_den=bound.denominator,
        repair_used=repair,
        exact_flows=solver.exact,
    )
    return _make(inst, norm, bought, cert)


def rooted_calls_bound(sc, b: int, t: int, k: int) -> Fraction:
    """b gadget calls, plus j + nu_j stars per side, plus the transversal-star budget."""
    total = Fraction(b)
    for side in sc.sides:
        total += side.j + side.nu_j
    fin = sc.finish
    total += bounds.transversal_bound(fin.nu_small, t, k, fin.delta)
    return total


def solve_variant_ii(inst: Instance, stars: str = "greedy", rooted: str = "trivial") -> Solution:
    """Gadget, star cover, realization by rooted calls."""
    solver = SOLVERS[rooted]()
    norm, gad, f0, fwd, rev = _prepare(inst, solver)
    cert = {"variant": "ii", "rooted_solver": solver.name, "q": norm.k + 1}
    cert.update(_gadget_report(gad, fwd, rev))
    sc = star_cover(fwd, rev, stars)
    bought = set(gad.edges)
    bought.update(realize_stars(norm, sc.stars, solver, free=f0))
    repair = _finish(norm, bought)
    t, k = len(norm.terminals), norm.k
    b = 2 if norm.directed else 1
    rho = solver.rho(norm)
    calls = gad.calls + len(sc.stars)
    calls_bound = rooted_calls_bound(sc, b, t, k)
    bound = rho * calls_bound
    fin = sc.finish
    cert.update(
        gadget_cost=gad.cost,
        gadget_calls=gad.calls,
        phase1_edges=0,
        phase2_edges=len(fin.edges),
        stars=len(sc.stars),
        star_mode=sc.mode,
        star_list=[s.to_json() for s in sc.stars],
        star_leaves=sum(len(s.leaves) for s in sc.stars),
        sides=[
            {
                "side": s.side,
                "nu": s.nu_entry,
                "j": s.j,
                "nu_j": s.nu_j,
                "steps": [list(x) for x in s.steps],
                "leaves": s.leaves,
                "outcover": [list(x) for x in s.outcover],
                "drops_ok": s.drops_ok,
            }
            for s in sc.sides
        ],
        transversal=fin.transversal,
        phase2_delta=fin.delta,
        phase2_nu_small=fin.nu_small,
        phase2_covered=fin.covered,
        rooted_calls=calls,
        rooted_calls_bound_num=calls_bound.numerator,
        rooted_calls_bound_den=calls_bound.denominator,
        rho=rho,
        b=b,
        bound_value_num=bound.numerator,
        bound_value_den=bound.denominator,
        repair_used=repair,
        exact_flows=solver.exact,
    )
    return _make(inst, norm, bought, cert)


def solve(inst: Instance, variant: str = "i", stars: str = "greedy", rooted: str = "trivial") -> Solution:
    if variant == "i":
        return solve_variant_i(inst, rooted)
    if variant == "ii":
        return solve_variant_ii(inst, stars, rooted)
    raise ValueError(f"unknown variant {variant!r}")
