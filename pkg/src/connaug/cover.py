"""Abstract covers of the residual family by terminal edges and by stars.

Edge cover: a greedy phase adding single edges that shrink the number of small
cores on either side, then a transversal phase that finishes the job. Star
cover: repeated best-star steps per side (or the leaf-thrifty out-cover steps),
finished by transversal stars.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import bounds
from .bisets import (
    ResidualContext,
    TProjection,
    greedy_transversal,
    halo,
    max_degree,
    max_disjoint,
    within_guard,
)
from .instance import Edge, terminal_pairs

log = logging.getLogger("connaug.cover")

ORIENTATIONS = ("into-center", "out-of-center", "undirected")


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]
    orientation: str

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(self.orientation)
        if not self.leaves or self.center in self.leaves:
            raise ValueError("a star needs leaves distinct from its center")

    def edges(self) -> list[Edge]:
        """Abstract edges in forward orientation."""
        if self.orientation == "into-center":
            return [(v, self.center) for v in self.leaves]
        return [(self.center, v) for v in self.leaves]

    def to_json(self) -> dict:
        return {"center": self.center, "leaves": list(self.leaves), "orientation": self.orientation}


class _Tracer:
    """Shared iteration counter and debug line writer."""

    def __init__(self):
        self.i = 0

    def step(self, fwd: ResidualContext, rev: ResidualContext | None, action: str) -> None:
        self.i += 1
        if log.isEnabledFor(logging.DEBUG):
            nr = fwd.nu_small() if rev is None else rev.nu_small()
            log.debug("iter %d: nu_fwd=%d nu_rev=%d action=%s", self.i, fwd.nu_small(), nr, action)


# ---------------------------------------------------------------- edge cover


@dataclass
class Phase1Result:
    edges: list[Edge]
    entry: tuple[int, int]
    exit: tuple[int, int]
    fwd: ResidualContext
    rev: ResidualContext | None


def phase1(fwd: ResidualContext, rev: ResidualContext | None = None, tracer: _Tracer | None = None) -> Phase1Result:
    """Add terminal edges, scanned lexicographically, while one lowers a small-core count.

    ``rev`` is None for undirected instances, whose residual family is symmetric.
    """
    tracer = tracer or _Tracer()
    inst = fwd.inst
    pairs = terminal_pairs(inst.terminals, inst.directed)
    entry = (fwd.nu_small(), rev.nu_small() if rev else fwd.nu_small())
    added: list[Edge] = []
    changed = True
    while changed:
        changed = False
        for e in pairs:
            nf = fwd.nu_small()
            nr = rev.nu_small() if rev else 0
            if nf == 0 and nr == 0:
                break
            hits_f = any(fwd.covered(c, [e]) for c in fwd.small_cores())
            hits_r = rev is not None and any(rev.covered(c, [e]) for c in rev.small_cores())
            if not (hits_f or hits_r):
                continue
            cf = fwd.extend([e])
            cr = rev.extend([e]) if rev else None
            if (hits_f and cf.nu_small() < nf) or (hits_r and cr.nu_small() < nr):
                fwd, rev = cf, cr
                added.append(e)
                changed = True
                tracer.step(fwd, rev, f"edge {e[0]}->{e[1]}")
    exit_ = (fwd.nu_small(), rev.nu_small() if rev else fwd.nu_small())
    return Phase1Result(added, entry, exit_, fwd, rev)


@dataclass
class Phase2Result:
    edges: list[Edge]
    transversal: list[int]
    groups: dict[int, list[int]]
    nu_small: int
    nu_rev: int
    delta: int
    covered: bool
    ctx: ResidualContext


def minimal_complements(ctx: ResidualContext, s: int) -> list[frozenset[int]]:
    """Inclusion-minimal terminal complements of residual members having s inside."""
    tset = ctx.inst.terminal_set
    comps = set()
    for t in ctx.inst.terminals:
        if t == s:
            continue
        b = ctx.max_biset(s, t)
        if b is not None:
            comps.add(b.complement(ctx.inst.n) & tset)
    minimal = [c for c in comps if not any(o < c for o in comps)]
    return sorted(minimal, key=sorted)


def phase2(ctx: ResidualContext, tracer: _Tracer | None = None, rev: ResidualContext | None = None) -> Phase2Result:
    """Cover what is left: a transversal of the cores, then edges from each of its terminals."""
    tracer = tracer or _Tracer()
    core_list = ctx.cores()
    nu_small = ctx.nu_small()
    delta = max_degree(core_list)
    rev_ctx = rev if rev is not None else ctx.flip()
    nu_rev = max_disjoint(p.inner for p in rev_ctx.cores())
    transversal = greedy_transversal(core_list)
    edges: list[Edge] = []
    groups: dict[int, list[int]] = {}
    for s in transversal:
        heads = []
        for comp in minimal_complements(ctx, s):
            m = min(comp)
            if m not in heads:
                heads.append(m)
        groups[s] = heads
        edges.extend((s, m) for m in heads)
    done = ctx.extend(edges)
    for s in transversal:
        tracer.step(done, rev.extend(edges) if rev else None, f"edges from {s} x{len(groups[s])}")
    return Phase2Result(edges, transversal, groups, nu_small, nu_rev, delta, not done.cores(), done)


@dataclass
class EdgeCover:
    edges: list[Edge]
    phase1: Phase1Result
    phase2: Phase2Result


def edge_cover(fwd: ResidualContext, rev: ResidualContext | None = None) -> EdgeCover:
    tracer = _Tracer()
    p1 = phase1(fwd, rev, tracer)
    p2 = phase2(p1.fwd, tracer, p1.rev)
    return EdgeCover(p1.edges + p2.edges, p1, p2)


# ---------------------------------------------------------------- star covers


@dataclass
class SideTrace:
    side: str
    nu_entry: int
    j: int
    steps: list[tuple[int, int]] = field(default_factory=list)
    nu_j: int | None = None
    leaves: int = 0
    outcover: list[tuple[int, int]] = field(default_factory=list)
    drops_ok: bool = True
    cap: int | None = None

    @property
    def count(self) -> int:
        return len(self.steps)


@dataclass
class StarCover:
    stars: list[Star]
    sides: list[SideTrace]
    finish: Phase2Result
    mode: str

    @property
    def finishing(self) -> list[Star]:
        return self.stars[sum(s.count for s in self.sides) :]


def _orientation(side: str, directed: bool) -> str:
    if not directed:
        return "undirected"
    return "into-center" if side == "forward" else "out-of-center"


def _apply(star: Star, ctx: ResidualContext, other: ResidualContext | None):
    e = star.edges()
    return ctx.extend(e), other.extend(e) if other is not None else None


def _greedy_side(ctx, other, side, tracer, stars, trace):
    inst = ctx.inst
    T = inst.terminals
    orient = _orientation(side, inst.directed)
    nu = ctx.nu_small()
    if trace.j == 0:
        trace.nu_j = nu
    while nu >= 1:
        small = ctx.small_cores()
        best = None
        for s in T:
            star = Star(s, tuple(x for x in T if x != s), orient)
            if not any(ctx.covered(c, star.edges()) for c in small):
                continue
            cand = ctx.extend(star.edges())
            v = cand.nu_small()
            if best is None or v < best[0]:
                best = (v, star, cand)
        if best is None or best[0] >= nu:
            raise AssertionError("no star lowers the small-core count")
        v, star, ctx = best
        other = other.extend(star.edges()) if other is not None else None
        stars.append(star)
        trace.steps.append((nu, v))
        if len(trace.steps) == trace.j:
            trace.nu_j = v
        trace.leaves += len(star.leaves)
        nu = v
        tracer.step(ctx if side == "forward" else other, other if side == "forward" else ctx, f"star center={star.center} leaves={len(star.leaves)}")
    if trace.nu_j is None:
        trace.nu_j = nu
    return ctx, other


def _outcover_side(ctx, other, side, tracer, stars, trace):
    inst = ctx.inst
    t, k = len(inst.terminals), inst.k
    orient = _orientation(side, inst.directed)
    for _ in range(trace.j if trace.cap is None else trace.cap):
        nu = ctx.nu_small()
        if nu == 0:
            break
        small = ctx.small_cores()
        halos = [halo(ctx, c, exact=True) for c in small]
        best_s, best = None, []
        for s in inst.terminals:
            hit = [i for i, h in enumerate(halos) if s in h.complement]
            if len(hit) > len(best):
                best_s, best = s, hit
        trace.outcover.append((len(best), bounds.outcover_min(nu, t, k)))
        if not best:
            break
        need = max(1, bounds.outcover_min(nu, t, k))
        chosen = best[:need]
        star = Star(best_s, tuple(sorted(min(small[i].inner) for i in chosen)), orient)
        ctx, other = _apply(star, ctx, other)
        v = ctx.nu_small()
        if v > nu - (len(chosen) + 1) // 2:
            trace.drops_ok = False
        stars.append(star)
        trace.steps.append((nu, v))
        trace.leaves += len(star.leaves)
        tracer.step(ctx if side == "forward" else other, other if side == "forward" else ctx, f"star center={star.center} leaves={len(star.leaves)}")
    trace.nu_j = ctx.nu_small()
    return ctx, other


def star_cover(
    fwd: ResidualContext,
    rev: ResidualContext | None = None,
    mode: str = "greedy",
    steps: int | None = None,
) -> StarCover:
    """Stars on each side until no small core is left, then transversal stars for the rest.

    ``mode='outcover'`` needs the enumeration guard (for halos) and otherwise
    falls back to ``'greedy'``. Out-cover steps run j times per side, j from the
    recurrence; ``steps`` overrides that count.
    """
    if mode not in ("greedy", "outcover"):
        raise ValueError(mode)
    inst = fwd.inst
    if mode == "outcover" and not within_guard(inst):
        mode = "greedy"
    t, k = len(inst.terminals), inst.k
    tracer = _Tracer()
    stars: list[Star] = []
    sides: list[SideTrace] = []
    run = _greedy_side if mode == "greedy" else _outcover_side
    nu = fwd.nu_small()
    trace = SideTrace("forward", nu, bounds.recurrence_steps(nu, t, k), cap=steps)
    fwd, rev = run(fwd, rev, "forward", tracer, stars, trace)
    sides.append(trace)
    if rev is not None:
        nu = rev.nu_small()
        trace = SideTrace("reverse", nu, bounds.recurrence_steps(nu, t, k), cap=steps)
        rev, fwd = run(rev, fwd, "reverse", tracer, stars, trace)
        sides.append(trace)
    fin = phase2(fwd, tracer, rev)
    orient = "undirected" if not inst.directed else "out-of-center"
    for s in fin.transversal:
        if fin.groups[s]:
            stars.append(Star(s, tuple(fin.groups[s]), orient))
    return StarCover(stars, sides, fin, mode)
