"""Tight bisets, residual families, cores, halos and transversals.

A biset ``(X, X+)`` is *tight* when X and its complement ``V - X+`` both hold a
terminal, ``X+`` is X plus its J-neighbours and the boundary ``X+ - X`` has
exactly k nodes. Everything downstream works with projections onto the
terminal set; abstract edges between terminals are modelled as
infinite-capacity arcs so that covered bisets stop being minimum cuts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .flow import (
    INF,
    FlowResult,
    augment,
    build_split_network,
    max_flow,
    node_in,
    node_out,
    sides_to_biset,
    sink_sides_to_biset,
)
from .instance import Edge, Instance

ENUM_MAX_TERMINALS = 10
ENUM_MAX_NODES = 24


class GuardError(ValueError):
    """Instance too large for the explicit enumeration backend."""


@dataclass(frozen=True)
class Biset:
    inner: frozenset[int]
    outer: frozenset[int]

    @property
    def boundary(self) -> frozenset[int]:
        return self.outer - self.inner

    def complement(self, n: int) -> frozenset[int]:
        return frozenset(range(n)) - self.outer

    def __repr__(self) -> str:
        return f"Biset({sorted(self.inner)}, {sorted(self.outer)})"


@dataclass(frozen=True)
class TProjection:
    """Trace of a biset on the terminals: inner, outer and complement parts."""

    inner: frozenset[int]
    outer: frozenset[int]
    complement: frozenset[int]
    witness: Biset | None = field(default=None, compare=False, hash=False)

    @classmethod
    def of(cls, biset: Biset, terminals: frozenset[int]) -> "TProjection":
        return cls(biset.inner & terminals, biset.outer & terminals, terminals - biset.outer, biset)

    @property
    def key(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.inner, self.outer

    def reverse(self) -> "TProjection":
        terminals = self.outer | self.complement
        return TProjection(self.complement, terminals - self.inner, self.inner)

    def is_small(self, t: int, k: int) -> bool:
        return 2 * len(self.inner) <= t - k

    def within(self, other: "TProjection") -> bool:
        """Containment order used for cores: strictly smaller inner part, or equal inner and smaller outer."""
        if self.inner == other.inner:
            return self.outer <= other.outer
        return self.inner < other.inner

    def intersect(self, other: "TProjection") -> "TProjection":
        inner, outer = self.inner & other.inner, self.outer & other.outer
        return TProjection(inner, outer, (self.outer | self.complement) - outer)

    def union(self, other: "TProjection") -> "TProjection":
        inner, outer = self.inner | other.inner, self.outer | other.outer
        return TProjection(inner, outer, (self.outer | self.complement) - outer)

    def crosses(self, other: "TProjection") -> bool:
        return bool(self.inner & other.inner) and bool(self.complement & other.complement)

    def __repr__(self) -> str:
        return f"TProjection(inner={sorted(self.inner)}, outer={sorted(self.outer)})"


def covers(edge: Edge, proj: TProjection, directed: bool) -> bool:
    a, b = edge
    if a in proj.inner and b in proj.complement:
        return True
    return not directed and b in proj.inner and a in proj.complement


def is_tight(inst: Instance, biset: Biset, extra: Iterable[Edge] = ()) -> bool:
    """Definitional check of tightness in J; ``extra`` abstract edges must not cover it."""
    tset = inst.terminal_set
    comp = biset.complement(inst.n)
    if not (biset.inner <= biset.outer and biset.inner & tset and comp & tset):
        return False
    nbrs = set()
    for u, v in inst.jedges:
        if u in biset.inner:
            nbrs.add(v)
        if not inst.directed and v in biset.inner:
            nbrs.add(u)
    if biset.outer != biset.inner | nbrs or len(biset.boundary) != inst.k:
        return False
    for a, b in extra:
        if (a in biset.inner and b in comp) or (not inst.directed and b in biset.inner and a in comp):
            return False
    return True


# ---------------------------------------------------------------- residual context


class _Base:
    """Split network of J for one side, shared by every context built on it."""

    def __init__(self, inst: Instance, side: str):
        self.inst = inst
        self.side = side
        self.terminals = inst.terminal_set
        rev = side == "reverse" and inst.directed
        arcs = [(v, u) for u, v in inst.jedges] if rev else list(inst.jedges)
        self.net = build_split_network(inst.n, arcs, inst.directed, edge_capacity=INF)
        self.enumerated: list[TProjection] | None = None

    def oriented(self, edges: Iterable[Edge]) -> list[Edge]:
        if self.side == "reverse" and self.inst.directed:
            return [(b, a) for a, b in edges]
        return list(edges)

    def add_abstract(self, edges: Iterable[Edge]) -> None:
        net = self.net
        for a, b in self.oriented(edges):
            net.add_arc(node_out(a), node_in(b), INF)
            if not self.inst.directed:
                net.add_arc(node_out(b), node_in(a), INF)


_LARGE = object()


class ResidualContext:
    """Residual family of tight bisets left uncovered by abstract edges on T.

    ``edges`` are kept in their forward orientation on both sides; the reverse
    side runs every query on the reversed graph, so its projections are members
    of the reverse family directly.
    """

    def __init__(self, inst: Instance, edges: Sequence[Edge] = (), side: str = "forward", _base: _Base | None = None):
        if side not in ("forward", "reverse"):
            raise ValueError(side)
        self.inst = inst
        self.side = side
        self.edges = tuple(edges)
        self._base = _base or _Base(inst, side)
        self._pairs: dict[Edge, object] = {}
        self._cores: list[TProjection] | None = None
        self._small: list[TProjection] | None = None
        self._enum: list[TProjection] | None = None

    @property
    def t(self) -> int:
        return len(self.inst.terminals)

    @property
    def k(self) -> int:
        return self.inst.k

    @property
    def symmetric(self) -> bool:
        return not self.inst.directed

    def covered(self, proj: TProjection, edges: Iterable[Edge] | None = None) -> bool:
        edges = self._base.oriented(self.edges if edges is None else edges)
        return any(covers(e, proj, self.inst.directed) for e in edges)

    def extend(self, edges: Iterable[Edge]) -> "ResidualContext":
        """Context for ``self.edges + edges``, reusing every pair result the new edges leave valid."""
        edges = tuple(edges)
        child = ResidualContext(self.inst, self.edges + edges, self.side, self._base)
        oriented = self._base.oriented(edges)
        directed = self.inst.directed
        for pair, entry in self._pairs.items():
            if entry is None or entry is _LARGE:
                child._pairs[pair] = entry
            elif not any(covers(e, entry, directed) for e in oriented):
                child._pairs[pair] = entry
            elif not entry.is_small(self.t, self.k):
                child._pairs[pair] = _LARGE
        return child

    def flip(self) -> "ResidualContext":
        """Same abstract edges, other side."""
        return ResidualContext(self.inst, self.edges, "reverse" if self.side == "forward" else "forward")

    # -- flow queries

    def _flow(self, u: int, v: int) -> FlowResult:
        base = self._base
        mark = base.net.mark()
        base.add_abstract(self.edges)
        try:
            res = max_flow(base.net, node_out(u), node_in(v), self.k + 1)
            res.source_side, res.sink_side  # materialize before the arcs disappear
        finally:
            base.net.rollback(mark)
        return res

    def min_biset(self, u: int, v: int) -> Biset | None:
        """Inclusion-minimal uncovered tight biset with u inside and v in the complement."""
        res = self._flow(u, v)
        if res.value > self.k:
            return None
        return Biset(*sides_to_biset(res, self.inst.n))

    def max_biset(self, u: int, v: int) -> Biset | None:
        """Uncovered tight biset with u inside and an inclusion-minimal complement containing v."""
        res = self._flow(u, v)
        if res.value > self.k:
            return None
        return Biset(*sink_sides_to_biset(res, self.inst.n))

    def pair_projection(self, u: int, v: int, exact: bool = True) -> TProjection | None:
        entry = self._pairs.get((u, v), _MISSING)
        if entry is _MISSING or (entry is _LARGE and exact):
            b = self.min_biset(u, v)
            entry = None if b is None else TProjection.of(b, self._base.terminals)
            self._pairs[(u, v)] = entry
        return entry

    # -- cores

    def _minimal(self, projs: Iterable[TProjection]) -> list[TProjection]:
        uniq: dict = {}
        for p in projs:
            uniq.setdefault(p.key, p)
        items = list(uniq.values())
        out = [p for p in items if not any(q is not p and q.within(p) for q in items)]
        return sorted(out, key=lambda p: (min(p.inner), sorted(p.inner), sorted(p.outer)))

    def cores(self) -> list[TProjection]:
        if self._cores is None:
            T = self.inst.terminals
            projs = [self.pair_projection(u, v) for u in T for v in T if u != v]
            self._cores = self._minimal(p for p in projs if p is not None)
        return self._cores

    def small_cores(self) -> list[TProjection]:
        """Cores with at most (|T|-k)/2 inner terminals; pairwise inner-disjoint."""
        if self._small is None:
            if self._cores is not None:
                self._small = [c for c in self._cores if c.is_small(self.t, self.k)]
            else:
                T = self.inst.terminals
                projs = []
                for u in T:
                    for v in T:
                        if u == v:
                            continue
                        p = self.pair_projection(u, v, exact=False)
                        if p is not None and p is not _LARGE and p.is_small(self.t, self.k):
                            projs.append(p)
                self._small = self._minimal(projs)
        return self._small

    def nu_small(self) -> int:
        return len(self.small_cores())

    # -- enumeration backend

    def enumerate(self) -> list[TProjection]:
        if self._enum is None:
            self._enum = enumerate_tight_family(self)
        return self._enum

    def family(self) -> list[TProjection]:
        """Explicit residual family: the enumerated family of J filtered by coverage."""
        base = self._base
        if base.enumerated is None:
            base.enumerated = enumerate_tight_family(ResidualContext(self.inst, (), self.side, base))
        return [p for p in base.enumerated if not self.covered(p)]


_MISSING = object()


def cores(ctx: ResidualContext) -> list[TProjection]:
    return ctx.cores()


def small_cores(ctx: ResidualContext) -> tuple[list[TProjection], int]:
    sc = ctx.small_cores()
    return sc, len(sc)


def minimal_tight_biset(ctx: ResidualContext, u: int, v: int) -> Biset | None:
    return ctx.min_biset(u, v)


# ---------------------------------------------------------------- packing / hypergraph helpers


def max_disjoint(sets: Iterable[frozenset[int]]) -> int:
    """Maximum number of pairwise-disjoint sets (exact branch and bound)."""
    uniq = set(frozenset(s) for s in sets)
    minimal = [s for s in uniq if not any(o < s for o in uniq)]
    masks = sorted((sum(1 << x for x in s) for s in minimal), key=lambda m: (bin(m).count("1"), m))
    best = 0

    def rec(i: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if count + (len(masks) - i) <= best:
            return
        for j in range(i, len(masks)):
            if not masks[j] & used:
                rec(j + 1, used | masks[j], count + 1)
                if count + 1 + (len(masks) - j - 1) <= best:
                    return

    rec(0, 0, 0)
    return best


def nu(projs: Iterable[TProjection]) -> int:
    """Maximum number of members with pairwise-disjoint inner parts."""
    return max_disjoint(p.inner for p in projs)


def max_degree(projs: Sequence[TProjection]) -> int:
    counts: dict[int, int] = {}
    for p in projs:
        for x in p.inner:
            counts[x] = counts.get(x, 0) + 1
    return max(counts.values(), default=0)


def greedy_transversal(core_list: Sequence[TProjection]) -> list[int]:
    """Greedy hitting set of the cores' inner parts; ties go to the smallest terminal."""
    remaining = [p.inner for p in core_list]
    chosen: list[int] = []
    while remaining:
        counts: dict[int, int] = {}
        for s in remaining:
            for x in s:
                counts[x] = counts.get(x, 0) + 1
        pick = min(counts, key=lambda x: (-counts[x], x))
        chosen.append(pick)
        remaining = [s for s in remaining if pick not in s]
    return sorted(chosen)


# ---------------------------------------------------------------- halos


def halo(ctx: ResidualContext, core: TProjection, exact: bool | None = None) -> TProjection:
    """Union of the small residual members containing ``core`` and no other small core.

    Exact through the enumeration backend when the instance is within the guard;
    above it, grown one terminal at a time by forced min-cut queries (heuristic).
    """
    if exact is None:
        exact = within_guard(ctx.inst)
    small = ctx.small_cores()
    others = [c for c in small if c.key != core.key]
    if exact:
        members = [
            p
            for p in ctx.family()
            if p.is_small(ctx.t, ctx.k) and core.within(p) and not any(c.within(p) for c in others)
        ]
    else:
        members = _grow_halo(ctx, core, others)
    inner = frozenset().union(core.inner, *(p.inner for p in members))
    outer = frozenset().union(core.outer, *(p.outer for p in members))
    terminals = ctx.inst.terminal_set
    return TProjection(inner, outer, terminals - outer)


def _grow_halo(ctx: ResidualContext, core: TProjection, others: Sequence[TProjection]) -> list[TProjection]:
    forbidden = frozenset().union(*(c.inner for c in others)) if others else frozenset()
    T = ctx.inst.terminals
    members: list[TProjection] = []
    inner = set(core.inner)
    for t in T:
        if t in inner or t in forbidden:
            continue
        for z in T:
            if z in inner or z == t or z in forbidden:
                continue
            b = _forced_min_biset(ctx, inner | {t}, forbidden, z)
            if b is None:
                continue
            p = TProjection.of(b, ctx.inst.terminal_set)
            if p.is_small(ctx.t, ctx.k):
                members.append(p)
                inner |= p.inner
                break
    return members


def _forced_min_biset(ctx: ResidualContext, inside: Iterable[int], outside: Iterable[int], z: int) -> Biset | None:
    base = ctx._base
    net = base.net
    mark = net.mark()
    try:
        base.add_abstract(ctx.edges)
        s = net.add_node()
        sink = net.add_node()
        for a in inside:
            net.add_arc(s, node_out(a), INF)
        for f in outside:
            net.add_arc(node_out(f), sink, INF)
        net.add_arc(node_in(z), sink, INF)
        res = max_flow(net, s, sink, ctx.k + 1)
        if res.value > ctx.k:
            return None
        b = Biset(*sides_to_biset(res, ctx.inst.n))
    finally:
        net.rollback(mark)
    return b


# ---------------------------------------------------------------- enumeration backend


def within_guard(inst: Instance) -> bool:
    return len(inst.terminals) <= ENUM_MAX_TERMINALS and inst.n <= ENUM_MAX_NODES


def enumerate_tight_family(ctx: ResidualContext) -> list[TProjection]:
    """All projected members of the residual family, each with a verified witness biset.

    Depth-first search assigning every terminal to the inner part, the boundary
    or the complement; a partial assignment survives only while a node cut of
    size at most k respecting it exists. Flows are grown incrementally down the
    search tree.
    """
    inst = ctx.inst
    if not within_guard(inst):
        raise GuardError(f"enumeration needs |T| <= {ENUM_MAX_TERMINALS} and n <= {ENUM_MAX_NODES}")
    k = inst.k
    T = list(inst.terminals)
    tset = inst.terminal_set
    base = ctx._base
    net = base.net
    outer_mark = net.mark()
    base.add_abstract(ctx.edges)
    src = net.add_node()
    snk = net.add_node()
    found: dict = {}
    check_edges = base.oriented(ctx.edges)
    check_inst = inst if base.side == "forward" or not inst.directed else _reversed(inst)

    def rec(i: int, res: list[int], value: int, a: frozenset, g: frozenset, c: frozenset) -> None:
        if i == len(T):
            if not a or not c:
                return
            fr = FlowResult(net, src, snk, value, k + 1, res)
            side = fr.source_side
            inner = frozenset(w for w in range(inst.n) if node_out(w) in side)
            outer = inner | frozenset(w for w in range(inst.n) if node_in(w) in side)
            biset = Biset(inner, outer)
            proj = TProjection.of(biset, tset)
            if proj.inner != a or proj.complement != c or not is_tight(check_inst, biset, check_edges):
                raise AssertionError(f"enumeration produced a non-tight witness {biset}")
            found.setdefault(proj.key, proj)
            return
        x = T[i]
        for label in ("A", "G", "C"):
            if label == "G" and len(g) >= k:
                continue
            mark = net.mark()
            r = res[:]
            if label == "A":
                arcs = [(src, node_out(x))]
            elif label == "G":
                arcs = [(src, node_in(x)), (node_out(x), snk)]
            else:
                arcs = [(node_in(x), snk)]
            for p, q in arcs:
                net.add_arc(p, q, INF)
                r += (INF, 0)
            val = augment(net, r, src, snk, k + 1, value)
            if val <= k:
                rec(
                    i + 1,
                    r,
                    val,
                    a | {x} if label == "A" else a,
                    g | {x} if label == "G" else g,
                    c | {x} if label == "C" else c,
                )
            net.rollback(mark)

    try:
        rec(0, net.cap[:], 0, frozenset(), frozenset(), frozenset())
    finally:
        net.rollback(outer_mark)
    return sorted(found.values(), key=lambda p: (sorted(p.inner), sorted(p.outer)))


def _reversed(inst: Instance) -> Instance:
    from dataclasses import replace

    return replace(inst, jedges=tuple((v, u) for u, v in inst.jedges))
