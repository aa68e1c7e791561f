"""Structural audits of residual families against the explicit enumeration backend.

Each function returns a list of human-readable violations; empty means the
property held.
"""

from __future__ import annotations

from .bisets import ResidualContext, TProjection, halo, max_degree, max_disjoint


def _minimal(projs: list[TProjection]) -> list[TProjection]:
    return [p for p in projs if not any(q.key != p.key and q.within(p) for q in projs)]


def backend_mismatch(ctx: ResidualContext) -> list[str]:
    """Cores from min cuts versus minimal members of the enumerated family."""
    a = sorted((sorted(c.inner), sorted(c.outer)) for c in ctx.cores())
    b = sorted((sorted(c.inner), sorted(c.outer)) for c in _minimal(ctx.enumerate()))
    return [] if a == b else [f"cut cores {a} != enumerated cores {b}"]


def closure_violations(ctx: ResidualContext) -> list[str]:
    """Intersecting small members: intersection small member, union a member."""
    fam = ctx.enumerate()
    keys = {p.key for p in fam}
    t, k = ctx.t, ctx.k
    small = [p for p in fam if p.is_small(t, k)]
    out = []
    for i, x in enumerate(small):
        for y in small[i + 1 :]:
            if not x.inner & y.inner:
                continue
            meet, join = x.intersect(y), x.union(y)
            if meet.key not in keys or not meet.is_small(t, k):
                out.append(f"intersection of {x} and {y} missing")
            if join.key not in keys:
                out.append(f"union of {x} and {y} missing")
    return out


def crossing_cores(ctx: ResidualContext) -> list[str]:
    cs = ctx.cores()
    return [f"{a} crosses {b}" for i, a in enumerate(cs) for b in cs[i + 1 :] if a.crosses(b)]


def degree_violation(ctx: ResidualContext) -> list[str]:
    """Max terminal degree of core inner parts against the reverse packing number."""
    delta = max_degree(ctx.cores())
    nu_rev = max_disjoint(p.inner for p in ctx.flip().enumerate())
    return [] if delta <= nu_rev else [f"degree {delta} > reverse packing {nu_rev}"]


def halo_overlaps(ctx: ResidualContext) -> list[str]:
    hs = [halo(ctx, c, exact=True) for c in ctx.small_cores()]
    return [f"halos {a} and {b} overlap" for i, a in enumerate(hs) for b in hs[i + 1 :] if a.inner & b.inner]


def small_overlaps(ctx: ResidualContext) -> list[str]:
    sc = ctx.small_cores()
    return [f"small cores {a} and {b} overlap" for i, a in enumerate(sc) for b in sc[i + 1 :] if a.inner & b.inner]


def outcover_best(ctx: ResidualContext) -> tuple[int, int]:
    """(max over terminals of out-covered small cores, number of small cores)."""
    sc = ctx.small_cores()
    hs = [halo(ctx, c, exact=True) for c in sc]
    best = max((sum(1 for h in hs if s in h.complement) for s in ctx.inst.terminals), default=0)
    return best, len(sc)


def all_lemmas(ctx: ResidualContext) -> list[str]:
    out: list[str] = []
    for side in (ctx, ctx.flip()):
        out += backend_mismatch(side)
        out += closure_violations(side)
        out += crossing_cores(side)
        out += degree_violation(side)
        out += halo_overlaps(side)
        out += small_overlaps(side)
    return out
