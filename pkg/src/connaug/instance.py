"""Problem instances, solutions, the instance file format and cost accounting."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

Edge = tuple[int, int]


class InstanceError(ValueError):
    """Raised for malformed or invalid instances."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(RuntimeError):
    """No augmentation exists (or a sub-request cannot be met).

    ``witness`` names the failing pair/target when one is known.
    """

    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        super().__init__(message)


def canon(u: int, v: int, directed: bool) -> Edge:
    if directed or u <= v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class Instance:
    directed: bool
    cost_model: str
    n: int
    terminals: tuple[int, ...]
    k: int
    jedges: tuple[Edge, ...]
    cedges: tuple[tuple[int, int, int], ...]
    node_cost: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(sorted(set(self.terminals))))
        if self.cost_model == "node" and len(self.node_cost) != self.n:
            nc = tuple(self.node_cost) + (0,) * (self.n - len(self.node_cost))
            object.__setattr__(self, "node_cost", nc[: self.n])

    @property
    def terminal_set(self) -> frozenset[int]:
        return frozenset(self.terminals)

    @property
    def t(self) -> int:
        return len(self.terminals)

    def edge_pairs(self, indices: Iterable[int]) -> list[Edge]:
        return [self.cedges[i][:2] for i in indices]

    def with_jedges(self, extra: Iterable[Edge]) -> "Instance":
        """Same instance with ``extra`` folded into the zero-cost subgraph."""
        return replace(self, jedges=self.jedges + tuple(canon(u, v, self.directed) for u, v in extra))


@dataclass(frozen=True)
class Solution:
    edges: tuple[int, ...]
    cost: int
    pairs: tuple[Edge, ...] = ()
    certificate: dict = field(default_factory=dict, compare=False)


def validate(inst: Instance) -> None:
    """Structural checks; connectivity is checked by :func:`normalize`."""
    if inst.cost_model not in ("edge", "node"):
        raise InstanceError(f"unknown cost model {inst.cost_model!r}")
    if inst.k < 0:
        raise InstanceError("k must be non-negative")
    if len(inst.terminals) < inst.k + 1:
        raise InstanceError("at least k+1 terminals required")
    for v in inst.terminals:
        if not 0 <= v < inst.n:
            raise InstanceError(f"terminal {v} out of range")
    jset = set()
    for u, v in inst.jedges:
        _check_endpoints(inst, u, v)
        jset.add(canon(u, v, inst.directed))
    for u, v, c in inst.cedges:
        _check_endpoints(inst, u, v)
        if c < 0:
            raise InstanceError("negative edge cost")
        if canon(u, v, inst.directed) in jset:
            raise InstanceError(f"candidate edge {u} {v} duplicates a J edge")
    if any(c < 0 for c in inst.node_cost):
        raise InstanceError("negative node cost")


def _check_endpoints(inst: Instance, u: int, v: int, line: int | None = None) -> None:
    if not (0 <= u < inst.n and 0 <= v < inst.n):
        raise InstanceError(f"edge endpoint out of range: {u} {v}", line)
    if u == v:
        raise InstanceError(f"self-loop at {u}", line)


# ---------------------------------------------------------------- file format


def parse_instance(text: str) -> Instance:
    header = None
    n = None
    terminals: list[int] | None = None
    jedges: list[Edge] = []
    cedges: list[tuple[int, int, int]] = []
    seen_c: set[tuple[int, int, int]] = set()
    ncost: dict[int, int] = {}

    def ints(parts, lineno):
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise InstanceError(f"expected integers, got {' '.join(parts)!r}", lineno) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *rest = line.split()
        if word == "aug":
            if header is not None:
                raise InstanceError("duplicate aug header", lineno)
            if len(rest) != 3 or rest[0] not in ("directed", "undirected") or rest[1] not in ("edge", "node"):
                raise InstanceError("header must be: aug <directed|undirected> <edge|node> <k>", lineno)
            (k,) = ints(rest[2:], lineno)
            header = (rest[0] == "directed", rest[1], k)
        elif word == "nodes":
            if len(rest) != 1:
                raise InstanceError("nodes takes one argument", lineno)
            (n,) = ints(rest, lineno)
        elif word == "terminals":
            terminals = ints(rest, lineno)
        elif word == "jedge":
            if len(rest) != 2:
                raise InstanceError("jedge takes two arguments", lineno)
            u, v = ints(rest, lineno)
            jedges.append((u, v))
        elif word == "cedge":
            if len(rest) != 3:
                raise InstanceError("cedge takes three arguments", lineno)
            u, v, c = ints(rest, lineno)
            if header is not None and not header[0] and u > v:
                u, v = v, u
            if (u, v, c) in seen_c:
                raise InstanceError(f"duplicate edge declaration {u} {v}", lineno)
            seen_c.add((u, v, c))
            cedges.append((u, v, c))
        elif word == "ncost":
            if len(rest) != 2:
                raise InstanceError("ncost takes two arguments", lineno)
            v, c = ints(rest, lineno)
            if v in ncost:
                raise InstanceError(f"duplicate ncost for node {v}", lineno)
            ncost[v] = c
        else:
            raise InstanceError(f"unknown directive {word!r}", lineno)

    if header is None:
        raise InstanceError("missing aug header")
    if n is None:
        raise InstanceError("missing nodes line")
    directed, model, k = header
    if terminals is None or len(terminals) < k + 1:
        raise InstanceError("at least k+1 terminals required")
    if len(set(terminals)) != len(terminals):
        raise InstanceError("duplicate terminal id")
    if ncost and model != "node":
        raise InstanceError("ncost given for an edge-cost instance")
    for v in ncost:
        if not 0 <= v < n:
            raise InstanceError(f"ncost node {v} out of range")
    inst = Instance(
        directed=directed,
        cost_model=model,
        n=n,
        terminals=tuple(terminals),
        k=k,
        jedges=tuple(canon(u, v, directed) for u, v in jedges),
        cedges=tuple(cedges),
        node_cost=tuple(ncost.get(v, 0) for v in range(n)) if model == "node" else (),
    )
    validate(inst)
    return inst


def format_instance(inst: Instance) -> str:
    lines = [
        f"aug {'directed' if inst.directed else 'undirected'} {inst.cost_model} {inst.k}",
        f"nodes {inst.n}",
        "terminals " + " ".join(map(str, inst.terminals)),
    ]
    lines += [f"jedge {u} {v}" for u, v in inst.jedges]
    lines += [f"cedge {u} {v} {c}" for u, v, c in inst.cedges]
    if inst.cost_model == "node":
        lines += [f"ncost {v} {c}" for v, c in enumerate(inst.node_cost) if c]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- normalization


def normalize(inst: Instance, check: bool = True) -> Instance:
    """Subdivide every J edge joining two terminals by a fresh node.

    Fresh nodes are appended in J-edge declaration order and cost nothing.
    With ``check`` the result must have T k-connected in J.
    """
    tset = inst.terminal_set
    n = inst.n
    jedges: list[Edge] = []
    for u, v in inst.jedges:
        if u in tset and v in tset:
            w = n
            n += 1
            jedges += [(u, w), (w, v)] if inst.directed else [canon(u, w, False), canon(w, v, False)]
        else:
            jedges.append((u, v))
    out = inst if n == inst.n else replace(
        inst,
        n=n,
        jedges=tuple(jedges),
        node_cost=inst.node_cost + (0,) * (n - inst.n) if inst.cost_model == "node" else (),
    )
    if check:
        from .verify import check_subset

        witness = check_subset(out, out.jedges, out.k)
        if witness is not None:
            raise InstanceError(
                f"instance infeasible as stated: terminals {witness.u},{witness.v} "
                f"have only {out.k - witness.deficiency} disjoint paths in J (need {out.k})"
            )
    return out


# ---------------------------------------------------------------- costs


def edge_set_cost(inst: Instance, indices: Iterable[int]) -> int:
    """Cost of a set of candidate edges under the instance's cost model.

    Node model: each non-terminal node touched by a chosen edge is paid once.
    """
    indices = set(indices)
    if inst.cost_model == "edge":
        return sum(inst.cedges[i][2] for i in indices)
    tset = inst.terminal_set
    touched = {x for i in indices for x in inst.cedges[i][:2] if x not in tset}
    return sum(inst.node_cost[x] for x in touched)


def make_solution(inst: Instance, indices: Iterable[int], certificate: dict | None = None) -> Solution:
    idx = tuple(sorted(set(indices)))
    pairs = tuple(sorted(inst.cedges[i][:2] for i in idx))
    return Solution(edges=idx, cost=edge_set_cost(inst, idx), pairs=pairs, certificate=dict(certificate or {}))


def serialize_solution(sol: Solution) -> str:
    doc = {
        "cost": sol.cost,
        "edges": [list(p) for p in sorted(sol.pairs)],
        "certificate": sol.certificate,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse_solution(inst: Instance, text: str) -> tuple[int, ...]:
    """Map a solution document back onto candidate-edge indices.

    A pair matching several parallel candidates resolves to the cheapest unused one.
    """
    doc = json.loads(text)
    by_pair: dict[Edge, list[int]] = {}
    for i, (u, v, c) in enumerate(inst.cedges):
        by_pair.setdefault(canon(u, v, inst.directed), []).append(i)
    for lst in by_pair.values():
        lst.sort(key=lambda i: (inst.cedges[i][2], i))
    chosen: list[int] = []
    for u, v in doc.get("edges", []):
        lst = by_pair.get(canon(int(u), int(v), inst.directed))
        if not lst:
            raise InstanceError(f"solution edge {u} {v} is not a candidate edge")
        chosen.append(lst.pop(0))
    return tuple(sorted(chosen))


def terminal_pairs(terminals: Sequence[int], directed: bool) -> list[Edge]:
    if directed:
        return [(u, v) for u in terminals for v in terminals if u != v]
    return [(u, v) for i, u in enumerate(terminals) for v in terminals[i + 1 :]]
