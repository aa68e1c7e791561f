"""Brute-force references shared by the tests."""

from itertools import combinations

from connaug.instance import edge_set_cost
from connaug.verify import local_conn


def reachable(n, edges, directed, u, v, removed=()):
    adj = {x: [] for x in range(n)}
    for a, b in edges:
        adj[a].append(b)
        if not directed:
            adj[b].append(a)
    seen, stack = {u}, [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return v in seen


def brute_separator(n, edges, directed, u, v):
    """Smallest node set (avoiding u, v) whose removal cuts every u->v path."""
    others = [x for x in range(n) if x not in (u, v)]
    for size in range(len(others) + 1):
        for cut in combinations(others, size):
            if not reachable(n, edges, directed, u, v, set(cut)):
                return size
    return None


def brute_q_connect(inst, u, v, q):
    """Cheapest candidate subset giving q disjoint u->v paths, by exhaustion."""
    m = len(inst.cedges)
    best = None
    for mask in range(1 << m):
        idx = [i for i in range(m) if mask >> i & 1]
        c = edge_set_cost(inst, idx)
        if best is not None and c >= best:
            continue
        if local_conn(inst, list(inst.jedges) + inst.edge_pairs(idx), u, v) >= q:
            best = c
    return best


def brute_augment(inst, check):
    """Cheapest candidate subset passing ``check(edges)``."""
    m = len(inst.cedges)
    best = None
    for mask in range(1 << m):
        idx = [i for i in range(m) if mask >> i & 1]
        c = edge_set_cost(inst, idx)
        if best is not None and c >= best:
            continue
        if check(list(inst.jedges) + inst.edge_pairs(idx)):
            best = c
    return best
