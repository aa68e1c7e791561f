"""Command-line front end.

Exit codes: 0 success, 2 infeasible (or a solution that fails verification),
1 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from multiprocessing import Pool

from .bisets import ResidualContext, halo, within_guard
from .generate import GenParams, gen_random, suite_instance
from .instance import (
    InfeasibleError,
    InstanceError,
    format_instance,
    make_solution,
    normalize,
    parse_instance,
    parse_solution,
    serialize_solution,
)
from .oracle import DEFAULT_CAP, GuardExceeded, opt_augment
from .pipeline import solve, verify
from .rooted import SOLVERS


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    return parse_instance(_read(path))


def _seeds(spec: str) -> list[int]:
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError("empty seed list")
    return out


def cmd_gen(args) -> int:
    if args.suite is not None:
        inst = suite_instance(args.suite)
    else:
        lo, hi = (int(x) for x in args.cost_range.split(","))
        p = GenParams(
            n=args.n,
            t=args.t,
            k=args.k,
            directed=args.directed,
            cost_model=args.cost_model,
            density=args.density,
            cost_lo=lo,
            cost_hi=hi,
            unit_costs=args.unit_costs,
            seed=args.seed,
            max_edges=args.max_edges,
        )
        inst = gen_random(p)
    _emit(format_instance(inst), args.out)
    return 0


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    sol = solve(inst, args.variant, args.stars, args.rooted)
    _emit(serialize_solution(sol), args.out)
    return 0


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    idx = parse_solution(inst, _read(args.solution))
    rep = verify(inst, idx)
    doc = rep.to_json()
    claimed = json.loads(_read(args.solution)).get("cost")
    if claimed is not None and claimed != rep.cost:
        doc["claimed_cost"] = claimed
    sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    if not rep.feasible:
        w = rep.witness
        sys.stderr.write(f"infeasible: terminals {w.u},{w.v} short by {w.deficiency}\n")
        return 2
    if claimed is not None and claimed != rep.cost:
        sys.stderr.write(f"cost mismatch: claimed {claimed}, actual {rep.cost}\n")
        return 2
    return 0


def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    edges, _ = opt_augment(inst, args.cap)
    _emit(serialize_solution(make_solution(inst, edges, {"oracle": True})), args.out)
    return 0


def _fmt(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def cmd_cores(args) -> int:
    inst = normalize(_load(args.instance))
    fwd = ResidualContext(inst)
    sides = [("fwd", fwd)]
    if args.side in ("rev", "both"):
        sides.append(("rev", fwd.flip()))
    if args.side == "rev":
        sides = sides[1:]
    lines = []
    for name, ctx in sides:
        small = {c.key for c in ctx.small_cores()}
        for c in ctx.cores():
            tag = " small" if c.key in small else ""
            lines.append(f"core inner={_fmt(c.inner)} boundary={len(c.witness.boundary)} side={name}{tag}")
        if args.halos:
            exact = within_guard(inst)
            for c in ctx.small_cores():
                h = halo(ctx, c, exact=exact)
                lines.append(f"halo core={_fmt(c.inner)} inner={_fmt(h.inner)} outer={_fmt(h.outer)} side={name}")
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def _bench_row(job):
    seed, variant, stars, cap = job
    inst = suite_instance(seed)
    sol = solve(inst, variant, stars)
    c = sol.certificate
    bound = Fraction(c["bound_value_num"], c["bound_value_den"])
    opt = ratio = "-"
    if len(inst.cedges) <= cap:
        _, o = opt_augment(inst, cap)
        opt = str(o)
        ratio = str(Fraction(sol.cost, o)) if o else ("1" if sol.cost == 0 else "inf")
    kind = "directed" if inst.directed else "undirected"
    return (
        f"{seed}\t{kind}\t{inst.cost_model}\t{inst.n}\t{len(inst.terminals)}\t{inst.k}\t{len(inst.cedges)}\t"
        f"{sol.cost}\t{opt}\t{ratio}\t{bound}\t{c['rooted_calls']}\t{str(c['repair_used']).lower()}"
    )


def workers() -> int:
    cap = os.environ.get("CONNAUG_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise UsageError("CONNAUG_THREADS must be an integer") from None
    return n


def cmd_bench(args) -> int:
    jobs = [(s, args.variant, args.stars, args.oracle_cap) for s in _seeds(args.seeds)]
    header = "seed\tkind\tmodel\tn\tt\tk\tedges\tcost\topt\tratio\tbound\trooted_calls\trepair_used\n"
    w = workers()
    if w > 1 and len(jobs) > 1:
        with Pool(w) as pool:
            rows = pool.map(_bench_row, jobs)
    else:
        rows = [_bench_row(j) for j in jobs]
    _emit(header + "".join(r + "\n" for r in rows), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="connaug", description="Subset k-connectivity augmentation toolkit")
    p.add_argument("--debug", action="store_true", help="log per-iteration cover progress to stderr")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--n", type=int, default=12)
    g.add_argument("--t", type=int, default=6)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--directed", action="store_true")
    g.add_argument("--cost-model", choices=("edge", "node"), default="edge")
    g.add_argument("--density", type=float, default=0.3)
    g.add_argument("--cost-range", default="1,10", help="lo,hi")
    g.add_argument("--unit-costs", action="store_true", help="complete candidate set at cost 1")
    g.add_argument("--max-edges", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--suite", type=int, default=None, help="emit benchmark suite instance i instead")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="approximate augmentation")
    s.add_argument("instance")
    s.add_argument("--variant", choices=("i", "ii"), default="i")
    s.add_argument("--stars", choices=("greedy", "outcover"), default="greedy")
    s.add_argument("--rooted", choices=sorted(SOLVERS), default="trivial")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact optimum (small instances)")
    o.add_argument("instance")
    o.add_argument("--cap", type=int, default=DEFAULT_CAP)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("cores", help="print residual cores")
    c.add_argument("instance")
    c.add_argument("--side", choices=("fwd", "rev", "both"), default="fwd")
    c.add_argument("--halos", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_cores)

    b = sub.add_parser("bench", help="solve suite instances and tabulate")
    b.add_argument("--seeds", default="0..19", help="e.g. 1..50 or 1,4,9")
    b.add_argument("--variant", choices=("i", "ii"), default="i")
    b.add_argument("--stars", choices=("greedy", "outcover"), default="greedy")
    b.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.debug:
            logging.basicConfig(level=logging.DEBUG, format="%(message)s", stream=sys.stderr, force=True)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except InfeasibleError as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return 2
    except (InstanceError, GuardExceeded, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
