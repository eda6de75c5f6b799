"""Command line front end: ``python -m gds_tqft <subcommand> ...``.

Exit status is 0 on success, 1 when ``validate`` finds a failing criterion
and 2 for usage errors (bad arguments, unknown manifolds or theories,
dimension mismatches, exceeded budgets).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import acceptance, lattice
from .charclasses import sw_of, wu_classes
from .cohomology import betti_numbers, ring
from .errors import GdsError
from .simplicial import ManifoldRecord, builtin_names, parse_manifold
from .tqft import compare_theories, quantum_partition, state_dim, theory

MANIFOLD_GRAMMAR = """manifold expressions:
  name              one of rp2_6 torus_7 klein_8 rp3_11 cp2_9
  name(k)           circle(m) for m >= 3, sphere(d) for d >= 1
  product(A,B)      simplicial product of two expressions
  file:<path>       JSON facet file {"name", "facets", optional "f_vector"}
theories:
  tc | dw0 | gds | beta2 | dw^n | explicit Lagrangian such as "a^3 + w1*a^2 + w2*a"
"""

CATALOG = ("circle(3)", "circle(4)", "sphere(2)", "sphere(3)", "rp2_6", "torus_7", "klein_8", "rp3_11", "cp2_9")


class UsageError(Exception):
    pass


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _manifold(args) -> ManifoldRecord:
    if not args.manifold:
        raise UsageError("--manifold is required")
    return parse_manifold(args.manifold[0])


def _bits_list(coords: int, rank: int) -> list[int]:
    return [(coords >> j) & 1 for j in range(rank)]


# ---------------------------------------------------------------------------
# subcommands


def cmd_manifolds(args) -> int:
    rows = []
    for expr in CATALOG:
        rec = parse_manifold(expr)
        rows.append({"name": rec.name, "f_vector": list(rec.complex.f_vector), "betti": list(betti_numbers(rec.complex))})
    width = max(len(r["name"]) for r in rows)
    text = "\n".join(f"{r['name']:<{width}}  f={tuple(r['f_vector'])}  b={tuple(r['betti'])}" for r in rows)
    text += "\nforms: " + ", ".join(builtin_names())
    _emit(args, {"manifolds": rows}, text)
    return 0


def cmd_homology(args) -> int:
    rec = _manifold(args)
    K = rec.complex
    R = ring(K)
    payload = {
        "manifold": rec.name,
        "f_vector": list(K.f_vector),
        "betti": list(R.ranks),
        "euler_characteristic": K.euler_characteristic(),
        "components": len(K.components),
        "orientable": not any(sw_of(R).w(1)),
    }
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_sw(args) -> int:
    rec = _manifold(args)
    R = ring(rec.complex)
    wu = wu_classes(R)
    sw = sw_of(R)
    v = [_bits_list(c[k], R.ranks[k]) for k, c in enumerate(wu.classes)]
    w = [_bits_list(c[k], R.ranks[k]) for k, c in enumerate(sw.classes)]
    lines = [f"manifold: {rec.name}  betti: {tuple(R.ranks)}"]
    lines += [f"v{k} = {v[k]}   w{k} = {w[k]}" for k in range(R.dim + 1)]
    _emit(args, {"manifold": rec.name, "betti": list(R.ranks), "wu": v, "sw": w}, "\n".join(lines))
    return 0


def cmd_ground(args) -> int:
    rec = _manifold(args)
    K = rec.complex
    if args.method == "fast":
        report = lattice.ground_dim(K, args.model, rec.name, threads=args.threads)
    else:
        t0 = time.perf_counter()
        if args.method == "flat_oracle":
            d = lattice.flat_oracle_ground_dim(K, args.model, args.max_flat_bits)
        else:
            d = lattice.full_oracle_ground_dim(K, args.model, args.max_edges)
        ms = round((time.perf_counter() - t0) * 1000, 3)
        report = lattice.GroundStateReport(rec.name, args.model, d, [], args.method, ms)
    if args.json:
        print(report.to_json())
    else:
        print(report.dim)
    return 0


def cmd_statedim(args) -> int:
    rec = _manifold(args)
    T = theory(args.theory, rec.complex.dim + 1)
    res = state_dim(T, rec)
    _emit(args, res.to_dict(), str(res.dimension))
    return 0


def cmd_partition(args) -> int:
    rec = _manifold(args)
    T = theory(args.theory, rec.complex.dim)
    res = quantum_partition(T, rec)
    _emit(args, res.to_dict(), str(res.value))
    return 0


def cmd_compare(args) -> int:
    if not args.manifold:
        raise UsageError("compare needs at least one --manifold")
    recs = [parse_manifold(e) for e in args.manifold]
    dims = {r.complex.dim for r in recs}
    if len(dims) != 1:
        raise UsageError("compare needs manifolds of one dimension")
    n = dims.pop() + 1
    names = args.theory.split(",") if args.theory else ["gds", "dw0", f"dw^{n}"]
    table = compare_theories([theory(t, n) for t in names], recs)
    if args.json:
        print(table.to_json())
    else:
        print(table.to_text())
    return 0


def cmd_validate(args) -> int:
    numbers = args.only or [num for num, _, _ in acceptance.CRITERIA]
    results = [acceptance.run_one(n) for n in numbers]
    if args.json:
        print(acceptance.to_json(results))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifold", action="append", metavar="EXPR", help="manifold expression (repeat for compare)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--max-edges", type=int, default=lattice.MAX_EDGES, help="full oracle edge budget")
    common.add_argument("--max-flat-bits", type=int, default=lattice.MAX_FLAT_BITS, help="flat oracle budget, log2 of cocycle count")
    common.add_argument("--threads", type=int, default=1, help="worker processes for per-class work")

    p = argparse.ArgumentParser(
        prog="gds-tqft",
        description="Toric code, GDS model and Z/2 gauge-gravity TQFTs on triangulated manifolds.",
        epilog=MANIFOLD_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("manifolds", parents=[common], help="list built-in manifolds").set_defaults(fn=cmd_manifolds)
    sub.add_parser("homology", parents=[common], help="Betti numbers and Euler characteristic").set_defaults(fn=cmd_homology)
    sub.add_parser("sw", parents=[common], help="Wu and Stiefel-Whitney classes").set_defaults(fn=cmd_sw)
    g = sub.add_parser("ground", parents=[common], help="lattice ground-state dimension")
    g.add_argument("--model", choices=lattice.MODELS, required=True)
    g.add_argument("--method", choices=("fast", "flat_oracle", "full_oracle"), default="fast")
    g.set_defaults(fn=cmd_ground)
    s = sub.add_parser("statedim", parents=[common], help="TQFT state-space dimension of M")
    s.add_argument("--theory", required=True)
    s.set_defaults(fn=cmd_statedim)
    q = sub.add_parser("partition", parents=[common], help="TQFT partition function of N")
    q.add_argument("--theory", required=True)
    q.set_defaults(fn=cmd_partition)
    c = sub.add_parser("compare", parents=[common], help="compare theories across manifolds")
    c.add_argument("--theory", help="comma separated theories (default gds,dw0,dw^n)")
    c.set_defaults(fn=cmd_compare)
    v = sub.add_parser("validate", parents=[common], help="run the acceptance suite")
    v.add_argument("--only", type=int, action="append", metavar="N", help="run only criterion N (repeatable)")
    v.set_defaults(fn=cmd_validate)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        print(MANIFOLD_GRAMMAR, file=sys.stderr)
        return 2
    except (GdsError, KeyError, OSError, ValueError) as exc:
        name = type(exc).__name__
        print(f"{name}: {exc}", file=sys.stderr)
        if name in ("ParseError", "UnknownManifold"):
            print(MANIFOLD_GRAMMAR, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
