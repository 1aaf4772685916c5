"""Command-line interface: ``dickson <subcommand> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or validation error.
With ``--json`` a subcommand prints one JSON document instead of text.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog_io
from .dickson_pairs import DicksonPair, class_count, dickson_pairs, index_value, is_dickson_pair, residue_indices
from .errors import DicksonError
from .nearfield import (
    DEFAULT_SAMPLES,
    EXHAUSTIVE_LIMIT,
    QUADRATIC_LIMIT,
    construct,
    coupling_property_check,
    enumerate_variants,
    left_distributivity_witness,
    metacyclic_check,
    n9_oracle,
    noncommutativity_witness,
    verify_axioms,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, machine: dict) -> None:
    if args.json:
        print(json.dumps(machine, sort_keys=True))
    else:
        print(text)


def _pair(args) -> DicksonPair:
    if args.q is None or args.n is None:
        raise UsageError("both --q and --n are required")
    check = is_dickson_pair(args.q, args.n)
    if not check:
        raise UsageError(f"({args.q}, {args.n}) is not a Dickson pair: clause {check.clause}: {check.reason}")
    return DicksonPair.of(args.q, args.n)


def _nearfield(args):
    if getattr(args, "inp", None):
        return catalog_io.load_descriptor(args.inp)
    pair = _pair(args)
    gen_class = getattr(args, "generator_class", None)
    gen = getattr(args, "generator", None)
    if gen is not None:
        return construct(pair, generator=[int(c) for c in gen.split(":")])
    return construct(pair, class_index=gen_class)


def cmd_pairs(args) -> int:
    if args.max_q < 1 or args.max_n < 1:
        raise UsageError("bounds must be >= 1")
    pairs = dickson_pairs(args.max_q, args.max_n)
    rows = [(pr.q, pr.n, class_count(pr)) for pr in pairs]
    _emit(args, "\n".join(f"{q} {n} {c}" for q, n, c in rows),
          {"pairs": [{"q": q, "n": n, "classes": c} for q, n, c in rows]})
    return EXIT_OK


def cmd_construct(args) -> int:
    nf = _nearfield(args)
    text = catalog_io.save_descriptor(nf, args.out)
    lines = [f"DN{nf.pair} order {nf.order}",
             f"modulus   {nf.field.modulus}",
             f"generator {nf.generator} ({nf.label})"]
    if args.out is None:
        lines.append(text.rstrip("\n"))
    else:
        lines.append(f"descriptor written to {args.out}")
    _emit(args, "\n".join(lines), json.loads(text))
    return EXIT_OK


def cmd_verify(args) -> int:
    nf = _nearfield(args)
    if args.exhaustive and args.samples is not None:
        raise UsageError("--exhaustive and --samples are mutually exclusive")
    if args.exhaustive:
        mode = "exhaustive"
    elif args.samples is not None:
        mode = "sampled"
    else:
        mode = "exhaustive" if nf.order <= EXHAUSTIVE_LIMIT else "sampled"
    if mode == "exhaustive" and nf.order > EXHAUSTIVE_LIMIT:
        raise UsageError(f"--exhaustive needs q^n <= {EXHAUSTIVE_LIMIT} (got {nf.order}); "
                         f"use --samples N --seed S instead")
    samples = args.samples if args.samples is not None else DEFAULT_SAMPLES
    report = verify_axioms(nf, mode, samples, args.seed)
    report.checks.append(coupling_property_check(nf, mode, samples, args.seed))
    if nf.order <= QUADRATIC_LIMIT:
        report.checks.append(metacyclic_check(nf))
    _emit(args, report.render(), report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_witness(args) -> int:
    nf = _nearfield(args)
    if nf.n == 1:
        raise UsageError(f"DN{nf.pair} is a field: no non-commutativity witness exists")
    w = noncommutativity_witness(nf)
    left = left_distributivity_witness(nf)
    lines = [f"g^n o g = {w.lhs}   (a = g^n = {w.a}, b = g = {w.b})",
             f"g o g^n = {w.rhs}",
             f"commute: {w.lhs == w.rhs}"]
    if left is None:
        lines.append("left distributivity: no counterexample found")
    else:
        a, b, c = left
        lines.append(f"left distributivity fails: a={a} b={b} c={c}")
    machine = {"pair": [nf.q, nf.n], "noncommutativity": [str(x) for x in w],
               "left_distributivity": None if left is None else [str(x) for x in left]}
    _emit(args, "\n".join(lines), machine)
    return EXIT_OK if left is not None else EXIT_FAIL


def cmd_classes(args) -> int:
    pair = _pair(args)
    if pair.order > QUADRATIC_LIMIT:
        raise UsageError(f"class enumeration needs q^n <= {QUADRATIC_LIMIT}")
    v = enumerate_variants(pair)
    status = "MATCH" if v.matches else "MISMATCH"
    lines = [f"predicted {v.predicted}", f"discovered {v.discovered}",
             "representative exponents " + " ".join(map(str, v.exponents)), status]
    _emit(args, "\n".join(lines), {"pair": [pair.q, pair.n], "predicted": v.predicted,
                                   "discovered": v.discovered, "exponents": v.exponents,
                                   "class_sizes": [len(m) for m in v.members], "status": status})
    return EXIT_OK if v.matches else EXIT_FAIL


def cmd_residues(args) -> int:
    pair = _pair(args)
    rs = residue_indices(pair)
    rows = [(k, index_value(pair.q, k), rs.residue(k)) for k in range(1, pair.n + 1)]
    ok = sorted(r for _, _, r in rows) == list(range(pair.n))
    lines = [f"{k} {i} {r}" for k, i, r in rows]
    lines.append(f"bijection onto Z_{pair.n}: {'yes' if ok else 'NO'}")
    _emit(args, "\n".join(lines), {"pair": [pair.q, pair.n], "bijection": ok,
                                   "rows": [{"k": k, "i": str(i), "residue": r} for k, i, r in rows]})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args) -> int:
    nf = catalog_io.load_descriptor(args.inp)
    catalog_io.export_cayley(nf, args.op, args.out)
    _emit(args, f"{args.op} table of DN{nf.pair} ({nf.order}x{nf.order}) written to {args.out}",
          {"pair": [nf.q, nf.n], "op": args.op, "size": nf.order, "out": args.out})
    return EXIT_OK


def cmd_n9check(args) -> int:
    nf = construct((3, 2))
    mismatches = sum(nf.mul(x, y) != n9_oracle(x, y)
                     for x in nf.elements() for y in nf.elements())
    _emit(args, f"compared 6561 products of DN(3,2) against the square rule: {mismatches} mismatches",
          {"compared": 6561, "mismatches": mismatches})
    return EXIT_OK if mismatches == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable JSON report")

    pair_args = argparse.ArgumentParser(add_help=False)
    pair_args.add_argument("--q", type=int)
    pair_args.add_argument("--n", type=int)

    gen_args = argparse.ArgumentParser(add_help=False)
    g = gen_args.add_mutually_exclusive_group()
    g.add_argument("--generator-class", type=int, metavar="J",
                   help="use the representative of isomorphism class J")
    g.add_argument("--generator", metavar="C0:C1:...", help="explicit primitive element")

    parser = argparse.ArgumentParser(prog="dickson", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pairs", parents=[common], help="list Dickson pairs with class counts")
    p.add_argument("--max-q", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("construct", parents=[common, pair_args, gen_args], help="build and save a descriptor")
    p.add_argument("--out", help="descriptor path (printed to stdout when omitted)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common, pair_args, gen_args], help="verify the nearfield axioms")
    p.add_argument("--in", dest="inp", help="descriptor to verify instead of --q/--n")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", parents=[common, pair_args, gen_args], help="show properness witnesses")
    p.add_argument("--in", dest="inp")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("classes", parents=[common, pair_args], help="enumerate generator variants")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("residues", parents=[common, pair_args], help="list (q^k-1)/(q-1) mod n")
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("table", parents=[common], help="export a Cayley table as CSV")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--op", choices=["add", "mul"], required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("n9check", parents=[common], help="compare DN(3,2) with the square rule")
    p.set_defaults(func=cmd_n9check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DicksonError, OSError) as exc:
        print(f"dickson {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
