"""Command-line front end.

Exit status: 0 success, 1 a checked property is violated (witness printed),
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import caps as _caps
from . import congruences as K
from . import partitions as P
from .algebra import enumerate_endomorphisms, identity_witness, quotient_algebra
from .closure import check_conditions, closure_from_congruence
from .errors import CapExceeded, PowcloError, SchemaError
from .fileformat import algebra_to_dict, dumps, load
from .generators import n_closed_generate, r_closure, seed_from_labels, sink_generate
from .parser import parse_identity
from .power import build_extended_power, build_relational_power
from .suites import SUITES, run_suite
from .varieties import endomorphism_sample

OK, VIOLATED, INPUT_ERROR = 0, 1, 2


def _split(text):
    return [s.strip() for s in text.split(",") if s.strip()]


def _blocks(alg, part):
    return " | ".join("{" + ",".join(alg.label(e) for e in b) + "}" for b in P.blocks(part))


def cmd_validate(args):
    alg, rs = load(args.file)
    ops = ", ".join(f"{s}/{a}" for s, a in alg.signature) or "none"
    print(f"{alg.name}: carrier {alg.size}, operations {ops}")
    if rs is not None:
        print("relations: " + ", ".join(f"{s}/{a} ({len(t)} tuples)" for s, a, t in rs.relations))
    return OK


def cmd_power(args):
    alg, rs = load(args.file)
    if args.relational:
        if rs is None:
            raise SchemaError("--relational needs a 'relations' block")
        out = build_relational_power(rs, name=alg.name)
    else:
        out = build_extended_power(alg).algebra
    print(dumps(out))
    return OK


def cmd_congruences(args):
    alg, _ = load(args.file)
    pa = None
    if args.of_power:
        pa = build_extended_power(alg)
        target = pa.algebra
    else:
        target = alg
    congs = K.all_congruences(target)
    endos, coverage = None, None
    if args.fully_invariant:
        try:
            endos, coverage = enumerate_endomorphisms(target), "full"
        except CapExceeded:
            if not args.sample:
                raise
            if pa is None:
                raise
            endos, coverage = endomorphism_sample(pa, seed=args.seed), "partial"
    print(f"{len(congs)} congruences of {target.name}")
    for i, c in enumerate(congs):
        line = f"[{i}] {_blocks(target, c)}"
        if endos is not None:
            fi = K.is_fully_invariant(target, c, endos)
            line += "  fully invariant" if fi else "  not fully invariant"
            if coverage == "partial" and fi:
                line += " (partial: necessary condition only)"
        print(line)
    if coverage:
        print(f"endomorphisms: {len(endos)} ({coverage})")
    return OK


def cmd_closures(args):
    alg, _ = load(args.file)
    pa = build_extended_power(alg)
    congs = K.all_congruences(pa.algebra)
    status = OK
    reports = []
    for i, theta in enumerate(congs):
        c = closure_from_congruence(pa, theta)
        entry = {"index": i, "congruence": _blocks(pa.algebra, theta),
                 "closure": {alg.format_subset(t): alg.format_subset(c(t)) for t in range(1 << alg.size)}}
        if args.report:
            rep = check_conditions(pa, c)
            entry["conditions"] = rep.to_dict()
            if not (rep.empty_preserving and rep.compatible):
                status = VIOLATED
        reports.append(entry)
    if args.json:
        print(json.dumps(reports, indent=2, default=str))
        return status
    for entry in reports:
        print(f"[{entry['index']}] {entry['congruence']}")
        print("    " + ", ".join(f"{k}->{v}" for k, v in entry["closure"].items()))
        for name, flag in entry.get("conditions", {}).items():
            extra = f" {flag['witness']}" if flag["witness"] is not None else ""
            print(f"    {name}: {flag['status']}{extra}")
    return status


def cmd_check(args):
    alg, _ = load(args.file)
    ident = parse_identity(args.identity, alg)
    if args.in_power:
        target = build_extended_power(alg).algebra
    else:
        target = alg
    w = identity_witness(target, ident)
    where = f"power algebra of {alg.name}" if args.in_power else alg.name
    if w is None:
        print(f"holds in {where}: {ident}")
        return OK
    names = ident.names
    shown = ", ".join(f"{names[v]}={target.label(e)}" for v, e in sorted(w.items()))
    print(f"fails in {where}: {ident}")
    print(f"witness: {shown}")
    return VIOLATED


def cmd_generate(args):
    alg, _ = load(args.file)
    seed = seed_from_labels(alg, _split(args.seed))
    if args.sink is not None:
        out = sink_generate(alg, _split(args.sink), seed)
    elif args.rclosed is not None:
        out = r_closure(alg, args.rclosed, seed, sym=args.op)
    else:
        out = n_closed_generate(alg, args.nsemigroup, seed)
    print(alg.format_subset(out))
    return OK


def cmd_quotient(args):
    alg, _ = load(args.file)
    target = build_extended_power(alg).algebra if args.of_power else alg
    congs = K.all_congruences(target)
    if not 0 <= args.congruence < len(congs):
        raise SchemaError(f"congruence index must be in 0..{len(congs) - 1}")
    q = quotient_algebra(target, congs[args.congruence])
    print(json.dumps(algebra_to_dict(q), indent=2))
    return OK


def cmd_verify(args):
    base = load(args.base)[0] if args.base else None
    suite = run_suite(args.suite, base=base, k=args.k, identity=args.identity, seed=args.seed)
    print(suite.to_json() if args.json else suite.render())
    return OK if suite.ok else VIOLATED


def build_parser():
    p = argparse.ArgumentParser(prog="powclo", description=(
        "Extended power algebras, their congruences and the matching closure operators."))
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an algebra file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("power", help="emit the extended (or relational) power algebra as JSON")
    s.add_argument("file")
    s.add_argument("--relational", action="store_true")
    s.set_defaults(func=cmd_power)

    s = sub.add_parser("congruences", help="list congruences in canonical order")
    s.add_argument("file")
    s.add_argument("--fully-invariant", action="store_true")
    s.add_argument("--of-power", action="store_true")
    s.add_argument("--sample", action="store_true",
                   help="above the endomorphism cap, test against a sample (partial)")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_congruences)

    s = sub.add_parser("closures", help="closure operators of all power-algebra congruences")
    s.add_argument("file")
    s.add_argument("--report", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_closures)

    s = sub.add_parser("check", help="test an identity")
    s.add_argument("file")
    s.add_argument("--identity", required=True)
    s.add_argument("--in-power", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("generate", help="generate a closed subset from a seed")
    s.add_argument("file")
    how = s.add_mutually_exclusive_group(required=True)
    how.add_argument("--sink", metavar="SYMS", help="comma-separated sink symbols ('' for none)")
    how.add_argument("--rclosed", metavar="R", type=int)
    how.add_argument("--nsemigroup", metavar="SYM")
    s.add_argument("--op", help="binary operation for --rclosed")
    s.add_argument("--seed", required=True, metavar="ELEMS", help="comma-separated elements")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("quotient", help="quotient by a congruence (canonical index)")
    s.add_argument("file")
    s.add_argument("--congruence", type=int, required=True)
    s.add_argument("--of-power", action="store_true")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--base")
    s.add_argument("--k", type=int)
    s.add_argument("--identity")
    s.add_argument("--json", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        _caps.current()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args)
    except PowcloError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
