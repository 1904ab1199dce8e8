"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 when an identity or scan
is falsified (the report is still printed), 2 for usage errors.
Half-integer arguments are accepted as "13/2" or "6.5".  A relative
--output path is placed under $CKP_OUTPUT_DIR when that is set.
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .characters import char_series
from .fock import charge, format_monomial, monomials_up_to2, parse_doubled
from .hirota import no_solution_scan
from .hwv import TWISTED, UNTWISTED, hwv_basis, hwv_from_bipartition
from .identities import ORDER, REGISTRY, WindowTooSmall, verify_identity
from .linalg import rank_rational
from .partitions import (enumerate_bpdi, hwv_count_via_crank, odp_of_weight2,
                         ptdo_of_weight2, weight_W2)

OUTPUT_DIR_ENV = "CKP_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _half(text):
    try:
        return parse_doubled(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not an integer" % (text,))
    if n < 0:
        raise argparse.ArgumentTypeError("bound must be nonnegative")
    return n


def _frac_pair(x):
    f = Fraction(x)
    return [f.numerator, f.denominator]


def vector_json(v):
    return [[[list(p) for p in mono], *_frac_pair(c)] for mono, c in v]


def hwv_basis_json(basis):
    return {"algebra": basis.algebra, "degree2": basis.degree2,
            "vectors": [{"terms": vector_json(v),
                         "charge": basis.charges[i] if basis.charges else None}
                        for i, v in enumerate(basis.vectors)]}


# --- commands -----------------------------------------------------------

def cmd_hwv(args):
    basis = hwv_basis(args.algebra, args.degree)
    if args.json or args.format == "json":
        return 0, json.dumps(hwv_basis_json(basis), indent=1)
    lines = ["# %s hwv at degree %s: %d" % (args.algebra, Fraction(args.degree, 2),
                                              len(basis))]
    for i, v in enumerate(basis.vectors):
        tag = " charge %d" % basis.charges[i] if basis.charges else ""
        lines.append("%s%s" % (v, tag))
    return 0, "\n".join(lines)


def cmd_character(args):
    s = char_series(args.which, args.order)
    return 0, json.dumps(s.to_json())


def _windows(items):
    out = {}
    for item in items or []:
        name, _, value = item.partition("=")
        if not value or name not in ("a", "x"):
            raise UsageError("window must look like a=40 or x=80, got %r" % (item,))
        out[name] = int(value)
    return out


def cmd_verify(args):
    names = ORDER if args.identity == "all" else [args.identity]
    for name in names:
        if name not in REGISTRY:
            raise UsageError("unknown identity %r (choose from %s or all)"
                             % (name, ", ".join(ORDER)))
    windows = _windows(args.window)
    try:
        reports = [verify_identity(n, args.order, windows or None,
                                   stability=not args.no_stability) for n in names]
    except WindowTooSmall as exc:
        raise UsageError(str(exc))
    code = 0 if all(r.passed for r in reports) else 1
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "order", "status", "stable"])
        for r in reports:
            w.writerow([r.name, r.order, r.status, r.stable])
        return code, buf.getvalue().rstrip("\n")
    return code, json.dumps({"reports": [r.to_json() for r in reports],
                             "summary": [[r.name, r.status] for r in reports]}, indent=1)


def cmd_hirota(args):
    if not args.scan:
        raise UsageError("hirota needs --scan")
    report = no_solution_scan(args.max_degree, args.trials, args.seed)
    return (0 if report.passed else 1), json.dumps(report.to_json(), indent=1)


def _family_rows(family, max_w2):
    rows = []
    if family == "bpdi":
        for bp in enumerate_bpdi(max_w2):
            rows.append((weight_W2(bp), str(bp), bp.birank))
        return rows
    fn = odp_of_weight2 if family == "odp" else ptdo_of_weight2
    for w2 in range(max_w2 + 1):
        for p in fn(w2):
            if family == "odp":
                label = "(%s)" % ",".join(str(x) for x in p.parts)
            else:
                label = "T%d(%s)" % (p.triangular_index, ",".join(str(x) for x in p.tail.parts))
            rows.append((w2, label, None))
    return rows


def cmd_partitions(args):
    rows = _family_rows(args.family, args.max_weight)
    if args.format == "json":
        return 0, json.dumps([{"weight2": w, "partition": s, "birank": b}
                              for w, s, b in rows], indent=1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["weight2", "count"])
    counts = {}
    for w2, _, _ in rows:
        counts[w2] = counts.get(w2, 0) + 1
    for w2 in range(args.max_weight + 1):
        w.writerow([w2, counts.get(w2, 0)])
    return 0, buf.getvalue().rstrip("\n")


def bijection_table(d2):
    """Counts on both sides of the P_tdo / BP_DI correspondence at doubled degree d2."""
    bps = [bp for bp in enumerate_bpdi(d2) if weight_W2(bp) == d2]
    basis = hwv_basis(UNTWISTED, d2)
    images = [hwv_from_bipartition(bp.pi1, bp.pi2) for bp in bps]
    monos = monomials_up_to2(d2)
    pos = {m: i for i, m in enumerate(monos)}
    rank = rank_rational([{pos[m]: c for m, c in v.terms.items()} for v in images],
                         len(monos))
    charges = sorted({bp.birank for bp in bps} | set(basis.charges), reverse=True)
    table = []
    for c in charges:
        table.append({"charge": c,
                      "birank": sum(1 for bp in bps if bp.birank == c),
                      "hwv": basis.charges.count(c),
                      "crank": hwv_count_via_crank(d2, c)})
    return {"degree2": d2, "ptdo": len(ptdo_of_weight2(d2)), "bpdi": len(bps),
            "hwv": len(basis), "image_rank": rank,
            "image_charges_ok": all(charge(m) == bp.birank for bp, v in zip(bps, images)
                                    for m in v.terms),
            "charges": table,
            "pairs": [[str(bp), bp.birank] for bp in bps]}


def cmd_bijection(args):
    data = bijection_table(args.degree)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["charge", "birank", "hwv", "crank"])
        for row in data["charges"]:
            w.writerow([row["charge"], row["birank"], row["hwv"], row["crank"]])
        return 0, buf.getvalue().rstrip("\n")
    return 0, json.dumps(data, indent=1)


# --- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="ckp", description="Fock space, hwv and character tools.")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hwv", help="highest weight vector basis at one degree")
    s.add_argument("--algebra", choices=[UNTWISTED, TWISTED], required=True)
    s.add_argument("--degree", type=_half, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_hwv)

    s = sub.add_parser("character", help="a graded character as Series JSON")
    s.add_argument("--which", choices=["fock", "hwv", "qt", "triple", "crank"], required=True)
    s.add_argument("--order", type=_positive_int, required=True,
                   help="u-order N, u = q^(1/2)")
    s.set_defaults(func=cmd_character)

    s = sub.add_parser("verify", help="run registered identities")
    s.add_argument("--identity", required=True, help="name or 'all'")
    s.add_argument("--order", type=_positive_int, required=True)
    s.add_argument("--window", action="append", help="window for the appendix chain, e.g. a=48")
    s.add_argument("--no-stability", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hirota", help="Hirota equation scans")
    s.add_argument("--scan", action="store_true")
    s.add_argument("--max-degree", type=_half, default=6)
    s.add_argument("--trials", type=_positive_int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_hirota)

    s = sub.add_parser("partitions", help="enumerate a partition family")
    s.add_argument("--family", choices=["odp", "ptdo", "bpdi"], required=True)
    s.add_argument("--max-weight", type=_half, required=True)
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("bijection", help="P_tdo / BP_DI counts and charges at one degree")
    s.add_argument("--degree", type=_half, required=True)
    s.set_defaults(func=cmd_bijection)
    return p


def _emit(text, output):
    if not output:
        sys.stdout.write(text + "\n")
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(output):
        os.makedirs(base, exist_ok=True)
        output = os.path.join(base, output)
    with open(output, "w") as fh:
        fh.write(text + "\n")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    for name in ("degree", "max_degree", "max_weight"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            sys.stderr.write("ckp: %s must be nonnegative\n" % name.replace("_", "-"))
            return 2
    try:
        code, text = args.func(args)
    except UsageError as exc:
        sys.stderr.write("ckp: %s\n" % exc)
        return 2
    _emit(text, args.output)
    return code


def main():
    sys.exit(run())
