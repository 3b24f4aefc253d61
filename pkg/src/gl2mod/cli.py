"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import csv
import io
import re
import sys
from fractions import Fraction

from . import chars, serialize, verify
from .cyclo import CycNum
from .gl2 import conj_classes, is_regular_class, prime_power
from .proorder import bad_primes, pro_order_gln
from .weyl import cartan_weyl_char


class InputError(Exception):
    pass


def _class_json(c, ell=None):
    out = {"label": c.label, "family": c.family, "params": list(c.params),
           "exps": list(c.exps), "rep": [[c.rep[0], c.rep[1]], [c.rep[2], c.rep[3]]],
           "size": c.size, "elt_order": c.elt_order}
    if ell is not None:
        out["regular"] = is_regular_class(c, ell)
    return out


def _show(v):
    if isinstance(v, CycNum):
        if v.is_rational():
            return str(v.to_rational())
        z = v.to_complex()
        return f"{z.real:.4f}{z.imag:+.4f}i"
    return str(v)


def cmd_classes(args):
    prime_power(args.q)
    data = {"q": args.q, "classes": [_class_json(c, args.mod) for c in conj_classes(args.q)]}
    print(serialize.emit_json(data))
    return 0


def cmd_chartable(args):
    table = chars.ordinary_table(args.q)
    labels = [c.label for c in table[0].classes]
    if args.format == "json":
        data = {"q": args.q, "classes": labels,
                "characters": [{"label": ch.label, "values": ch.values} for ch in table]}
        print(serialize.emit_json(data))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["character"] + labels)
        for ch in table:
            w.writerow([ch.label] + [repr(v) for v in ch.values])
        sys.stdout.write(buf.getvalue())
    else:
        width = max(len(ch.label) for ch in table)
        print(" " * width + "  " + "  ".join(labels))
        for ch in table:
            print(ch.label.ljust(width) + "  " + "  ".join(_show(v) for v in ch.values))
    return 0


def cmd_irreducibles(args):
    irr = chars.enumerate_irreducibles(args.q, args.mod)
    data = {"q": args.q, "ell": args.mod,
            "classes": [c.label for c in irr[0].brauer.classes] if irr else [],
            "irreducibles": [{"label": x.label, "dim": x.module.dim,
                              "brauer": x.brauer.values} for x in irr]}
    print(serialize.emit_json(data))
    return 0


def _parse_rep(q, label):
    try:
        return chars.ordinary_character(q, label)
    except KeyError:
        pass
    m = re.fullmatch(r"Ps\((\d+),(\d+)\)", label.replace(" ", ""))
    if m:
        return chars.principal_series_character(q, int(m[1]) % (q - 1), int(m[2]) % (q - 1))
    raise InputError(f"unknown representation label {label!r}")


def cmd_decompose(args):
    ch = _parse_rep(args.q, args.rep)
    irr = chars.enumerate_irreducibles(args.q, args.mod)
    d = chars.decompose(ch, args.mod)
    data = {"q": args.q, "ell": args.mod, "rep": args.rep,
            "multiplicities": {x.label: m for x, m in zip(irr, d) if m}}
    print(serialize.emit_json(data))
    return 0


def cmd_decmatrix(args):
    D = chars.decomposition_matrix(args.q, args.mod)
    data = {"q": D.q, "ell": D.ell, "rows": D.rows, "cols": D.cols, "entries": D.entries,
            "is_permutation": bool(D.is_permutation())}
    print(serialize.emit_json(data))
    return 0


def cmd_verify(args):
    if args.lemma != "all" and args.lemma not in verify.BUNDLES:
        raise InputError(f"unknown lemma id {args.lemma!r}")
    params = {"p": args.p, "q": args.q, "ell": args.mod}
    if args.lemma == "all":
        params = {"max_p": args.max_p}
    rep = verify.verify_lemma(args.lemma, **params)
    text = serialize.emit_json(rep.to_json(), indent=1)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"{rep.lemma_id}: {rep.status}", file=sys.stderr)
    return 1 if rep.status == "fail" else 0


def cmd_proorder(args):
    print(f"{pro_order_gln(args.n, args.p)}")
    print("bad primes: " + " ".join(str(x) for x in bad_primes(args.n, args.p)))
    return 0


def _int_list(text):
    return [int(x) for x in text.split(",")]


def _rat_list(text):
    return [Fraction(x) for x in text.split(",")]


def cmd_cartan_weyl(args):
    v = cartan_weyl_char(args.lam, args.t)
    print(str(v))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="gl2mod",
                                 description="Modular representations of GL_2(F_q).")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classes", help="conjugacy classes")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mod", type=int)
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("chartable", help="ordinary character table")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--format", choices=("table", "json", "csv"), default="table")
    s.set_defaults(func=cmd_chartable)

    s = sub.add_parser("irreducibles", help="irreducible modular representations")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s.set_defaults(func=cmd_irreducibles)

    s = sub.add_parser("decompose", help="reduce an ordinary irreducible mod ell")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--rep", required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("decmatrix", help="decomposition matrix")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s.set_defaults(func=cmd_decmatrix)

    s = sub.add_parser("verify", help="run a lemma verification bundle")
    s.add_argument("--lemma", required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--mod", type=int)
    s.add_argument("--max-p", type=int, default=7)
    s.add_argument("--output")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("proorder", help="pro-order of GL_n(Z_p)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_proorder)

    s = sub.add_parser("cartan-weyl", help="Cartan-Weyl character on the diagonal torus")
    s.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    s.add_argument("--t", type=_rat_list, required=True)
    s.set_defaults(func=cmd_cartan_weyl)
    return ap


def run(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 2


def main():
    sys.exit(run())
