"""Command-line front end.

Exit codes: 0 when everything checked holds, 1 on a mathematical failure,
2 on a usage error (bad flags, unparsable expressions, cap exceeded).
"""

from __future__ import annotations

import argparse
import sys

from .algebra import CapExceeded, build_rewrite_system
from .autos import degree_profile, linear_part_report, read_endo_file, verify_endo
from .braid import PBWError, ls_straighten, root_vectors, verify_braid_relation
from .expr import ExprError, evaluate, render, scalar_value
from .regression import run_checks
from .rootdata import CartanError, longest_words, preset, read_cartan_file
from .structure import center_basis, check_central, check_normal, named_elements

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--type", choices=("A2", "B2"), help="preset Cartan type (default A2)")
    src.add_argument("--cartan", metavar="FILE", help="Cartan matrix file")
    common.add_argument("--cap", type=int, default=10, help="degree cap for the rewriting system")
    common.add_argument("--word", type=_int_list, help="reduced word, e.g. 1,2,1")
    common.add_argument("--machine", action="store_true", help="PASS|FAIL <id> <detail> lines")

    p = argparse.ArgumentParser(prog="uqplus", description="Exact computations in U_q(g) and U_q^+(g).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    add("nf", "normal form of an expression").add_argument("expr")
    s = add("mul", "product of two expressions")
    s.add_argument("x")
    s.add_argument("y")
    s = add("comm", "commutator xy - yx")
    s.add_argument("x")
    s.add_argument("y")
    s = add("qcomm", "q-commutator xy - c yx")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("c")
    add("root-vectors", "root vectors for a reduced word")
    s = add("straighten", "straightening relation for a pair of root vectors")
    s.add_argument("--pair", type=_int_list, required=True)
    add("center", "basis of the centre in one degree").add_argument("--degree", type=int, required=True)
    add("check-central", "does an element commute with every E_i").add_argument("expr")
    add("check-normal", "q-commutation certificate").add_argument("expr")
    add("check-auto", "verify an endomorphism file").add_argument("--file", required=True)
    add("braid-check", "braid relations on all generators")
    s = add("verify-paper", "run the regression suite of rank-two identities")
    s.add_argument("--self-test-negative", action="store_true",
                   help="append a deliberately false identity (must exit 1)")
    s.add_argument("--no-numeric", action="store_true", help="skip the q = 3/2 re-check")
    return p


def _system(args):
    if args.cap < 2:
        raise UsageError("--cap must be at least 2")
    try:
        cd = read_cartan_file(args.cartan) if args.cartan else preset(args.type or "A2")
    except (CartanError, OSError) as exc:
        raise UsageError(str(exc)) from None
    try:
        return build_rewrite_system(cd, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _names(rs) -> dict:
    names = named_elements(rs)
    out = dict(names)
    for k, v in names.items():
        out[k.replace("'", "p")] = v
    return out


def _expr(rs, text, names):
    return evaluate(rs, text, names)


def _word(rs, args):
    if args.word:
        return args.word
    return longest_words(rs.cartan)[0]


def _emit_checks(checks, machine, out):
    for c in checks:
        if machine:
            print(c.line(), file=out)
        else:
            print(f"[{'PASS' if c.passed else 'FAIL'}] {c.id}: {c.detail}", file=out)
    failed = [c for c in checks if not c.passed]
    if not machine:
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=out)
    return 1 if failed else 0


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "verify-paper":
        if args.cartan:
            raise UsageError("verify-paper works on the presets only")
        tags = (args.type,) if args.type else ("A2", "B2")
        checks = []
        for t in tags:
            checks += run_checks(t, cap=args.cap, negative=args.self_test_negative,
                                 numeric=not args.no_numeric)
        return _emit_checks(checks, args.machine, out)

    rs = _system(args)
    names = _names(rs)
    if cmd == "nf":
        print(render(_expr(rs, args.expr, names)), file=out)
    elif cmd == "mul":
        print(render(rs.multiply(_expr(rs, args.x, names), _expr(rs, args.y, names))), file=out)
    elif cmd == "comm":
        print(render(rs.commutator(_expr(rs, args.x, names), _expr(rs, args.y, names))), file=out)
    elif cmd == "qcomm":
        c = scalar_value(rs, args.c)
        print(render(rs.q_commutator(_expr(rs, args.x, names), _expr(rs, args.y, names), c)), file=out)
    elif cmd == "root-vectors":
        try:
            table = root_vectors(rs, _word(rs, args))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(table.export(), file=out)
    elif cmd == "straighten":
        if len(args.pair) != 2:
            raise UsageError("--pair takes two indices i,j")
        try:
            table = root_vectors(rs, _word(rs, args))
            rel = ls_straighten(rs, table, *args.pair)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(rel, file=out)
    elif cmd == "center":
        if args.degree < 0:
            raise UsageError("--degree must be nonnegative")
        basis = center_basis(rs, args.degree)
        for x in basis:
            print(render(x), file=out)
        print(f"dimension {len(basis)}", file=out)
    elif cmd == "check-central":
        x = _expr(rs, args.expr, names)
        print("central" if check_central(rs, x) else "not central", file=out)
    elif cmd == "check-normal":
        x = _expr(rs, args.expr, names)
        if not x:
            raise UsageError("the zero element has no certificate")
        try:
            cert = check_normal(rs, x)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if cert:
            sc = ", ".join(str(c) for c in cert.scalars)
            print(f"normal: x*E_i = c_i*E_i*x with c = ({sc})", file=out)
        else:
            print(str(cert), file=out)
    elif cmd == "check-auto":
        try:
            s = read_endo_file(rs, args.file, names)
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        rep = verify_endo(rs, s)
        from .regression import Check
        checks = [Check(f"endo.{label}", ok, f"image {img}") for label, img, ok in rep.rows]
        code = _emit_checks(checks, args.machine, out)
        lin = linear_part_report(rs, s)
        if not args.machine:
            print(f"degree profile {degree_profile(rs, s)}", file=out)
            print(f"linear part determinant {lin.determinant} "
                  f"(necessary-condition report: {'invertible' if lin.invertible else 'singular'})",
                  file=out)
        return code
    elif cmd == "braid-check":
        from .regression import Check
        checks = []
        for i in range(1, rs.rank + 1):
            for j in range(i + 1, rs.rank + 1):
                rep = verify_braid_relation(rs, i, j)
                for label, a, b, ok in rep.comparisons:
                    detail = f"m = {rep.m}" if ok else f"lhs = {a} ; rhs = {b}"
                    checks.append(Check(f"braid.{i}{j}.{label}", ok, detail))
        return _emit_checks(checks, args.machine, out)
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (UsageError, ExprError, CapExceeded, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except PBWError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
