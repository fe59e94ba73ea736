"""Command line interface.

Every run prints one JSON object on stdout and a human summary on stderr.
Exit status: 0 confirmed, 1 refuted, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .identities import BoundExceeded, EngineConfig, MultilinearSpace, NotMultilinear, is_star_identity, kernel_dimension
from .matrices import SPECS, get_spec
from .parse import ParseError, format_poly, parse_poly

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=EngineConfig().max_degree,
                        help="largest multilinear degree a command may touch (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes; results do not depend on it")

    p = _Parser(prog="starpi", description="*-polynomial identities of upper triangular matrix algebras")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="decide whether EXPR is a *-identity")
    c.add_argument("--algebra", choices=sorted(SPECS), default="A")
    c.add_argument("expr", nargs="?", help="polynomial (read from stdin when omitted)")

    r = sub.add_parser("reduce", parents=[common], help="proper decomposition and two-commutator canonical form")
    r.add_argument("expr", nargs="?")

    for name, helptext in (("theorem", "compare I with Id(A,*) on one multilinear space"),
                           ("dims", "kernel and ideal dimensions on one multilinear space")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--sym", type=int, required=True)
        s.add_argument("--skew", type=int, default=0)
        if name == "dims":
            s.add_argument("--algebra", choices=sorted(SPECS), default="A")

    e = sub.add_parser("enumerate", parents=[common], help="list an enumerated family")
    e.add_argument("family", choices=["omega_y", "omega_z", "b_basis"])
    e.add_argument("--sym", type=int, required=True)
    e.add_argument("--skew", type=int, default=0)

    t = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    t.add_argument("--slow", action="store_true", help="include degree 6 theorem checks")
    return p


def _read_expr(args, stdin) -> str:
    text = args.expr if args.expr is not None else stdin.read()
    if not text.strip():
        raise UsageError("no expression given")
    return text


def _space(args) -> MultilinearSpace:
    if args.sym < 0 or args.skew < 0:
        raise UsageError("--sym and --skew must be non-negative")
    return MultilinearSpace.of(args.sym, args.skew)


def _cmd_check(args, config, stdin):
    p = parse_poly(_read_expr(args, stdin))
    config.check(p.degree())
    spec = get_spec(args.algebra)
    v = is_star_identity(p, spec, config)
    report = {"verb": "check", "poly": format_poly(p), **v.to_dict()}
    if v.is_identity:
        human = f"{format_poly(p)} is a *-identity of {spec.name}"
    else:
        lines = [f"{format_poly(p)} is NOT a *-identity of {spec.name}",
                 f"entry {v.entry} evaluates to {v.value} at the witness"]
        for name, rows in report["witness"].items():
            lines.append(f"  {name} = {rows}")
        human = "\n".join(lines)
    return (EXIT_OK if v.is_identity else EXIT_REFUTED), report, human


def _cmd_reduce(args, config, stdin):
    from .normal_form import ShapeError, proper_decompose, two_commutator_canonical

    p = parse_poly(_read_expr(args, stdin))
    config.check(p.degree())
    terms = proper_decompose(p)
    report = {
        "verb": "reduce",
        "poly": format_poly(p),
        "proper_decomposition": [{"prefix": [v.name for v in t.prefix], "proper": format_poly(t.proper)} for t in terms],
    }
    lines = [f"{' '.join(v.name for v in t.prefix) or '1'} * ({format_poly(t.proper)})" for t in terms]
    try:
        form = two_commutator_canonical(p, config=config)
    except (ShapeError, NotMultilinear):
        report["canonical"] = None
    else:
        report["canonical"] = [{"coeff": str(c), "shape": str(s)} for c, s in form.terms]
        lines.append("mod I: " + (" + ".join(f"{c} {s}" for c, s in form.terms) or "0"))
    return EXIT_OK, report, "\n".join(lines)


def _cmd_theorem(args, config, stdin):
    from .tideal import verify_main_theorem

    space = _space(args)
    rep = verify_main_theorem(space, config)
    ok = rep.equal and rep.contained
    report = {"verb": "theorem", **rep.to_dict()}
    human = (f"{space}: dim I = {rep.dim_ideal}, dim Id(A,*) = {rep.dim_kernel}, "
             f"I inside Id: {rep.contained} -> {'equal' if ok else 'MISMATCH'}")
    return (EXIT_OK if ok else EXIT_REFUTED), report, human


def _cmd_dims(args, config, stdin):
    from .tideal import ideal_dim

    space = _space(args)
    spec = get_spec(args.algebra)
    config.check(space.n)
    kd = kernel_dimension(spec, space, config)
    idim = ideal_dim(space, config)
    report = {"verb": "dims", "algebra": spec.name, "space": str(space), "sym": args.sym, "skew": args.skew,
              "dim_space": space.dimension, "dim_kernel": kd, "dim_ideal": idim}
    human = f"{space} on {spec.name}: |P_V| = {space.dimension}, kernel {kd}, I {idim}"
    return EXIT_OK, report, human


def _cmd_enumerate(args, config, stdin):
    from .normal_form import ShapeError, enumerate_B_basis, enumerate_omega_y, enumerate_omega_z

    space = _space(args)
    config.check(space.n)
    fn = {"omega_y": enumerate_omega_y, "omega_z": enumerate_omega_z, "b_basis": enumerate_B_basis}[args.family]
    try:
        polys = fn(space)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    items = [format_poly(p) for p in polys]
    report = {"verb": "enumerate", "family": args.family, "space": str(space), "count": len(items), "items": items}
    return EXIT_OK, report, f"{len(items)} elements of {args.family} over {space}"


def _cmd_selftest(args, config, stdin):
    from .acceptance import AcceptanceConfig, run_all

    results = run_all(AcceptanceConfig(slow=args.slow, jobs=config.jobs))
    ok = all(r.passed for r in results)
    report = {"verb": "selftest", "passed": ok, "criteria": [r.to_dict() for r in results]}
    human = "\n".join(r.line() for r in results)
    return (EXIT_OK if ok else EXIT_REFUTED), report, human


_COMMANDS = {
    "check": _cmd_check,
    "reduce": _cmd_reduce,
    "theorem": _cmd_theorem,
    "dims": _cmd_dims,
    "enumerate": _cmd_enumerate,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str], stdin=None) -> tuple[int, dict, str]:
    """Execute one command; returns (exit code, report, human text)."""
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(list(argv))
        if args.max_degree < 0 or args.jobs < 1:
            raise UsageError("--max-degree must be >= 0 and --jobs >= 1")
        config = EngineConfig(max_degree=args.max_degree, jobs=args.jobs)
        return _COMMANDS[args.verb](args, config, stdin)
    except (UsageError, ParseError, BoundExceeded, NotMultilinear) as exc:
        return EXIT_USAGE, {"error": type(exc).__name__, "message": str(exc)}, f"error: {exc}"


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(list(argv))
        except SystemExit as exc:
            return int(exc.code or 0)
    code, report, human = run(argv)
    print(json.dumps(report, indent=2, sort_keys=True))
    print(human, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
