"""Command line interface: ``dfinite <verb> ...``.

All numeric output is JSON (complex numbers as [re, im] decimal strings).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import mpmath

from .exact.bigcomplex import mpc_to_json, to_mpc


def _point(s: str):
    from .diffop.points import AlgebraicPoint

    return AlgebraicPoint.parse(s)


def _exact_str(c) -> str:
    return str(c) if isinstance(c, (Fraction, int)) or hasattr(c, "field") else mpmath.nstr(mpmath.mpc(c), 25)


def _print(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


# -- verbs --------------------------------------------------------------------------


def cmd_repro(args) -> int:
    from .repro import CLAIMS, run_claim

    claims = list(CLAIMS) if args.claim == "all" else [args.claim]
    reports = [run_claim(c, args.prec) for c in claims]
    if args.json:
        _print([r.to_json() for r in reports])
    else:
        for r in reports:
            print(r.line())
    return 0 if all(r.passed for r in reports) else 1


def cmd_kovacic(args) -> int:
    from .diffop.registry import get_operator
    from .kovacic import KovacicInconclusive, classify

    try:
        res = classify(get_operator(args.op), prec=args.prec)
    except KovacicInconclusive as e:
        _print({"case": None, "inconclusive": e.reason, "detail": e.detail})
        return 2
    _print(res.to_json())
    return 0


def cmd_local(args) -> int:
    from .diffop.registry import get_operator
    from .frobenius import local_basis

    B = local_basis(get_operator(args.op), _point(args.point), args.order, args.prec)
    sols = []
    for s in B.solutions:
        sols.append({
            "exponent": _exact_str(s.exponent),
            "log_degree": s.log_degree,
            "leading": s.leading_term(),
            "coefficients": [[_exact_str(s.coefficient(n, j)) for j in range(s.log_degree + 1)]
                             for n in range(min(args.terms, s.N))],
        })
    _print({"point": B.point.spec(), "exact": B.exact, "solutions": sols})
    return 0


def _write_steps_csv(path: str, steps) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["center_re", "center_im", "h_re", "h_im", "radius", "N", "seconds"])
        for s in steps:
            c, h = mpmath.mpc(s.center), mpmath.mpc(s.h)
            w.writerow([mpmath.nstr(c.real, 15), mpmath.nstr(c.imag, 15), mpmath.nstr(h.real, 15),
                        mpmath.nstr(h.imag, 15), mpmath.nstr(s.radius, 8), s.N, f"{s.seconds:.6f}"])


def cmd_continue(args) -> int:
    from .continuation import Path, transition
    from .diffop.registry import get_operator

    T = transition(get_operator(args.op), Path.parse(args.path), args.prec, record_steps=bool(args.csv))
    _print(T.to_json())
    if args.csv:
        _write_steps_csv(args.csv, T.steps)
    return 0


def _radius(op, x0):
    d = [abs(v - x0) for v in op.singularities if abs(v - x0) > mpmath.mpf(10) ** -20]
    return min(d) if d else mpmath.mpf(1)


def cmd_connect(args) -> int:
    from .continuation import NumericOperator, auto_path, connection_matrix
    from .diffop.registry import get_operator
    from .frobenius import BranchSpec, local_basis

    L = get_operator(args.op)
    p0, p1 = _point(args.from_local), _point(args.to_point)
    if p0.is_infinite or p1.is_infinite:
        raise SystemExit("connect: finite points only")
    op = NumericOperator(L, args.prec)
    z0, z1 = p0.to_mpc(args.prec), p1.to_mpc(args.prec)
    u = (z1 - z0) / abs(z1 - z0)
    a = z0 + u * _radius(op, z0) / 4
    b = z1 - u * _radius(op, z1) / 4
    path = auto_path(a, b, [s for s in op.singularities if s != z0 and s != z1], side=args.side)
    B0 = local_basis(L, p0, args.order, args.prec)
    B1 = local_basis(L, p1, args.order, args.prec, numeric=True)
    C = connection_matrix(L, B0, path, B1, args.prec, end_branch=BranchSpec(args.branch_center))
    out = C.to_json()
    out["from"] = [s.leading_term() for s in B0.solutions]
    out["to"] = [s.leading_term() for s in B1.solutions]
    _print(out)
    return 0


def cmd_monodromy(args) -> int:
    from .continuation import NumericOperator, auto_path, circle_path, lasso, monodromy
    from .diffop.registry import get_operator
    from .frobenius import local_basis

    L = get_operator(args.op)
    op = NumericOperator(L, args.prec)
    basis = None
    if args.basis != "taylor":
        bp = _point(args.basis)
        basis = local_basis(L, bp, args.order, args.prec)
        base = bp.to_mpc(args.prec) + _radius(op, bp.to_mpc(args.prec)) / 4
    else:
        base = to_mpc(Fraction(args.base))
    if args.around == "all-finite":
        sing = list(op.singularities)
        c = sum(sing) / len(sing)
        R = max(abs(s - c) for s in sing) + 1
        anchor = c - R if abs(base - (c - R)) < abs(base - (c + R)) else c + R
        # the stem detours above any singular point it would cross
        stem = auto_path(base, anchor, sing, side=1)
        loop = lasso(base, anchor, c, n=32, via=stem.waypoints[1:-1])
    else:
        z = _point(args.around).to_mpc(args.prec)
        r = _radius(op, z) / 2
        if abs(base - z) < r * 1.5 and basis is None:
            loop = circle_path(z, abs(base - z), mpmath.arg(base - z), 16)
        else:
            loop = lasso(base, z - r * (z - base) / abs(z - base), z, n=16)
    M = monodromy(L, loop, basis, args.prec)
    out = M.to_json()
    out["det"] = mpc_to_json(M.det(), 25)
    _print(out)
    return 0


def _params(s: str):
    from .hypergeom import HypergeomParams

    upper, _, lower = s.partition(";")
    return HypergeomParams(tuple(Fraction(a) for a in upper.split(",") if a.strip()),
                           tuple(Fraction(b) for b in lower.split(",") if b.strip()))


def cmd_hyp(args) -> int:
    from .exact.ratfunc import parse_ratfunc
    from .hypergeom import hypergeom_operator, hypergeom_series, pullback_hypergeom

    P = _params(args.params)
    if args.what == "op":
        _print({"key": P.key(), "operator": str(hypergeom_operator(P).to_diffop())})
    elif args.what == "series":
        _print({"key": P.key(), "coefficients": [str(c) for c in hypergeom_series(P, args.terms)]})
    else:
        if not args.lam:
            raise SystemExit("hyp pullback needs --lam")
        lam = parse_ratfunc(args.lam)
        L = pullback_hypergeom(P, lam)
        _print({"key": P.key(), "lambda": lam.to_str(), "operator": L.to_json()})
    return 0


def cmd_registry(args) -> int:
    from .diffop.registry import dump_registry, get_operator

    if args.key:
        _print(get_operator(args.key).to_json())
    else:
        _print(dump_registry())
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dfinite", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    r = sub.add_parser("repro", help="run reproduction claims")
    r.add_argument("claim", help="claim id or 'all'")
    r.add_argument("--prec", type=int, default=128)
    g = r.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--table", action="store_true")
    r.set_defaults(func=cmd_repro)

    k = sub.add_parser("kovacic", help="Kovacic classification")
    k.add_argument("action", choices=["classify"])
    k.add_argument("--op", required=True)
    k.add_argument("--prec", type=int, default=192)
    k.set_defaults(func=cmd_kovacic)

    lo = sub.add_parser("local", help="local Frobenius basis")
    lo.add_argument("action", choices=["basis"])
    lo.add_argument("--op", required=True)
    lo.add_argument("--point", required=True)
    lo.add_argument("--order", type=int, default=10, help="series truncation order")
    lo.add_argument("--terms", type=int, default=4, help="coefficients to print")
    lo.add_argument("--prec", type=int, default=128)
    lo.set_defaults(func=cmd_local)

    c = sub.add_parser("continue", help="transition matrix along a path")
    c.add_argument("--op", required=True)
    c.add_argument("--path", required=True, help='waypoints, e.g. "(0.1) (0.5+0.2j) (1)"')
    c.add_argument("--prec", type=int, default=128)
    c.add_argument("--csv", help="write per-step data to this file")
    c.set_defaults(func=cmd_continue)

    cn = sub.add_parser("connect", help="connection matrix between two local bases")
    cn.add_argument("--op", default="eq5")
    cn.add_argument("--from-local", required=True)
    cn.add_argument("--to-point", required=True)
    cn.add_argument("--order", type=int, default=80)
    cn.add_argument("--side", type=int, choices=[1, -1], default=1)
    cn.add_argument("--branch-center", type=float, default=0.0)
    cn.add_argument("--prec", type=int, default=128)
    cn.set_defaults(func=cmd_connect)

    m = sub.add_parser("monodromy", help="monodromy matrix")
    m.add_argument("--op", default="eq5")
    m.add_argument("--around", required=True, help="point spec or 'all-finite'")
    m.add_argument("--basis", default="taylor", help="point spec of a local basis, or 'taylor'")
    m.add_argument("--base", default="1/100", help="base point for the Taylor frame")
    m.add_argument("--order", type=int, default=60)
    m.add_argument("--prec", type=int, default=128)
    m.set_defaults(func=cmd_monodromy)

    h = sub.add_parser("hyp", help="hypergeometric operators")
    h.add_argument("what", choices=["op", "series", "pullback"])
    h.add_argument("params", help='"a1,a2;b1", e.g. "1/12,5/12;1"')
    h.add_argument("--terms", type=int, default=8)
    h.add_argument("--lam", help="rational function, e.g. \"x^2/(1-x)\"")
    h.set_defaults(func=cmd_hyp)

    rg = sub.add_parser("registry", help="dump the operator registry as JSON")
    rg.add_argument("action", choices=["dump"])
    rg.add_argument("--key")
    rg.set_defaults(func=cmd_registry)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
