"""Command-line interface: verify / export / eval.

Examples:
    thetaresum verify --suite main2 --family chi --s 2 --t 3 --n 1 --m 1 --alpha 1
    thetaresum verify --suite strange --family hikami --u 1 --l 0 --alpha 1/2
    thetaresum export --what coefficients --family hikami --u 1 --l 0 --count 4 --out c.csv --format csv
    thetaresum eval --quantity smed --family hikami --u 1 --l 0 --x 2

Exit status: 0 all checks passed, 1 check failures, 2 usage errors.
The default precision (bits) can be set through THETARESUM_PREC.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp, mpf, mpc

from . import borel as borel_mod
from . import resum as resum_mod
from .config import (Config, config_chi, config_general, config_hikami,
                     config_t3_2k)
from .periodic import ConfigError
from .precision import PrecisionContext, default_prec
from .qseries import DomainError, theta_upper_half
from .report import number_json
from .suites import SUITES, run_suite

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"expected a rational like 3 or -1/2, got {text!r}: {exc}")


def _complex(text: str) -> mpc:
    try:
        return mpc(complex(text.replace(" ", "")))
    except ValueError as exc:
        raise UsageError(f"expected a complex literal like 1+0.5j, got {text!r}: {exc}")


def build_config(args) -> Config:
    fam = args.family
    try:
        if fam == "general":
            missing = [k for k in ("c", "M", "k1", "k2", "a", "b")
                       if getattr(args, k) is None]
            if missing:
                raise UsageError(f"family general needs --{', --'.join(missing)}")
            return config_general(_fraction(args.c), args.M, args.k1, args.k2,
                                  args.a, args.b)
        if fam == "chi":
            missing = [k for k in ("s", "t", "n", "m") if getattr(args, k) is None]
            if missing:
                raise UsageError(f"family chi needs --{', --'.join(missing)}")
            kw = {}
            if args.c is not None:
                kw["c"] = _fraction(args.c)
            if args.a is not None:
                kw["a"] = args.a
            if args.b is not None:
                kw["b"] = args.b
            return config_chi(args.s, args.t, args.n, args.m, **kw)
        if fam == "hikami":
            if args.u is None or args.l is None:
                raise UsageError("family hikami needs --u and --l")
            return config_hikami(args.u, args.l)
        if fam == "t3-2k":
            if args.k is None:
                raise UsageError("family t3-2k needs --k")
            return config_t3_2k(args.k)
    except ConfigError as exc:
        raise UsageError(str(exc))
    raise UsageError(f"unknown family {fam!r}")


def _add_family_flags(p):
    p.add_argument("--family", required=True,
                   choices=["general", "chi", "hikami", "t3-2k"])
    p.add_argument("--c", type=str, help="scale c as a rational, e.g. -1/2")
    p.add_argument("--M", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--k", type=int)


def _add_numeric_flags(p):
    p.add_argument("--prec", type=int, default=None, help="precision in bits")
    p.add_argument("--tol", type=str, default=None, help="target tolerance")
    p.add_argument("--out", type=str, default=None, help="output path")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thetaresum", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True, choices=list(SUITES))
    _add_family_flags(v)
    v.add_argument("--alpha", type=str, default=None, help="rational j/N")
    v.add_argument("--extrapolate", action="store_true",
                   help="also run the interior Richardson oracle (main2)")
    v.add_argument("--timings", action="store_true",
                   help="include wall times in the written report "
                        "(breaks byte determinism)")
    _add_numeric_flags(v)

    e = sub.add_parser("export", help="write series/singularity tables")
    e.add_argument("--what", required=True,
                   choices=["coefficients", "borel-taylor", "singularities"])
    e.add_argument("--count", type=int, required=True)
    _add_family_flags(e)
    _add_numeric_flags(e)

    q = sub.add_parser("eval", help="single-point evaluations")
    q.add_argument("--quantity", required=True,
                   choices=["theta", "borel", "lateral", "smed", "boundary"])
    _add_family_flags(q)
    q.add_argument("--x", type=str, default=None, help="complex point, e.g. 1+0.5j")
    q.add_argument("--p", type=str, default=None, help="Borel-plane point")
    q.add_argument("--side", choices=["plus", "minus"], default="plus")
    q.add_argument("--nu", type=int, default=1, choices=[0, 1])
    q.add_argument("--alpha", type=str, default=None)
    _add_numeric_flags(q)
    return ap


def _context(args) -> PrecisionContext:
    prec = args.prec if args.prec is not None else default_prec()
    tol = float(args.tol) if args.tol is not None else 1e-8
    return PrecisionContext(prec=prec, tol=tol)


def cmd_verify(args) -> int:
    if args.format == "csv":
        raise UsageError("verification reports are JSON; CSV is reserved for "
                         "series exports")
    cfg = build_config(args)
    ctx = _context(args)
    alpha = _fraction(args.alpha) if args.alpha is not None else None
    try:
        report = run_suite(args.suite, cfg, ctx, alpha=alpha,
                           extrapolate=args.extrapolate)
    except ConfigError as exc:
        raise UsageError(str(exc))
    report.print_lines()
    if args.out:
        report.write_json(args.out, with_timings=args.timings)
    return 0 if report.all_passed else 1


def cmd_export(args) -> int:
    cfg = build_config(args)
    ctx = _context(args)
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    series = cfg.series(max(args.count + 2, 8))
    rows = []
    if args.what == "coefficients":
        header = ["n", "C_n", "C_n_float"]
        for n in range(args.count):
            c = series.C[n]
            with ctx.working():
                rows.append([n, str(c), mp.nstr(mpf(c.numerator) / c.denominator
                                                if isinstance(c, Fraction) else mpf(c),
                                                int(ctx.prec * 0.301) + 2)])
    elif args.what == "borel-taylor":
        header = ["n", "g_n", "g_n_float"]
        g = borel_mod.borel_coefficients(series, args.count)
        for n, c in enumerate(g):
            with ctx.working():
                rows.append([n, str(c), mp.nstr(mpf(c.numerator) / c.denominator
                                                if isinstance(c, Fraction) else mpf(c),
                                                int(ctx.prec * 0.301) + 2)])
    else:
        header = ["index", "ell", "position"]
        ss = borel_mod.singularity_set(series)
        idx = ss.indices(args.count)
        pos = ss.positions(args.count, ctx)
        with ctx.working():
            for i, (ell, x) in enumerate(zip(idx, pos)):
                rows.append([i, ell, mp.nstr(x, int(ctx.prec * 0.301) + 2)])

    if args.format == "csv":
        import csv as _csv
        target = open(args.out, "w", newline="") if args.out else sys.stdout
        try:
            w = _csv.writer(target)
            w.writerow(header)
            w.writerows(rows)
        finally:
            if args.out:
                target.close()
    else:
        payload = {"schema": "thetaresum-export/1", "config": cfg.describe(),
                   "what": args.what,
                   "rows": [dict(zip(header, r)) for r in rows]}
        text = json.dumps(payload, indent=2) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_eval(args) -> int:
    cfg = build_config(args)
    ctx = _context(args)
    series = cfg.series(12)
    if args.quantity == "theta":
        if args.x is None:
            raise UsageError("eval theta needs --x with Im x > 0")
        est = theta_upper_half(cfg.theta_spec(nu=args.nu), _complex(args.x), ctx)
    elif args.quantity == "borel":
        if args.p is None:
            raise UsageError("eval borel needs --p")
        est = borel_mod.borel_eval(series, _complex(args.p), ctx,
                                   side="+" if args.side == "plus" else "-")
    elif args.quantity == "lateral":
        if args.x is None:
            raise UsageError("eval lateral needs --x")
        res = resum_mod.lateral_sum(series, _complex(args.x), args.side, ctx)
        est = res
    elif args.quantity == "smed":
        if args.x is None:
            raise UsageError("eval smed needs --x with Re x > 0")
        est = resum_mod.median_sum(series, _complex(args.x), ctx)
    else:
        if args.alpha is None:
            raise UsageError("eval boundary needs --alpha")
        est = resum_mod.boundary_median(series, _fraction(args.alpha), ctx)
    with ctx.working():
        payload = {"schema": "thetaresum-eval/1", "config": cfg.describe(),
                   "quantity": args.quantity,
                   "value": number_json(est.value, ctx.prec, est.error)}
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "export":
            return cmd_export(args)
        return cmd_eval(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
