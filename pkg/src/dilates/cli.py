"""Command-line front end.

Exit codes: 0 success, 1 a verification found a violation, 2 usage error,
3 enumeration infeasible.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bounds, fourier, lev, rectification, search
from .errors import (
    CompositeModulus,
    DomainError,
    ElementOutsideWindow,
    EmptyInput,
    InfeasibleEnumeration,
    ParseError,
    RuleNotApplicable,
    UnknownConstant,
)
from .render import to_csv, to_json, to_text
from .residue_core import (
    ResidueSet,
    format_set_literal,
    integer_sum_of_dilates,
    parse_set_literal,
    sum_of_dilates,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3

# asymptotic bounds ("|A| large enough"); a miss at small k is not a violation
_ASYMPTOTIC = {"prime_t"}


class UsageError(Exception):
    pass


def _w_table(specs) -> dict[int, int]:
    table = {}
    for s in specs or ():
        try:
            key, val = s.split("=")
            table[abs(int(key))] = int(val)
        except ValueError as exc:
            raise UsageError(f"--w expects T=VALUE, got {s!r}") from exc
    return table


def _beta(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad beta {text!r}") from exc


def _residue(text: str) -> ResidueSet:
    A = parse_set_literal(text)
    if not isinstance(A, ResidueSet):
        raise UsageError("this command needs a residue set literal like 'p=11;{0,1,2}'")
    return A


def _k_range(text: str) -> range:
    try:
        lo, hi = text.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--k-range expects LO:HI, got {text!r}") from exc


# -- subcommands: each returns (record or rows, exit code) ---------------------------

def cmd_bounds(args):
    w = _w_table(args.w)
    if args.solve_f is not None:
        c = bounds.f_t_inverse_density(args.t, args.solve_f)
        return {"t": args.t, "f_target": args.solve_f, "c": c,
                "inverse_c": (1.0 / c) if c > 0 else None}, EXIT_OK
    if args.c is not None:
        c, size, p = args.c, None, None
    elif args.p is not None and args.size is not None:
        c, size, p = args.size / args.p, args.size, args.p
    else:
        raise UsageError("bounds needs -c, or both -p and --size, or --solve-f")
    prof = bounds.bound_profile(args.t, c, w)
    rec = {"t": prof.t, "c": prof.c, "c0": prof.critical_density, "f": prof.f_value,
           "w": prof.w, "theta": prof.theta}
    if size is not None:
        rec["bound"] = prof.theorem_bound(size, p) if prof.w is not None else None
        if args.eps is not None:
            rec["bound_eps"] = bounds.theorem2_bound(p, size, args.t, args.eps)
    if prof.note:
        rec["note"] = prof.note
    return rec, EXIT_OK


def cmd_sumset(args):
    A = parse_set_literal(args.set)
    if isinstance(A, ResidueSet):
        S = sum_of_dilates(A, args.t)
    else:
        S = integer_sum_of_dilates(A, args.t)
    return {"A": format_set_literal(A), "t": args.t, "sumset": format_set_literal(S),
            "size": len(S)}, EXIT_OK


def cmd_fourier(args):
    A = _residue(args.set)
    spec = fourier.indicator_dft(A, args.method)
    if args.spectrum:
        return [{"r": r, "magnitude": float(m)} for r, m in enumerate(spec.magnitudes)], EXIT_OK
    return spec.summary(), EXIT_OK


def cmd_localize(args):
    A = _residue(args.set)
    unit = 1
    if args.normalize:
        A, unit = fourier.normalize_bias_to_one(A)
    rep = lev.lev_guarantee_check(A, args.beta)
    rec = rep.to_dict()
    if args.normalize:
        rec["unit"] = unit
    return rec, EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_rectify(args):
    A = _residue(args.set)
    p, a = A.modulus, abs(args.t)
    L = args.length if args.length is not None else p // (a + 1) + 1
    if args.start is not None:
        win = lev.IntervalWindow(p, args.start % p, L, 0)
        A0 = win.intersect(A) if args.clip else A
    else:
        win = lev.best_interval(A, L)
        A0 = win.intersect(A)
    win = lev.IntervalWindow(p, win.start, win.length, sum(1 for x in A0 if x in win))
    res = rectification.rectification_check(A0, args.t, win)
    rec = {"A0": format_set_literal(A0), "lift": format_set_literal(rectification.lift_to_integers(A0, win)),
           "t": args.t, "window": win.to_dict(), "isomorphic": res.isomorphic,
           "residue_size": res.residue_size, "integer_size": res.integer_size,
           "guaranteed": res.guaranteed}
    bad = res.guaranteed and not res.isomorphic
    return rec, EXIT_VIOLATION if bad else EXIT_OK


def cmd_pipeline(args):
    A = _residue(args.set)
    trace = rectification.run_proof_pipeline(A, args.t, beta=args.beta, w_table=_w_table(args.w),
                                             force_chain=args.force)
    return trace.to_dict(), EXIT_VIOLATION if trace.failures else EXIT_OK


def cmd_search(args):
    if args.integers:
        ks = args.k_range if args.k_range else [args.k]
        reps = [search.exhaustive_min_sumset_integers(k, args.t, args.cap, w_table=_w_table(args.w))
                for k in ks]
    else:
        if args.p is None:
            raise UsageError("search needs -p (or --integers)")
        if args.k_range:
            table = search.conjecture1_explorer(args.p, args.t, args.k_range,
                                                fallback_samples=args.samples, seed=args.seed,
                                                threads=args.threads)
            return table.to_dict(), EXIT_OK
        if args.k is None:
            raise UsageError("search needs -k or --k-range")
        if args.samples:
            reps = [search.sample_min_sumset_modp(args.p, args.t, args.k, args.samples, args.seed,
                                                  w_table=_w_table(args.w))]
        else:
            reps = [search.exhaustive_min_sumset_modp(args.p, args.t, args.k, reduce=not args.no_reduce,
                                                      threads=args.threads, w_table=_w_table(args.w))]
    violated = any(not b.satisfied for r in reps for b in r.bound_comparisons
                   if b.name not in _ASYMPTOTIC)
    code = EXIT_VIOLATION if violated else EXIT_OK
    if args.format == "csv":
        return [r.csv_row() for r in reps], code
    return (reps[0].to_dict() if len(reps) == 1 else {"reports": [r.to_dict() for r in reps]}), code


def cmd_verify(args):
    rep = search.verify_theorem1(args.p, args.t, args.mode, n=args.samples, seed=args.seed,
                                 max_size=args.max_size, reduce=args.reduce, w_table=_w_table(args.w))
    return rep.to_dict(), EXIT_OK if rep.ok else EXIT_VIOLATION


# -- parser -----------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=["json", "csv", "text"], default=d("json"))
    parser.add_argument("--seed", type=int, default=d(42))
    parser.add_argument("--threads", type=int, default=d(1))
    parser.add_argument("--output", metavar="FILE", default=d(None))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dilates", description="Sums of dilates A + t.A in Z/pZ")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("bounds", cmd_bounds, "evaluate c_t^(0), f_t(c), w(t) and the theorem bound")
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("-c", type=float)
    sp.add_argument("-p", type=int)
    sp.add_argument("--size", type=int)
    sp.add_argument("--solve-f", type=float, help="solve f_t(c) = X for c")
    sp.add_argument("--eps", type=float, help="also report min((f - eps)|A|, p)")
    sp.add_argument("--w", action="append", metavar="T=VALUE", help="extend the w(t) table")

    sp = add("sumset", cmd_sumset, "compute A + t.A")
    sp.add_argument("set")
    sp.add_argument("-t", type=int, required=True)

    sp = add("fourier", cmd_fourier, "indicator spectrum and bias")
    sp.add_argument("set")
    sp.add_argument("--spectrum", action="store_true", help="emit all magnitudes (use --format csv)")
    sp.add_argument("--method", choices=["direct", "fft"], default="direct")

    sp = add("localize", cmd_localize, "best window and the concentration guarantee")
    sp.add_argument("set")
    sp.add_argument("--beta", type=_beta, required=True)
    sp.add_argument("--normalize", action="store_true", help="move the bias to frequency 1 first")

    sp = add("rectify", cmd_rectify, "compare a residue sumset with its integer lift")
    sp.add_argument("set")
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--start", type=int)
    sp.add_argument("--length", type=int)
    sp.add_argument("--clip", action="store_true", help="intersect the set with the window first")

    sp = add("pipeline", cmd_pipeline, "replay the full lower-bound argument on a set")
    sp.add_argument("set")
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--beta", type=_beta)
    sp.add_argument("--force", action="store_true", help="run the chain even above c_t^(0)")
    sp.add_argument("--w", action="append", metavar="T=VALUE")

    sp = add("search", cmd_search, "exhaustive minimum of |A + t.A|")
    sp.add_argument("-p", type=int)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("-k", type=int)
    sp.add_argument("--k-range", type=_k_range)
    sp.add_argument("--integers", action="store_true")
    sp.add_argument("--cap", type=int, help="diameter cap for integer searches (default 3k)")
    sp.add_argument("--samples", type=int, default=0, help="sample instead of enumerating")
    sp.add_argument("--no-reduce", action="store_true", help="skip the affine orbit reduction")
    sp.add_argument("--w", action="append", metavar="T=VALUE")

    sp = add("verify", cmd_verify, "check the theorem bound on every or random sets")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--reduce", action="store_true")
    sp.add_argument("--w", action="append", metavar="T=VALUE")
    return parser


def render(result, fmt: str) -> str:
    if isinstance(result, list):
        if fmt == "json":
            return to_json({"rows": result})
        if fmt == "text":
            return "".join(to_text(r) for r in result)
        return to_csv(result)
    if fmt == "csv":
        return to_csv([{k: v for k, v in result.items()}])
    if fmt == "text":
        return to_text(result)
    return to_json(result) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except (UsageError, ParseError, DomainError, CompositeModulus, UnknownConstant,
            RuleNotApplicable, ElementOutsideWindow, EmptyInput) as exc:
        print(f"dilates: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleEnumeration as exc:
        print(f"dilates: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    text = render(result, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
