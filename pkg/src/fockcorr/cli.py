"""Command-line front end.

Subcommands: corr, qdim, oracle, verify, list-identities.
Exit codes: 0 success / all identities pass, 1 verification failure,
2 usage error, 3 pole-guard violation, 4 resource limit.
"""

from __future__ import annotations

import argparse
import inspect
import os
import sys
from fractions import Fraction

from . import diskcache
from . import identities
from .combinat import ModuleLabel
from .correlators import CorrelatorRequest, correlator, qdim
from .errors import (FockcorrError, LabelError, PoleError, ResourceLimitError)
from .fock_oracle import RAMOND, OpSpec, SectorSpec, trace
from .qseries import LaurentRing, QSeries, RationalRing, from16


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _int_list(text):
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _fraction_list(text):
    if not text:
        return ()
    return tuple(Fraction(x) for x in text.split(","))


def render_text(series: QSeries):
    lines = [f"# mode={series.ring.mode}"
             + (f" vars={','.join(series.ring.vars)}" if series.ring.vars else "")]
    for e, c in series.sorted_terms():
        lines.append(f"q^{from16(e)}: {c!r}")
    if series.trunc is not None:
        lines.append(f"O(q^{from16(series.trunc)})")
    return "\n".join(lines)


def _emit(series, as_json):
    if as_json:
        print(series.dumps())
    else:
        print(render_text(series))


def _build_label(args):
    level = Fraction(args.level)
    lam = _int_list(args.lam)
    l = int(level)
    if len(lam) < l and all(m >= 0 for m in lam):
        lam = lam + (0,) * (l - len(lam))   # pad partitions to declared length
    spin = args.spin or args.algebra == "b"
    return ModuleLabel(args.algebra, level, lam, det=args.det, spin=spin,
                       folded=not args.det)


def cmd_corr(args):
    label = _build_label(args)
    req = CorrelatorRequest(label=label, npoints=args.n, order=args.order,
                            mode=args.mode, eval_points=args.svals)
    key = (f"corr:{label.algebra}:{label.level}:{label.lam}:{label.det}:"
           f"{label.spin}:{args.n}:{args.order}:{args.mode}:{args.svals}")
    cached = diskcache.get(key)
    if cached is not None:
        series = QSeries.from_json(cached)
    else:
        series = correlator(req)
        diskcache.put(key, series.to_json())
    _emit(series, args.json)
    return 0


def cmd_qdim(args):
    label = _build_label(args)
    series = qdim(label, args.order)
    _emit(series, args.json)
    return 0


def _parse_ops(text, ring):
    if not text or text.lower() == "none":
        return []
    ops = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            kind, assign = chunk.split(",", 1)
            var, val = assign.split("=", 1)
        except ValueError as exc:
            raise LabelError(f"bad op spec {chunk!r}; expected KIND,s=RAT") from exc
        kind = kind.strip().upper()
        val = Fraction(val)
        if var.strip() == "s":
            s = val
        elif var.strip() == "t":
            # t must be the square of a rational so that t^{1/2} stays exact
            num, den = val.numerator, val.denominator
            rn, rd = _isqrt_exact(num), _isqrt_exact(den)
            if rn is None or rd is None:
                raise LabelError(f"t={val} is not a rational square; pass s instead")
            s = Fraction(rn, rd)
        else:
            raise LabelError(f"bad op argument {var!r}; use s= or t=")
        if s in (0, 1, -1):
            raise PoleError(f"s = {s} sits on a pole")
        ops.append(OpSpec(kind, ring.from_fraction(s)))
    return ops


def _isqrt_exact(n):
    if n < 0:
        return None
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


def cmd_oracle(args):
    sector = args.sector.lower()
    spec = SectorSpec(args.pairs, args.neutral, sector, args.order)
    if args.graded and args.pairs:
        prefix = "w" if sector == RAMOND else "z"
        zvars = tuple(f"{prefix}{p + 1}" for p in range(args.pairs))
        ring = LaurentRing(zvars)
        zscale = 2 if sector == RAMOND else 1
    else:
        zvars = None
        ring = RationalRing()
        zscale = 1
    ops = _parse_ops(args.ops, ring)
    charge = None
    if args.charge is not None:
        charge = tuple(None if x.strip() in ("-", "") else Fraction(x)
                       for x in args.charge.split(","))
        if len(charge) == 1 and args.pairs == 1:
            charge = (charge[0],)
    series = trace(spec, ops, ring, zvars=zvars, zscale=zscale,
                   charge=charge, max_states=args.max_states)
    _emit(series, args.json)
    return 0


def cmd_verify(args):
    if args.identity == "all":
        reports = identities.run_all()
    else:
        if args.identity not in identities.REGISTRY:
            print(f"unknown identity {args.identity!r}; "
                  f"see list-identities", file=sys.stderr)
            return 2
        fn, _ = identities.REGISTRY[args.identity]
        accepted = set(inspect.signature(fn).parameters)
        overrides = {
            "order": args.order, "l": args.l, "n": args.n, "wtype": args.type,
            "svals": args.svals or None, "mode": args.oracle_mode,
            "seed": args.seed, "count": args.count, "kmax": args.kmax,
            "mmax": args.mmax,
        }
        kwargs = {k: v for k, v in overrides.items()
                  if v is not None and k in accepted}
        reports = [identities.run(args.identity, **kwargs)]
    ok = True
    for rep in reports:
        print(rep.line())
        ok = ok and rep.ok
    return 0 if ok else 1


def cmd_list_identities(args):
    for key, (_, desc) in identities.REGISTRY.items():
        print(f"{key:18s} {desc}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fockcorr",
        description="Exact n-point correlation functions on integrable "
                    "modules of types B, C, D (and A), with a brute-force "
                    "Fock-space oracle.")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="parallelism budget; results are independent of "
                             "the thread count")
    parser.add_argument("--cache-dir", default=None,
                        help="content-addressed cache directory (safe to delete)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_label_flags(p):
        p.add_argument("--algebra", required=True, choices=("a", "b", "c", "d"))
        p.add_argument("--level", required=True,
                       help="positive integer or half-integer, e.g. 2 or 3/2")
        p.add_argument("--lambda", dest="lam", default="",
                       help="comma-separated weakly decreasing parts")
        p.add_argument("--det", action="store_true")
        p.add_argument("--spin", action="store_true")
        p.add_argument("--order", type=_fraction, required=True)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("corr", help="closed-form correlation function")
    add_label_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "eval"), default="exact")
    p.add_argument("--s", dest="svals", type=_fraction_list, default=(),
                   help="comma-separated square roots s_i of the t_i")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("qdim", help="graded dimension of a module")
    add_label_flags(p)
    p.set_defaults(func=cmd_qdim)

    p = sub.add_parser("oracle", help="brute-force Fock-space trace")
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--neutral", type=int, choices=(0, 1), default=0)
    p.add_argument("--sector", required=True, choices=("ns", "r"))
    p.add_argument("--ops", default="none",
                   help='";"-separated ops, e.g. "D,s=2;D,t=9"')
    p.add_argument("--charge", default=None,
                   help="per-pair charge filter (comma list; '-' skips a pair)")
    p.add_argument("--order", type=_fraction, required=True)
    p.add_argument("--graded", action="store_true",
                   help="grade the output by per-pair charge variables")
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a registry identity (or 'all')")
    p.add_argument("identity")
    p.add_argument("--order", type=_fraction, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--type", choices=("B", "C", "D"), default=None)
    p.add_argument("--s", dest="svals", type=_fraction_list, default=())
    p.add_argument("--mode", dest="oracle_mode", choices=("exact", "eval"),
                   default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--mmax", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list-identities", help="list verify registry entries")
    p.set_defaults(func=cmd_list_identities)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    diskcache.configure(args.cache_dir)
    try:
        return args.func(args)
    except PoleError as exc:
        print(f"pole-guard violation: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 4
    except (LabelError, FockcorrError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
