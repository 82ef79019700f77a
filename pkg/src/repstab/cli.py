"""Command-line interface: ``repstab <verb> ...``.

Exit status is 0 on success, 2 for malformed arguments and 1 when the
engine itself fails.  The error class goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import branching as br
from .characters import irrep_dim
from .errors import RepstabError
from .labels import GL, SP, PairDecomp, VirtualDecomp, parse_label
from .lr import LrCache, lr_coefficient, set_default_cache
from .modification import modify
from .partitions import parse_partition
from .stability import DEFAULT_HORIZON, SequenceSpec, detect_stability, generate, tau_sequence


class UsageError(Exception):
    pass


def _group_name(kind: str, n: int) -> str:
    return f"GL{n}" if kind == GL else f"Sp{2 * n}"


def _label(text: str, kind: str):
    try:
        return parse_label(text, kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _record(label, m: int) -> dict:
    return {"label": str(label), "sign": 1 if m > 0 else -1, "multiplicity": abs(m)}


def _emit_decomp(decomp, fmt: str, out) -> None:
    for key, m in decomp:
        text = f"{key[0]} x {key[1]}" if isinstance(decomp, PairDecomp) else str(key)
        if fmt == "json":
            out.write(json.dumps(_record(text, m)) + "\n")
        else:
            out.write(f"{text} {m}\n")


# --------------------------------------------------------------------------
# verbs

def cmd_lr(args, out):
    lam, mu, nu = (parse_partition(t) for t in (args.lam, args.mu, args.nu))
    c = lr_coefficient(lam, mu, nu)
    if args.format == "json":
        out.write(json.dumps({"lam": str(lam), "mu": str(mu), "nu": str(nu), "coefficient": c}) + "\n")
    else:
        out.write(f"{c}\n")


def cmd_mod(args, out):
    label = _label(args.label, args.group)
    r = modify(label, args.group, args.rank)
    if args.format == "json":
        if args.trace:
            for step in r.trace:
                out.write(json.dumps({"trace": str(step)}) + "\n")
        rec = {"label": None if r.is_zero else str(r.label), "sign": r.sign,
               "multiplicity": 0 if r.is_zero else 1}
        out.write(json.dumps(rec) + "\n")
        return
    if args.trace:
        for step in r.trace:
            out.write(f"trace {step}\n")
    if r.is_zero:
        out.write("0\n")
    else:
        out.write(f"{r.sign} * {_group_name(args.group, args.rank)}({r.label})\n")


def cmd_restrict(args, out):
    label = _label(args.label, args.group)
    if args.group == GL:
        d = br.restrict_gl_one(label, args.rank)
    else:
        d = br.restrict_sp_one(label, args.rank, method=args.method)
    _emit_decomp(d, args.format, out)


def cmd_outer(args, out):
    label = _label(args.label, args.group)
    m, k = args.ranks
    _emit_decomp(br.outer_restrict(label, args.group, m, k), args.format, out)


def cmd_tensor(args, out):
    a, b = _label(args.a, args.group), _label(args.b, args.group)
    _emit_decomp(br.tensor(a, b, args.group, args.rank), args.format, out)


def cmd_wedge(args, out):
    label = _label(args.label, args.group)
    res = br.wedge_stable(label, args.k, args.group, cap=args.cap)
    d = VirtualDecomp(args.group, max(res.rows), res.stable)
    if args.format == "json":
        out.write(json.dumps({"onset": res.onset}) + "\n")
    else:
        out.write(f"onset {res.onset}\n")
    _emit_decomp(d, args.format, out)


def cmd_tau(args, out):
    label = _label(args.label, args.group)
    d = VirtualDecomp(args.group, args.rank, {label: 1})
    _emit_decomp(br.tau(d, args.a).decomp, args.format, out)


SEQUENCES = ("h1-ia", "h1-torelli", "wedge-standard", "free-lie", "trivial", "irreducible")


def _sequence(args, name: str) -> SequenceSpec:
    if name == "h1-ia":
        return SequenceSpec.h1_ia()
    if name == "h1-torelli":
        return SequenceSpec.h1_torelli()
    if name == "wedge-standard":
        return SequenceSpec.wedge_standard(args.k, args.group or GL)
    if name == "trivial":
        return SequenceSpec.trivial(args.group or GL)
    if name == "irreducible":
        if not args.label:
            raise UsageError("--seq irreducible needs --label")
        group = args.group or GL
        return SequenceSpec.irreducible(_label(args.label, group), group)
    if name == "free-lie":
        if args.base == "free-lie":
            raise UsageError("--base cannot itself be free-lie")
        return SequenceSpec.free_lie(args.degree, _sequence(args, args.base))
    raise UsageError(f"unknown sequence {name!r}")


def cmd_stability(args, out):
    spec = _sequence(args, args.seq)
    hi = args.to if args.to is not None else args.from_ + DEFAULT_HORIZON
    if args.tau is not None:
        table = tau_sequence(spec, args.tau, args.from_, hi)
    else:
        table = generate(spec, args.from_, hi)
    report = detect_stability(table)
    if args.format == "json":
        for rec in table.records():
            out.write(json.dumps(rec) + "\n")
        out.write(json.dumps({"report": report.as_dict()}, sort_keys=True) + "\n")
    else:
        for line in table.export_lines():
            out.write(line + "\n")
        for line in report.lines():
            out.write(line + "\n")


def cmd_dim(args, out):
    label = _label(args.label, args.group)
    d = irrep_dim(label, args.group, args.rank)
    if args.format == "json":
        out.write(json.dumps({"label": str(label), "dim": d}) + "\n")
    else:
        out.write(f"{d}\n")


# --------------------------------------------------------------------------
# parser

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="text (default) or json-lines")
    common.add_argument("--cache", help="LR coefficient cache file (REPSTAB_CACHE overrides)")

    def grouped(p, required=True):
        p.add_argument("--group", choices=(GL, SP), required=required)

    parser = argparse.ArgumentParser(prog="repstab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient c^lam_{mu nu}")
    p.add_argument("lam")
    p.add_argument("mu")
    p.add_argument("nu")
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("mod", parents=[common], help="apply the modification rule at a rank")
    grouped(p)
    p.add_argument("--rank", type=_nonneg, required=True)
    p.add_argument("--trace", action="store_true", help="print every intermediate label")
    p.add_argument("label")
    p.set_defaults(func=cmd_mod)

    p = sub.add_parser("restrict", parents=[common], help="restrict G_n to G_{n-1}")
    grouped(p)
    p.add_argument("--rank", type=_positive, required=True)
    p.add_argument("--method", choices=("oracle", "interlacing"), default="oracle",
                   help="Sp multiplicities from the character oracle or pattern counting")
    p.add_argument("label")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("outer", parents=[common], help="restrict G_{m+k} to G_m x G_k")
    grouped(p)
    p.add_argument("--ranks", type=_nonneg, nargs=2, metavar=("M", "K"), required=True)
    p.add_argument("label")
    p.set_defaults(func=cmd_outer)

    p = sub.add_parser("tensor", parents=[common], help="inner tensor product at rank n")
    grouped(p)
    p.add_argument("--rank", type=_nonneg, required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("wedge", parents=[common], help="stable decomposition of an exterior power")
    grouped(p)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--cap", type=_positive, default=br.DEFAULT_RANK_CAP)
    p.add_argument("label")
    p.set_defaults(func=cmd_wedge)

    p = sub.add_parser("tau", parents=[common], help="tau_{n,a}: constituents with trivial complement")
    grouped(p)
    p.add_argument("--rank", type=_nonneg, required=True)
    p.add_argument("--a", type=_nonneg, required=True)
    p.add_argument("label")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("stability", parents=[common], help="tabulate a sequence and detect stability")
    p.add_argument("--seq", choices=SEQUENCES, required=True)
    p.add_argument("--group", choices=(GL, SP))
    p.add_argument("--k", type=_nonneg, default=1, help="exterior power for wedge-standard")
    p.add_argument("--degree", type=_positive, default=2, help="free Lie degree")
    p.add_argument("--base", choices=SEQUENCES, default="h1-ia", help="base sequence for free-lie")
    p.add_argument("--label", help="label for --seq irreducible")
    p.add_argument("--from", dest="from_", type=_positive, required=True)
    p.add_argument("--to", type=_positive)
    p.add_argument("--tau", type=_nonneg, help="tabulate tau_{n,A} instead of the sequence itself")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("dim", parents=[common], help="dimension of an irreducible")
    grouped(p)
    p.add_argument("--rank", type=_nonneg, required=True)
    p.add_argument("label")
    p.set_defaults(func=cmd_dim)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    path = os.environ.get("REPSTAB_CACHE") or args.cache
    cache = LrCache(path) if path else None
    set_default_cache(cache)
    try:
        args.func(args, out)
    except (UsageError, ValueError) as exc:
        # bad labels, ranks and windows are the caller's problem, even when
        # the engine is the one that noticed
        err.write(f"usage error: {type(exc).__name__}: {exc}\n")
        return 2
    except RepstabError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    finally:
        set_default_cache(None)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
