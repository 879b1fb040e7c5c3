"""Command-line front end: ``inoue <subcommand> ...``.

Exit codes: 0 definite success / equivalent, 1 definite negative or input
error, 2 unknown / inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from .census import DEFAULT_KINDS, CensusConfig, run_census
from .equivalence import (DEFAULT_CONJUGATOR_BOUND, DEFAULT_ETA_BOUND, DEFAULT_S0_BOUND, Status,
                          build_bihol, decide_homotopy, enumerate_representatives, iter_witnesses)
from .fundamental_groups import fingerprint, relation_check
from .surfaces import S0, SurfaceError, numeric_relation_check, parse_surface_file

EXIT_OK, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
BOUNDS_ENV = "INOUE_DEFAULT_BOUNDS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def default_bounds(env: dict | None = None) -> dict[str, int]:
    """Search bounds, optionally overridden by ``INOUE_DEFAULT_BOUNDS``.

    The variable holds comma-separated ``name=value`` pairs with names
    ``conjugator``, ``eta`` and ``s0``, e.g. ``conjugator=32,eta=6``.
    """
    bounds = {"conjugator": DEFAULT_CONJUGATOR_BOUND, "eta": DEFAULT_ETA_BOUND, "s0": DEFAULT_S0_BOUND}
    raw = (os.environ if env is None else env).get(BOUNDS_ENV, "").strip()
    if not raw:
        return bounds
    for item in raw.split(","):
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in bounds or not value.strip().isdigit() or int(value) < 1:
            raise UsageError(f"bad {BOUNDS_ENV} entry {item!r}")
        bounds[name] = int(value)
    return bounds


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_validate(args, bounds) -> int:
    s = parse_surface_file(args.file)
    out = {"valid": True, "surface": s.to_json(), "relations": relation_check(s.group()),
           "numeric_relations": numeric_relation_check(s)}
    _emit(out)
    ok = all(x["passed"] for x in out["relations"] + out["numeric_relations"])
    return EXIT_OK if ok else EXIT_NO


def _search_bound(kind: str, args, bounds) -> int:
    if args.bound is not None:
        return args.bound
    return bounds["s0"] if kind == S0 else bounds["conjugator"]


def _cmd_equiv(args, bounds) -> int:
    a, b = parse_surface_file(args.a), parse_surface_file(args.b)
    verdict = decide_homotopy(a, b, _search_bound(a.kind, args, bounds))
    _emit(verdict.to_json())
    return {Status.EQUIVALENT: EXIT_OK, Status.NOT_EQUIVALENT: EXIT_NO,
            Status.UNKNOWN: EXIT_UNKNOWN}[verdict.status]


def _cmd_bihol(args, bounds) -> int:
    a, b = parse_surface_file(args.a), parse_surface_file(args.b)
    if a.kind == S0 or a.kind != b.kind:
        raise UsageError("bihol needs two S+ or two S- surfaces")
    verdict = decide_homotopy(a, b, _search_bound(a.kind, args, bounds))
    if verdict.status is not Status.EQUIVALENT:
        _emit({"homotopy": verdict.to_json(), "map": None})
        return EXIT_NO if verdict.status is Status.NOT_EQUIVALENT else EXIT_UNKNOWN
    eta_bound = args.eta_bound or bounds["eta"]
    witnesses, _ = iter_witnesses(a, b, _search_bound(a.kind, args, bounds))
    for w in witnesses:
        if w.eps != 1:
            continue
        built = build_bihol(a, b, w, eta_bound)
        if built is not None:
            _emit({"homotopy": verdict.to_json(), "witness": w.to_json(), "map": built[0].to_json()})
            return EXIT_OK
    _emit({"homotopy": verdict.to_json(), "map": None,
           "reason": "no eps = 1 witness with a compatible orientation"})
    return EXIT_UNKNOWN


def _cmd_reps(args, bounds) -> int:
    s = parse_surface_file(args.file)
    reps = enumerate_representatives(s)
    _emit({"input": s.to_json(), "count": len(reps),
           "representatives": [{"label": r.label, "surface": r.surface.to_json()} for r in reps]})
    return EXIT_OK


def _cmd_fingerprint(args, bounds) -> int:
    s = parse_surface_file(args.file)
    center, abelian = fingerprint(s.group())
    _emit({"kind": s.kind, "center": center.value, "gamma_abelian": abelian})
    return EXIT_OK


def _cmd_census(args, bounds) -> int:
    config = CensusConfig(
        nmax=args.nmax, pmax=args.pmax, rmax=args.rmax, kinds=tuple(args.kinds),
        conjugator_bound=args.bound or bounds["conjugator"], eta_bound=args.eta_bound or bounds["eta"],
        s0_bound=args.s0_bound or bounds["s0"], jobs=args.jobs)
    report = run_census(config)
    text = report.dumps() + "\n" if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    unknown = any(c.unknown_verdicts for cls in report.classes.values() for c in cls)
    return EXIT_UNKNOWN if unknown else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="inoue", description="Inoue surface classification tools")
    parser.add_argument("--seed", type=int, default=0, help="seed for any randomized sampling")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="validate a surface file and check its relations")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    for name, func, helptext in (("equiv", _cmd_equiv, "decide homotopy equivalence"),
                                 ("bihol", _cmd_bihol, "construct an explicit biholomorphism")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--bound", type=int, default=None, help="conjugator search bound")
        if name == "bihol":
            p.add_argument("--eta-bound", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("reps", help="deformation-class representatives")
    p.add_argument("file")
    p.set_defaults(func=_cmd_reps)

    p = sub.add_parser("fingerprint", help="(center, Gamma abelian) invariant")
    p.add_argument("file")
    p.set_defaults(func=_cmd_fingerprint)

    p = sub.add_parser("census", help="partition a bounded parameter range")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--kinds", nargs="+", choices=["S0", "S+", "S-"], default=list(DEFAULT_KINDS))
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--eta-bound", type=int, default=None)
    p.add_argument("--s0-bound", type=int, default=None)
    p.set_defaults(func=_cmd_census)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        random.seed(args.seed)
        return args.func(args, default_bounds())
    except UsageError as exc:
        print(f"inoue: usage error: {exc}", file=sys.stderr)
        return EXIT_NO
    except (SurfaceError, OSError, ValueError) as exc:
        print(f"inoue: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
