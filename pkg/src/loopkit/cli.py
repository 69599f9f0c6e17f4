"""Command-line front end.

Exit codes: 0 when every requested check passed (or the requested object
was produced), 1 when a mathematical check failed (the report carries a
witness), 2 for usage or input errors.  `--json` switches the report to a
stable JSON schema; keys are documented in the README.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import loopcore, pgl, search, structure
from .errors import (
    DecompositionFailed,
    InvalidLoopTable,
    LoopkitError,
    NoTwoSidedInverse,
    NotATransversal,
    NotBol,
    NotBruck,
    ShapeMismatch,
    UnsupportedQ,
)
from .folder import (
    baer_envelope,
    format_folder_text,
    loop_from_folder,
    parse_folder_text,
)
from .loopcore import format_loop_text, parse_loop_text
from .permgrp import parse_group_text


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_loop(path: str) -> loopcore.Loop:
    return parse_loop_text(_read_text(path))


def _emit(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    for key, value in report.items():
        print(f"{key} = {value}")


# ---------------------------------------------------------------------------
# verbs


def _cmd_check(args) -> int:
    loop = _load_loop(args.loop)
    bol = loopcore.check_bol(loop)
    try:
        aip = loopcore.check_aip(loop)
    except NoTwoSidedInverse as exc:
        aip = f"no two-sided inverse for element {exc.element}"
    report = {
        "order": loop.n,
        "bol": bol,
        "aip": aip,
        "bruck": bol and aip is True,
        "associative": loopcore.is_associative(loop),
    }
    report["exponent"] = loopcore.exponent(loop) if bol else None
    _emit(report, args.json)
    return 0


def _cmd_envelope(args) -> int:
    loop = _load_loop(args.loop)
    f = baer_envelope(loop)
    text = format_folder_text(f)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_fold(args) -> int:
    try:
        f = parse_folder_text(_read_text(args.folder))
        loop = loop_from_folder(f)
    except NotATransversal as exc:
        _emit({"ok": False, "error": "NotATransversal",
               "witness": str(exc.witness), "message": str(exc)}, args.json)
        return 1
    sys.stdout.write(format_loop_text(loop))
    return 0


def _cmd_decompose(args) -> int:
    loop = _load_loop(args.loop)
    try:
        rep = structure.decompose(loop)
        factor_ok = structure.check_envelope_factorization(loop)
    except (NotBruck, DecompositionFailed, ShapeMismatch) as exc:
        _emit({"ok": False, "error": type(exc).__name__,
               "witness": str(getattr(exc, "witness", "")),
               "message": str(exc)}, args.json)
        return 1
    shape = dict(rep.envelope_shape)
    shape["qs"] = list(shape["qs"])
    report = {
        "ok": rep.is_direct_product and factor_ok,
        "odd_part": list(rep.odd_part),
        "two_part": list(rep.two_part),
        "is_direct_product": rep.is_direct_product,
        "envelope_factorization": factor_ok,
        "envelope_shape": shape,
        "n_empty": rep.n_empty,
    }
    _emit(report, args.json)
    return 0 if report["ok"] else 1


def _cmd_sylow2(args) -> int:
    loop = _load_loop(args.loop)
    try:
        sub = structure.sylow2_subloop(loop)
    except NotBruck as exc:
        _emit({"ok": False, "error": "NotBruck", "message": str(exc)}, args.json)
        return 1
    report = {"ok": True, "subloop": list(sub), "order": len(sub)}
    if loop.n <= args.order_bound:
        report["all_of_sylow_order"] = [list(s) for s in
                                        structure.sylow2_all(loop, args.order_bound)]
        report["h_conjugate"] = structure.sylow2_conjugacy(loop, args.order_bound)
        report["dominates_2_subloops"] = structure.sylow2_dominates_all(
            loop, args.order_bound)
        report["ok"] = report["h_conjugate"] and report["dominates_2_subloops"]
    _emit(report, args.json)
    return 0 if report["ok"] else 1


def _cmd_hall(args) -> int:
    loop = _load_loop(args.loop)
    primes = sorted({int(p) for p in args.primes.split(",") if p.strip()})
    sub = structure.hall_subloops(loop, primes, args.order_bound)
    report = {
        "primes": primes,
        "found": sub is not None,
        "subloop": list(sub) if sub is not None else None,
        "order": len(sub) if sub is not None else 0,
    }
    _emit(report, args.json)
    return 0


def _cmd_subloops(args) -> int:
    loop = _load_loop(args.loop)
    subs = loopcore.enumerate_subloops(loop, args.order_bound)
    report = {
        "count": len(subs),
        "orders": [len(s) for s in subs],
        "subloops": [list(s) for s in subs],
    }
    _emit(report, args.json)
    return 0


def _cmd_lagrange(args) -> int:
    loop = _load_loop(args.loop)
    subs = loopcore.enumerate_subloops(loop, args.order_bound)
    bad = [s for s in subs if loop.n % len(s) != 0]
    report = {"ok": not bad, "subloop_count": len(subs)}
    if bad:
        report["witness"] = list(bad[0])
    _emit(report, args.json)
    return 0 if not bad else 1


def _cmd_pgl(args) -> int:
    try:
        model = pgl.build_pgl2(args.q)
    except UnsupportedQ as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep, size = pgl.outer_involution_class(model, args.enum_bound)
    try:
        orbit_sizes = pgl.borel_orbits_on_sylow2(model, args.enum_bound)
        pglemma2_ok = True
    except AssertionError as exc:
        orbit_sizes = ()
        pglemma2_ok = False
    pglemma3_ok = pgl.check_pgllemma3(model, args.enum_bound) if args.q == 5 else None
    report = {
        "q": args.q,
        "order": model.group.order(),
        "borel_order": model.borel.order(),
        "outer_class_size": size,
        "sylow2_count": sum(orbit_sizes),
        "borel_orbit_sizes": list(orbit_sizes),
        "pglemma2_ok": pglemma2_ok,
        "pglemma3_ok": pglemma3_ok,
    }
    _emit(report, args.json)
    ok = (pglemma2_ok and size == args.q * (args.q - 1) // 2
          and pglemma3_ok is not False)
    return 0 if ok else 1


def _cmd_search_loops(args) -> int:
    spec = search.SearchSpec(
        order=args.order,
        require_bol=args.bol,
        require_aip=args.aip,
        require_exponent2=args.exp2,
        up_to_isomorphism=args.iso,
        node_budget=args.budget,
    )
    report_obj = search.bol_from_search_report(spec, path=args.fixture)
    report = {
        "order": args.order,
        "count": report_obj.count,
        "associative_count": report_obj.associative_count,
        "nonassociative_count": report_obj.count - report_obj.associative_count,
    }
    if args.json:
        report["tables"] = [[list(r) for r in t] for t in report_obj.tables]
    _emit(report, args.json)
    return 0


def _cmd_search_envelope(args) -> int:
    G = parse_group_text(_read_text(args.group))
    H = parse_group_text(_read_text(args.subgroup))
    hits = search.envelope_search(G, H, args.enum_bound)
    report = {
        "hits": len(hits),
        "loops": [[list(r) for r in loop_from_folder(f).table] for f in hits],
    }
    _emit(report, args.json)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopkit",
        description="Finite loop theory toolkit: identity checks, Baer "
                    "envelopes, PGL2(q) counting, Sylow/Lagrange/Hall audits.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true",
                       help="emit a stable JSON report")
        p.add_argument("--order-bound", type=int, default=loopcore.DEFAULT_ORDER_BOUND,
                       help="bound for exhaustive loop routines (default 96)")
        p.add_argument("--enum-bound", type=int, default=200_000,
                       help="bound for group element enumeration (default 200000)")
        return p

    p = add("check", _cmd_check, help="report Bol/AIP/Bruck/exponent of a loop file")
    p.add_argument("loop", help="loop table file ('-' for stdin)")

    p = add("envelope", _cmd_envelope, help="write the Baer envelope folder of a loop")
    p.add_argument("loop")
    p.add_argument("-o", "--out", help="output file (default stdout)")

    p = add("fold", _cmd_fold, help="rebuild the loop of a folder file")
    p.add_argument("folder", nargs="?", default="-",
                   help="folder file (default stdin)")

    p = add("decompose", _cmd_decompose,
            help="odd x 2-power-exponent decomposition and envelope checks")
    p.add_argument("loop")

    p = add("sylow2", _cmd_sylow2, help="Sylow 2-subloop and conjugacy audit")
    p.add_argument("loop")

    p = add("hall", _cmd_hall, help="search for a Hall pi-subloop")
    p.add_argument("loop")
    p.add_argument("--primes", required=True, help="comma-separated primes, e.g. 2,3")

    p = add("subloops", _cmd_subloops, help="enumerate all subloops")
    p.add_argument("loop")

    p = add("lagrange", _cmd_lagrange, help="assert every subloop order divides |X|")
    p.add_argument("loop")

    p = add("pgl", _cmd_pgl, help="PGL2(q) model and counting lemma report")
    p.add_argument("--q", type=int, required=True)

    p = add("search-loops", _cmd_search_loops, help="exhaustive small-loop search")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--bol", action="store_true")
    p.add_argument("--aip", action="store_true")
    p.add_argument("--exp2", action="store_true")
    p.add_argument("--iso", action="store_true")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--fixture", help="write a JSON fixture of the run")

    p = add("search-envelope", _cmd_search_envelope,
            help="involution-class transversal search over (G, H)")
    p.add_argument("group", help="permutation group file for G")
    p.add_argument("subgroup", help="permutation group file for H")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidLoopTable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LoopkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
