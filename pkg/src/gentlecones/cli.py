"""Command-line surface: validate, hom, cone, verify-corpus.

Exit codes: 0 success, 1 gentleness violation, 2 parse/validation error,
3 selector out of range, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .basis import standard_basis
from .complexes import build
from .cones import cone, render_unfolded
from .corpus import CORPUS_FILES, sweep_algebra, verify_basis_map
from .fields import parse_field_spec
from .oracle import hom_dimension
from .presentation import (
    NotGentleError,
    ParseError,
    PresentationError,
    parse_presentation,
)
from .words import WordError, parse_band, parse_string, shift


def _load_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_presentation(text), text


def _algebra_hash(text):
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _parse_object(expr, pres):
    if "@scalar=" in expr or "@pos=" in expr:
        return parse_band(expr, pres)
    return parse_string(expr, pres)


def _report(data, fmt):
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        _print_text(data)


def _print_text(data, indent=0):
    pad = "  " * indent
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)):
                _print_text(v, indent)
                print()
            else:
                print(f"{pad}- {v}")
    else:
        print(f"{pad}{data}")


def _basis_entry(i, m):
    payload = m.payload
    entry = {
        "index": i,
        "kind": m.kind,
        "signature": str(m.signature),
    }
    if m.kind == "graph":
        entry["endpoints"] = f"{payload.left_kind}/{payload.right_kind}"
        entry["overlap"] = {
            "sigma_start": payload.overlap.i0,
            "tau_start": payload.overlap.j0,
            "length": payload.overlap.k,
        }
        if payload.f_L is not None:
            entry["f_L"] = payload.f_L.word()
        if payload.f_R is not None:
            entry["f_R"] = payload.f_R.word()
        entry["degree"] = payload.overlap.source.node(payload.overlap.i0)[1]
    elif m.kind == "quasi":
        entry["endpoints"] = f"{payload.left_kind}/{payload.right_kind}"
        entry["overlap"] = {
            "sigma_start": payload.overlap.i0,
            "tau_start": payload.overlap.j0,
            "length": payload.overlap.k,
        }
        entry["degree"] = payload.overlap.source.node(payload.overlap.i0)[1]
    elif m.kind == "single":
        entry["component"] = payload.f.word()
        entry["degree"] = payload.src.node(payload.s_node)[1]
    else:
        entry["components"] = [payload.f_L.word(), payload.f_R.word()]
        entry["degree"] = payload.src.node(payload.cs)[1]
    return entry


def cmd_validate(args):
    try:
        pres, text = _load_algebra(args.algebra)
    except NotGentleError as exc:
        print("not gentle:")
        for v in exc.violations:
            print(f"  {v}")
        return 1
    except (ParseError, PresentationError, OSError) as exc:
        print(f"parse error: {exc}")
        return 2
    print(f"gentle: {pres.name} ({len(pres.vertices)} vertices, "
          f"{len(pres.arrows)} arrows, {len(pres.relations)} relations)")
    print(f"algebra-hash: {_algebra_hash(text)}  tool: gentlecones {__version__}")
    return 0


def cmd_hom(args):
    try:
        pres, text = _load_algebra(args.algebra)
        sigma = _parse_object(args.sigma, pres)
        tau = _parse_object(args.tau, pres)
    except (PresentationError, WordError, OSError) as exc:
        print(f"error: {exc}")
        return 2
    fld = parse_field_spec(args.field)
    table = {}
    for n in range(-args.window, args.window + 1):
        maps = standard_basis(sigma, shift(tau, n))
        if not maps:
            continue
        entry = {"maps": [_basis_entry(i, m) for i, m in enumerate(maps)]}
        if args.check:
            hd = hom_dimension(build(sigma, fld), build(shift(tau, n), fld))
            entry["oracle_hom_dimension"] = hd
            entry["count_matches"] = hd == len(maps)
        table[n] = entry
    report = {
        "tool": f"gentlecones {__version__}",
        "algebra": pres.name,
        "algebra_hash": _algebra_hash(text),
        "field": fld.name,
        "seed": args.seed,
        "sigma": sigma.serialize(),
        "tau": tau.serialize(),
        "shifts": {str(k): v for k, v in sorted(table.items())},
    }
    _report(report, args.format)
    if args.check:
        return 0 if all(v.get("count_matches", True) for v in table.values()) else 4
    return 0


def cmd_cone(args):
    try:
        pres, text = _load_algebra(args.algebra)
        sigma = _parse_object(args.sigma, pres)
        tau = _parse_object(args.tau, pres)
    except (PresentationError, WordError, OSError) as exc:
        print(f"error: {exc}")
        return 2
    fld = parse_field_spec(args.field)
    tau_n = shift(tau, args.shift)
    maps = standard_basis(sigma, tau_n)
    if not 0 <= args.select < len(maps):
        print(f"selector {args.select} out of range: {len(maps)} basis maps at shift {args.shift}")
        return 3
    m = maps[args.select]
    summands = cone(m)
    report = {
        "tool": f"gentlecones {__version__}",
        "algebra": pres.name,
        "algebra_hash": _algebra_hash(text),
        "field": fld.name,
        "seed": args.seed,
        "sigma": sigma.serialize(),
        "tau": tau_n.serialize(),
        "map": _basis_entry(args.select, m),
        "summands": [
            {
                "kind": s.kind,
                "word": s.describe(),
                "provenance": s.provenance,
                "diagram": render_unfolded(s.value) if s.kind != "zero" else "0",
            }
            for s in summands
        ],
    }
    if all(s.kind == "zero" for s in summands):
        report["note"] = "0 (contractible)"
    if args.verify:
        ok, *_rest = verify_basis_map(m, fld, summands=summands)
        report["oracle_verified"] = ok
        _report(report, args.format)
        return 0 if ok else 4
    _report(report, args.format)
    return 0


def cmd_verify_corpus(args):
    fields = tuple(parse_field_spec(s) for s in args.field.split(","))
    names = args.corpus.split(",") if args.corpus else list(CORPUS_FILES)
    all_ok = True
    total_cases = total_maps = 0
    reports = []
    for name in names:
        if args.algebra:
            pres, _ = _load_algebra(args.algebra)
            name = pres.name
        else:
            pres = None
        if pres is None:
            from .corpus import load_corpus_presentation

            pres = load_corpus_presentation(name)
        summary = sweep_algebra(
            name,
            pres=pres,
            max_string_letters=args.max_string_letters,
            max_band_letters=args.max_band_letters,
            max_path_len=args.max_path_len,
            window=args.window,
            fields=fields,
            band_scalar=Fraction(args.band_scalar),
            jobs=args.jobs,
            progress=args.progress,
            corrupt=args.self_test,
        )
        total_cases += summary.cases
        total_maps += summary.maps
        ok = summary.ok
        all_ok = all_ok and ok
        reports.append(
            {
                "algebra": name,
                "algebra_hash": _algebra_hash(pres.serialize()),
                "cases": summary.cases,
                "maps": summary.maps,
                "pass": ok,
                "failures": summary.failures[:20],
                "basis_mismatches": summary.basis_mismatches[:20],
            }
        )
        if args.algebra:
            break
    if total_cases == 0:
        print("warning: empty corpus, nothing verified")
        if not names:
            return 0
    out = {
        "tool": f"gentlecones {__version__}",
        "fields": [f.name for f in fields],
        "seed": args.seed,
        "self_test": args.self_test,
        "total_cases": total_cases,
        "total_maps": total_maps,
        "all_pass": all_ok,
        "algebras": reports,
    }
    _report(out, args.format)
    if args.self_test:
        # the deliberate corruption must be detected
        return 4 if not all_ok else 1
    return 0 if all_ok else 4


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="gentlecones",
        description="Standard-basis morphisms and their mapping cones over gentle algebras",
    )
    parser.add_argument("--version", action="version", version=f"gentlecones {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", default="rat", help="coefficient field: rat or fp:<p>")
        p.add_argument("--format", default="text", choices=["text", "json"])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("validate", help="check an algebra file for gentleness")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("hom", help="standard basis per shift in a window")
    p.add_argument("--algebra", required=True)
    p.add_argument("sigma")
    p.add_argument("tau")
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--check", action="store_true", help="cross-check counts with the oracle")
    common(p)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("cone", help="mapping-cone summands of one basis map")
    p.add_argument("--algebra", required=True)
    p.add_argument("sigma")
    p.add_argument("tau")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--select", type=int, default=0)
    p.add_argument("--verify", action="store_true", help="run the oracle pipeline")
    common(p)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("verify-corpus", help="oracle-verify every cone over the corpus")
    p.add_argument("--algebra", help="verify a single algebra file instead of the corpus")
    p.add_argument("--corpus", help="comma-separated corpus algebra names")
    p.add_argument("--max-string-letters", type=int, default=5)
    p.add_argument("--max-band-letters", type=int, default=4)
    p.add_argument("--max-path-len", type=int, default=3)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--band-scalar", default="2")
    p.add_argument("--progress", type=int, default=0)
    p.add_argument("--self-test", action="store_true",
                   help="corrupt one golden deliberately; must be detected")
    common(p)
    p.set_defaults(func=cmd_verify_corpus)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
