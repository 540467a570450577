"""Command-line interface: check, cohomology, mc, dendrify, bracket.

Exit codes are uniform across subcommands: 0 means the requested verification
passed (or the construction succeeded), 1 means a mathematical finding (a
violated axiom, a failed square-zero check, or a failed d o d certification),
and 2 means an operational problem (unreadable file, schema error, oversized
degree).  Reports are JSON on stdout (or --out) and are byte-identical across
runs for identical inputs; --timestamps adds a timestamp to the provenance
block for humans who want one.

The cohomology degree budget (maximum coordinate dimension of any assembled
cochain space, default 20000) can be overridden with the environment variable
DERPAIR_DEGREE_BUDGET.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import files
from .brackets import assder_bracket, dc_bracket, gerstenhaber, nijenhuis_richardson
from .cochains import AltMap, DerCochain
from .cohomology import DEFAULT_COORD_BUDGET, ComplexSpec, FLAVORS, cohomology
from .constructions import RECIPE_KINDS, dendrify
from .errors import (DegreeBudgetError, DerpairError, InvalidStructureError,
                     SchemaError)
from .cochains import MultiMap
from .maurer_cartan import mc_assder, mc_lieder, mc_pair_assder, mc_pair_lieder
from .structures import KINDS, check_structure, fingerprint

SCHEMA = "derpair-report/1"

EXIT_PASS = 0
EXIT_FINDING = 1
EXIT_ERROR = 2


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise SchemaError(f"cannot write {out_path}: {exc}") from exc


def _report(command: str, verdict: str, provenance: dict, violations=(),
            mc=None, cohomology_doc=None, timestamps: bool = False) -> dict:
    if timestamps:
        provenance = dict(provenance)
        provenance["timestamp"] = (
            datetime.datetime.now(datetime.timezone.utc).isoformat())
    return {
        "schema": SCHEMA,
        "command": command,
        "verdict": verdict,
        "violations": list(violations),
        "mc": mc,
        "cohomology": cohomology_doc,
        "provenance": provenance,
    }


def _emit_report(doc: dict, out_path: str | None) -> None:
    _write_output(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", out_path)


def _budget() -> int:
    raw = os.environ.get("DERPAIR_DEGREE_BUDGET")
    if raw is None:
        return DEFAULT_COORD_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise SchemaError(f"DERPAIR_DEGREE_BUDGET must be an integer, got {raw!r}") \
            from exc
    if value < 1:
        raise SchemaError("DERPAIR_DEGREE_BUDGET must be positive")
    return value


def cmd_check(args) -> int:
    p = files.parse_presentation(_read(args.path), args.kind)
    violation = check_structure(p)
    provenance = {"input": args.path, "kind": p.kind, "fingerprint": fingerprint(p)}
    if violation is None:
        _emit_report(_report("check", "pass", provenance,
                             timestamps=args.timestamps), args.out)
        return EXIT_PASS
    _emit_report(_report("check", "fail", provenance,
                         violations=[files.violation_to_dict(violation, p.space)],
                         timestamps=args.timestamps), args.out)
    return EXIT_FINDING


def cmd_cohomology(args) -> int:
    p = files.parse_presentation(_read(args.path))
    spec = ComplexSpec(args.complex, p, args.max_degree)
    try:
        report = cohomology(spec, budget=_budget(),
                            include_kernel_bases=args.kernel_bases)
    except InvalidStructureError as exc:
        provenance = {"input": args.path, "kind": p.kind}
        violations = ([files.violation_to_dict(exc.violation, p.space)]
                      if exc.violation is not None else [])
        _emit_report(_report("cohomology", "fail", provenance,
                             violations=violations,
                             timestamps=args.timestamps), args.out)
        return EXIT_FINDING
    provenance = {"input": args.path, "kind": p.kind, "fingerprint": fingerprint(p)}
    verdict = "pass" if report.dd_zero_certified else "fail"
    _emit_report(_report("cohomology", verdict, provenance,
                         cohomology_doc=files.cohomology_to_dict(report),
                         timestamps=args.timestamps), args.out)
    return EXIT_PASS if report.dd_zero_certified else EXIT_FINDING


def _mc_single(p):
    if p.kind in ("lieder", "lie"):
        w = AltMap.from_multimap(p.products["bracket"])
        delta = p.derivations.get("delta", MultiMap.zero(p.space, 1))
        return mc_lieder(w, delta)
    if p.kind in ("assder", "associative"):
        delta = p.derivations.get("delta", MultiMap.zero(p.space, 1))
        return mc_assder(p.products["mu"], delta)
    raise SchemaError(f"mc (single) does not support kind {p.kind!r}")


def _mc_pair(p):
    zero = MultiMap.zero(p.space, 1)
    if p.kind in ("compatible-lieder", "compatible-lie"):
        w1 = AltMap.from_multimap(p.products["bracket1"])
        w2 = AltMap.from_multimap(p.products["bracket2"])
        return mc_pair_lieder(w1, p.derivations.get("delta1", zero),
                              w2, p.derivations.get("delta2", zero))
    if p.kind in ("compatible-assder", "compatible-associative"):
        return mc_pair_assder(p.products["mu1"], p.derivations.get("delta1", zero),
                              p.products["mu2"], p.derivations.get("delta2", zero))
    raise SchemaError(f"mc --pair does not support kind {p.kind!r}")


def cmd_mc(args) -> int:
    p = files.parse_presentation(_read(args.path))
    verdict = _mc_pair(p) if args.pair else _mc_single(p)
    provenance = {"input": args.path, "kind": p.kind, "fingerprint": fingerprint(p)}
    _emit_report(_report("mc", "pass" if verdict.holds else "fail", provenance,
                         mc=files.mc_to_dict(verdict, p.space),
                         timestamps=args.timestamps), args.out)
    return EXIT_PASS if verdict.holds else EXIT_FINDING


def cmd_dendrify(args) -> int:
    p = files.parse_presentation(_read(args.path))
    coefficients = None
    if args.coefficients is not None:
        parts = args.coefficients.split(",")
        if len(parts) != 4:
            raise SchemaError("--coefficients needs four rationals k1,k2,p1,p2")
        coefficients = [files.parse_scalar(x) for x in parts]
    try:
        result = dendrify(p, args.recipe, coefficients)
    except InvalidStructureError as exc:
        provenance = {"input": args.path, "kind": p.kind, "recipe": args.recipe}
        violations = ([files.violation_to_dict(exc.violation, p.space)]
                      if exc.violation is not None else [])
        _emit_report(_report("dendrify", "fail", provenance,
                             violations=violations,
                             timestamps=args.timestamps), args.out)
        return EXIT_FINDING
    _write_output(files.emit_presentation(result), args.out)
    return EXIT_PASS


def cmd_bracket(args) -> int:
    left = files.parse_cochain(_read(args.left))
    right = files.parse_cochain(_read(args.right))
    kind = args.kind
    if kind in ("g", "nr"):
        for side in (left, right):
            if side.shadow is not None and not side.shadow.is_zero():
                raise SchemaError(f"bracket kind {kind!r} takes plain cochains "
                                  "(no shadow)")
        if kind == "g":
            if left.flavor != "multi" or right.flavor != "multi":
                raise SchemaError('bracket kind "g" needs flavor "multi"')
            value = gerstenhaber(left.top, right.top)
        else:
            if left.flavor != "alt" or right.flavor != "alt":
                raise SchemaError('bracket kind "nr" needs flavor "alt"')
            value = nijenhuis_richardson(left.top, right.top)
        out = DerCochain(value, None) if value.arity == 1 \
            else DerCochain(value, type(value).zero(value.space, value.arity - 1))
        _write_output(files.emit_cochain(out, with_shadow=False), args.out)
        return EXIT_PASS
    if kind == "dc":
        if left.flavor != "alt" or right.flavor != "alt":
            raise SchemaError('bracket kind "dc" needs flavor "alt"')
        value = dc_bracket(left, right)
    else:
        if left.flavor != "multi" or right.flavor != "multi":
            raise SchemaError('bracket kind "assder" needs flavor "multi"')
        value = assder_bracket(left, right)
    _write_output(files.emit_cochain(value, with_shadow=True), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derpair",
        description="Exact-rational checks, transfers, square-zero tests, and "
                    "cohomology for algebras with derivations. File indices "
                    "are 0-based; reports print 1-based basis labels e1..en.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the result here instead of stdout")
        sp.add_argument("--timestamps", action="store_true",
                        help="include a timestamp in the report provenance")

    sp = sub.add_parser("check", help="verify the axioms of the claimed kind")
    sp.add_argument("path")
    sp.add_argument("--kind", choices=KINDS,
                    help="check against this kind instead of the file's")
    common(sp)
    sp.set_defaults(handler=cmd_check)

    sp = sub.add_parser("cohomology", help="cochain dimensions, ranks, "
                                           "cohomology groups, d o d certification")
    sp.add_argument("path")
    sp.add_argument("--complex", required=True, choices=FLAVORS)
    sp.add_argument("--max-degree", type=int, default=2)
    sp.add_argument("--kernel-bases", action="store_true",
                    help="include closed-cochain bases in the report")
    common(sp)
    sp.set_defaults(handler=cmd_cohomology)

    sp = sub.add_parser("mc", help="square-zero (Maurer-Cartan style) check")
    sp.add_argument("path")
    sp.add_argument("--pair", action="store_true",
                    help="check the compatible-pair condition")
    common(sp)
    sp.set_defaults(handler=cmd_mc)

    sp = sub.add_parser("dendrify", help="apply a structure-transfer recipe")
    sp.add_argument("path")
    sp.add_argument("--recipe", required=True, choices=sorted(RECIPE_KINDS))
    sp.add_argument("--coefficients",
                    help="k1,k2,p1,p2 for linear-combine (default 1,1,1,1)")
    common(sp)
    sp.set_defaults(handler=cmd_dendrify)

    sp = sub.add_parser("bracket", help="bracket of two cochain files")
    sp.add_argument("--kind", required=True, choices=("g", "nr", "dc", "assder"))
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(handler=cmd_bracket)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DegreeBudgetError as exc:
        print(f"derpair: resource limit: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except DerpairError as exc:
        print(f"derpair: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
