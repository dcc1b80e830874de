"""Command-line front end: ``lgorb <command> [options]``.

Every command prints a JSON document with sorted keys (or a short text
rendering with ``--format text``).  Exit codes: 0 success, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, catalog, suites
from .ellgenus import (ModularPoint, QSeriesParams, orbifold_elliptic_genus,
                       orbifold_elliptic_genus_limit, representation)
from .errors import LgorbError, NotRepresentable
from .exactmath import rat_str
from .hodge import (chi_y_closed, exponents, hodge_numbers, mu_triple_A, orbifold_signature,
                    rank_A, rank_B)
from .invpoly import InvPoly, atomic_decomposition, hat_c, milnor_number, transpose
from .lattice import Conventions, verify_prop8_case
from .symmetry import (DiagGroup, GroupElement, dual_group, g0_group, in_full_group,
                       select_group, sl_subgroups, supergroups_of_g0)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- input parsing ----------------------------------------------------------------

def load_poly(source: str) -> InvPoly:
    """A polynomial from ``catalog:<name>``, a JSON file, inline JSON, or an expression."""
    src = source.strip()
    if src.startswith("catalog:"):
        try:
            return catalog.get_entry(src[len("catalog:"):]).f
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    if src.endswith(".json") or Path(src).is_file():
        try:
            text = Path(src).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {src}: {exc}") from exc
        return _poly_from_json_text(text, src)
    if src.startswith("{") or src.startswith("["):
        return _poly_from_json_text(src, "inline JSON")
    try:
        return InvPoly.parse(src)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"cannot parse polynomial {src!r}: {exc}") from exc


def _poly_from_json_text(text: str, where: str) -> InvPoly:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"parse error in {where}: {exc}") from exc
    try:
        if isinstance(data, list):
            return InvPoly.from_rows(data)
        return InvPoly.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{where} does not describe an exponent matrix: {exc}") from exc


def parse_groups(p: InvPoly, selector: str, max_order: int) -> list[DiagGroup]:
    """Named selector or explicit generators ``"1/3,1/3,1/3;0,1/2,1/2"``."""
    sel = selector.strip()
    if sel == "all-SL-subgroups":
        return sl_subgroups(p, max_order)
    if sel == "all-supergroups-of-G0":
        return supergroups_of_g0(p, max_order)
    if sel in ("trivial", "G0", "Gf", "SL"):
        return [select_group(p, sel)]
    gens = []
    try:
        for chunk in sel.split(";"):
            phases = tuple(Fraction(x.strip()) for x in chunk.split(","))
            if len(phases) != p.n:
                raise UsageError(f"generator {chunk!r} has {len(phases)} phases, expected {p.n}")
            gens.append(GroupElement(phases))
    except ValueError as exc:
        raise UsageError(f"unknown group selector {selector!r}") from exc
    for g in gens:
        if not in_full_group(p, g):
            raise UsageError(f"generator {g.to_json()} is not a symmetry of {p}")
    return [DiagGroup.generated(p, gens)]


def parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}") from exc


# -- reports ----------------------------------------------------------------------

def _optional(fn, *args):
    try:
        out = fn(*args)
    except LgorbError:
        return None
    return out.to_json() if hasattr(out, "to_json") else out


def analyze_report(p: InvPoly, G: DiagGroup) -> dict:
    pt, Gt = transpose(p), dual_group(p, G)
    return {
        "polynomial": {"f": str(p), **p.to_json(), "blocks": [b.to_json() for b in atomic_decomposition(p)],
                       "hat_c": rat_str(hat_c(p)), "milnor_number": milnor_number(p)},
        "weights": p.weights.to_json(),
        "group": {**G.to_json(), "order": G.order, "is_sl": G.is_sl, "contains_G0": g0_group(p) <= G},
        "dual": {"f": str(pt), **pt.to_json(), "group": Gt.to_json(), "order": Gt.order},
        "hodge_numbers": hodge_numbers(p, G).to_json(),
        "exponents": [rat_str(e) for e in exponents(p, G)],
        "chi_y": chi_y_closed(p, G).to_json(),
        "signature": _optional(orbifold_signature, p, G),
        "rank_A": _optional(rank_A, p, G),
        "mu_triple_A": _optional(mu_triple_A, p, G),
        "rank_B": _optional(rank_B, p, G),
    }


def _poly_arg(args) -> InvPoly:
    if getattr(args, "catalog", None):
        return load_poly("catalog:" + args.catalog)
    if getattr(args, "poly", None):
        return load_poly(args.poly)
    raise UsageError("a polynomial is required (positional, --poly or --catalog)")


def cmd_analyze(args) -> tuple[dict, int]:
    p = _poly_arg(args)
    groups = parse_groups(p, args.group, args.max_order)
    reports = [analyze_report(p, G) for G in groups]
    return (reports[0] if len(reports) == 1 else {"reports": reports}), EXIT_OK


def cmd_dual(args) -> tuple[dict, int]:
    p = _poly_arg(args)
    out = []
    for G in parse_groups(p, args.group, args.max_order):
        Gt = dual_group(p, G)
        out.append({"f": str(p), "group": G.to_json(), "order": G.order,
                    "dual_f": str(transpose(p)), "dual_monomials": transpose(p).to_json()["monomials"],
                    "dual_group": Gt.to_json(), "dual_order": Gt.order})
    return (out[0] if len(out) == 1 else {"pairs": out}), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    names = suites.SUITES if args.suite == "all" else (args.suite,)
    if args.catalog:
        pairs = suites.table_pairs()
    elif args.poly:
        pairs = suites.sweep_pairs([load_poly(s) for s in args.poly], args.max_order)
    else:
        pairs = suites.sweep_pairs(bound=args.max_order)
    cases = args.case or None
    results = []
    for name in names:
        if name == "lattice" and not (args.catalog or cases):
            continue
        results.append(suites.run_suite(name, pairs, cases, jobs=args.jobs))
    ok = all(r.ok for r in results)
    return {"suites": [r.to_json() for r in results], "passed": ok}, EXIT_OK if ok else EXIT_FAIL


def cmd_table(which: str):
    def run(args) -> tuple[dict, int]:
        diff = suites.table1_diff() if which == "table1" else suites.table2_diff()
        return {"table": which, "diff": diff}, EXIT_OK if not diff else EXIT_FAIL
    return run


def cmd_lattice(args) -> tuple[dict, int]:
    conv = Conventions.load()
    rep = verify_prop8_case(args.case, args.normalization, conv)
    if args.emit == "gram":
        rep = {"case": rep["case"], "stages": rep["stages"], "passed": rep["passed"]}
    else:
        rep = {k: v for k, v in rep.items() if k != "stages"}
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_ellgenus(args) -> tuple[dict, int]:
    p = _poly_arg(args)
    (G,) = parse_groups(p, args.group, args.max_order)[:1]
    z = parse_complex(args.z)
    form = args.form
    if form == "auto":
        try:
            representation(p, G)
            form = "literal"
        except NotRepresentable:
            form = "phase"
    phase = form == "phase"
    out = {"f": str(p), "group": G.to_json(), "form": form, "z": [z.real, z.imag]}
    if args.tau:
        tau = parse_complex(args.tau)
        val = orbifold_elliptic_genus(p, G, ModularPoint(tau, z), QSeriesParams(args.cutoff), phase_form=phase)
        out["tau"] = [tau.real, tau.imag]
    else:
        val = orbifold_elliptic_genus_limit(p, G, z, phase_form=phase)
        out["tau"] = "i*infinity"
    out["value"] = [val.real, val.imag]
    return out, EXIT_OK


# -- argument parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lgorb", description="Invariants of Landau-Ginzburg orbifolds.")
    ap.add_argument("--version", action="version", version=f"lgorb {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, poly=True):
        if poly:
            sp.add_argument("source", nargs="?", help="expression, JSON file, or catalog:<name>")
            sp.add_argument("--poly", help="polynomial source (same forms as the positional)")
            sp.add_argument("--catalog", help="catalog entry name, e.g. J30 or NA")
        sp.add_argument("--out", help="write the report to this file as well")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--max-order", type=_positive, default=400, help="bound on enumerated group orders")

    sp = sub.add_parser("analyze", help="full invariant report for one pair (f, G)")
    common(sp)
    sp.add_argument("--group", default="G0")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("dual", help="the dual pair (f~, G~)")
    common(sp)
    sp.add_argument("--group", default="G0")
    sp.set_defaults(fn=cmd_dual)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp, poly=False)
    sp.add_argument("--suite", choices=(*suites.SUITES, "all"), default="all")
    sp.add_argument("--catalog", action="store_true", help="use the catalog pairs (f, G_0)")
    sp.add_argument("--poly", action="append", help="sweep the admissible subgroups of this polynomial")
    sp.add_argument("--case", action="append", help="lattice case (repeatable)")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.set_defaults(fn=cmd_verify)

    for name in ("table1", "table2"):
        sp = sub.add_parser(name, help=f"recompute {name} and diff against the fixtures")
        common(sp, poly=False)
        sp.set_defaults(fn=cmd_table(name))

    sp = sub.add_parser("lattice", help="folding and basis-change pipeline for one case")
    common(sp, poly=False)
    sp.add_argument("--case", required=True)
    sp.add_argument("--emit", choices=("gram", "report"), default="report")
    sp.add_argument("--normalization", choices=("transfer", "averaged"), default="transfer")
    sp.set_defaults(fn=cmd_lattice)

    sp = sub.add_parser("ellgenus", help="orbifold elliptic genus at a point")
    common(sp)
    sp.add_argument("--group", default="G0")
    sp.add_argument("--tau", help="e.g. 0.1+2.0i; omit for the q -> 0 limit")
    sp.add_argument("--z", required=True)
    sp.add_argument("--cutoff", type=_positive, default=64)
    sp.add_argument("--form", choices=("auto", "literal", "phase"), default="auto")
    sp.set_defaults(fn=cmd_ellgenus)
    return ap


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def render_text(report: dict) -> str:
    lines = []
    for k in sorted(report):
        v = report[k]
        lines.append(f"{k}: {v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "source", None) and not getattr(args, "poly", None):
        args.poly = args.source
    try:
        report, code = args.fn(args)
    except (UsageError, LgorbError, KeyError, ValueError) as exc:
        report = {"error": type(exc).__name__, "message": str(exc.args[0] if exc.args else exc)}
        code = EXIT_USAGE
    text = json.dumps(report, sort_keys=True, indent=2) if args.format == "json" else render_text(report)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
