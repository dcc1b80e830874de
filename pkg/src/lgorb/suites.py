"""Verification sweeps shared by the CLI and the test-suite."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import catalog
from .errors import LgorbError
from .hodge import (chi_y_closed, chi_y_from_hodge, mu_triple_A, orbifold_signature, rank_A,
                    rank_A_closed, rank_B)
from .invpoly import InvPoly, equivalent_up_to_permutation, transpose
from .lattice import gabrielov_reduce, verify_prop8_case
from .symmetry import (DiagGroup, coordinate_stabilizers, dual_group, full_group, g0_group,
                       j_count, subgroups)

SWEEP_POLYS = ("x^3+y^3+z^3", "x^5+y^5+z^2", "x^4+y^4+y*z^2")
SUITES = ("chi-duality", "signature", "rank", "lattice")


@dataclass
class SuiteResult:
    suite: str
    passed: int = 0
    failed: list = field(default_factory=list)
    incomplete: list = field(default_factory=list)

    def record(self, ok: bool, case: dict):
        if case.get("complete") is False:
            self.incomplete.append(case["case"])
        if ok:
            self.passed += 1
        else:
            self.failed.append(case)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "failed": len(self.failed),
                "failures": self.failed,
                "incomplete": self.incomplete}

    @property
    def ok(self) -> bool:
        return not self.failed


def admissible_subgroups(p: InvPoly, bound: int = 400) -> list[DiagGroup]:
    """Subgroups with G in SL or G_0 in G, in canonical order."""
    G0 = g0_group(p)
    return [H for H in subgroups(full_group(p), bound) if H.is_sl or G0 <= H]


def table_pairs() -> list[tuple[str, InvPoly, DiagGroup]]:
    return [(e.name, e.f, g0_group(e.f)) for e in catalog.primary_entries()]


def sweep_pairs(polys=SWEEP_POLYS, bound: int = 400) -> list[tuple[str, InvPoly, DiagGroup]]:
    out = []
    for s in polys:
        p = InvPoly.parse(s) if isinstance(s, str) else s
        for k, H in enumerate(admissible_subgroups(p, bound)):
            out.append((f"{p}#{k}", p, H))
    return out


def _describe(label, p, G) -> dict:
    return {"case": label, "f": str(p), "group": G.to_json()["generators"], "order": G.order}


def check_chi_duality(label, p: InvPoly, G: DiagGroup) -> tuple[bool, dict]:
    Gt = dual_group(p, G)
    pt = transpose(p)
    a, b = chi_y_closed(p, G), chi_y_closed(pt, Gt)
    routes = a == chi_y_from_hodge(p, G) and b == chi_y_from_hodge(pt, Gt)
    sign = (-1) ** p.n
    ok = routes and a == b * sign
    return ok, {**_describe(label, p, G), "chi": a.to_json(), "chi_dual": b.to_json(),
                "routes_agree": routes}


def check_signature(label, p: InvPoly, G: DiagGroup) -> tuple[bool, dict] | None:
    # a group containing G_0 has an SL dual, so the statement is read from that side
    if p.n % 2 == 0 or not (G.is_sl or g0_group(p) <= G):
        return None
    Gt = dual_group(p, G)
    s, t = orbifold_signature(p, G), orbifold_signature(transpose(p), Gt)
    return s == t, {**_describe(label, p, G), "sign": s, "sign_dual": t}


def check_rank(label, p: InvPoly, G: DiagGroup) -> tuple[bool, dict]:
    info = _describe(label, p, G)
    ok = True
    if G.is_sl:
        r1, r2 = rank_A(p, G), rank_A_closed(p, G)
        mu = mu_triple_A(p, G)
        ok &= r1 == r2 and mu.rank == r1 and mu.mu_plus - mu.mu_minus == orbifold_signature(p, G)
        info.update(rank_A=r1, rank_A_closed=r2, mu_triple_A=list(mu.as_tuple()))
    if g0_group(p) <= G:
        pt, Gt = transpose(p), dual_group(p, G)
        r1, r2, r3 = rank_A(pt, Gt), rank_A_closed(pt, Gt), rank_B(p, G)
        ok &= r1 == r2 == r3
        n = [k for _, k in coordinate_stabilizers(Gt)]
        ok &= Gt.order == 1 + 2 * j_count(Gt) + sum(k - 1 for k in n)
        info.update(rank_A_dual=r1, rank_A_closed_dual=r2, rank_B=r3)
    return ok, info


_CHECKS = {"chi-duality": check_chi_duality, "signature": check_signature, "rank": check_rank}


def _run_one(args):
    name, label, p, G = args
    try:
        return _CHECKS[name](label, p, G)
    except LgorbError as exc:
        return False, {**_describe(label, p, G), "error": type(exc).__name__, "message": str(exc)}


def _lattice_one(key: str):
    try:
        rep = verify_prop8_case(key)
    except LgorbError as exc:
        return False, {"case": key, "error": type(exc).__name__, "message": str(exc)}
    failed = {k: v for k, v in rep["checks"].items() if v["passed"] is False}
    return rep["passed"], {"case": rep["case"], "complete": rep["complete"], "failed_checks": failed}


def run_suite(name: str, pairs=(), cases=None, jobs: int = 1) -> SuiteResult:
    """Run one suite; results keep the input order whatever the worker count."""
    if name == "lattice":
        fn, work = _lattice_one, list(cases or [e.key for e in catalog.primary_entries()])
    elif name in _CHECKS:
        fn, work = _run_one, [(name, *t) for t in pairs]
    else:
        raise ValueError(f"unknown suite {name!r}")
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            outcomes = list(ex.map(fn, work))
    else:
        outcomes = [fn(w) for w in work]
    res = SuiteResult(name)
    for out in outcomes:
        if out is not None:
            res.record(*out)
    return res


# -- tables ------------------------------------------------------------------------

def table1_diff() -> list[dict]:
    diffs = []
    for e in catalog.primary_entries():
        ra, rd = e.f.weights.reduced
        got_w = sorted(ra) + [rd]
        if got_w != sorted(e.reduced_weights[:3]) + [e.reduced_weights[3]]:
            diffs.append({"row": e.name, "column": "weights", "computed": got_w,
                          "fixture": list(e.reduced_weights)})
        if not equivalent_up_to_permutation(transpose(e.f), e.f_dual):
            diffs.append({"row": e.name, "column": "f_dual", "computed": str(transpose(e.f)),
                          "fixture": str(e.f_dual)})
        q = full_group(e.f).order // g0_group(e.f).order
        if q != e.quotient_order:
            diffs.append({"row": e.name, "column": "G_f/G_0", "computed": q, "fixture": e.quotient_order})
        if e.f.weights.epsilon != -1:
            diffs.append({"row": e.name, "column": "epsilon", "computed": str(e.f.weights.epsilon),
                          "fixture": "-1"})
    return diffs


def table2_row(e) -> tuple[tuple[int, ...], list[int], int]:
    Gt = dual_group(e.f, g0_group(e.f))
    ns = [k for _, k in coordinate_stabilizers(Gt)]
    gam, Gamma = gabrielov_reduce(e.gamma_prime, Gt.order, ns)
    return gam, Gamma, ns[2]


def table2_diff() -> list[dict]:
    diffs = []
    for e in catalog.primary_entries():
        gam, Gamma, n3 = table2_row(e)
        if list(gam) != list(e.gammas):
            diffs.append({"row": e.name, "column": "gammas", "computed": list(gam), "fixture": list(e.gammas)})
        if n3 != e.n3:
            diffs.append({"row": e.name, "column": "n3", "computed": n3, "fixture": e.n3})
        if sorted(Gamma) != sorted(e.Gamma):
            diffs.append({"row": e.name, "column": "Gamma", "computed": Gamma, "fixture": list(e.Gamma)})
    return diffs
