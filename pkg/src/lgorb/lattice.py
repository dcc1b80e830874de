"""Gram lattices, Coxeter-Dynkin diagrams, group folding and basis-change checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from ._data import load_json
from .errors import (ActionNotIsometric, BadAlpha, DuplicateEdge, NotDivisible, OrbitMismatch,
                     VerificationFailed)
from .exactmath import matmul, rank as mat_rank, rat_str, transpose
from .hodge import SignatureTriple


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class GramLattice:
    """A labelled symmetric rational Gram matrix."""

    def __init__(self, labels: Sequence[str], gram: Sequence[Sequence]):
        self.labels = list(labels)
        self.gram = tuple(tuple(_frac(x) for x in row) for row in gram)
        n = len(self.labels)
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError("Gram matrix shape does not match the labels")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix is not symmetric")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __getitem__(self, pair) -> Fraction:
        a, b = pair
        return self.gram[self.labels.index(a)][self.labels.index(b)]

    def rank(self) -> int:
        return mat_rank(self.gram) if self.gram else 0

    def signature(self) -> SignatureTriple:
        return signature(self)

    def transform(self, M: Sequence[Sequence], labels: Sequence[str] | None = None) -> "GramLattice":
        """Gram of the vectors whose coordinates are the rows of M."""
        G = matmul(matmul(M, self.gram), transpose(M))
        return GramLattice(labels or [f"v{i}" for i in range(len(M))], G)

    def restrict(self, labels: Sequence[str]) -> "GramLattice":
        ix = [self.labels.index(x) for x in labels]
        return GramLattice(labels, [[self.gram[i][j] for j in ix] for i in ix])

    def relabel(self, labels: Sequence[str]) -> "GramLattice":
        return GramLattice(labels, self.gram)

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __repr__(self):
        return f"GramLattice({self.labels}, {[[rat_str(x) for x in r] for r in self.gram]})"

    def int_rows(self) -> list[list]:
        return [[int(x) if x.denominator == 1 else rat_str(x) for x in r] for r in self.gram]

    def to_json(self) -> dict:
        return {"labels": self.labels, "gram": self.int_rows()}


def gram_diff(actual: GramLattice, expected: GramLattice) -> list[dict]:
    """Entries (upper triangle) where two same-size Gram matrices disagree."""
    out = []
    for i in range(actual.dim):
        for j in range(i, actual.dim):
            a, e = actual.gram[i][j], expected.gram[i][j]
            if a != e:
                out.append({"row": expected.labels[i], "col": expected.labels[j],
                            "actual": rat_str(a), "expected": rat_str(e)})
    return out


def signature(L: GramLattice) -> SignatureTriple:
    """Exact (mu_+, mu_0, mu_-) by symmetric congruence diagonalisation."""
    A = [list(r) for r in L.gram]
    n = len(A)
    plus = minus = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if j != i and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives a nonzero diagonal 2*A[i][j]
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        if d > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for i in active:
            if A[i][piv] != 0:
                f = A[i][piv] / d
                for k in active:
                    A[i][k] -= f * A[piv][k]
                A[i][piv] = Fraction(0)
        for i in active:
            A[piv][i] = Fraction(0)
    return SignatureTriple(plus, n - plus - minus, minus)


# -- conventions and diagrams ------------------------------------------------------

@dataclass(frozen=True)
class Conventions:
    vertex: Fraction = Fraction(-2)
    solid: Fraction = Fraction(1)
    dashed: Fraction = Fraction(-1)
    double: Fraction = Fraction(-2)
    labeled_factor: Fraction = Fraction(1)
    circled_factor: Fraction = Fraction(-2)

    @classmethod
    def load(cls) -> "Conventions":
        d = load_json("conventions.json")
        return cls(**{k: Fraction(d[k]) for k in cls.__dataclass_fields__})

    def resolve(self, token, params: Mapping[str, int] | None = None) -> Fraction:
        """Turn a symbolic decoration ("solid", "n3", "circled", ...) into a number."""
        params = params or {}
        if isinstance(token, (int, Fraction)):
            return Fraction(token)
        tok = str(token)
        if tok in ("vertex", "solid", "dashed", "double"):
            return getattr(self, tok)
        if tok == "circled":
            return self.circled_factor * params["n3"]
        if tok in params:
            return self.labeled_factor * params[tok]
        return Fraction(tok)


@dataclass
class DiagramSpec:
    vertices: list  # [(name, self_value)] ; self_value may be symbolic
    edges: list = field(default_factory=list)  # [(a, b, value)]
    params: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: dict) -> "DiagramSpec":
        verts = [(v, "vertex") if isinstance(v, str) else tuple(v) for v in data["vertices"]]
        edges = [tuple(e) if len(e) == 3 else (e[0], e[1], "solid") for e in data.get("edges", [])]
        return cls(verts, edges, dict(data.get("params", {})))


def build_diagram(D: DiagramSpec, conv: Conventions | None = None) -> GramLattice:
    conv = conv or Conventions.load()
    names = [v[0] for v in D.vertices]
    if len(set(names)) != len(names):
        raise ValueError("vertex names must be unique")
    ix = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    G = [[Fraction(0)] * n for _ in range(n)]
    for nm, val in D.vertices:
        G[ix[nm]][ix[nm]] = conv.resolve(val, D.params)
    seen = set()
    for a, b, val in D.edges:
        if a == b:
            raise ValueError(f"self-edge at {a}")
        key = frozenset((a, b))
        if key in seen:
            raise DuplicateEdge(f"edge {a}-{b} given twice")
        seen.add(key)
        v = conv.resolve(val, D.params)
        G[ix[a]][ix[b]] = G[ix[b]][ix[a]] = v
    return GramLattice(names, G)


def t_plus_spec(alphas: Sequence[int]) -> DiagramSpec:
    if not alphas or any(a < 2 for a in alphas):
        raise BadAlpha(f"every alpha must be >= 2, got {list(alphas)}")
    verts = ["d0", "d1", "d2"]
    edges = [("d0", "d1", "double"), ("d1", "d2", "solid")]
    for i, a in enumerate(alphas, start=1):
        branch = [f"d{i}_{j}" for j in range(1, a)]
        verts += branch
        edges += [(branch[j], branch[j + 1], "solid") for j in range(len(branch) - 1)]
        edges += [(branch[-1], "d0", "solid"), (branch[-1], "d1", "solid")]
    return DiagramSpec([(v, "vertex") for v in verts], edges)


def build_t_plus(alphas: Sequence[int], conv: Conventions | None = None) -> GramLattice:
    """T^+_{alpha_1..alpha_m}: branch i is d{i}_1 - ... - d{i}_{alpha_i-1}, whose last
    vertex meets both d0 and d1; d0 == d1 is the double edge and d1 - d2 the tail."""
    return build_diagram(t_plus_spec(alphas), conv)


def bar_spec(lengths: Sequence[int], n3: int) -> DiagramSpec:
    """Reduced diagram on d0, d1, d2 and three branches b1, b2, b3.

    lengths[i] is the number of vertices on branch i+1 (gamma_i - 1).  The
    third branch carries circled vertices and edges labelled n3.
    """
    verts = [("d0", "vertex"), ("d1", "vertex"), ("d2", "vertex")]
    edges = [("d0", "d1", "double"), ("d1", "d2", "solid")]
    for b, length in enumerate(lengths, start=1):
        third = b == 3
        val_v, val_e = ("circled", "n3") if third else ("vertex", "solid")
        names = [f"b{b}_{j}" for j in range(1, length + 1)]
        verts += [(nm, val_v) for nm in names]
        if names:
            edges += [("d0", names[0], val_e), ("d1", names[0], val_e)]
        edges += [(names[j], names[j + 1], val_e) for j in range(len(names) - 1)]
    return DiagramSpec(verts, edges, {"n3": n3})


def build_bar_target(gammas: Sequence[int], n3: int, conv: Conventions | None = None) -> GramLattice:
    return build_diagram(bar_spec([g - 1 for g in gammas], n3), conv)


def bar_embedding(gammas: Sequence[int], n3: int) -> tuple[list[list[int]], list[int]]:
    """Coordinates of the reduced basis inside T^+_Gamma, Gamma = (g1, g2, g3 x n3) minus ones.

    The k-th vertex of branch 3 maps to the sum of the k-th vertices of the n3
    copies.  Returns (rows, Gamma).
    """
    g1, g2, g3 = gammas
    Gamma = [g for g in [g1, g2] + [g3] * n3 if g > 1]
    T = t_plus_spec(Gamma)
    names = [v[0] for v in T.vertices]
    branch_of = []  # which T^+ branch indices realise bar branch 1, 2, 3
    idx = 1
    for b, g in enumerate([g1, g2, g3], start=1):
        copies = n3 if b == 3 else 1
        if g > 1:
            branch_of.append(list(range(idx, idx + copies)))
            idx += copies
        else:
            branch_of.append([])
    rows = []
    for d in ("d0", "d1", "d2"):
        rows.append([int(nm == d) for nm in names])
    for b, g in enumerate([g1, g2, g3]):
        for j in range(1, g):
            # bar vertex j counts from d0 outward; in T^+ the vertex next to d0 is the last
            targets = {f"d{i}_{g - j}" for i in branch_of[b]}
            rows.append([int(nm in targets) for nm in names])
    return rows, Gamma


# -- Gabrielov join and folding ----------------------------------------------------

def gabrielov_join(p_len: int, q_len: int) -> GramLattice:
    """Extended tensor basis d{i}_{j} (1 <= i <= p, 1 <= j <= q) with cyclic indices."""
    labels = [f"d{i}_{j}" for i in range(1, p_len + 1) for j in range(1, q_len + 1)]
    idx = [(i, j) for i in range(p_len) for j in range(q_len)]
    neg_pairs = {(1, 1), (p_len - 1, q_len - 1)}
    pos_pairs = {(1, 0), (p_len - 1, 0), (0, 1), (0, q_len - 1)}

    def val(a, b):
        di, dj = (b[0] - a[0]) % p_len, (b[1] - a[1]) % q_len
        if (di, dj) == (0, 0):
            return -2
        if (di, dj) in pos_pairs:
            return 1
        if (di, dj) in neg_pairs:
            return -1
        return 0

    return GramLattice(labels, [[val(a, b) for b in idx] for a in idx])


Vector = dict  # label -> integer coefficient


@dataclass
class FoldingSpec:
    source: GramLattice
    generators: list  # each: {label: {label: coeff}} image of every basis vector
    classes: list  # each: {"name": str, "rep": Vector, "alternates": [Vector, ...]}

    def vec(self, v: Mapping[str, int]) -> list[int]:
        out = [0] * self.source.dim
        for lab, c in v.items():
            out[self.source.labels.index(lab)] += int(c)
        return out

    def matrix(self, gen: Mapping) -> tuple[tuple[int, ...], ...]:
        """Column k is the image of basis vector k (identity where unspecified)."""
        n = self.source.dim
        cols = []
        for k, lab in enumerate(self.source.labels):
            cols.append(self.vec(gen[lab]) if lab in gen else [int(i == k) for i in range(n)])
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def group(self) -> list[tuple[tuple[int, ...], ...]]:
        n = self.source.dim
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = [self.matrix(g) for g in self.generators]
        elems = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    prod = tuple(map(tuple, matmul(g, h)))
                    if prod not in elems:
                        elems.add(prod)
                        nxt.append(prod)
            frontier = nxt
            if len(elems) > 10000:
                raise ActionNotIsometric("action does not generate a finite group")
        return sorted(elems)


def _bilinear(G, a, b) -> Fraction:
    return sum((a[i] * G[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j]),
               Fraction(0))


def _apply(M, v):
    return [sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M))]


def fold(F: FoldingSpec, normalization: str = "transfer", check: bool = True) -> GramLattice:
    """Gram of the pushed-forward classes: <a, b> = sum over h of <a, h b>.

    With check=False the isometry and orbit-consistency tests are skipped, which
    is only useful for producing diagnostics on inconsistent data.
    """
    if normalization not in ("transfer", "averaged"):
        raise ValueError("normalization must be 'transfer' or 'averaged'")
    G = F.source.gram
    group = F.group()
    for h in group if check else ():
        if tuple(map(tuple, matmul(matmul(transpose(h), G), h))) != G:
            raise ActionNotIsometric("group action does not preserve the source Gram matrix")
    scale = Fraction(1, len(group)) if normalization == "averaged" else Fraction(1)

    def pair(a, b):
        return scale * sum((_bilinear(G, a, _apply(h, b)) for h in group), Fraction(0))

    reps = [F.vec(c["rep"]) for c in F.classes]
    gram = [[pair(a, b) for b in reps] for a in reps]
    for k, c in enumerate(F.classes if check else ()):
        for alt in c.get("alternates", []):
            v = F.vec(alt)
            row = [pair(v, b) if j != k else pair(v, v) for j, b in enumerate(reps)]
            if row != gram[k]:
                raise OrbitMismatch(f"class {c['name']} has inconsistent representatives")
    return GramLattice([c["name"] for c in F.classes], gram)


def gabrielov_reduce(gamma_prime: Sequence[int], group_order: int,
                     stabilizer_orders: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """gamma_i = gamma'_i / |G/K_i|; Gamma = (g1, g2, g3 repeated n3 times) minus ones."""
    gam = []
    for gp, k in zip(gamma_prime, stabilizer_orders):
        index = group_order // k
        if gp % index:
            raise NotDivisible(f"|G/K| = {index} does not divide {gp}")
        gam.append(gp // index)
    n3 = stabilizer_orders[2]
    Gamma = [g for g in gam[:2] + [gam[2]] * n3 if g != 1]
    return tuple(gam), Gamma


# -- the reduced-basis verification ----------------------------------------------------

def _match_up_to_relabelling(actual: GramLattice, target: GramLattice):
    """Permutation of actual's basis realising target, or None (small sizes only)."""
    n = actual.dim
    if n != target.dim or n > 9:
        return None
    A, T = actual.gram, target.gram
    for perm in permutations(range(n)):
        if all(A[perm[i]][perm[i]] == T[i][i] for i in range(n)) and all(
                A[perm[i]][perm[j]] == T[i][j] for i in range(n) for j in range(i + 1, n)):
            return perm
    return None


def _add_negative(s: SignatureTriple, k: int) -> tuple[int, int, int]:
    return (s.mu_plus, s.mu_zero, s.mu_minus + k)


def verify_prop8_case(case: str, normalization: str = "transfer", conv: Conventions | None = None,
                      raise_on_failure: bool = False) -> dict:
    """Run the folding / basis-change pipeline for one catalog case and collect checks.

    The reduced basis spans a lattice of rank 3 + sum(gamma_i - 1); the lift to
    T^+_Gamma adds (n3 - 1)(gamma_3 - 1) negative definite directions, so the
    rank and signature comparisons with the Hodge-side data include that offset.
    """
    from . import catalog
    from .hodge import mu_triple_A, rank_A
    from .symmetry import dual_group, g0_group

    conv = conv or Conventions.load()
    entry = catalog.get_entry(case)
    fig = catalog.load_figures()["cases"].get(entry.key)
    ft = entry.f_dual
    Gt = dual_group(entry.f, g0_group(entry.f))
    rA, muA = rank_A(ft, Gt), mu_triple_A(ft, Gt)
    g1, g2, g3 = entry.gammas
    n3 = entry.n3
    extra = (n3 - 1) * (g3 - 1)
    checks: dict[str, dict] = {}
    stages: dict[str, dict] = {}

    def check(name, ok, **info):
        checks[name] = {"passed": None if ok is None else bool(ok), **info}

    tplus = build_t_plus(entry.alphas, conv)
    stages["t_plus"] = tplus.to_json()
    check("t_plus_rank", tplus.rank() == rA, actual=tplus.rank(), expected=rA)
    check("t_plus_signature", tplus.signature() == muA,
          actual=list(tplus.signature().as_tuple()), expected=list(muA.as_tuple()))

    lengths = fig["branch_lengths"] if fig else [g1 - 1, g2 - 1, g3 - 1]
    target = build_diagram(bar_spec(lengths, n3), conv)
    stages["target"] = target.to_json()
    order = [1, 2] if lengths[:2] == [g1 - 1, g2 - 1] else [2, 1]
    emb_gam = [(g1, g2)[order[0] - 1], (g1, g2)[order[1] - 1], g3]
    rows, Gamma = bar_embedding(emb_gam, n3)
    lifted = build_t_plus(Gamma, conv).transform(rows, target.labels)
    check("target_embeds_in_t_plus", lifted == target, diff=gram_diff(lifted, target))
    check("gamma_matches_alpha", sorted(Gamma) == sorted(entry.alphas),
          actual=sorted(Gamma), expected=sorted(entry.alphas))

    if fig is None:
        check("source_diagram", None, status="unavailable",
              note="no source diagram or change of basis recorded for this case")
    else:
        spec = catalog.folding_spec(entry.key, conv)
        stages["source"] = spec.source.to_json()
        if "milnor_polynomial" in fig:
            from .hodge import steenbrink_triple
            from .invpoly import InvPoly
            expect = steenbrink_triple(InvPoly.from_rows(fig["milnor_polynomial"]))
            got = spec.source.signature()
            check("source_signature", got == expect, actual=list(got.as_tuple()),
                  expected=list(expect.as_tuple()))
        try:
            folded = fold(spec, normalization)
            check("fold", True)
        except (ActionNotIsometric, OrbitMismatch) as exc:
            check("fold", False, error=type(exc).__name__, message=str(exc))
            try:
                folded = fold(spec, normalization, check=False)
                stages["folded_unchecked"] = True
            except ValueError as inner:
                checks["fold"]["diagnostic"] = f"unchecked transfer form unusable: {inner}"
                folded = None
        if folded is not None:
            stages["folded"] = folded.to_json()
            M = fig["change_of_basis"]
            reduced = folded.transform(M, target.labels if fig.get("label_order") == "fixed" else None)
            stages["transformed"] = reduced.to_json()
            rk, sg = reduced.rank(), reduced.signature()
            check("rank", rk + extra == rA, actual=rk, offset=extra, expected=rA)
            check("signature", _add_negative(sg, extra) == muA.as_tuple(),
                  actual=list(sg.as_tuple()), offset=extra, expected=list(muA.as_tuple()))
            if fig.get("label_order") == "fixed":
                ok = reduced.gram == target.gram
                check("gram_match", ok, diff=[] if ok else gram_diff(reduced, target))
            else:
                perm = _match_up_to_relabelling(reduced, target)
                ok = perm is not None
                check("gram_match", ok, permutation=list(perm) if ok else None,
                      diff=[] if ok or reduced.dim != target.dim else
                      gram_diff(reduced.relabel(target.labels), target))
    report = {"case": entry.name, "normalization": normalization, "rank_A": rA,
              "mu_triple_A": list(muA.as_tuple()), "gammas": list(entry.gammas), "n3": n3,
              "checks": checks, "stages": stages,
              "passed": all(c["passed"] is not False for c in checks.values()),
              "complete": all(c["passed"] is not None for c in checks.values())}
    if raise_on_failure and not report["passed"]:
        failed = {k: v for k, v in checks.items() if v["passed"] is False}
        raise VerificationFailed(f"case {entry.name} failed: {sorted(failed)}", diff=failed)
    return report
