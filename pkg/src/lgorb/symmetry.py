"""Diagonal symmetry groups of invertible polynomials and their duals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import NotSubgroup, TooLarge
from .exactmath import diagonal, frac_part, rat_str, smith_normal_form
from .invpoly import InvPoly, transpose


@dataclass(frozen=True, order=True)
class GroupElement:
    """Diagonal symmetry acting on x_i by e[phases[i]], phases in [0, 1)."""

    phases: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(frac_part(Fraction(x)) for x in self.phases))

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls((Fraction(0),) * n)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(a + b for a, b in zip(self.phases, other.phases)))

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(tuple(k * a for a in self.phases))

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.phases))

    @property
    def n(self) -> int:
        return len(self.phases)

    @property
    def order(self) -> int:
        return lcm(1, *(a.denominator for a in self.phases))

    def is_identity(self) -> bool:
        return not any(self.phases)

    def to_json(self) -> list[str]:
        return [rat_str(a) for a in self.phases]

    def __repr__(self):
        return "g(" + ",".join(rat_str(a) for a in self.phases) + ")"


def age(g: GroupElement) -> Fraction:
    return sum(g.phases, Fraction(0))


def fixed_data(g: GroupElement) -> tuple[tuple[int, ...], int]:
    fix = tuple(i for i, a in enumerate(g.phases) if a == 0)
    return fix, len(fix)


def is_sl(g: GroupElement) -> bool:
    return age(g).denominator == 1


def _closure(gens: Iterable[GroupElement], n: int) -> frozenset[GroupElement]:
    elems = {GroupElement.identity(n)}
    for g in gens:
        if g in elems:
            continue
        new = set(elems)
        power = g
        while power not in elems:
            new.update(h * power for h in elems)
            power = power * g
        elems = new
    return frozenset(elems)


class DiagGroup:
    """A finite subgroup of G_f, stored by explicit enumeration."""

    def __init__(self, ambient: InvPoly, elements: Iterable[GroupElement],
                 generators: Sequence[GroupElement] | None = None):
        self.ambient = ambient
        self._set = frozenset(elements)
        self.elements = tuple(sorted(self._set))
        self.generators = tuple(generators) if generators is not None else _min_generators(self.elements)

    @classmethod
    def generated(cls, ambient: InvPoly, gens: Iterable[GroupElement]) -> "DiagGroup":
        gens = [g if isinstance(g, GroupElement) else GroupElement(tuple(g)) for g in gens]
        return cls(ambient, _closure(gens, ambient.n), [g for g in gens if not g.is_identity()])

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    def __eq__(self, other):
        return isinstance(other, DiagGroup) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __le__(self, other: "DiagGroup") -> bool:
        return self._set <= other._set

    def __repr__(self):
        return f"DiagGroup(order={self.order}, gens={list(self.generators)})"

    @cached_property
    def is_sl(self) -> bool:
        return all(is_sl(g) for g in self.elements)

    def to_json(self) -> dict:
        return {"order": self.order,
                "generators": [g.to_json() for g in self.generators],
                "elements": [g.to_json() for g in self.elements]}


def _min_generators(elements: Sequence[GroupElement]) -> tuple[GroupElement, ...]:
    if not elements:
        return ()
    n = elements[0].n
    target = len(elements)
    gens: list[GroupElement] = []
    span = _closure([], n)
    for g in sorted(elements, key=lambda e: (-e.order, e)):
        if len(span) == target:
            break
        if g not in span:
            gens.append(g)
            span = _closure(gens, n)
    return tuple(gens)


def full_group(p: InvPoly) -> DiagGroup:
    """G_f, generated by the columns of E^{-1} mod 1."""
    Einv = p.E_inv
    gens = [GroupElement(tuple(Einv[i][j] for i in range(p.n))) for j in range(p.n)]
    G = DiagGroup.generated(p, gens)
    assert G.order == abs(p.det)
    return G


def grading_element(p: InvPoly) -> GroupElement:
    return GroupElement(p.w)


def trivial_group(p: InvPoly) -> DiagGroup:
    return DiagGroup(p, [GroupElement.identity(p.n)], [])


def g0_group(p: InvPoly) -> DiagGroup:
    return DiagGroup.generated(p, [grading_element(p)])


def group_invariants(p: InvPoly) -> list[int]:
    """Invariant factors (> 1) of G_f = Z^n / E Z^n."""
    return [d for d in diagonal(smith_normal_form(p.E)[1]) if d > 1]


def in_full_group(p: InvPoly, g: GroupElement) -> bool:
    return all(sum(e * a for e, a in zip(row, g.phases)).denominator == 1 for row in p.E)


def subgroups(G: DiagGroup, bound: int = 400) -> list[DiagGroup]:
    """Every subgroup of G, via joins of cyclic subgroups, in canonical order."""
    if G.order > bound:
        raise TooLarge(f"|G| = {G.order} exceeds the bound {bound}")
    n = G.ambient.n
    cyclic = {}
    for g in G.elements:
        c = _closure([g], n)
        cyclic.setdefault(c, g)
    found = {s: (g,) for s, g in cyclic.items()}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c, g in cyclic.items():
                if c <= s:
                    continue
                joined = frozenset(a * b for a in s for b in c)
                if joined not in found:
                    found[joined] = found[s] + (g,)
                    nxt.append(joined)
        frontier = nxt
    out = [DiagGroup(G.ambient, s, [g for g in gens if not g.is_identity()])
           for s, gens in found.items()]
    return sorted(out, key=lambda H: (H.order, H.elements))


def pairing(p: InvPoly, v: GroupElement, u: GroupElement) -> Fraction:
    """<v, u> = (E v)^T u mod 1 for v in G_f and u in G_{f~}."""
    Ev = [sum(e * a for e, a in zip(row, v.phases)) for row in p.E]
    return frac_part(sum(x * b for x, b in zip(Ev, u.phases)))


def dual_group(p: InvPoly, G: DiagGroup) -> DiagGroup:
    """The annihilator of G inside G_{f~}; it lives on transpose(p)."""
    Gf = full_group(p)
    if not G <= Gf:
        raise NotSubgroup("G is not contained in G_f")
    pt = transpose(p)
    gens = G.generators or ()
    elems = [u for u in full_group(pt) if all(pairing(p, v, u) == 0 for v in gens)]
    return DiagGroup(pt, elems)


def j_count(G: DiagGroup) -> int:
    return sum(1 for g in G if age(g) == 1 and fixed_data(g)[1] == 0)


def coordinate_stabilizers(G: DiagGroup) -> list[tuple[DiagGroup, int]]:
    out = []
    for i in range(G.ambient.n):
        K = DiagGroup(G.ambient, [g for g in G if g.phases[i] == 0])
        out.append((K, K.order))
    return out


def sl_subgroups(p: InvPoly, bound: int = 400) -> list[DiagGroup]:
    return [H for H in subgroups(full_group(p), bound) if H.is_sl]


def supergroups_of_g0(p: InvPoly, bound: int = 400) -> list[DiagGroup]:
    G0 = g0_group(p)
    return [H for H in subgroups(full_group(p), bound) if G0 <= H]


def select_group(p: InvPoly, selector: str) -> DiagGroup:
    """Named selectors used by the CLI: trivial, G0, Gf, SL (largest SL subgroup)."""
    key = selector.strip()
    if key == "trivial":
        return trivial_group(p)
    if key == "G0":
        return g0_group(p)
    if key == "Gf":
        return full_group(p)
    if key == "SL":
        Gf = full_group(p)
        return DiagGroup(p, [g for g in Gf if is_sl(g)])
    raise ValueError(f"unknown group selector {selector!r}")
