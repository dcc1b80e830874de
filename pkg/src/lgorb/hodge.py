"""Orbifold Hodge numbers, exponents, chi_y-genus, signatures and lattice ranks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm

from .errors import NOddRequired, NonIntegral, NonIntegralInvariant, UnsupportedGroup
from .exactmath import Cyclo, PuiseuxPoly, cyclo_root, puiseux_exact_div, rat_str
from .invpoly import InvPoly, transpose
from .symmetry import (DiagGroup, GroupElement, age, coordinate_stabilizers, dual_group,
                       fixed_data, g0_group, trivial_group)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SignatureTriple:
    mu_plus: int
    mu_zero: int
    mu_minus: int

    @property
    def rank(self) -> int:
        return self.mu_plus + self.mu_zero + self.mu_minus

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.mu_plus, self.mu_zero, self.mu_minus)

    def to_json(self) -> dict:
        return {"mu_plus": self.mu_plus, "mu_zero": self.mu_zero, "mu_minus": self.mu_minus}


class BigradedSpectrum:
    """Multiset of bidegrees (p, q) with positive integer multiplicities."""

    def __init__(self, n: int, entries):
        self.n = n
        c = Counter()
        for p, q, m in entries:
            c[(Fraction(p), Fraction(q))] += m
        self.counts = {k: v for k, v in c.items() if v}
        if any(v < 0 for v in self.counts.values()):
            raise NonIntegralInvariant("negative Hodge multiplicity")

    def entries(self) -> list[tuple[Fraction, Fraction, int]]:
        return [(p, q, m) for (p, q), m in sorted(self.counts.items())]

    def h(self, p, q) -> int:
        return self.counts.get((Fraction(p), Fraction(q)), 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def is_serre_symmetric(self) -> bool:
        n = self.n
        return all(self.counts.get((n - p, n - q)) == m for (p, q), m in self.counts.items())

    def __eq__(self, other):
        return isinstance(other, BigradedSpectrum) and (self.n, self.counts) == (other.n, other.counts)

    def __repr__(self):
        return f"BigradedSpectrum(n={self.n}, {self.entries()})"

    def to_json(self) -> list:
        return [[rat_str(p), rat_str(q), m] for p, q, m in self.entries()]


# -- sector series ----------------------------------------------------------------

def _phase_key(p: InvPoly, fix, phases) -> tuple:
    w = p.w
    return tuple((w[i], phases[i]) for i in fix)


def _root(beta: Fraction) -> Cyclo:
    return cyclo_root(beta.numerator, beta.denominator)


@lru_cache(maxsize=4096)
def _trace_series(key: tuple) -> PuiseuxPoly:
    # key: ((w_i, beta_i), ...) over the fixed coordinates
    if not key:
        return PuiseuxPoly.constant(1)
    num = PuiseuxPoly.constant(1)
    den = PuiseuxPoly.constant(1)
    for w, beta in key:
        e = _root(beta)
        num = num * PuiseuxPoly({w: e, 1: -1})
        den = den * PuiseuxPoly({0: 1, w: -e})
    return puiseux_exact_div(num, den)


def sector_trace_series(p: InvPoly, g: GroupElement, b: GroupElement) -> PuiseuxPoly:
    """prod over Fix g of (e[b_i] t^{w_i} - t)/(1 - e[b_i] t^{w_i}), expanded exactly."""
    fix, _ = fixed_data(g)
    return _trace_series(_phase_key(p, fix, b.phases))


def _averaged(series_by_key: Counter, order: int, fn) -> dict[Fraction, Fraction]:
    acc = PuiseuxPoly()
    for key, count in sorted(series_by_key.items()):
        acc = acc + fn(key) * count
    out = {}
    for e, c in acc.items():
        if not c.is_rational():
            raise NonIntegralInvariant(f"irrational averaged coefficient at exponent {e}")
        out[e] = c.to_rational() / order
    return out


def sector_invariant_multiset(p: InvPoly, g: GroupElement, G: DiagGroup) -> list[tuple[Fraction, int]]:
    """G-invariant graded dimensions of the g-sector, as sorted (l, multiplicity) pairs."""
    fix, n_g = fixed_data(g)
    if n_g == 0:
        return [(Fraction(0), 1)]
    keys = Counter(_phase_key(p, fix, b.phases) for b in G)
    avg = _averaged(keys, G.order, _trace_series)
    out = []
    for l, m in sorted(avg.items()):
        if m.denominator != 1 or m < 0:
            raise NonIntegralInvariant(f"invariant multiplicity {m} at l = {l}")
        if m:
            out.append((l, int(m)))
    return out


def hodge_numbers(p: InvPoly, G: DiagGroup) -> BigradedSpectrum:
    entries = []
    for g in G:
        a = age(g)
        _, n_g = fixed_data(g)
        for l, m in sector_invariant_multiset(p, g, G):
            entries.append((n_g - l + a, l + a, m))
    return BigradedSpectrum(p.n, entries)


def exponents(p: InvPoly, G: DiagGroup) -> list[Fraction]:
    out = []
    for _, q, m in hodge_numbers(p, G).entries():
        out.extend([q] * m)
    return sorted(out)


# -- chi_y ----------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _closed_factor(key: tuple) -> PuiseuxPoly:
    # prod (y^{1/2} - e y^{w - 1/2}) / (1 - e y^w), divided as one rational function
    num = PuiseuxPoly.constant(1)
    den = PuiseuxPoly.constant(1)
    for w, beta in key:
        e = _root(beta)
        num = num * PuiseuxPoly({HALF: 1, w - HALF: -e})
        den = den * PuiseuxPoly({0: 1, w: -e})
    return puiseux_exact_div(num, den)


def _integral_poly(terms: dict[Fraction, Fraction]) -> PuiseuxPoly:
    for e, c in terms.items():
        if c.denominator != 1:
            raise NonIntegralInvariant(f"non-integral chi_y coefficient {c} at y^{e}")
    return PuiseuxPoly({e: int(c) for e, c in terms.items()})


def chi_y_closed(p: InvPoly, G: DiagGroup) -> PuiseuxPoly:
    """Direct evaluation of the double-sum closed formula for chi(f, G)(y)."""
    n = p.n
    total = Counter()
    for a in G:
        fix, n_a = fixed_data(a)
        keys = Counter(_phase_key(p, fix, b.phases) for b in G)
        avg = _averaged(keys, G.order, _closed_factor)
        shift = age(a) - Fraction(n - n_a, 2)
        for e, c in avg.items():
            total[e + shift] += (-1) ** n * c
    return _integral_poly({e: Fraction(c) for e, c in total.items() if c})


def chi_y_from_hodge(p: InvPoly, G: DiagGroup) -> PuiseuxPoly:
    """E(f, G)(1, y): sum of s(g) y^{q - n/2} over the sectors, s(g) = (-1)^{n - n_g}."""
    n = p.n
    total = Counter()
    for g in G:
        a = age(g)
        _, n_g = fixed_data(g)
        s = (-1) ** (n - n_g)
        for l, m in sector_invariant_multiset(p, g, G):
            total[l + a - Fraction(n, 2)] += s * m
    return _integral_poly({e: Fraction(c) for e, c in total.items() if c})


# -- signatures -------------------------------------------------------------------------

def _h(x: Fraction) -> int:
    if x.denominator == 1:
        return 0
    return -1 if floor(x) % 2 else 1


def steenbrink_triple(p: InvPoly) -> SignatureTriple:
    if p.n % 2 == 0:
        raise NOddRequired("the Steenbrink triple is defined here for odd n")
    plus = zero = minus = 0
    for q in exponents(p, trivial_group(p)):
        if q.denominator == 1:
            zero += 1
        elif floor(q) % 2 == 0:
            plus += 1
        else:
            minus += 1
    return SignatureTriple(plus, zero, minus)


def signature_sign_factor(p: InvPoly, G: DiagGroup) -> int:
    """+1 when G is in SL (also when both branches apply), -1 when G contains G_0."""
    if G.is_sl:
        return 1
    if g0_group(p) <= G:
        return -1
    raise UnsupportedGroup("G must lie in SL or contain G_0")


def orbifold_signature(p: InvPoly, G: DiagGroup) -> int:
    if p.n % 2 == 0:
        raise NOddRequired("orbifold signature needs odd n")
    eps = signature_sign_factor(p, G)
    half_n = Fraction(p.n, 2)
    return eps * sum(int(c) * _h(e + half_n) for e, c in chi_y_from_hodge(p, G).rational_items())


def _require_sl3(p: InvPoly, G: DiagGroup) -> None:
    if p.n != 3 or not G.is_sl:
        raise UnsupportedGroup("needs n = 3 and G inside SL(3) and G_f")


def rank_A(p: InvPoly, G: DiagGroup) -> int:
    _require_sl3(p, G)
    return sum(m for pp, q, m in hodge_numbers(p, G).entries() if pp + q == 3)


def mu_triple_A(p: InvPoly, G: DiagGroup) -> SignatureTriple:
    _require_sl3(p, G)
    plus = zero = minus = 0
    for pp, q, m in hodge_numbers(p, G).entries():
        if pp + q != 3:
            continue
        if q < 1:
            plus += 2 * m
        elif q == 1:
            zero += 2 * m
        elif q < 2:
            minus += m
    return SignatureTriple(plus, zero, minus)


def rank_A_closed(p: InvPoly, G: DiagGroup) -> int:
    _require_sl3(p, G)
    w = p.w
    order = G.order
    ns = [k for _, k in coordinate_stabilizers(G)]
    val = Fraction(1, order) * (1 / (w[0] * w[1] * w[2]) - 1 / (w[1] * w[2])
                                - 1 / (w[0] * w[2]) - 1 / (w[0] * w[1]))
    val += 2 + sum((1 / w[i] * Fraction(ns[i], order) - 1) * ns[i] for i in range(3))
    if val.denominator != 1:
        raise NonIntegral(f"rank formula evaluates to {val}")
    return int(val)


def rank_B(p: InvPoly, G: DiagGroup) -> int:
    if not g0_group(p) <= G:
        raise UnsupportedGroup("rank_B needs G_0 inside G")
    return rank_A(transpose(p), dual_group(p, G))
