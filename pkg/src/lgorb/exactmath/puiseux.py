"""Sparse Puiseux polynomials with cyclotomic coefficients."""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from ..errors import NonExactDivision
from .cyclotomic import Cyclo
from .rational import rat_str


def _as_cyclo(c) -> Cyclo:
    return c if isinstance(c, Cyclo) else Cyclo.rational(c)


class PuiseuxPoly:
    """Finite sum of c_e * t^e with e rational and c in a cyclotomic field.

    Instances are treated as immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Cyclo] = {}
        for e, c in items:
            e = Fraction(e)
            c = _as_cyclo(c)
            acc[e] = acc[e] + c if e in acc else c
        self._terms = {e: c for e, c in acc.items() if not c.is_zero()}

    @classmethod
    def _raw(cls, terms: dict) -> "PuiseuxPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "PuiseuxPoly":
        return cls({Fraction(exponent): coeff})

    @classmethod
    def constant(cls, c) -> "PuiseuxPoly":
        return cls({Fraction(0): c})

    # -- access ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def exponents(self) -> list[Fraction]:
        return sorted(self._terms)

    def coeff(self, e) -> Cyclo:
        return self._terms.get(Fraction(e), Cyclo.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def min_exponent(self) -> Fraction:
        return min(self._terms)

    def max_exponent(self) -> Fraction:
        return max(self._terms)

    def has_rational_coeffs(self) -> bool:
        return all(c.is_rational() for c in self._terms.values())

    def rational_items(self) -> list[tuple[Fraction, Fraction]]:
        """Sorted (exponent, coefficient) pairs; every coefficient must be rational."""
        return [(e, c.to_rational()) for e, c in self.items()]

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, PuiseuxPoly):
            other = PuiseuxPoly.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return PuiseuxPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PuiseuxPoly):
            other = PuiseuxPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PuiseuxPoly):
            c = _as_cyclo(other)
            if c.is_zero():
                return PuiseuxPoly()
            return PuiseuxPoly._raw({e: v * c for e, v in self._terms.items()})
        out: dict[Fraction, Cyclo] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return PuiseuxPoly._raw({e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def shift(self, delta) -> "PuiseuxPoly":
        """Multiply by t^delta."""
        delta = Fraction(delta)
        return PuiseuxPoly._raw({e + delta: c for e, c in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, PuiseuxPoly):
            return puiseux_exact_div(self, other)
        return self * (1 / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, PuiseuxPoly):
            try:
                other = PuiseuxPoly.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms.keys() == other._terms.keys() and all(
            self._terms[e] == other._terms[e] for e in self._terms)

    def __hash__(self):
        return hash(frozenset((e, hash(c)) for e, c in self._terms.items()))

    # -- evaluation / io ----------------------------------------------------
    def evaluate_phase(self, z: complex) -> complex:
        """Value at t = e^{2 pi i z}, with t^e read as e^{2 pi i e z}."""
        return sum((complex(c) * cmath.exp(2j * cmath.pi * float(e) * z)
                    for e, c in self._terms.items()), 0j)

    def __repr__(self):
        if not self._terms:
            return "PuiseuxPoly(0)"
        parts = []
        for e, c in self.items():
            cs = repr(c)[6:-1] if c.is_rational() else repr(c)
            parts.append(f"{cs}*t^{rat_str(e)}")
        return "PuiseuxPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> list:
        out = []
        for e, c in self.items():
            if c.is_rational():
                out.append([rat_str(e), rat_str(c.to_rational())])
            else:
                out.append([rat_str(e), c.to_json()])
        return out


def common_exponent_denominator(*polys: PuiseuxPoly) -> int:
    D = 1
    for p in polys:
        for e in p._terms:
            D = lcm(D, e.denominator)
    return D


def puiseux_exact_div(num: PuiseuxPoly, den: PuiseuxPoly) -> PuiseuxPoly:
    """Exact quotient num/den; raises NonExactDivision on a nonzero remainder.

    With D the lcm of all exponent denominators, t = s^(1/D) turns both inputs
    into Laurent polynomials in s, which are divided lowest order first.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Puiseux polynomial")
    if num.is_zero():
        return PuiseuxPoly()
    D = common_exponent_denominator(num, den)
    n_lo, d_lo = num.min_exponent(), den.min_exponent()
    nd = {int((e - n_lo) * D): c for e, c in num._terms.items()}
    dd = sorted((int((e - d_lo) * D), c) for e, c in den._terms.items())
    n_len = max(nd) + 1
    d_deg = dd[-1][0]
    q_len = n_len - d_deg
    if q_len <= 0:
        raise NonExactDivision("numerator degree is below denominator degree")

    c0 = dd[0][1]
    lead_inv = None if c0 == 1 else c0.inverse()
    tail = dd[1:]
    zero = Cyclo.zero()
    q: list[Cyclo] = []
    for k in range(n_len):
        acc = nd.get(k, zero)
        for j, cj in tail:
            if 0 <= k - j < len(q):
                qk = q[k - j]
                if not qk.is_zero():
                    acc = acc - cj * qk
        if k < q_len:
            q.append(acc if lead_inv is None else acc * lead_inv)
        elif not acc.is_zero():
            raise NonExactDivision("nonzero remainder in Puiseux division")
    shift = n_lo - d_lo
    return PuiseuxPoly._raw({shift + Fraction(k, D): c
                             for k, c in enumerate(q) if not c.is_zero()})
