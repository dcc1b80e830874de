"""Numerical theta functions, elliptic genera and the signature Fourier sum."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import NotRepresentable, PoleAtPoint
from .hodge import chi_y_closed, signature_sign_factor
from .invpoly import InvPoly
from .symmetry import DiagGroup, GroupElement

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class ModularPoint:
    tau: complex
    z: complex

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError("Im(tau) must be positive")

    @property
    def q(self) -> complex:
        return cmath.exp(TWO_PI_I * self.tau)

    @property
    def y(self) -> complex:
        return cmath.exp(TWO_PI_I * self.z)


@dataclass(frozen=True)
class QSeriesParams:
    cutoff: int = 64
    tol: float = 1e-12

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be positive")


def theta1_with_error(pt: ModularPoint, params: QSeriesParams = QSeriesParams()) -> tuple[complex, float]:
    """Truncated product for theta_1 and a bound-style estimate of the dropped tail."""
    q, y = pt.q, pt.y
    val = 1j * cmath.exp(TWO_PI_I * pt.tau / 8) * cmath.exp(-1j * math.pi * pt.z)
    ql = 1.0 + 0j
    for _ in range(params.cutoff):
        # ql runs through q^{l-1}
        qn = ql * q
        val *= (1 - qn) * (1 - ql * y) * (1 - qn / y)
        ql = qn
    aq, ay = abs(q), abs(y)
    tail = abs(ql) * (abs(q) + ay + abs(q) / ay) / max(1e-300, 1 - aq)
    return val, abs(val) * tail


def theta1(pt: ModularPoint, params: QSeriesParams = QSeriesParams()) -> complex:
    return theta1_with_error(pt, params)[0]


def _theta_reduced(x: complex, beta: Fraction, tau: complex, cutoff: int | None) -> complex:
    """theta_1(x + beta*tau) with its power q^E removed.

    With m = floor(beta) and b0 = beta - m, quasi-periodicity gives
    theta_1 = q^E * (-1)^m e^{-2 pi i m x} * i e^{-pi i x} * prod(...) where
    E = 1/8 - b0/2 - m^2/2 - m*b0.  cutoff=None returns the q -> 0 limit.
    """
    m = floor(beta)
    b0 = float(beta - m)
    Y = cmath.exp(TWO_PI_I * x)
    pref = (-1) ** m * cmath.exp(-TWO_PI_I * m * x) * 1j * cmath.exp(-1j * math.pi * x)
    if cutoff is None:
        return pref * ((1 - Y) if b0 == 0 else 1)
    q = cmath.exp(TWO_PI_I * tau)
    prod = 1 + 0j
    for l in range(1, cutoff + 1):
        prod *= (1 - q ** l) * (1 - q ** (l - 1 + b0) * Y) * (1 - q ** (l - b0) / Y)
    return pref * prod


def _q_exponent(beta: Fraction) -> Fraction:
    m = floor(beta)
    b0 = beta - m
    return Fraction(1, 8) - b0 / 2 - Fraction(m * m, 2) - m * b0


def _factor(w: Fraction, a: int, b: int, pt_tau: complex, z: complex, cutoff: int | None,
            tol: float) -> complex:
    """One coordinate of Z_{ab}, including the e[(1 - 2w) a b / 2] prefactor."""
    c = 1 - 2 * w
    num = _theta_reduced((1 - w) * (z + b), (1 - w) * a, pt_tau, cutoff)
    den = _theta_reduced(w * (z + b), w * a, pt_tau, cutoff)
    if abs(den) < tol:
        raise PoleAtPoint(f"denominator theta vanishes (|.| = {abs(den):.3g})")
    qexp = c * a * a / 2 + _q_exponent((1 - w) * a) - _q_exponent(w * a)
    val = cmath.exp(TWO_PI_I * float(c) * a * b / 2) * cmath.exp(TWO_PI_I * float(c) * a * z) * num / den
    if qexp and cutoff is not None:
        val *= cmath.exp(TWO_PI_I * pt_tau * float(qexp))
    elif qexp:
        raise AssertionError("nonzero q-exponent in the q -> 0 limit")
    return val


def integer_vector(p: InvPoly, g: GroupElement) -> tuple[int, ...]:
    """Integers a_i in [0, s_i) with a_i w_i = phase_i mod 1, where w_i = r_i/s_i."""
    out = []
    for w, phase in zip(p.w, g.phases):
        r, s = w.numerator, w.denominator
        k = phase * s
        if k.denominator != 1:
            raise NotRepresentable(f"phase {phase} is not a multiple of w = {w}", [g])
        out.append(int(k) * pow(r, -1, s) % s if s > 1 else 0)
    return tuple(out)


def representation(p: InvPoly, G: DiagGroup) -> list[tuple[int, ...]]:
    bad, vecs = [], []
    for g in G:
        try:
            vecs.append(integer_vector(p, g))
        except NotRepresentable:
            bad.append(g)
    if bad:
        raise NotRepresentable(f"{len(bad)} group elements are not integer vectors", bad)
    return vecs


def _phase_factor(w: Fraction, theta: Fraction, phi: Fraction, tau: complex, z: complex,
                  cutoff: int | None, tol: float) -> complex:
    """e[-theta z] theta_1((1-w)z - theta tau - phi) / theta_1(w z + theta tau + phi).

    For integer vectors (theta, phi) = (a w, b w) this equals the sign times the
    coordinate factor of Z_{ab}; unlike that form it only needs the phases.
    """
    num = _theta_reduced((1 - w) * z - phi, -theta, tau, cutoff)
    den = _theta_reduced(w * z + phi, theta, tau, cutoff)
    if abs(den) < tol:
        raise PoleAtPoint(f"denominator theta vanishes (|.| = {abs(den):.3g})")
    return cmath.exp(-TWO_PI_I * float(theta) * z) * num / den


def _genus_phases(p: InvPoly, G: DiagGroup, tau, z, cutoff, tol) -> complex:
    total = 0j
    for h in G:
        for g in G:
            term = 1 + 0j
            for w, th, ph in zip(p.w, h.phases, g.phases):
                term *= _phase_factor(w, th, ph, tau, z, cutoff, tol)
            total += term
    return total / G.order


def _genus(p: InvPoly, G: DiagGroup, tau: complex, z: complex, cutoff: int | None, tol: float,
           phase_form: bool = False) -> complex:
    if phase_form:
        return _genus_phases(p, G, tau, z, cutoff, tol)
    vecs = representation(p, G)
    total = 0j
    for a in vecs:
        for b in vecs:
            term = 1 + 0j
            for i, w in enumerate(p.w):
                sign = -1 if (a[i] + b[i] + a[i] * b[i]) % 2 else 1
                term *= sign * _factor(w, a[i], b[i], tau, z, cutoff, tol)
            total += term
    return total / G.order


def elliptic_genus(p: InvPoly, pt: ModularPoint, params: QSeriesParams = QSeriesParams()) -> complex:
    """prod_i theta_1(tau, (1 - w_i) z) / theta_1(tau, w_i z)."""
    out = 1 + 0j
    for w in p.w:
        num = theta1(ModularPoint(pt.tau, (1 - w) * pt.z), params)
        den = theta1(ModularPoint(pt.tau, w * pt.z), params)
        if abs(den) < params.tol:
            raise PoleAtPoint("denominator theta vanishes")
        out *= num / den
    return out


def orbifold_elliptic_genus(p: InvPoly, G: DiagGroup, pt: ModularPoint,
                            params: QSeriesParams = QSeriesParams(), phase_form: bool = False) -> complex:
    """Orbifoldized elliptic genus.

    By default every element must be an integer vector a with phases a_i w_i
    (NotRepresentable otherwise).  phase_form=True evaluates the equivalent
    expression written in the phases themselves, which is defined for every G.
    """
    return _genus(p, G, pt.tau, pt.z, params.cutoff, params.tol, phase_form)


def orbifold_elliptic_genus_limit(p: InvPoly, G: DiagGroup, z: complex, tol: float = 1e-12,
                                  phase_form: bool = False) -> complex:
    """Z(f, G)(i infinity, z) from the exact q -> 0 limit of each theta quotient."""
    return _genus(p, G, 1j, z, None, tol, phase_form)


def signature_ksum(p: InvPoly, G: DiagGroup, kmax: int) -> float:
    """Cesaro mean of the symmetric partial sums of the odd-k Fourier series.

    Z(i infinity, k/2) is read off the exact chi_y coefficients, so the only
    approximation is the truncation in k.
    """
    n = p.n
    if n % 2 == 0:
        raise ValueError("n must be odd")
    eps = signature_sign_factor(p, G)
    chi = [(float(e), float(c)) for e, c in chi_y_closed(p, G).rational_items()]

    def Z(k):
        return sum(c * cmath.exp(1j * math.pi * e * k) for e, c in chi)

    partial, acc, count = 0j, 0j, 0
    for k in range(1, kmax + 1, 2):
        for kk in (k, -k):
            partial += (-1) ** (((kk * n - 1) // 2) % 2) / kk * Z(kk)
        acc += partial
        count += 1
    return eps * (2 / math.pi) * (acc / count).real
