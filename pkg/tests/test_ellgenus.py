from __future__ import annotations

import cmath

import pytest

from lgorb import catalog
from lgorb.ellgenus import (ModularPoint, QSeriesParams, elliptic_genus, integer_vector,
                            orbifold_elliptic_genus, orbifold_elliptic_genus_limit, representation,
                            signature_ksum, theta1, theta1_with_error)
from lgorb.errors import NotRepresentable
from lgorb.hodge import chi_y_closed, orbifold_signature
from lgorb.invpoly import InvPoly, hat_c, transpose
from lgorb.symmetry import dual_group, g0_group, trivial_group

TAU = 0.1 + 1.3j
FERMAT3 = InvPoly.parse("x^3+y^3+z^3")


def test_theta_zero_and_symmetries():
    assert abs(theta1(ModularPoint(TAU, 0))) < 1e-15
    for z in (0.3 + 0.1j, -0.17 + 0.05j, 0.41):
        a = theta1(ModularPoint(TAU, z))
        assert abs(theta1(ModularPoint(TAU, -z)) + a) < 1e-12
        assert abs(theta1(ModularPoint(TAU, z + 1)) + a) < 1e-12


def test_theta_error_estimate_shrinks():
    pt = ModularPoint(0.2 + 0.4j, 0.3 + 0.1j)
    _, e8 = theta1_with_error(pt, QSeriesParams(8))
    v64, e64 = theta1_with_error(pt, QSeriesParams(64))
    v8, _ = theta1_with_error(pt, QSeriesParams(8))
    assert e64 < e8
    assert abs(v64 - v8) <= 10 * e8


def test_bad_parameters():
    with pytest.raises(ValueError):
        ModularPoint(1 + 0j, 0.2)
    with pytest.raises(ValueError):
        QSeriesParams(cutoff=0)


def test_trivial_group_reduces_to_elliptic_genus():
    pt = ModularPoint(TAU, 0.23 + 0.07j)
    for p in (FERMAT3, InvPoly.parse("x^6*y+y^3+z^2")):
        assert abs(orbifold_elliptic_genus(p, trivial_group(p), pt) - elliptic_genus(p, pt)) < 1e-12


def test_thom_sebastiani_product():
    pt = ModularPoint(TAU, 0.31 - 0.04j)
    one = elliptic_genus(InvPoly.parse("x^3"), pt)
    assert abs(elliptic_genus(FERMAT3, pt) - one ** 3) < 1e-12


@pytest.mark.parametrize("group", ["trivial", "G0"])
def test_limit_matches_chi(group):
    p = FERMAT3
    G = trivial_group(p) if group == "trivial" else g0_group(p)
    z = 0.3 / (2 * cmath.pi)  # y = e^{0.3 i}
    exact = chi_y_closed(p, G).evaluate_phase(z)
    assert abs(orbifold_elliptic_genus_limit(p, G, z) - exact) < 1e-12


def test_literal_hat_c_prefactor_does_not_match():
    # with the extra y^{c/2} factor the comparison fails whenever hat_c != 0
    p, z = FERMAT3, 0.3 / (2 * cmath.pi)
    G = trivial_group(p)
    lim = orbifold_elliptic_genus_limit(p, G, z)
    exact = chi_y_closed(p, G).evaluate_phase(z)
    assert hat_c(p) == 1
    assert abs(cmath.exp(2j * cmath.pi * z * float(hat_c(p)) / 2) * lim - exact) > 1e-3


def test_large_tau_approaches_limit():
    p = InvPoly.parse("x^5+y^5+z^2")
    G, z = g0_group(p), 0.21 + 0.03j
    far = orbifold_elliptic_genus(p, G, ModularPoint(0.1 + 12j, z))
    assert abs(far - orbifold_elliptic_genus_limit(p, G, z)) < 1e-9


def test_integer_vector_and_representation():
    p = FERMAT3
    (j,) = g0_group(p).generators
    assert integer_vector(p, j) == (1, 1, 1)
    z10 = catalog.get_entry("Z10")
    Gt = dual_group(z10.f, g0_group(z10.f))
    with pytest.raises(NotRepresentable) as info:
        representation(z10.f_dual, Gt)
    assert info.value.elements


def test_phase_form_agrees_with_literal_form():
    e = catalog.get_entry("NA")
    G = g0_group(e.f)
    pt = ModularPoint(0.13 + 0.9j, 0.27 + 0.05j)
    lit = orbifold_elliptic_genus(e.f, G, pt)
    ph = orbifold_elliptic_genus(e.f, G, pt, phase_form=True)
    assert abs(lit - ph) < 1e-10


def test_duality_na_one_point():
    e = catalog.get_entry("NA")
    G = g0_group(e.f)
    pt = ModularPoint(0.13 + 0.9j, 0.27 + 0.05j)
    lhs = orbifold_elliptic_genus(e.f, G, pt)
    rhs = orbifold_elliptic_genus(transpose(e.f), dual_group(e.f, G), pt)
    assert abs(lhs + rhs) < 1e-8


@pytest.mark.parametrize("text,expected", [("x^2+y^2+z^2", -1), ("x^3+y^3+z^3", -6)])
def test_signature_ksum(text, expected):
    p = InvPoly.parse(text)
    G = trivial_group(p)
    assert orbifold_signature(p, G) == expected
    assert abs(signature_ksum(p, G, 2001) - expected) < 0.1


def test_signature_ksum_negated_branch():
    p = InvPoly.parse("x^5+y^5+z^2")
    G = g0_group(p)
    assert abs(signature_ksum(p, G, 2001) - orbifold_signature(p, G)) < 0.1
