from __future__ import annotations

from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from lgorb import catalog
from lgorb.errors import NOddRequired, UnsupportedGroup
from lgorb.exactmath import PuiseuxPoly
from lgorb.hodge import (chi_y_closed, chi_y_from_hodge, exponents, hodge_numbers, mu_triple_A,
                         orbifold_signature, rank_A, rank_A_closed, rank_B, sector_invariant_multiset,
                         sector_trace_series, steenbrink_triple)
from lgorb.invpoly import InvPoly, milnor_number, transpose
from lgorb.symmetry import (DiagGroup, GroupElement, dual_group, fixed_data, full_group, g0_group,
                            grading_element, supergroups_of_g0, trivial_group)
from oracles import fermat_chi_untwisted, fermat_invariant_l_values, fermat_steenbrink
from strategies import PROPS, pair_with_group

FERMAT3 = InvPoly.parse("x^3+y^3+z^3")
QUADRIC = InvPoly.parse("x^2+y^2+z^2")
ID3 = GroupElement.identity(3)
P = PuiseuxPoly


def test_sector_trace_series():
    assert sector_trace_series(FERMAT3, ID3, ID3) == P({1: 1, F(4, 3): 3, F(5, 3): 3, 2: 1})
    assert sector_trace_series(QUADRIC, ID3, ID3) == P({F(3, 2): 1})
    j = grading_element(FERMAT3)
    assert sector_trace_series(FERMAT3, j, ID3) == P({0: 1})


def test_sector_invariant_multiset():
    G0 = g0_group(FERMAT3)
    assert sector_invariant_multiset(FERMAT3, ID3, G0) == [(1, 1), (2, 1)]
    assert sector_invariant_multiset(FERMAT3, grading_element(FERMAT3), G0) == [(0, 1)]
    assert sector_invariant_multiset(QUADRIC, ID3, trivial_group(QUADRIC)) == [(F(3, 2), 1)]


def test_hodge_numbers_fermat_cubic():
    h = hodge_numbers(FERMAT3, trivial_group(FERMAT3))
    assert Counter({q: m for p, q, m in h.entries()}) == Counter({1: 1, F(4, 3): 3, F(5, 3): 3, 2: 1})
    assert all(p + q == 3 for p, q, _ in h.entries())
    h0 = hodge_numbers(FERMAT3, g0_group(FERMAT3))
    assert sorted((p, q) for p, q, m in h0.entries() for _ in range(m)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert hodge_numbers(QUADRIC, trivial_group(QUADRIC)).to_json() == [["3/2", "3/2", 1]]


def test_exponents():
    assert exponents(FERMAT3, trivial_group(FERMAT3)) == [1] + [F(4, 3)] * 3 + [F(5, 3)] * 3 + [2]
    assert exponents(QUADRIC, trivial_group(QUADRIC)) == [F(3, 2)]
    assert sorted(exponents(FERMAT3, g0_group(FERMAT3))) == [1, 1, 2, 2]


def test_chi_y_examples():
    assert chi_y_closed(QUADRIC, trivial_group(QUADRIC)) == P({0: 1})
    expected = P({F(-1, 2): 1, F(-1, 6): 3, F(1, 6): 3, F(1, 2): 1})
    assert chi_y_closed(FERMAT3, trivial_group(FERMAT3)) == expected
    assert chi_y_from_hodge(FERMAT3, trivial_group(FERMAT3)) == expected
    G0 = g0_group(FERMAT3)
    assert chi_y_closed(FERMAT3, G0) == chi_y_from_hodge(FERMAT3, G0)


@pytest.mark.parametrize("degrees", [[2, 2, 2], [3, 3, 3], [5, 5, 2], [4, 4, 2], [3, 4, 5], [2, 3, 7]])
def test_chi_y_fermat_oracle(degrees):
    p = InvPoly.from_rows([[a if i == j else 0 for j in range(3)] for i, a in enumerate(degrees)])
    assert chi_y_closed(p, trivial_group(p)) == P(fermat_chi_untwisted(degrees))


def test_steenbrink_triple():
    assert steenbrink_triple(QUADRIC).as_tuple() == (0, 0, 1)
    assert steenbrink_triple(FERMAT3).as_tuple() == (0, 2, 6)
    na = InvPoly.parse("x^5+y^5+z^2")
    t = steenbrink_triple(na)
    assert t.as_tuple() == fermat_steenbrink([5, 5, 2]) and t.rank == 16
    with pytest.raises(NOddRequired):
        steenbrink_triple(InvPoly.parse("x^3+y^3"))


def test_orbifold_signature_examples():
    assert orbifold_signature(QUADRIC, trivial_group(QUADRIC)) == -1
    assert orbifold_signature(FERMAT3, trivial_group(FERMAT3)) == -6
    p = InvPoly.parse("x^5+y^5+z^2")
    bad = DiagGroup.generated(p, [GroupElement((F(1, 5), F(0), F(0)))])
    with pytest.raises(UnsupportedGroup):
        orbifold_signature(p, bad)


def test_catalog_signature_duality():
    for e in catalog.primary_entries():
        G0 = g0_group(e.f)
        assert orbifold_signature(e.f, G0) == orbifold_signature(transpose(e.f), dual_group(e.f, G0))


def test_rank_examples():
    assert rank_A(FERMAT3, trivial_group(FERMAT3)) == milnor_number(FERMAT3) == 8
    assert rank_A(FERMAT3, g0_group(FERMAT3)) == 2
    assert mu_triple_A(FERMAT3, trivial_group(FERMAT3)).as_tuple() == (0, 2, 6)
    assert mu_triple_A(FERMAT3, g0_group(FERMAT3)).as_tuple() == (0, 2, 0)
    assert rank_A_closed(FERMAT3, trivial_group(FERMAT3)) == 8
    j = catalog.get_entry("J30")
    Gt = dual_group(j.f, g0_group(j.f))
    assert Gt.order == 2
    assert rank_A_closed(j.f_dual, Gt) == rank_A(j.f_dual, Gt)


def test_rank_b_examples():
    na = InvPoly.parse("x^5+y^5+z^2")
    # 3 + sum(alpha_i - 1) with alpha = (2,2,2,2,2)
    assert rank_B(na, g0_group(na)) == 8
    assert rank_A_closed(na, dual_group(na, g0_group(na))) == 8
    for text in ("x^6*y+y^3+z^2", "x^3+y^3+z^3"):
        p = InvPoly.parse(text)
        assert rank_B(p, full_group(p)) == milnor_number(transpose(p))


def test_rank_b_over_supergroup_chain():
    for H in supergroups_of_g0(FERMAT3):
        Ht = dual_group(FERMAT3, H)
        assert rank_B(FERMAT3, H) == rank_A(FERMAT3, Ht) == rank_A_closed(FERMAT3, Ht)


def test_rank_needs_sl():
    with pytest.raises(UnsupportedGroup):
        rank_A(InvPoly.parse("x^5+y^5+z^2"), g0_group(InvPoly.parse("x^5+y^5+z^2")))


# -- properties -------------------------------------------------------------------

@PROPS
@given(pair_with_group(max_exp=4))
def test_serre_symmetry(pg):
    p, G = pg
    h = hodge_numbers(p, G)
    assert h.is_serre_symmetric()
    assert all(isinstance(m, int) and m > 0 for _, _, m in h.entries())


@PROPS
@given(pair_with_group(max_exp=4))
def test_invariant_multiplicities_integral(pg):
    p, G = pg
    for g in G:
        for l, m in sector_invariant_multiset(p, g, G):
            assert isinstance(m, int) and m > 0
            assert l >= 0


@PROPS
@given(pair_with_group(max_exp=4))
def test_chi_routes_agree(pg):
    p, G = pg
    assert chi_y_closed(p, G) == chi_y_from_hodge(p, G)


@PROPS
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3), st.data())
def test_untwisted_sector_matches_box_oracle(degrees, data):
    n = len(degrees)
    p = InvPoly.from_rows([[a if i == j else 0 for j in range(n)] for i, a in enumerate(degrees)])
    elems = sorted(full_group(p))
    gens = data.draw(st.lists(st.sampled_from(elems), max_size=2))
    G = DiagGroup.generated(p, gens)
    got = Counter(dict(sector_invariant_multiset(p, GroupElement.identity(n), G)))
    assert got == fermat_invariant_l_values(degrees, [g.phases for g in G])
