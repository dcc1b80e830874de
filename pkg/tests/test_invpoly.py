from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given

from lgorb.errors import NotInvertible, NotInvertibleType
from lgorb.invpoly import (InvPoly, atomic_decomposition, canonical_weights, equivalent_up_to_permutation,
                           hat_c, milnor_number, transpose)

from strategies import PROPS, invertible


def test_weights_j30():
    ws = canonical_weights(InvPoly.parse("x^6*y + y^3 + z^2"))
    assert (ws.a, ws.d) == ((4, 12, 18), 36)
    assert ws.reduced == ((2, 6, 9), 18)
    assert ws.c_f == 2 and ws.epsilon == -1


def test_weights_na():
    ws = canonical_weights(InvPoly.from_rows([[5, 0, 0], [0, 5, 0], [0, 0, 2]]))
    assert (ws.a, ws.d, ws.c_f) == ((10, 10, 25), 50, 5)


def test_weights_quadric():
    ws = canonical_weights(InvPoly.from_rows([[2, 0, 0], [0, 2, 0], [0, 0, 2]]))
    assert (ws.a, ws.d) == ((4, 4, 4), 8)
    assert ws.w == (F(1, 2),) * 3


def test_weight_equation_holds():
    p = InvPoly.parse("x^3*y + y^2*z + z^3")
    ws = p.weights
    for row in p.E:
        assert sum(e * a for e, a in zip(row, ws.a)) == ws.d


def test_transpose_examples():
    assert transpose(InvPoly.parse("x^6*y + y^3 + z^2")) == InvPoly.parse("x^6 + x*y^3 + z^2")
    z10 = InvPoly.parse("x^5*y + x*y^3 + z^2")
    assert equivalent_up_to_permutation(transpose(z10), z10)
    fermat = InvPoly.parse("x^5 + y^5 + z^2")
    assert transpose(fermat) == fermat


def test_atomic_decomposition():
    kinds = lambda s: [(b.kind, tuple(b.variables)) for b in atomic_decomposition(InvPoly.parse(s))]
    assert kinds("x^5 + y^5 + z^2") == [("fermat", (0,)), ("fermat", (1,)), ("fermat", (2,))]
    assert kinds("x^6*y + y^3 + z^2") == [("chain", (0, 1)), ("fermat", (2,))]
    assert kinds("x^3*y + y^2*z + z^3") == [("chain", (0, 1, 2))]
    assert kinds("x^2*y + y^2*z + z^2*x") == [("loop", (0, 1, 2))]


def test_hat_c():
    # J_{3,0}: 3 - 2(1/9 + 1/3 + 1/2) = 10/9
    assert hat_c(InvPoly.parse("x^2 + y^2 + z^2")) == 0
    assert hat_c(InvPoly.parse("x^3 + y^3 + z^3")) == 1
    assert hat_c(InvPoly.parse("x^6*y + y^3 + z^2")) == F(10, 9)


def test_milnor_number():
    assert milnor_number(InvPoly.parse("x^2 + y^2 + z^2")) == 1
    assert milnor_number(InvPoly.parse("x^5 + y^5 + z^2")) == 16
    assert milnor_number(InvPoly.parse("x^3 + y^3 + z^3")) == 8


@pytest.mark.parametrize("rows,err", [
    ([[1, 1], [1, 1]], NotInvertible),
    ([[3, 0, 0], [0, 3, 0]], NotInvertible),
    ([[2, 0], [1, 1]], NotInvertibleType),
    ([[1, 0], [0, 2]], NotInvertibleType),
])
def test_rejects_non_invertible(rows, err):
    with pytest.raises(err):
        InvPoly.from_rows(rows)


@pytest.mark.parametrize("text", ["x^^2 + y^2", "2x^2 + y^3", "x^2 + y^2 + (z)"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        InvPoly.parse(text)


def test_json_roundtrip_and_str():
    p = InvPoly.parse("x^6*y + y^3 + z^2")
    assert InvPoly.from_json(p.to_json()) == p
    assert InvPoly.parse(str(p)) == p


@PROPS
@given(invertible())
def test_weight_properties(p):
    ws = p.weights
    assert all(a > 0 for a in ws.a)
    assert all(w <= F(1, 2) for w in ws.w)
    for row in p.E:
        assert sum(e * a for e, a in zip(row, ws.a)) == ws.d
    assert transpose(transpose(p)) == p
    assert sum(len(b.variables) for b in atomic_decomposition(p)) == p.n
