"""Field and polynomial arithmetic: exactness, ring axioms, calculus rules."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from clustersing.fields import FieldElem, FieldSpec, QQ
from clustersing.poly import MultiPoly, PolyRing, parse_poly

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def ring(spec=QQ, names=("x", "y", "z")):
    return PolyRing(spec, names)


def random_poly(rng, R, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(R.nvars))
        terms[e] = rng.randint(-4, 4)
    return MultiPoly(R.spec, R.nvars, terms, R.names)


def test_field_spec_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(6)
    FieldSpec(7)


def test_field_elem_arithmetic():
    a = FieldElem(F5, 3)
    b = FieldElem(F5, 4)
    assert (a * b).value == 2
    assert (a / b).value == (3 * pow(4, -1, 5)) % 5
    assert str(FieldElem(QQ, 1) / FieldElem(QQ, 2)) == "1/2"


def test_p2_example():
    R = ring(QQ, ("y1", "y2"))
    y1, y2 = R.gens()
    assert (y1 * y2 - R.const(1)).text() == "y1*y2 - 1"


def test_additive_identity():
    R = ring()
    x, y, z = R.gens()
    a = x * y - z + R.const(3)
    assert a + R.zero() == a


def test_char2_square():
    R = ring(F2, ("x",))
    x = R.var(0)
    assert ((x + R.const(1)) * (x + R.const(1))) == x ** 2 + R.const(1)


def test_partial_derivative_p3():
    R = ring(QQ, ("y1", "y2", "y3"))
    y1, y2, y3 = R.gens()
    p3 = y1 * y2 * y3 - y1 - y3
    assert p3.partial_derivative(1) == y1 * y3


def test_derivative_of_constant_and_char_p_power():
    R = ring(QQ)
    assert R.const(5).partial_derivative(0).is_zero()
    R2 = ring(F2, ("x",))
    assert (R2.var(0) ** 2).partial_derivative(0).is_zero()


def test_substitute_exchange_step():
    # x2 := x1*y1 - 1 substituted into x2*y2 - x1 - x3
    R = PolyRing(QQ, ("x1", "x2", "x3", "y1", "y2"))
    x1, x2, x3, y1, y2 = R.gens()
    f = x2 * y2 - x1 - x3
    got = f.substitute({1: x1 * y1 - R.const(1)})
    assert got == (x1 * y1 - R.const(1)) * y2 - x1 - x3


def test_substitute_identity_and_evaluation():
    R = ring()
    x, y, z = R.gens()
    f = x * y + x + R.const(1)
    assert f.substitute({}) == f
    assert f.substitute({0: R.zero(), 1: R.zero()}) == R.const(1)


def test_truncate_degree():
    R = PolyRing(QQ, ("y1", "y2", "y3", "y4"))
    y1, y2, y3, y4 = R.gens()
    p3 = y1 * y2 * y3 - y1 - y3
    assert p3.truncate_degree(2) == -y1 - y3
    p4 = y1 * y2 * y3 * y4 - y1 * y2 - y1 * y4 - y3 * y4 + R.const(1)
    assert p4.truncate_degree(2) == R.const(1) - y1 * y2 - y1 * y4 - y3 * y4
    assert p4.truncate_degree(10) == p4


@pytest.mark.parametrize("spec", [QQ, F2, F3, F5])
def test_ring_axioms_randomized(spec):
    rng = random.Random(7)
    R = ring(spec)
    for _ in range(40):
        a, b, c = (random_poly(rng, R) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + b == b + a


@pytest.mark.parametrize("spec", [QQ, F2, F5])
def test_leibniz_rule(spec):
    rng = random.Random(11)
    R = ring(spec)
    for _ in range(25):
        f, g = random_poly(rng, R), random_poly(rng, R)
        for i in range(3):
            lhs = (f * g).partial_derivative(i)
            rhs = f * g.partial_derivative(i) + g * f.partial_derivative(i)
            assert lhs == rhs


def test_substitute_composition():
    rng = random.Random(13)
    R = ring()
    x, y, z = R.gens()
    for _ in range(10):
        f = random_poly(rng, R, max_terms=3, max_deg=2)
        g = random_poly(rng, R, max_terms=2, max_deg=2)
        h = random_poly(rng, R, max_terms=2, max_deg=2)
        # substitute x:=g then y:=h equals the simultaneous composed map only
        # when applied sequentially on the result; check associativity of
        # sequential substitution instead.
        one = f.substitute({0: g}).substitute({1: h})
        two = f.substitute({0: g.substitute({1: h}), 1: h})
        assert one == two


@given(st.integers(min_value=0, max_value=6))
@settings(max_examples=20, deadline=None)
def test_exact_divide_roundtrip(seed):
    rng = random.Random(seed)
    R = ring()
    f = random_poly(rng, R, max_terms=3, max_deg=2)
    g = random_poly(rng, R, max_terms=3, max_deg=2)
    if g.is_zero():
        return
    q = (f * g).exact_divide(g)
    assert q == f


def test_parse_roundtrip():
    R = PolyRing(QQ, ("x1", "y1"))
    f = R.parse("3*x1^2*y1 - 1/2*x1 + 5")
    assert f.text() == "3*x1^2*y1 - 1/2*x1 + 5"
    assert parse_poly(f.text(), R) == f


def test_json_roundtrip():
    R = PolyRing(F5, ("a", "b"))
    f = R.var(0) ** 2 * R.var(1) + R.const(3)
    assert MultiPoly.from_json(F5, f.to_json()) == f
