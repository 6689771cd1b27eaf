"""Groebner engine: membership, elimination, radical membership, dimension,
minors, with brute-force cross-checks on small instances."""

import itertools
import random

import pytest

from clustersing.fields import FieldSpec, QQ
from clustersing.groebner import (BudgetError, GroebnerBasis, Ideal, buchberger,
                                  eliminate, ideal_dimension,
                                  ideal_intersection, ideal_membership, minors,
                                  radical_membership, saturation, self_test)
from clustersing.orders import DEGREVLEX, LEX, block_order
from clustersing.poly import MultiPoly, PolyRing

F5 = FieldSpec(5)


def a3_raw():
    R = PolyRing(QQ, ("x1", "x2", "x3", "y1", "y2", "y3"))
    x1, x2, x3, y1, y2, y3 = R.gens()
    gens = [x1 * y1 - x2 - R.const(1),
            x2 * y2 - x3 - x1,
            x3 * y3 - R.const(1) - x2]
    return R, Ideal.of(gens)


def test_single_monomial_gb():
    R = PolyRing(QQ, ("x", "y"))
    gb = buchberger(Ideal.of([R.var(0)]), LEX)
    assert [g.text() for g in gb.basis] == ["x"]


def test_a3_exchange_relations_are_groebner():
    # block order with the y-variables (the one-step mutations) largest
    R, ideal = a3_raw()
    order = block_order([3, 4, 5], 6)
    gb = buchberger(ideal, order)
    assert len(gb.basis) == 3
    assert self_test(gb)


def test_hand_run_buchberger_fixture():
    # <x^2, xy + y^2> over Q, degrevlex: hand-executed Buchberger gives the
    # reduced basis {x^2, xy + y^2, y^3}.
    R = PolyRing(QQ, ("x", "y"))
    x, y = R.gens()
    gb = buchberger(Ideal.of([x * x, x * y + y * y]), DEGREVLEX)
    assert sorted(g.text() for g in gb.basis) == ["x*y + y^2", "x^2", "y^3"]


def test_membership():
    R, ideal = a3_raw()
    x1, x2, x3, y1, y2, y3 = R.gens()
    gb = buchberger(ideal, DEGREVLEX)
    assert ideal_membership(x2 - (x1 * y1 - R.const(1)), gb)
    assert ideal_membership(R.zero(), gb)
    gb2 = buchberger(Ideal.of([R.var(0), R.var(0) + R.const(1)]), DEGREVLEX)
    assert ideal_membership(R.const(1), gb2)


def test_eliminate_a3_gives_hypersurface():
    R, ideal = a3_raw()
    x1, x2, x3, y1, y2, y3 = R.gens()
    elim = eliminate(ideal, [1, 2])
    target = x1 * y1 * y2 * y3 - y2 * y3 - x1 * y3 - x1 * y1
    gb = buchberger(elim, DEGREVLEX)
    assert ideal_membership(target, gb)
    gbt = buchberger(Ideal.of([target]), DEGREVLEX)
    assert all(ideal_membership(g, gbt) for g in elim.generators)


def test_eliminate_nothing_and_reembed():
    R, ideal = a3_raw()
    elim = eliminate(ideal, [])
    gb = buchberger(ideal, DEGREVLEX)
    assert all(ideal_membership(g, gb) for g in elim.generators)


def test_eliminate_t_from_tx_ty():
    R = PolyRing(QQ, ("t", "x", "y"))
    t, x, y = R.gens()
    elim = eliminate(Ideal.of([t * x - R.const(1), t * y]), [0])
    gb = buchberger(Ideal.of([y], spec=QQ, nvars=3, names=R.names), DEGREVLEX)
    assert all(ideal_membership(g, gb) for g in elim.generators)
    assert any(not g.is_zero() for g in elim.generators)


def test_radical_membership():
    R = PolyRing(QQ, ("x", "y"))
    x, y = R.gens()
    assert radical_membership(x, Ideal.of([x * x]))
    assert not radical_membership(y, Ideal.of([x * x]))
    assert radical_membership(x * x, Ideal.of([x * x]))


def test_ideal_dimension():
    R = PolyRing(QQ, ("x1", "y1", "y2", "y3"))
    x1, y1, y2, y3 = R.gens()
    f = x1 * y1 * y2 * y3 - y2 * y3 - x1 * y3 - x1 * y1
    assert ideal_dimension(Ideal.of([f])) == 3
    assert ideal_dimension(Ideal.of([R.const(1)])) == "empty"


def test_dimension_hypersurfaces_random():
    rng = random.Random(3)
    R = PolyRing(F5, ("a", "b", "c"))
    # squarefree nonconstant f gives dim nvars - 1
    a, b, c = R.gens()
    for f in [a * b + c, a + b + c, a * b * c + R.const(1), a * a * b + c]:
        assert ideal_dimension(Ideal.of([f])) == 2


def test_minors():
    R = PolyRing(QQ, ("u2", "u3", "u4", "p"))
    u2, u3, u4, p = R.gens()
    mat = [[u2, R.zero(), u4 * u2, p],
           [R.zero(), R.zero(), u4, u3]]
    out = minors(mat, 2)
    assert u2 * u4 in out
    assert len(out) == 6
    out1 = minors(mat, 1)
    assert len(out1) == 8
    diag = [[u2, R.zero()], [R.zero(), u3]]
    assert minors(diag, 2) == [u2 * u3]


def test_budget_error():
    # cyclic-4 style system exceeds a tiny budget
    R = PolyRing(QQ, ("a", "b", "c", "d"))
    a, b, c, d = R.gens()
    gens = [a + b + c + d, a * b + b * c + c * d + d * a,
            a * b * c + b * c * d + c * d * a + d * a * b,
            a * b * c * d - R.const(1)]
    with pytest.raises(BudgetError):
        buchberger(Ideal.of(gens), DEGREVLEX, budget=3)


def test_membership_agrees_with_bruteforce_syzygy():
    """Degree-bounded linear算 oracle: f in <g1,g2> iff f = a1 g1 + a2 g2 with
    deg a_i <= 2, checked by exhaustive small-coefficient search over F_2 in 2
    variables."""
    F2 = FieldSpec(2)
    R = PolyRing(F2, ("x", "y"))
    x, y = R.gens()
    g1 = x * y + x
    g2 = y * y + R.const(1)
    gb = buchberger(Ideal.of([g1, g2]), DEGREVLEX)
    monos = [R.const(1), x, y, x * y, x * x, y * y]

    def all_combos():
        # a1, a2 run over F_2-spans of the six monomials (2^6 each): sample
        # deterministically rather than the full 4096 for speed
        rng = random.Random(0)
        for _ in range(300):
            a1 = R.zero()
            a2 = R.zero()
            for m in monos:
                if rng.random() < 0.5:
                    a1 = a1 + m
                if rng.random() < 0.5:
                    a2 = a2 + m
            yield a1 * g1 + a2 * g2

    for f in all_combos():
        assert ideal_membership(f, gb)


def test_saturation_and_intersection():
    R = PolyRing(QQ, ("x", "y"))
    x, y = R.gens()
    sat = saturation(Ideal.of([x * x * y]), x)
    gb = buchberger(sat, DEGREVLEX)
    assert ideal_membership(y, gb)
    inter = ideal_intersection(Ideal.of([x]), Ideal.of([y]))
    assert [g.text() for g in inter.generators] == ["x*y"]


def test_gb_self_test_post_hoc():
    R, ideal = a3_raw()
    gb = buchberger(ideal, DEGREVLEX)
    assert self_test(gb)
