import itertools
import random
import time
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.orderings import grevlex

from redop import Monomial, PolynomialRing, TruncatedContext, complete_groebner, is_groebner
from redop import join, meet_family, operator_from_polynomial, verify_syzygy_identity
from redop.groebner import (
    PolynomialSyntaxError,
    TruncationError,
    lattice_useless_cofactors,
    monomials_up_to,
)

RING = PolynomialRing(["t", "z", "y", "x"])


def system():
    return [RING.parse(s) for s in ("y^2 - x*z", "x^2 - y*z", "x*y*z - y^2*z")]


def to_sympy(f, gens):
    """``gens`` lists sympy symbols greatest first; ring exponents are stored least first."""
    return sum((sympy.Rational(c.numerator, c.denominator)
                * sympy.Mul(*[s ** e for s, e in zip(gens, reversed(m))]) for m, c in f.terms.items()),
               sympy.Integer(0))


def staircase(polys, ring, degree):
    """Monomials of degree <= ``degree`` divisible by a leading monomial of sympy's reduced basis."""
    gens = sympy.symbols(list(reversed(ring.variables)))
    exprs = [to_sympy(f, gens) for f in polys]
    gb = sympy.groebner(exprs, *gens, order="grevlex")
    leads = [Monomial(reversed(sympy.Poly(g, *gens).monoms(order="grevlex")[0])) for g in gb.exprs]
    return {m for m in monomials_up_to(len(ring.variables), degree) if any(l.divides(m) for l in leads)}


class TestMonomialOrder:
    def test_fixture_precedence(self):
        order = RING.order
        m = RING.monomial
        assert order.less(m(y=2), m(x=1, z=1)) is False
        assert order.less(m(x=1, z=1), m(y=2))
        assert order.less(m(y=1, z=1), m(x=2))
        assert order.less(m(t=1), m(z=1)) and order.less(m(z=1), m(y=1)) and order.less(m(y=1), m(x=1))
        assert RING.parse("y^2 - x*z").leading_monomial == m(y=2)
        assert RING.parse("x*y*z - y^2*z").leading_monomial == m(x=1, y=1, z=1)

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
    def test_matches_sympy_grevlex(self, a, b):
        ma, mb = Monomial(a), Monomial(b)
        ours = RING.order.less(ma, mb)
        theirs = grevlex(tuple(reversed(a))) < grevlex(tuple(reversed(b)))
        assert ours == theirs

    @settings(max_examples=200, deadline=None)
    @given(*[st.lists(st.integers(0, 3), min_size=4, max_size=4)] * 3)
    def test_admissible(self, a, b, c):
        ma, mb, mc = Monomial(a), Monomial(b), Monomial(c)
        less = RING.order.less
        assert not less(ma, RING.one)
        if less(ma, mb):
            assert less(ma * mc, mb * mc)
            assert not less(mb, ma)
        elif ma != mb:
            assert less(mb, ma)


class TestParser:
    def test_round_trip(self):
        f = RING.parse("3*x^2*y - 1/2*z^3 + t")
        assert str(f) == "3*x^2*y - 1/2*z^3 + t"
        assert RING.parse(str(f)) == f
        assert RING.parse("-x + x") == RING.parse("0")

    @pytest.mark.parametrize("text, position", [
        ("x*", 2), ("2*w", 2), ("x^-1", 2), ("x + + y", 4), ("", 0),
        ("x y", 2), ("1/0*x", 2), ("(x+y)", 0), ("2x", 1),
    ])
    def test_errors_report_position(self, text, position):
        with pytest.raises(PolynomialSyntaxError) as info:
            RING.parse(text)
        assert info.value.position == position

    def test_ring_validation(self):
        with pytest.raises(ValueError):
            PolynomialRing([])
        with pytest.raises(ValueError):
            PolynomialRing(["x", "x"])


class TestOperators:
    def test_ambient_size(self):
        for d in (1, 3, 6):
            assert len(TruncatedContext(RING, d).ambient) == comb(4 + d, d)

    def test_first_relation_at_degree_three(self):
        ctx = TruncatedContext(RING, 3)
        op = operator_from_polynomial(ctx, RING.parse("y^2 - x*z"))
        y2 = RING.monomial(y=2)
        assert op.red_set() == {m for m in ctx.ambient if y2.divides(m)}
        assert ctx.to_polynomial(op.image(y2)) == RING.parse("x*z")

    def test_third_relation_at_degree_four(self):
        ctx = TruncatedContext(RING, 4)
        op = operator_from_polynomial(ctx, RING.parse("x*y*z - y^2*z"))
        m = RING.monomial
        assert ctx.to_polynomial(op.image(m(x=1, y=1, z=1))) == RING.parse("y^2*z")
        # x^2yz -> xy^2z, and xy^2z is itself reducible so is not the final image
        assert ctx.to_polynomial(op.image(m(x=2, y=1, z=1))) == RING.parse("y^3*z")

    def test_monomial_operator_kills_multiples(self):
        ctx = TruncatedContext(RING, 3)
        op = operator_from_polynomial(ctx, RING.parse("x*y"))
        for g in op.red_set():
            assert op.image(g).is_zero()

    def test_truncation_errors(self):
        ctx = TruncatedContext(RING, 2)
        with pytest.raises(TruncationError, match="exceeds truncation bound"):
            operator_from_polynomial(ctx, RING.parse("x*y*z"))
        with pytest.raises(ValueError):
            operator_from_polynomial(ctx, RING.parse("0"))
        with pytest.raises(ValueError):
            TruncatedContext(RING, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_normal_forms_are_non_multiples(self, seed):
        rng = random.Random(seed)
        ring = PolynomialRing(["z", "y", "x"])
        ctx = TruncatedContext(ring, 4)
        f = random_polynomial(rng, ring, rng.randint(1, 3), homogeneous=rng.random() < 0.5)
        op = operator_from_polynomial(ctx, f)
        lt = f.leading_monomial
        assert op.nf_set() == {m for m in ctx.ambient if not lt.divides(m)}

    def test_scaling_invariance(self):
        f1, f2, f3 = system()
        a, b = TruncatedContext(RING, 5), TruncatedContext(RING, 5)
        assert operator_from_polynomial(a, f3) == operator_from_polynomial(b, f3 * -7)
        assert is_groebner(a, [f1, f2, f3]) == is_groebner(b, [f1 * 2, f2 * RING.constant("1/3"), f3 * -1])


def random_polynomial(rng, ring, degree, homogeneous=True, terms=3):
    n = len(ring.variables)
    pool = [m for m in monomials_up_to(n, degree) if not homogeneous or m.degree == degree]
    f = ring.constant(0)
    while not f or f.degree != degree:
        picks = rng.sample(pool, min(terms, len(pool)))
        if not any(m.degree == degree for m in picks):
            continue
        f = sum((ring.constant(rng.choice([-2, -1, 1, 2, 3])) * m for m in picks), ring.constant(0))
    return f


class TestAgainstSympy:
    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6))
    def test_meet_reduces_the_staircase(self, seed):
        rng = random.Random(seed)
        ring = PolynomialRing(["z", "y", "x"])
        d = 5
        ctx = TruncatedContext(ring, d)
        polys = [random_polynomial(rng, ring, rng.randint(2, 3)) for _ in range(rng.randint(2, 3))]
        meet_op = meet_family([operator_from_polynomial(ctx, f) for f in polys])
        assert meet_op.red_set() == staircase(polys, ring, d)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_completion_certified(self, seed):
        rng = random.Random(seed)
        ring = PolynomialRing(["z", "y", "x"])
        ctx = TruncatedContext(ring, 5)
        polys = [random_polynomial(rng, ring, 2) for _ in range(rng.randint(2, 3))]
        result = complete_groebner(ctx, polys)
        assert result.certified and is_groebner(ctx, result.basis)
        found = {m for m in ctx.ambient if any(f.leading_monomial.divides(m) for f in result.basis)}
        assert found == staircase(polys, ring, 5)
        # every reported cofactor passes the lattice criterion when recomputed
        family = ctx.family(result.basis)
        for u in result.useless:
            upper = join(meet_family(list(family)[:u.index - 1]), family[u.index - 1])
            lead = result.basis[u.index - 1].leading_monomial
            assert u.cofactor * lead == u.monomial
            assert u.monomial in upper.red_set()

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_degree_monotonicity(self, seed):
        rng = random.Random(seed)
        ring = PolynomialRing(["z", "y", "x"])
        polys = [random_polynomial(rng, ring, 2) for _ in range(2)]
        previous = set()
        for d in (2, 3, 4, 5):
            ctx = TruncatedContext(ring, d)
            red = meet_family([operator_from_polynomial(ctx, f) for f in polys]).red_set()
            assert previous <= red
            previous = red


class TestFixtureSystem:
    def test_first_two_are_groebner(self):
        f1, f2, _ = system()
        assert is_groebner(TruncatedContext(RING, 5), [f1, f2])
        assert not is_groebner(TruncatedContext(RING, 6), system())

    def test_single_monomial_is_groebner(self):
        assert is_groebner(TruncatedContext(RING, 3), [RING.parse("x*y")])

    def test_completion(self):
        start = time.perf_counter()
        ctx = TruncatedContext(RING, 6)
        result = complete_groebner(ctx, system())
        assert time.perf_counter() - start < 10
        basis, useless = result
        f4 = RING.parse("x*z^3 - y*z^3")
        assert basis[:3] == system() and basis[3:] == [f4]
        assert result.certified and not result.warnings
        got = {(u.index, RING.format_monomial(u.cofactor)) for u in useless}
        assert got == {(3, "x"), (4, "x"), (4, "y")}
        assert {(u.index, u.pair) for u in useless} == {(3, 2), (4, 2), (4, 3)}

    def test_lattice_cofactors_cover_useless(self):
        ctx = TruncatedContext(RING, 6)
        basis = complete_groebner(ctx, system()).basis
        every = set(lattice_useless_cofactors(ctx, basis))
        m = RING.monomial
        assert {(3, m(x=1)), (4, m(x=1)), (4, m(y=1))} <= every

    def test_already_groebner_echoed(self):
        ring = PolynomialRing(["y", "x"])
        ctx = TruncatedContext(ring, 3)
        result = complete_groebner(ctx, [ring.parse("x - y")])
        assert result.basis == [ring.parse("x - y")]
        assert result.added == [] and result.useless == []

    def test_inhomogeneous_warning(self):
        ring = PolynomialRing(["y", "x"])
        result = complete_groebner(TruncatedContext(ring, 3), [ring.parse("x^2 - y"), ring.parse("x*y - 1")])
        assert any("inhomogeneous" in w for w in result.warnings)

    def test_stated_relations(self):
        f1, f2, f3 = system()
        f4 = RING.parse("x*z^3 - y*z^3")
        ctx = TruncatedContext(RING, 6)
        R = [f1, f2, f3, f4]
        p = RING.parse
        assert verify_syzygy_identity(ctx, [(p("x + y + z"), 4)], [(p("z^3"), 2), (p("-z^3"), 1)], R)
        assert verify_syzygy_identity(ctx, [(p("y"), 4)], [(p("z^2"), 3)], R)
        # the combination of f1, f2 equal to (x+y+z)f3
        assert verify_syzygy_identity(ctx, [(p("-y*z"), 1), (p("y*z"), 2)], [(p("x + y + z"), 3)], R)
        assert not verify_syzygy_identity(ctx, [(p("x"), 1)], [(p("x"), 2)], R)
        with pytest.raises(IndexError):
            verify_syzygy_identity(ctx, [(p("1"), 9)], [], R)


def test_truncation_is_exact_for_homogeneous_slices():
    # the degree-3 part of (f1, f2) computed at D=3 and D=5 agrees
    f1, f2, _ = system()
    slices = []
    for d in (3, 5):
        ctx = TruncatedContext(RING, d)
        red = meet_family([operator_from_polynomial(ctx, f) for f in (f1, f2)]).red_set()
        slices.append({m for m in red if m.degree <= 3})
    assert slices[0] == slices[1]
    assert len(list(itertools.chain(*slices))) > 0
