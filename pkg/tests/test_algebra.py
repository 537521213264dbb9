import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgcore.algebra import (
    EQUAL,
    GREATER,
    LESS,
    AlgebraicReal,
    ContextMismatchError,
    FieldElement,
    UniPoly,
    UnsupportedDegreeError,
    compare,
    decimal_str,
    field_arith,
    irreducible_factors,
    order_name,
    rational_roots,
    real_roots,
    squarefree_part,
    sturm_chain,
    sturm_count,
)


def P(*coeffs):
    """Polynomial from highest-degree-first integer coefficients."""
    return UniPoly(list(reversed(coeffs)))


class TestUniPoly:
    def test_divmod_roundtrip(self):
        a = P(1, -4, -5, 18, 8)
        b = P(1, -2, -1)
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero  # b divides a exactly

    def test_squarefree_part(self):
        p = P(1, -2, 1) * P(1, -3)  # (x-1)^2 (x-3)
        assert squarefree_part(p) == P(1, -4, 3).monic()

    def test_primitive_integer(self):
        p = UniPoly([Fraction(1, 2), Fraction(-3, 4)])
        q = p.primitive_integer()
        # scaled to coprime integers, leading coefficient made positive
        assert q.coeffs == (Fraction(-2), Fraction(3))

    def test_str(self):
        assert str(P(1, -3, 1)) == "x^2 - 3*x + 1"


class TestRationalRoots:
    def test_integer_roots(self):
        assert rational_roots(P(1, -5, 6)) == [2, 3]

    def test_fractional_root(self):
        # (2x - 1)(x + 3) = 2x^2 + 5x - 3
        assert rational_roots(P(2, 5, -3)) == [-3, Fraction(1, 2)]

    def test_zero_root(self):
        assert rational_roots(P(1, -2, 0)) == [0, 2]


class TestRealRoots:
    def test_two_integer_roots(self):
        roots = real_roots(P(1, -5, 6))
        assert [r.as_fraction() for r in roots] == [3, 2]
        assert all(r.minpoly.degree == 1 for r in roots)

    def test_golden_ratio_pair(self):
        # roots (3 +- sqrt(5)) / 2, appearing as eigenvalues later
        roots = real_roots(P(1, -3, 1))
        assert len(roots) == 2
        hi, lo = roots
        assert abs(hi.to_float() - 2.618033988749895) < 1e-12
        assert abs(lo.to_float() - 0.3819660112501051) < 1e-12
        assert hi.minpoly == lo.minpoly == P(1, -3, 1)

    def test_mixed_rational_and_quadratic(self):
        # (x-4)(x+2)(x^2-2x-1) = x^4 - 4x^3 - 5x^2 + 18x + 8
        p = P(1, -4, -5, 18, 8)
        roots = real_roots(p)
        assert len(roots) == 4
        vals = [r.to_float() for r in roots]
        s2 = math.sqrt(2)
        expect = [4.0, 1 + s2, 1 - s2, -2.0]
        assert all(abs(a - b) < 1e-12 for a, b in zip(vals, expect))
        assert roots[0].as_fraction() == 4
        assert roots[3].as_fraction() == -2
        for r in (roots[1], roots[2]):
            assert r.minpoly == P(1, -2, -1)
            lo, hi = r.interval
            # direct substitution: the isolating interval brackets a sign change
            assert r.minpoly.evaluate(lo) * r.minpoly.evaluate(hi) < 0

    def test_multiplicities_collapsed(self):
        roots = real_roots(P(1, -2, 1))  # (x-1)^2
        assert [r.as_fraction() for r in roots] == [1]

    def test_biquadratic_split(self):
        # (x^2-2)(x^2-3): reducible quartic without rational roots
        p = P(1, 0, -5, 0, 6)
        roots = real_roots(p)
        floats = [r.to_float() for r in roots]
        expect = sorted([math.sqrt(3), math.sqrt(2), -math.sqrt(2), -math.sqrt(3)],
                        reverse=True)
        assert all(abs(a - b) < 1e-12 for a, b in zip(floats, expect))
        assert {r.minpoly for r in roots} == {P(1, 0, -2), P(1, 0, -3)}

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            real_roots(UniPoly([]))

    def test_degree_five_residual_rejected(self):
        # x^5 - x - 1 is irreducible; the factoring routines cannot certify it
        with pytest.raises(UnsupportedDegreeError):
            real_roots(P(1, 0, 0, 0, -1, -1))

    def test_pairwise_strictly_decreasing(self):
        roots = real_roots(P(1, -4, -5, 18, 8))
        for a, b in zip(roots, roots[1:]):
            assert compare(a, b) == GREATER

    def test_isolation_invariants(self):
        for r in real_roots(P(1, -4, -5, 18, 8)):
            lo, hi = r.interval
            if r.is_rational:
                assert lo == hi == r.as_fraction()
            else:
                assert r.minpoly.evaluate(lo) * r.minpoly.evaluate(hi) < 0
                assert sturm_count(sturm_chain(r.minpoly), lo, hi) == 1


class TestCompare:
    def test_one_plus_sqrt2_vs_two(self):
        r = real_roots(P(1, -2, -1))[0]  # 1 + sqrt(2)
        assert compare(r, 2) == GREATER

    def test_golden_vs_decimal(self):
        hi = real_roots(P(1, -3, 1))[0]  # (3+sqrt(5))/2 = 2.61803...
        assert compare(hi, Fraction(2618, 1000)) == GREATER
        assert compare(hi, Fraction(2619, 1000)) == LESS

    def test_rational_equal(self):
        assert compare(-2, -2) == EQUAL
        assert compare(AlgebraicReal.from_rational(-2), Fraction(-2)) == EQUAL

    def test_same_root_two_isolations(self):
        a = real_roots(P(1, -2, -1))[0]
        b = AlgebraicReal(P(1, -2, -1), Fraction(2), Fraction(3))
        assert compare(a, b) == EQUAL

    def test_conjugates_not_equal(self):
        hi, lo = real_roots(P(1, -3, 1))
        assert compare(hi, lo) == GREATER

    def test_distinct_minpolys_never_equal(self):
        s2 = real_roots(P(1, 0, -2))[0]
        s3 = real_roots(P(1, 0, -3))[0]
        assert compare(s3, s2) == GREATER

    def test_order_names(self):
        assert order_name(GREATER) == "Greater"
        assert order_name(EQUAL) == "Equal"
        assert order_name(LESS) == "Less"


@st.composite
def small_rationals(draw):
    num = draw(st.integers(-30, 30))
    den = draw(st.integers(1, 12))
    return Fraction(num, den)


@st.composite
def algebraic_values(draw):
    """Rationals and quadratic irrationals a + b*sqrt(n)."""
    kind = draw(st.integers(0, 2))
    if kind == 0:
        return AlgebraicReal.from_rational(draw(small_rationals()))
    n = draw(st.sampled_from([2, 3, 5, 7]))
    a = draw(st.integers(-5, 5))
    sign = draw(st.sampled_from([-1, 1]))
    # root of (x - a)^2 = n, i.e. x^2 - 2a x + (a^2 - n)
    p = UniPoly([a * a - n, -2 * a, 1])
    roots = real_roots(p)
    return roots[0] if sign > 0 else roots[1]


class TestCompareProperties:
    @settings(max_examples=60, deadline=None)
    @given(algebraic_values(), algebraic_values())
    def test_antisymmetry(self, a, b):
        assert compare(a, b) == -compare(b, a)

    @settings(max_examples=60, deadline=None)
    @given(algebraic_values(), algebraic_values(), algebraic_values())
    def test_transitivity(self, a, b, c):
        if compare(a, b) != LESS or compare(b, c) != LESS:
            return
        assert compare(a, c) == LESS


@pytest.fixture
def silver():
    """theta = 1 + sqrt(2), the top root of x^2 - 2x - 1."""
    return real_roots(P(1, -2, -1))[0]


class TestFieldElement:
    def test_generator_square_reduces(self, silver):
        theta = FieldElement.generator(silver)
        sq = field_arith(theta, theta, "mul")
        assert sq.rep == UniPoly([1, 2])  # theta^2 = 2 theta + 1

    def test_theta_minus_one_squared_is_two(self, silver):
        theta = FieldElement.generator(silver)
        v = (theta - 1) * (theta - 1)
        assert v.as_rational() == 2

    def test_additive_identity(self, silver):
        x = FieldElement(silver, UniPoly([Fraction(1, 3), 2]))
        assert (x + 0) == x

    def test_as_rational(self, silver):
        assert FieldElement.constant(silver, Fraction(21, 8)).as_rational() == Fraction(21, 8)
        assert FieldElement.generator(silver).as_rational() is None

    def test_division(self, silver):
        theta = FieldElement.generator(silver)
        one = (theta * theta) / (theta * theta)
        assert one.as_rational() == 1
        # 1/theta = theta - 2 since theta^2 - 2 theta - 1 = 0
        assert (1 / theta).rep == UniPoly([-2, 1])

    def test_divide_by_zero(self, silver):
        theta = FieldElement.generator(silver)
        with pytest.raises(ZeroDivisionError):
            theta / FieldElement.constant(silver, 0)

    def test_context_mismatch(self, silver):
        other = real_roots(P(1, 0, -3))[0]
        with pytest.raises(ContextMismatchError):
            FieldElement.generator(silver) + FieldElement.generator(other)

    def test_sign(self, silver):
        theta = FieldElement.generator(silver)
        assert theta.sign() == 1
        assert (theta - 3).sign() == -1
        assert (theta - theta).sign() == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8),
           st.integers(-8, 8), st.sampled_from(["add", "sub", "mul"]))
    def test_arithmetic_matches_numeric(self, a0, a1, b0, b1, op):
        ctx = real_roots(P(1, -2, -1))[0]
        x = FieldElement(ctx, UniPoly([a0, a1]))
        y = FieldElement(ctx, UniPoly([b0, b1]))
        z = field_arith(x, y, op)
        fx, fy, fz = x.to_float(), y.to_float(), z.to_float()
        ref = {"add": fx + fy, "sub": fx - fy, "mul": fx * fy}[op]
        assert abs(fz - ref) < 1e-9


class TestRefine:
    def test_rational_point(self):
        a = AlgebraicReal.from_rational(2)
        assert a.refine(Fraction(1, 100)) == (2, 2)

    def test_silver_refinement(self, silver):
        lo, hi = silver.refine(Fraction(1, 1000))
        assert hi - lo <= Fraction(1, 1000)
        v = 1 + math.sqrt(2)
        assert float(lo) <= v <= float(hi)

    def test_monotone_shrink(self):
        a = real_roots(P(1, -3, 1))[1]  # (3 - sqrt(5))/2
        w1 = a.refine(Fraction(1, 100))
        w2 = a.refine(Fraction(1, 10**6))
        assert w2[0] >= w1[0] and w2[1] <= w1[1]
        assert w2[1] - w2[0] <= Fraction(1, 10**6)
        assert float(w2[0]) <= 0.3819660112501051 <= float(w2[1])


class TestDecimalStr:
    def test_integers_render_bare(self):
        assert decimal_str(AlgebraicReal.from_rational(6)) == "6"
        assert decimal_str(Fraction(-3)) == "-3"

    def test_three_decimals(self):
        hi, lo = real_roots(P(1, -3, 1))
        assert decimal_str(hi) == "2.618"
        assert decimal_str(lo) == "0.382"
        silver = real_roots(P(1, -2, -1))
        assert decimal_str(silver[0]) == "2.414"
        assert decimal_str(silver[1]) == "-0.414"

    def test_half_to_even_on_rationals(self):
        assert decimal_str(Fraction(1, 2), places=0) == "0"
        assert decimal_str(Fraction(3, 2), places=0) == "2"


class TestIrreducibleFactors:
    def test_quartic_into_quadratics(self):
        p = P(1, 0, -5, 0, 6)  # (x^2-2)(x^2-3)
        facs = irreducible_factors(p)
        polys = sorted(f.primitive_integer().coeffs for f, _ in facs)
        assert polys == sorted([P(1, 0, -2).coeffs, P(1, 0, -3).coeffs])

    def test_irreducible_quartic_kept(self):
        p = P(1, 0, 0, 0, -2)  # x^4 - 2, irreducible
        facs = irreducible_factors(p)
        assert len(facs) == 1 and facs[0][0] == p.monic()

    def test_general_quartic_split(self):
        # (x^2 - 2x - 1)(x^2 + x - 1) has no rational roots
        p = P(1, -2, -1) * P(1, 1, -1)
        facs = irreducible_factors(p)
        polys = sorted(f.primitive_integer().coeffs for f, _ in facs)
        assert polys == sorted([P(1, -2, -1).coeffs, P(1, 1, -1).coeffs])
