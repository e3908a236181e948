import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given

from cinfty.core import ONE, ZERO, CSeq, cexp
from cinfty.errors import (GrowthBoundViolated, NoGrowthBound, OutsideDomain, RadiusBoundary,
                           ThetaMember)
from cinfty.series import (CATALOG_SERIES, Growth, VectorPowerSeries, binomial_sqrt_coeffs,
                           certify_uniform_convergence, elementary_map, exp_series,
                           from_scalar_coeffs, geometric_series, koebe_series, moebius,
                           polynomial, power, reciprocal, series_eval, sqrt_binomial,
                           sqrt_binomial_series, zhukovsky)

from helpers import polydisc_points

# about 16 ulp at unit magnitude: below this the partial sums only move by rounding
ROUNDING = 4e-15


def disc_points(rng, count, r):
    return [cmath.rect(r * math.sqrt(rng.random()), 2 * math.pi * rng.random())
            for _ in range(count)]


class TestGrowth:
    def test_geometric_tail_is_exact_sum(self):
        g = Growth("geometric", 2.0, 1.5)
        r, P = 0.9, 7
        exact = sum(2.0 * (r / 1.5) ** p for p in range(P + 1, 2000))
        assert g.tail(P, r) == pytest.approx(exact, rel=1e-12)

    def test_koebe_tail_closed_form(self):
        g = Growth("polynomial", 1.0, degree=1.0)
        r, P = 0.9, 20
        exact = sum(p * r ** p for p in range(P + 1, 5000))
        assert g.tail(P, r) == pytest.approx(exact, rel=1e-12)

    def test_factorial_tail_dominates(self):
        g = Growth("factorial")
        for P in (0, 3, 10, 25):
            for r in (0.1, 0.5, 0.99, 3.0):
                exact = float(sum(sp.Rational(1) / sp.factorial(p) * sp.Float(r, 30) ** p
                                  for p in range(P + 1, P + 80)))
                assert exact <= g.tail(P, r) <= math.exp(r) * exact * (1 + 1e-12)

    def test_polynomial_general_degree_dominates(self):
        g = Growth("polynomial", 1.0, degree=2.0)
        for P in (10, 40):
            exact = sum(p ** 2 * 0.5 ** p for p in range(P + 1, 3000))
            assert exact <= g.tail(P, 0.5)

    def test_radius(self):
        assert Growth("geometric", rho=2).radius == 2
        assert Growth("polynomial", degree=3).radius == 1
        assert Growth("factorial").radius == math.inf
        assert Growth("geometric").tail(3, 1.0) == math.inf

    def test_bad_growth(self):
        with pytest.raises(ValueError):
            Growth("hyper")
        with pytest.raises(ValueError):
            Growth("geometric", rho=0)

    def test_declared_bound_enforced(self):
        with pytest.raises(GrowthBoundViolated):
            from_scalar_coeffs([1, 2, 4], Growth("geometric", 1.0, 1.0))

    def test_json_round_trip(self):
        for name, make in CATALOG_SERIES.items():
            S = make(12)
            assert VectorPowerSeries.from_json(S.to_json()) == S, name


class TestCatalogCoefficients:
    def test_sqrt_coefficients_match_symbolic_expansion(self):
        z = sp.symbols("z")
        ref = sp.Poly(sp.series(sp.sqrt(1 - z), z, 0, 21).removeO(), z).all_coeffs()[::-1]
        ours = binomial_sqrt_coeffs(20)
        assert ours[:3] == [1.0, -0.5, -0.125]
        for a, b in zip(ours, ref):
            assert a == pytest.approx(float(b), rel=1e-14)

    def test_exp_coefficients(self):
        S = exp_series(20)
        for p, A in enumerate(S.coeffs):
            assert A.tail == pytest.approx(float(Fraction(1, math.factorial(p))), rel=1e-15)

    def test_koebe_and_geometric(self):
        assert [A.tail for A in koebe_series(6).coeffs] == list(range(7))
        assert [A.tail for A in geometric_series(4).coeffs] == [0, 1, 1, 1, 1]


class TestSeriesEval:
    def test_constant_terms(self):
        assert series_eval(exp_series(), ZERO).value == ONE
        assert series_eval(sqrt_binomial_series(), ZERO).value == ONE

    def test_koebe_at_half(self):
        v = series_eval(koebe_series(), CSeq.const(0.5))
        assert abs(v.value.tail - 2.0) <= v.tail_bound + ROUNDING
        assert v.bounded

    def test_coordinatewise(self):
        Z = CSeq((0.1, -0.2j, 0.3 + 0.3j), 0.4)
        v = series_eval(exp_series(), Z).value
        for k in range(4):
            assert abs(v[k] - cmath.exp(Z[k])) < 1e-15

    def test_coordinate_dependent_coefficients(self):
        S = VectorPowerSeries((CSeq((1, 2), 0), CSeq((0, 1), 3)))
        assert series_eval(S, CSeq.const(2)).value == CSeq((1, 4), 6)
        assert series_eval(S, CSeq.const(2)).tail_bound == math.inf

    def test_outside_radius(self):
        with pytest.raises(OutsideDomain) as exc:
            series_eval(sqrt_binomial_series(), CSeq((0.5, 1.0), 0))
        assert exc.value.index == 1

    def test_order_range(self):
        with pytest.raises(ValueError):
            series_eval(exp_series(10), ONE, order=11)

    @pytest.mark.parametrize("name,closed", [("exp", cmath.exp),
                                             ("sqrt_binomial", lambda z: cmath.sqrt(1 - z))])
    def test_error_decreases_and_respects_bound(self, name, closed):
        S = CATALOG_SERIES[name](200 if name == "sqrt_binomial" else 60)
        rng = np.random.default_rng(11)
        pts = disc_points(rng, 50, 0.5)
        Z = CSeq.from_coords(pts)
        ref = [closed(z) for z in pts]
        prev = None
        for n in range(S.order + 1):
            v = series_eval(S, Z, n)
            err = [abs(v.value[k] - ref[k]) for k in range(50)]
            assert max(err) <= v.tail_bound + ROUNDING
            if prev is not None:
                assert all(e <= p or p <= ROUNDING for e, p in zip(err, prev))
            prev = err

    @given(polydisc_points(radius=0.8))
    def test_elementary_exp_matches_cexp(self, Z):
        a = elementary_map("exp", Z)
        b = series_eval(exp_series(), Z).value
        for x, y in zip(a.coords(), b.coords()):
            assert abs(x - y) <= 1e-10
        assert a == cexp(Z)

    @given(polydisc_points(radius=0.5))
    def test_sqrt_series_squared(self, Z):
        W = series_eval(sqrt_binomial_series(), Z).value
        for x, z in zip((W * W).coords(), Z.coords()):
            assert abs(x - (1 - z)) <= 1e-8


class TestCertificate:
    def test_exp(self):
        cert = certify_uniform_convergence(exp_series(), 0.5, 1e-10)
        n0 = cert.order_needed
        remainder = sum(0.5 ** p / math.factorial(p) for p in range(n0 + 1, n0 + 40))
        assert remainder <= cert.tail_bound <= 1e-10
        assert 0.5 ** (n0 + 1) * math.e / math.factorial(n0 + 1) >= cert.tail_bound
        assert Growth("factorial").tail(n0 - 1, 0.5) > 1e-10

    def test_koebe(self):
        cert = certify_uniform_convergence(koebe_series(), 0.9, 1e-6)
        n0 = cert.order_needed
        assert sum(p * 0.9 ** p for p in range(n0 + 1, 5000)) <= 1e-6
        assert sum(p * 0.9 ** p for p in range(n0, 5000)) > 1e-6

    def test_rejects_closed_radius(self):
        for r in (1.0, 1.5, 0.0, -0.1):
            with pytest.raises(RadiusBoundary):
                certify_uniform_convergence(exp_series(), r, 1e-6)

    def test_needs_growth(self):
        with pytest.raises(NoGrowthBound):
            certify_uniform_convergence(from_scalar_coeffs([1, 1]), 0.5, 1e-3)

    @pytest.mark.parametrize("name", ["exp", "sqrt_binomial", "koebe", "geometric"])
    def test_residual_after_n0(self, name):
        cert = certify_uniform_convergence(CATALOG_SERIES[name](1), 0.5, 1e-9)
        n0 = cert.order_needed
        S = CATALOG_SERIES[name](n0 + 10)
        rng = np.random.default_rng(5)
        Z = CSeq.from_coords(disc_points(rng, 30, 0.5))
        a = series_eval(S, Z, n0).value
        b = series_eval(S, Z, n0 + 10).value
        assert max(abs(x - y) for x, y in zip(a.coords(), b.coords())) <= 1e-9


class TestElementary:
    def test_examples(self):
        assert zhukovsky(ONE) == ONE
        assert power(CSeq((1j,), 1j), 2) == CSeq.const(-1)
        Z = CSeq((0.3, 2j), -1)
        assert moebius(Z) == Z

    def test_moebius_general(self):
        Z = CSeq((0.3, 2j), -1)
        W = moebius(Z, 2, 1, 1, 3)
        for w, z in zip(W.coords(), Z.coords()):
            assert abs(w - (2 * z + 1) / (z + 3)) < 1e-15
        with pytest.raises(ThetaMember):
            moebius(CSeq.const(-3), 2, 1, 1, 3)

    def test_polynomial_and_reciprocal(self):
        Z = CSeq((2,), 1j)
        assert polynomial(Z, [1, 0, 1]) == CSeq((5,), 0)
        assert reciprocal(Z, 1) == CSeq((1,), 1 / (1j - 1))
        with pytest.raises(ThetaMember):
            reciprocal(CSeq((1, 0), 1), 0)
        with pytest.raises(ValueError):
            power(Z, 0)

    def test_sqrt_domain(self):
        with pytest.raises(OutsideDomain):
            sqrt_binomial(CSeq.const(1))

    def test_dispatch(self):
        assert elementary_map("power", CSeq.const(2), n=3) == CSeq.const(8)
        with pytest.raises(ValueError):
            elementary_map("tan", ONE)
