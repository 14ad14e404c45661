import math

import numpy as np
import pytest

from tailspace import operators as O
from tailspace import quadrature as Q
from tailspace.analytic import AnalyticPoly
from tailspace.hermite import (
    HermiteExpansion,
    MonomialExpansion,
    to_hermite_basis,
    to_monomial_basis,
)
from tailspace.sampling import multi_indices, random_analytic, random_hermite


class TestSpectralApply:
    def test_number_operator_on_h3(self):
        h3 = HermiteExpansion(1, {(3,): 1})
        assert O.spectral_apply(h3, O.number_operator()) == HermiteExpansion(1, {(3,): 3})

    def test_heat_fixes_constants(self):
        h0 = HermiteExpansion(1, {(0,): 1})
        assert O.spectral_apply(h0, O.heat(0.9)) == h0

    def test_inverse_sqrt_on_h4(self):
        h4 = HermiteExpansion(1, {(4,): 1})
        assert O.spectral_apply(h4, O.power(-0.5)) == HermiteExpansion(1, {(4,): 0.5})

    def test_negative_power_needs_zero_mean(self):
        g = HermiteExpansion(1, {(0,): 1, (2,): 1})
        with pytest.raises(ValueError, match="zero-mean"):
            O.spectral_apply(g, O.power(-1))

    @pytest.mark.parametrize("dim", [1, 2])
    def test_eigenrelation_exact(self, dim):
        for alpha in multi_indices(dim, 20 if dim == 1 else 10):
            h = HermiteExpansion(dim, {alpha: 1.0})
            lh = O.spectral_apply(h, O.number_operator())
            assert lh.coefficient(alpha) == complex(alpha.order)
            z = AnalyticPoly(dim, {alpha: 1.0})
            lz = O.spectral_apply(z, O.number_operator())
            assert lz.coefficient(alpha) == complex(alpha.order)

    def test_multipliers_compose(self):
        g = random_hermite(1, 6, np.random.default_rng(0))
        g = O.project(g, 1)
        twice = O.spectral_apply(O.spectral_apply(g, O.power(0.5)), O.power(0.5))
        once = O.spectral_apply(g, O.power(1.0))
        assert twice.allclose(once, rtol=1e-14)

    def test_semigroup_law_exact(self):
        g = random_hermite(2, 5, np.random.default_rng(1))
        lhs = O.spectral_apply(O.spectral_apply(g, O.heat(0.3)), O.heat(0.45))
        rhs = O.spectral_apply(g, O.heat(0.75))
        for alpha in set(lhs.terms) | set(rhs.terms):
            assert abs(lhs.coefficient(alpha) - rhs.coefficient(alpha)) <= 1e-15

    def test_heat_rejects_negative_time(self):
        with pytest.raises(ValueError):
            O.heat(-0.1)


class TestGradient:
    def test_constant(self):
        parts = O.gradient(HermiteExpansion(2, {(0, 0): 1}))
        assert all(part.is_zero for part in parts)

    def test_h2_derivative(self):
        (part,) = O.gradient(HermiteExpansion(1, {(2,): 1}))
        assert part == HermiteExpansion(1, {(1,): 2})

    def test_product_term(self):
        parts = O.gradient(HermiteExpansion(2, {(1, 1): 1}))
        assert parts[0] == HermiteExpansion(2, {(0, 1): 1})
        assert parts[1] == HermiteExpansion(2, {(1, 0): 1})

    def test_degree_drops_by_one(self):
        g = random_hermite(2, 6, np.random.default_rng(2))
        for part in O.gradient(g):
            assert part.max_degree == g.max_degree - 1

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(3)
        g = random_hermite(2, 6, rng)
        parts = O.gradient(g)
        step = 1e-5
        for _ in range(20):
            x = rng.uniform(-2, 2, 2)
            for j in range(2):
                e = np.zeros(2)
                e[j] = step
                fd = (g.evaluate(x + e) - g.evaluate(x - e)) / (2 * step)
                exact = parts[j].evaluate(x)
                assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


class TestGeneratorComposition:
    # oracle: L = -(Delta - x . grad) by symbolic monomial differentiation
    @pytest.mark.parametrize("dim", [1, 2])
    def test_against_monomial_calculus(self, dim):
        rng = np.random.default_rng(4 + dim)
        for _ in range(5):
            h = random_hermite(dim, 10 if dim == 1 else 6, rng)
            m = to_monomial_basis(h)
            acc = MonomialExpansion(dim, {})
            for j in range(dim):
                dj = m.derivative(j)
                xj = MonomialExpansion(dim, {tuple(int(i == j) for i in range(dim)): 1})
                acc = acc + xj * dj - dj.derivative(j)
            via_monomial = to_hermite_basis(acc)
            spectral = O.spectral_apply(h, O.number_operator())
            assert via_monomial.allclose(spectral, rtol=1e-9, atol=1e-9)


class TestProject:
    def test_low_band(self):
        g = HermiteExpansion(1, {(2,): 1, (1,): 1})
        assert O.project(g, 0, 1) == HermiteExpansion(1, {(1,): 1})

    def test_tail(self):
        g = HermiteExpansion(1, {(2,): 1, (1,): 1})
        assert O.project(g, 2) == HermiteExpansion(1, {(2,): 1})

    def test_identity(self):
        g = random_hermite(2, 5, np.random.default_rng(5))
        assert O.project(g, 0) == g

    def test_idempotent_and_complementary(self):
        g = random_hermite(1, 8, np.random.default_rng(6))
        low = O.project(g, 0, 3)
        assert O.project(low, 0, 3) == low
        assert (low + O.project(g, 4)) == g

    def test_expectation(self):
        g = HermiteExpansion(1, {(0,): 2.5, (3,): 1})
        assert O.expectation(g) == 2.5
        assert O.project(g, 0, 0) == HermiteExpansion(1, {(0,): 2.5})

    def test_bad_band(self):
        with pytest.raises(ValueError):
            O.project(HermiteExpansion(1, {(1,): 1}), 3, 1)


class TestDilate:
    def test_scales_z_squared(self):
        f = AnalyticPoly(1, {(2,): 1})
        assert O.dilate(f, 0.5) == AnalyticPoly(1, {(2,): 0.25})

    def test_identity_at_one(self):
        f = random_analytic(1, 5, np.random.default_rng(7))
        assert O.dilate(f, 1.0) == f

    def test_matches_heat_on_analytic(self):
        f = AnalyticPoly(1, {(1,): 3, (3,): 1})
        t = 0.7
        assert O.dilate(f, math.exp(-t)).allclose(
            O.spectral_apply(f, O.heat(t)), rtol=1e-15
        )

    def test_range_check(self):
        f = AnalyticPoly(1, {(1,): 1})
        for rho in (0.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                O.dilate(f, rho)

    def test_rejects_real_domain(self):
        with pytest.raises(ValueError):
            O.dilate(HermiteExpansion(1, {(1,): 1}), 0.5)


class TestParsevalIdentities:
    def test_gradient_equals_half_power_at_p2(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            g = random_hermite(2, 6, rng)
            grad = float(O.gradient_norm(g, 2.0))
            half = float(Q.lp_norm(O.spectral_apply(g, O.power(0.5)), 2.0))
            coeff = math.sqrt(
                sum(a.order * abs(c) ** 2 * a.factorial() for a, c in g.terms.items())
            )
            assert grad == pytest.approx(half, rel=1e-9)
            assert grad == pytest.approx(coeff, rel=1e-9)


class TestSemigroupIntegralOracle:
    # the t-integral representations of the negative powers, as quadrature
    def test_factors(self):
        for k in range(1, 25):
            assert O.semigroup_integral_factor(k, -1.0) == pytest.approx(1.0 / k, abs=1e-6)
            assert O.semigroup_integral_factor(k, -0.5) == pytest.approx(k**-0.5, abs=1e-6)

    def test_operator_matches_spectral(self):
        g = O.project(random_hermite(1, 8, np.random.default_rng(9)), 1)
        for s in (-1.0, -0.5):
            via_integral = O.inverse_power_via_integral(g, s)
            spectral = O.spectral_apply(g, O.power(s))
            assert via_integral.allclose(spectral, rtol=1e-6)

    def test_divergent_at_zero_frequency(self):
        with pytest.raises(ValueError):
            O.semigroup_integral_factor(0, -1.0)
