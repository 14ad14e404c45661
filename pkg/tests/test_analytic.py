import math

import numpy as np
import pytest

from tailspace import analytic as A
from tailspace import operators as O
from tailspace import quadrature as Q
from tailspace.analytic import AnalyticPoly
from tailspace.sampling import random_analytic


class TestNormsAndRotation:
    def test_constant_norm_is_one(self):
        for p in (1.0, 2.0, 3.5):
            assert float(A.analytic_lp_norm(AnalyticPoly(1, {(0,): 1}), p)) == pytest.approx(
                1.0, rel=1e-8
            )

    def test_z_l2(self):
        assert float(A.analytic_lp_norm(AnalyticPoly(1, {(1,): 1}), 2)) == pytest.approx(
            math.sqrt(2)
        )

    def test_zd_l2(self):
        z3 = AnalyticPoly(1, {(3,): 1})
        assert float(A.analytic_lp_norm(z3, 2)) == pytest.approx(math.sqrt(48))

    def test_rotate_z_by_pi(self):
        assert A.rotate(AnalyticPoly(1, {(1,): 1}), math.pi).allclose(
            AnalyticPoly(1, {(1,): -1}), rtol=1e-14
        )

    def test_rotate_zero_angle(self):
        f = random_analytic(1, 4, np.random.default_rng(0))
        assert A.rotate(f, 0.0) == f

    def test_rotation_invariance_of_norms(self):
        f = AnalyticPoly(1, {(0,): 1, (2,): 1})
        req = Q.NormRequest(3.0, 1e-7)
        base = A.analytic_lp_norm(f, req)
        rotated = A.analytic_lp_norm(A.rotate(f, 0.3), req)
        assert float(rotated) == pytest.approx(float(base), rel=1e-7)

    def test_complex_gradient(self):
        f = AnalyticPoly(2, {(2, 1): 1})
        gz = A.complex_gradient(f)
        assert gz[0] == AnalyticPoly(2, {(1, 1): 2})
        assert gz[1] == AnalyticPoly(2, {(2, 0): 1})

    def test_real_gradient_norm_includes_both_partials(self):
        # |grad z|: d/dx and d/dy both have modulus 1, so the length is sqrt(2)
        f = AnalyticPoly(1, {(1,): 1})
        assert float(A.real_gradient_norm(f, 2.0)) == pytest.approx(math.sqrt(2))

    def test_l2_mass_formula(self):
        f = random_analytic(1, 6, np.random.default_rng(1))
        assert float(A.analytic_lp_norm(f, 2)) == pytest.approx(
            math.sqrt(f.l2_norm_squared()), rel=1e-12
        )


class TestCheckInequality:
    def test_bernstein_sharp_on_zd(self):
        for d in (1, 4, 8):
            rep = A.check_inequality("bernstein", AnalyticPoly(1, {(d,): 1}), p=3.0, d=d)
            assert rep.passed and abs(rep.slack) <= 1e-9

    def test_heat_smoothing_sharp_on_zd(self):
        # both sides are norms of proportional functions, so the slack
        # cancels identically whatever grid the ladder settles on
        for d in (1, 5):
            rep = A.check_inequality(
                "heat_smoothing", AnalyticPoly(1, {(d,): 1}), p=2.5, d=d, t=0.4, tol=1e-4
            )
            assert rep.passed and abs(rep.slack) <= 1e-9

    def test_moment_example_z(self):
        rep = A.check_inequality("moment", AnalyticPoly(1, {(1,): 1}), p=2.0, q=4.0, d=1)
        assert rep.lhs == pytest.approx(8 ** 0.25, rel=1e-10)
        assert rep.rhs == pytest.approx(2.0, rel=1e-10)
        assert rep.passed and rep.slack == pytest.approx(2 - 8 ** 0.25, rel=1e-8)

    def test_moment_binomial_identity(self):
        d = 2
        rep = A.check_inequality("moment", AnalyticPoly(1, {(d,): 1}), p=2.0, q=4.0, d=d)
        assert rep.lhs / float(A.analytic_lp_norm(AnalyticPoly(1, {(d,): 1}), 2)) == pytest.approx(
            math.comb(2 * d, d) ** 0.25, rel=1e-9
        )

    def test_membership_violation_is_an_error(self):
        f = AnalyticPoly(1, {(1,): 1, (3,): 1})
        with pytest.raises(ValueError, match="tail"):
            A.check_inequality("heat_smoothing", f, p=2.0, d=2, t=0.1)
        with pytest.raises(ValueError, match="frequencies above"):
            A.check_inequality("bernstein", f, p=2.0, d=2)

    def test_parameter_validation(self):
        f = AnalyticPoly(1, {(1,): 1})
        with pytest.raises(ValueError):
            A.check_inequality("moment", f, p=4.0, q=2.0, d=1)
        with pytest.raises(ValueError):
            A.check_inequality("janson", f, p=1.0, q=2.0, rho=0.9)
        with pytest.raises(ValueError):
            A.check_inequality("nonsense", f, p=2.0)

    def test_zero_input_passes_and_is_flagged(self):
        rep = A.check_inequality("bernstein", AnalyticPoly(1, {}), p=2.0, d=3)
        assert rep.passed and rep.zero_input

    def test_interpolation_on_constants(self):
        rep = A.check_inequality("interpolation", AnalyticPoly(1, {(0,): 2.0}), p=2.0)
        assert rep.passed and rep.lhs == pytest.approx(0.0, abs=1e-12)

    def test_janson_rho_cap(self):
        f = random_analytic(1, 4, np.random.default_rng(2))
        rep = A.check_inequality("janson", f, p=2.0, q=4.0, rho=math.sqrt(0.5))
        assert rep.passed
        with pytest.raises(ValueError, match="rho"):
            A.check_inequality("janson", f, p=2.0, q=4.0, rho=0.9)


class TestRandomSuite:
    def test_full_random_suite_passes(self):
        reports = A.run_random_suite(count=60, seed=20260810)
        assert len(reports) == 60 * 16
        assert all(r.passed for r in reports)
        kinds = {r.kind for r in reports}
        assert kinds == set(A.KINDS)

    def test_two_dimensional_suite_even_p(self):
        reports = A.run_random_suite(
            count=12, dim=2, degree=4, seed=7, p_values=(2.0, 4.0),
            moment_pairs=((2.0, 4.0),),
        )
        assert all(r.passed for r in reports)

    def test_two_dimensional_odd_p_spot_checks(self):
        rng = np.random.default_rng(11)
        for _ in range(2):
            f = random_analytic(2, 3, rng)
            rep = A.check_inequality("bernstein", f, p=3.0, d=f.max_degree, tol=1e-5)
            assert rep.passed
            rep = A.check_inequality(
                "spectral_lower", O.project(f, 1), p=1.5, d=1, tol=1e-3
            )
            assert rep.passed

    def test_determinism(self):
        a = A.run_random_suite(count=5, seed=99)
        b = A.run_random_suite(count=5, seed=99)
        assert [r.as_row() for r in a] == [r.as_row() for r in b]

    def test_rotation_invariance_of_report_norms(self):
        rng = np.random.default_rng(12)
        theta = 0.77
        for _ in range(10):
            f = random_analytic(1, 6, rng)
            for p in (1.5, 2.0, 3.0):
                req = Q.NormRequest(p, A.achievable_tol(p, domain="complex"))
                base = A.analytic_lp_norm(f, req)
                rot = A.analytic_lp_norm(A.rotate(f, theta), req)
                allow = 2 * (base.achieved_tol + rot.achieved_tol + 1e-12) * float(base)
                assert abs(float(rot) - float(base)) <= allow

    def test_reverse_heat_chain(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            f = random_analytic(1, 6, rng)
            for t in (0.1, 0.5, 1.0):
                rep = A.check_inequality("reverse_heat", f, q=2.0, d=f.max_degree, t=t)
                assert rep.passed

    def test_moment_ratio_bounded_by_power(self):
        # lhs/rhs stays <= 1 and the normalized ratio is monotone-bounded in d
        prev = None
        for d in range(1, 7):
            f = AnalyticPoly(1, {(d,): 1})
            rep = A.check_inequality("moment", f, p=2.0, q=4.0, d=d)
            ratio = rep.lhs / rep.rhs
            assert ratio <= 1 + 1e-12
            if prev is not None:
                assert ratio <= prev + 1e-12 or ratio <= 1
            prev = ratio


def test_gradient_ratio_reported_not_asserted():
    f = AnalyticPoly(1, {(3,): 1.0})
    ratio = A.gradient_ratio(f, 3, 2.0)
    # for z^d the ratio is sqrt(2) d |z^{d-1}| / (sqrt(d) |z^d|) in L2
    expected = (
        math.sqrt(2) * 3 * math.sqrt(2**2 * math.factorial(2))
        / (math.sqrt(3) * math.sqrt(2**3 * math.factorial(3)))
    )
    assert ratio == pytest.approx(expected, rel=1e-9)
