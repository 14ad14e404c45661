"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are pinned here, not configurable.  Orthogonality
deviations are measured against the natural scale sqrt(k! j!) (equivalently,
on unit-normalized Hermite polynomials): the raw products reach 25! and
float64 cannot cancel below roundoff at that magnitude.
"""

import math

import numpy as np
import pytest

from _oracles import grid_search_best_approx
from tailspace import analytic as A
from tailspace import cli
from tailspace import extremal as E
from tailspace import hamming as HM
from tailspace import operators as O
from tailspace import quadrature as Q
from tailspace.analytic import AnalyticPoly
from tailspace.hermite import (
    HermiteExpansion,
    hermite_eval,
    hermite_table,
    hermite_via_integral,
)
from tailspace.sampling import multi_indices, random_hermite

SEED = 20260810


def _report(number: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} [{name}]: {status}{suffix}")
    assert ok, f"criterion {number} ({name}) failed{suffix}"


def test_criterion_1_hermite_calculus():
    rule = Q.gauss_rule_for_degree(52, 1)
    table = hermite_table(26, rule.nodes)
    worst = 0.0
    for k in range(26):
        for j in range(k, 26):
            ip = float(np.dot(rule.weights, table[k] * table[j]))
            expect = math.factorial(k) if k == j else 0.0
            scale = math.sqrt(math.factorial(k) * math.factorial(j))
            worst = max(worst, abs(ip - expect) / scale)
    ok_orth = worst <= 1e-10

    rng = np.random.default_rng(SEED)
    worst_int = 0.0
    for dim in (1, 2):
        irule = Q.gauss_rule_for_degree(40, dim)
        points = [tuple(rng.uniform(-2.5, 2.5, dim)) for _ in range(3)]
        for alpha in multi_indices(dim, 15):
            for x in points:
                direct = math.prod(hermite_eval(alpha[j], x[j]) for j in range(dim))
                via = hermite_via_integral(alpha, x, irule)
                worst_int = max(worst_int, abs(via - direct) / max(abs(direct), 1.0))
    ok_int = worst_int <= 1e-10
    _report(
        1,
        "hermite calculus",
        ok_orth and ok_int,
        f"orthogonality dev {worst:.2e}, integral-vs-recurrence dev {worst_int:.2e}",
    )


def test_criterion_2_operator_identities():
    exact = True
    for alpha in multi_indices(2, 12) + multi_indices(1, 20):
        dim = len(alpha)
        h = HermiteExpansion(dim, {alpha: 1.0})
        if O.spectral_apply(h, O.number_operator()).coefficient(alpha) != complex(alpha.order):
            exact = False
        z = AnalyticPoly(dim, {alpha: 1.0})
        if O.spectral_apply(z, O.number_operator()).coefficient(alpha) != complex(alpha.order):
            exact = False

    rng = np.random.default_rng(SEED)
    worst = 0.0
    for i in range(100):
        g = random_hermite(1 + i % 2, 8, rng)
        grad = float(O.gradient_norm(g, 2.0))
        half = float(Q.lp_norm(O.spectral_apply(g, O.power(0.5)), 2.0))
        worst = max(worst, abs(grad - half) / max(half, 1e-30))
    _report(
        2,
        "operator identities",
        exact and worst <= 1e-9,
        f"eigenrelations exact, riesz p=2 dev {worst:.2e} on 100 polynomials",
    )


def test_criterion_3_analytic_theorem_suite():
    reports = A.run_random_suite(count=200, dim=1, degree=8, seed=SEED)
    failed = [r for r in reports if not r.passed]
    ok_suite = not failed

    worst_sharp = 0.0
    for d in range(1, 9):
        zd = AnalyticPoly(1, {(d,): 1.0})
        for p in (1.0, 1.5, 2.0, 3.0, 4.0):
            bern = A.check_inequality("bernstein", zd, p=p, d=d, tol=1e-3)
            worst_sharp = max(worst_sharp, abs(bern.slack))
            for t in (0.1, 0.5, 1.0):
                heat = A.check_inequality("heat_smoothing", zd, p=p, d=d, t=t, tol=1e-3)
                worst_sharp = max(worst_sharp, abs(heat.slack))
    ok_sharp = worst_sharp <= 1e-9
    _report(
        3,
        "analytic theorem suite",
        ok_suite and ok_sharp,
        f"{len(reports)} checks, {len(failed)} failures, sharp-witness |slack| {worst_sharp:.2e}",
    )


def test_criterion_4_moment_closed_form():
    worst = 0.0
    ok_bound = True
    for d in range(1, 7):
        zd = AnalyticPoly(1, {(d,): 1.0})
        ratio = float(Q.lp_norm(zd, 4)) / float(Q.lp_norm(zd, 2))
        expect = math.comb(2 * d, d) ** 0.25
        worst = max(worst, abs(ratio - expect) / expect)
        if ratio > 2 ** (d / 2.0) + 1e-12:
            ok_bound = False
    _report(
        4,
        "moment comparison closed form",
        worst <= 1e-8 and ok_bound,
        f"binomial ratio dev {worst:.2e}, all below 2^(d/2)",
    )


def test_criterion_5_best_approximation():
    from tailspace.approx import best_approx

    rng = np.random.default_rng(SEED)
    worst_p2 = 0.0
    worst_cert = 0.0
    for i in range(50):
        g = random_hermite(1 + i % 2, 6, rng)
        d = 1 + i % 3
        res = best_approx(g, d, 2.0)
        exact = math.sqrt(O.project(g, d + 1).l2_norm_squared())
        worst_p2 = max(worst_p2, abs(res.error - exact))
        worst_cert = max(worst_cert, res.certificate)

    worst_p4 = 0.0
    for coeffs in ([0.0, 0.0, 0.0, 1.0], [0.3, -0.8, 0.5, 1.2], [0.0, 1.0, 0.0, -0.7]):
        g = HermiteExpansion(1, {(k,): coeffs[k] for k in range(4)})
        for d in (1, 2):
            res = best_approx(g, d, 4.0)
            worst_cert = max(worst_cert, res.certificate)

            def gval(x, c=coeffs):
                rows = [np.ones_like(x), x, x * x - 1.0, x**3 - 3 * x]
                return c @ np.vstack(rows)

            oracle = grid_search_best_approx(gval, d, 4.0)
            worst_p4 = max(worst_p4, abs(res.error - oracle))
    _report(
        5,
        "best approximation",
        worst_p2 <= 1e-9 and worst_p4 <= 1e-5 and worst_cert <= 1e-7,
        f"p=2 dev {worst_p2:.2e}, p=4 oracle dev {worst_p4:.2e}, certificate {worst_cert:.2e}",
    )


def test_criterion_6_extremal_exact_cases():
    opts = E.SearchOptions(starts=8, seed=SEED)
    worst_f = 0.0
    for d in range(1, 7):
        est = E.estimate_constant("freud_F", 1, 2.0, d, d + 3, opts)
        worst_f = max(worst_f, abs(est.value - 1.0))

    m = E.estimate_constant("riesz_lower_m", 1, 2.0, 0, 6, opts)
    M = E.estimate_constant("riesz_upper_M", 1, 2.0, 0, 6, opts)
    worst_r = max(abs(m.value - 1.0), abs(M.value - 1.0))

    worst_t, worst_mass = 0.0, 1.0
    for d in range(1, 7):
        est = E.estimate_constant("corollary_T", 1, 2.0, d, d + 3, opts)
        worst_t = max(worst_t, abs(est.value - 1.0))
        mass = est.extremizer.l2_norm_squared()
        level = sum(
            abs(c) ** 2 * a.factorial()
            for a, c in est.extremizer.terms.items()
            if a.order == d
        )
        worst_mass = min(worst_mass, level / mass)
    ok = worst_f <= 1e-5 and worst_r <= 1e-5 and worst_t <= 1e-5 and worst_mass >= 0.99
    _report(
        6,
        "extremal constants, exact cases",
        ok,
        f"freud dev {worst_f:.2e}, riesz dev {worst_r:.2e}, corollary_T dev {worst_t:.2e},"
        f" level mass >= {worst_mass:.4f}",
    )


def test_criterion_7_duality_probe():
    opts = E.SearchOptions(starts=8, seed=SEED)
    ok = True
    details = []
    for p in (4 / 3, 2.0, 4.0):
        rows = E.duality_table(1, p, range(1, 5), 8, opts)
        ratios = [row["ratio"] for row in rows]
        band = max(ratios) / min(ratios)
        details.append(f"p={p:g} band {band:.3f}")
        if band > 10.0:
            ok = False
        if p == 2.0:
            lo, hi = 1 / math.sqrt(2) - 1e-3, 1 + 1e-3
            if not all(lo <= r <= hi for r in ratios):
                ok = False
    _report(7, "duality probe", ok, "; ".join(details))


def test_criterion_8_hypercube():
    rng = np.random.default_rng(SEED)
    worst_lap, worst_pars = 0.0, 0.0
    for _ in range(100):
        vals = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        f = HM.BooleanFunction(vals)
        spec = HM.cube_laplacian(f, "spectral")
        flip = HM.cube_laplacian(f, "flip")
        worst_lap = max(worst_lap, float(np.max(np.abs(spec.values - flip.values))))
        mass = float(np.sum(np.abs(f.walsh_array) ** 2))
        worst_pars = max(worst_pars, abs(HM.cube_lp_norm(f, 2.0) ** 2 - mass) / mass)

    worst_ext = 0.0
    for n in range(1, 7):
        for d in range(1, n + 1):
            est = HM.cube_extremal(n, d, 2.0, HM.SearchOptions(starts=6, seed=SEED))
            worst_ext = max(worst_ext, abs(est.value - d))
    ok = worst_lap <= 1e-12 and worst_pars <= 1e-12 and worst_ext <= 1e-9
    _report(
        8,
        "hypercube",
        ok,
        f"laplacian dev {worst_lap:.2e}, parseval dev {worst_pars:.2e},"
        f" p=2 extremal dev {worst_ext:.2e}",
    )


def test_criterion_9_determinism(tmp_path):
    suites = [
        ["verify", "analytic", "--n", "1", "--count", "10", "--seed", "21"],
        ["verify", "gauss", "--count", "10", "--seed", "21"],
        ["verify", "cube", "--n", "4", "--count", "10", "--seed", "21"],
        ["constant", "corollary", "--n", "1", "--p", "4", "--d", "2", "--D", "5",
         "--starts", "4", "--seed", "21"],
        ["duality", "--n", "1", "--p", "2", "--d", "2", "--D", "5",
         "--starts", "4", "--seed", "21"],
    ]
    ok = True
    for i, args in enumerate(suites):
        a, b = tmp_path / f"a{i}.csv", tmp_path / f"b{i}.csv"
        code_a = cli.main(args + ["--out", str(a)])
        code_b = cli.main(args + ["--out", str(b)])
        if code_a != 0 or code_b != 0 or a.read_bytes() != b.read_bytes():
            ok = False
    _report(9, "determinism", ok, f"{len(suites)} suites byte-identical on rerun")
