"""Identity and cross-check suites behind the ``verify`` commands.

Each check compresses many cases into one report row carrying the worst
observed deviation and its tolerance.  These are the package's standing
oracles: recurrence vs integral definition, quadrature vs coefficient
formulas, spectral vs pointwise Laplacians, and the p = 2 cases where the
extremal constants are known exactly.
"""

from __future__ import annotations

import math

import numpy as np

from . import hamming, operators, quadrature
from .hermite import HermiteExpansion, hermite_eval, hermite_via_integral
from .sampling import DEFAULT_SEED, multi_indices, random_hermite


def _row(check: str, n: int, cases: int, max_err: float, tol: float) -> dict:
    return {
        "check": check,
        "n": n,
        "cases": cases,
        "max_err": max_err,
        "tol": tol,
        "pass": max_err <= tol,
    }


def run_gauss_checks(n: int = 1, degree: int = 8, count: int = 100, seed: int = DEFAULT_SEED) -> list[dict]:
    """Operator-calculus identities on random polynomials plus exact tables."""
    rng = np.random.default_rng(seed)
    rows = []

    # orthogonality <H_k, H_j> = 0 (k != j) and <H_k, H_k> = k!
    # off-diagonal deviations are read against the scale sqrt(k! j!): the raw
    # products reach 30! and cannot cancel below float roundoff at that size
    err_off, err_diag, cases = 0.0, 0.0, 0
    rule = quadrature.gauss_rule_for_degree(60, 1)
    table = HermiteExpansion._coord_table(rule.nodes, 30)
    for k in range(31):
        for j in range(k, 31):
            ip = float(np.dot(rule.weights, table[k] * table[j]))
            cases += 1
            if k == j and k <= 25:
                err_diag = max(err_diag, abs(ip - math.factorial(k)) / math.factorial(k))
            elif k != j:
                scale = math.sqrt(math.factorial(k) * math.factorial(j))
                err_off = max(err_off, abs(ip) / scale)
    rows.append(_row("hermite_orthogonality_offdiag", 1, cases, err_off, 1e-10))
    rows.append(_row("hermite_norms_factorial", 1, 26, err_diag, 1e-10))

    # integral definition vs recurrence, |alpha| <= 15
    err, cases = 0.0, 0
    for dim in range(1, min(n, 2) + 1):
        irule = quadrature.gauss_rule_for_degree(40, dim)
        points = [tuple(rng.uniform(-2.5, 2.5, dim)) for _ in range(3)]
        for alpha in multi_indices(dim, 15):
            for x in points:
                via_integral = hermite_via_integral(alpha, x, irule)
                direct = math.prod(hermite_eval(alpha[j], x[j]) for j in range(dim))
                err = max(err, abs(via_integral - direct) / max(abs(direct), 1.0))
                cases += 1
    rows.append(_row("hermite_integral_definition", min(n, 2), cases, err, 1e-10))

    # L H_alpha = |alpha| H_alpha, exact on coefficients
    err, cases = 0.0, 0
    for alpha in multi_indices(min(n, 2), 20):
        h = HermiteExpansion(len(alpha), {alpha: 1.0})
        lh = operators.spectral_apply(h, operators.number_operator())
        err = max(err, abs(lh.coefficient(alpha) - alpha.order))
        cases += 1
    rows.append(_row("eigenrelation_number_operator", min(n, 2), cases, err, 0.0))

    # |grad g|_2 = |L^{1/2} g|_2 = Parseval sum, on random polynomials
    err_q, err_c = 0.0, 0.0
    for _ in range(count):
        g = random_hermite(n, degree, rng)
        grad2 = float(operators.gradient_norm(g, 2.0))
        half2 = float(quadrature.lp_norm(operators.spectral_apply(g, operators.power(0.5)), 2.0))
        parseval = math.sqrt(
            sum(a.order * abs(c) ** 2 * a.factorial() for a, c in g.terms.items())
        )
        err_q = max(err_q, abs(grad2 - half2) / max(half2, 1e-30))
        err_c = max(err_c, abs(grad2 - parseval) / max(parseval, 1e-30))
    rows.append(_row("riesz_identity_p2", n, count, err_q, 1e-9))
    rows.append(_row("gradient_parseval_p2", n, count, err_c, 1e-9))

    # semigroup law on coefficients
    err = 0.0
    for _ in range(10):
        g = random_hermite(n, degree, rng)
        lhs = operators.spectral_apply(
            operators.spectral_apply(g, operators.heat(0.3)), operators.heat(0.45)
        )
        rhs = operators.spectral_apply(g, operators.heat(0.75))
        err = max(
            err,
            max(
                abs(lhs.coefficient(a) - rhs.coefficient(a))
                for a in set(lhs.terms) | set(rhs.terms)
            ),
        )
    rows.append(_row("heat_semigroup_law", n, 10, err, 1e-15))

    # fractional powers against their semigroup t-integrals
    err = 0.0
    for k in range(1, 21):
        err = max(err, abs(operators.semigroup_integral_factor(k, -1.0) - 1.0 / k))
        err = max(
            err, abs(operators.semigroup_integral_factor(k, -0.5) - k**-0.5)
        )
    rows.append(_row("fractional_power_integrals", 1, 40, err, 1e-6))
    return rows


def run_cube_checks(n: int = 6, count: int = 100, seed: int = DEFAULT_SEED) -> list[dict]:
    """Hypercube identities: transforms, Laplacians, exact p = 2 extremals."""
    rng = np.random.default_rng(seed)
    rows = []
    dim = min(n, 8)

    err_lap, err_parseval, err_round = 0.0, 0.0, 0.0
    for _ in range(count):
        vals = rng.standard_normal(1 << dim) + 1j * rng.standard_normal(1 << dim)
        f = hamming.BooleanFunction(vals)
        spec = hamming.cube_laplacian(f, "spectral")
        flip = hamming.cube_laplacian(f, "flip")
        err_lap = max(err_lap, float(np.max(np.abs(spec.values - flip.values))))
        norm2 = hamming.cube_lp_norm(f, 2.0) ** 2
        mass = float(np.sum(np.abs(f.walsh_array) ** 2))
        err_parseval = max(err_parseval, abs(norm2 - mass) / max(mass, 1e-30))
        back = hamming.walsh_inverse(hamming.walsh_transform(vals))
        err_round = max(err_round, float(np.max(np.abs(back - vals))))
    rows.append(_row("laplacian_spectral_vs_flip", dim, count, err_lap, 1e-12))
    rows.append(_row("walsh_parseval", dim, count, err_parseval, 1e-12))
    rows.append(_row("walsh_round_trip", dim, count, err_round, 1e-12))

    err, cases = 0.0, 0
    for nn in range(1, min(n, 6) + 1):
        for d in range(1, nn + 1):
            est = hamming.cube_extremal(nn, d, 2.0, hamming.SearchOptions(starts=6, seed=seed))
            err = max(err, abs(est.value - d))
            cases += 1
    rows.append(_row("cube_extremal_p2_equals_d", min(n, 6), cases, err, 1e-9))
    return rows
