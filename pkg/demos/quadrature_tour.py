"""Quadrature rules for the Gaussian measure and the norms built on them.

Shows the Golub-Welsch Gauss-Hermite nodes, the polar realization of the
complex Gaussian, exactness checks, and how adaptive refinement reports an
honest achieved tolerance for exponents where the integrand is not a
polynomial.
"""

import math

import numpy as np

from tailspace import (
    AnalyticPoly,
    HermiteExpansion,
    NormRequest,
    achievable_tol,
    build_rule,
    integrate,
    lp_norm,
    random_analytic,
)
from tailspace.io import rule_to_csv

print("== Gauss-Hermite nodes and weights ==")
for m in (1, 2, 3, 5):
    rule = build_rule("gauss_hermite", m)
    print(f"m={m}:  nodes {np.round(rule.nodes, 6)}  weights {np.round(rule.weights, 6)}")

print()
print("== Moment checks (rule with 3 nodes integrates degree <= 5 exactly) ==")
rule = build_rule("gauss_hermite", 3)
for k in range(6):
    val = integrate(lambda x, k=k: x**k, rule).real
    print(f"E[x^{k}] = {val:+.12f}")

print()
print("== The polar rule on the complex plane ==")
polar = build_rule("polar_complex", (6, 13))
z = polar.complex_points
for a in range(4):
    val = np.dot(polar.weights, np.abs(z) ** (2 * a)).real
    print(f"E|z|^{2*a} = {val:14.6f}   (exact: {2**a} * {a}! = {2**a * math.factorial(a)})")

print()
print("== Norms: exact for even p, adaptive otherwise ==")
h = HermiteExpansion(1, {(1,): 1.0})
print(f"|H_1|_2 = {float(lp_norm(h, 2)):.12f} (exact 1)")
print(f"|H_1|_4 = {float(lp_norm(h, 4)):.12f} (exact 3^(1/4) = {3**0.25:.12f})")

f = random_analytic(1, 6, np.random.default_rng(5))
for p in (1.0, 1.5, 2.5):
    req = NormRequest(p, achievable_tol(p, domain="complex"))
    res = lp_norm(f, req)
    print(
        f"|f|_{p}: value {float(res):.8f}  achieved tol {res.achieved_tol:.2e}"
        f"  after {res.refinements} refinements"
    )

print()
print("== Rules export to CSV for audit ==")
rule_to_csv(build_rule("gauss_hermite", 4), "/tmp/gh4.csv")
with open("/tmp/gh4.csv") as fh:
    print(fh.read().strip())
