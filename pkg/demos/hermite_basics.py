"""A first tour of the Hermite side: bases, conversions, orthogonality.

Everything downstream rests on the probabilists' Hermite family: monic,
orthogonal for the standard Gaussian, <H_k, H_k> = k!.  This script walks
through evaluation, the two basis representations, and the integral
definition used as an independent cross-check.
"""

import math

import numpy as np

from tailspace import (
    HermiteExpansion,
    MonomialExpansion,
    build_rule,
    hermite_eval,
    hermite_via_integral,
    inner_product,
    to_hermite_basis,
    to_monomial_basis,
)

print("== Values by the three-term recurrence ==")
for k in range(6):
    row = "  ".join(f"{hermite_eval(k, x):8.2f}" for x in (-2.0, 0.0, 1.0, 2.0))
    print(f"H_{k}(x) at x in {{-2, 0, 1, 2}}:  {row}")

print()
print("== Monomials in the Hermite basis ==")
for k in range(5):
    x_k = MonomialExpansion(1, {(k,): 1})
    expansion = to_hermite_basis(x_k)
    terms = " + ".join(
        f"{c.real:g} H_{a[0]}" for a, c in sorted(expansion.terms.items(), reverse=True)
    )
    print(f"x^{k} = {terms}")

print()
print("== And back again ==")
h4 = HermiteExpansion(1, {(4,): 1})
print(f"H_4 in monomials: {dict((a[0], c.real) for a, c in to_monomial_basis(h4).terms.items())}")

print()
print("== Orthogonality under the Gaussian inner product ==")
for k in range(5):
    for j in range(k, 5):
        value = inner_product(HermiteExpansion(1, {(k,): 1}), HermiteExpansion(1, {(j,): 1}))
        expected = math.factorial(k) if k == j else 0
        print(f"<H_{k}, H_{j}> = {value.real:10.6f}   (exact: {expected})")

print()
print("== The integral definition agrees with the recurrence ==")
rule = build_rule("gauss_hermite", 20)
for k, x in [(2, 0.0), (2, 2.0), (5, 1.3), (9, -0.7)]:
    via_integral = hermite_via_integral((k,), (x,), rule)
    direct = hermite_eval(k, x)
    print(
        f"H_{k}({x:+.1f}):  integral {via_integral.real:+.12f}"
        f"   recurrence {direct:+.12f}   |diff| {abs(via_integral - direct):.1e}"
    )
