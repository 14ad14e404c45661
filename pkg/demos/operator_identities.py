"""The spectral calculus: generator, gradient, heat flow, fractional powers.

The number operator acts diagonally on the Hermite basis with eigenvalue
|alpha|; the gradient lowers degree by one; the two meet in the Riesz
identity |grad g|_2 = |L^{1/2} g|_2, which is exact at p = 2 and the
prototype of the dimension-free comparability driving everything else.
"""

import numpy as np

from tailspace import (
    HermiteExpansion,
    gradient,
    gradient_norm,
    heat,
    inverse_power_via_integral,
    lp_norm,
    number_operator,
    power,
    project,
    random_hermite,
    spectral_apply,
)

rng = np.random.default_rng(7)

print("== Eigenrelation L H_alpha = |alpha| H_alpha ==")
for alpha in [(3,), (1, 2), (4, 4)]:
    h = HermiteExpansion(len(alpha), {alpha: 1.0})
    lh = spectral_apply(h, number_operator())
    print(f"alpha={alpha}: L H_alpha has coefficient {lh.coefficient(alpha).real:g} at alpha")

print()
print("== Gradient lowers degree by one ==")
g = HermiteExpansion(2, {(2, 1): 1.0})
for j, part in enumerate(gradient(g)):
    print(f"d/dx_{j+1} H_(2,1) = {dict((tuple(a), c.real) for a, c in part.terms.items())}")

print()
print("== Riesz identity at p=2 on random polynomials ==")
for _ in range(5):
    g = random_hermite(2, 6, rng)
    lhs = float(gradient_norm(g, 2.0))
    rhs = float(lp_norm(spectral_apply(g, power(0.5)), 2.0))
    print(f"|grad g|_2 = {lhs:.12f}   |L^(1/2) g|_2 = {rhs:.12f}   diff {abs(lhs-rhs):.1e}")

print()
print("== Heat semigroup: multiplier e^(-t|alpha|), composition law ==")
g = random_hermite(1, 5, rng)
once = spectral_apply(spectral_apply(g, heat(0.2)), heat(0.3))
combined = spectral_apply(g, heat(0.5))
dev = max(abs(once.coefficient(a) - combined.coefficient(a)) for a in g.terms)
print(f"heat(0.2) then heat(0.3) vs heat(0.5): max coefficient deviation {dev:.1e}")

print()
print("== Fractional powers and their semigroup integrals ==")
g0 = project(g, 1)  # zero-mean input, as negative powers require
for s in (-0.5, -1.0):
    spectral = spectral_apply(g0, power(s))
    integral = inverse_power_via_integral(g0, s)
    dev = max(abs(spectral.coefficient(a) - integral.coefficient(a)) for a in g0.terms)
    print(f"power({s}): spectral vs t-integral, max coefficient deviation {dev:.1e}")
