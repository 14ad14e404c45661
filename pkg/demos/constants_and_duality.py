"""Restricted estimates of the sharp constants and the Jackson/Freud duality.

Each constant is the extremum of a norm ratio over a coefficient sphere; a
degree-capped search certifies a one-sided bound.  At p = 2 everything has
a Parseval closed form (all the estimates below should print 1.000000 or
sqrt(d/(d+1))), which is the regression anchor for the optimizer.  Away
from p = 2 the values are new data; the point of the duality table is that
the ratio J/F stays inside a fixed band as d grows.
"""

import math

from tailspace import SearchOptions, duality_table, estimate_constant

OPTS = SearchOptions(starts=8)

print("== Freud-type constant at p = 2 (exact value 1, attained on level d+1) ==")
for d in (1, 3, 5):
    est = estimate_constant("freud_F", 1, 2.0, d, d + 3, OPTS)
    print(f"d={d}: value {est.value:.9f}   converged {est.converged_fraction:.0%}   {est.label}")

print()
print("== Riesz comparability at p = 2 (both constants exactly 1) ==")
m = estimate_constant("riesz_lower_m", 1, 2.0, 0, 6, OPTS)
M = estimate_constant("riesz_upper_M", 1, 2.0, 0, 6, OPTS)
print(f"lower m_2 estimate: {m.value:.9f}   upper M_2 estimate: {M.value:.9f}")

print()
print("== Riesz constants drift away from 1 for p != 2 (restricted estimates) ==")
for p in (4 / 3, 4.0):
    m = estimate_constant("riesz_lower_m", 1, p, 0, 6, OPTS)
    M = estimate_constant("riesz_upper_M", 1, p, 0, 6, OPTS)
    print(f"p={p:g}: m >= ... <= {m.value:.6f}   M >= {M.value:.6f}   (one-sided bounds)")

print()
print("== One-dimensional tail constants ==")
for d in (1, 3):
    s = estimate_constant("corollary_S", 1, 2.0, d, d + 3, OPTS)
    t = estimate_constant("corollary_T", 1, 2.0, d, d + 3, OPTS)
    print(f"d={d}: S estimate {s.value:.9f}   T estimate {t.value:.9f}")

print()
print("== The duality table: J(p) against F(p') across degrees ==")
for p in (2.0, 4.0):
    rows = duality_table(1, p, range(1, 5), 8, OPTS)
    print(f"p = {p:g} (dual exponent {p/(p-1):g}):")
    print("   d     J_hat      F_hat      ratio")
    for row in rows:
        marker = ""
        if p == 2.0:
            marker = f"   [exact sqrt(d/(d+1)) = {math.sqrt(row['d']/(row['d']+1)):.6f}]"
        print(
            f"   {row['d']}   {row['J_hat']:.6f}   {row['F_hat']:.6f}"
            f"   {row['ratio']:.6f}{marker}"
        )
    ratios = [row["ratio"] for row in rows]
    print(f"   band width across d: {max(ratios)/min(ratios):.3f}")
