"""The hypercube side: Walsh analysis and tail-space extremal evidence.

On {-1,1}^n everything is exact: norms are finite averages and both
Laplacian implementations (coordinate flips and the |S| multiplier) agree
to roundoff.  The extremal table tracks the minimum of |Delta f|_p / |f|_p
over the d-th tail span; at p = 2 the minimum is exactly d, and the
question whether it grows like d for every p is open -- the table below is
evidence, not a verdict.
"""

import numpy as np

from tailspace import (
    BooleanFunction,
    SearchOptions,
    cube_extremal,
    cube_laplacian,
    cube_lp_norm,
    walsh_transform,
)

print("== Walsh coefficients of majority on three bits ==")
idx = np.arange(8)
coords = 1 - 2 * ((idx[:, None] >> np.arange(3)[None, :]) & 1)
maj = BooleanFunction(np.sign(coords.sum(axis=1)))
for subset, coeff in sorted(maj.walsh.items()):
    print(f"  a_{set(subset) if subset else '{}'} = {coeff.real:+.2f}")

print()
print("== The two Laplacians agree ==")
rng = np.random.default_rng(4)
f = BooleanFunction(rng.standard_normal(64))
spec = cube_laplacian(f, "spectral")
flip = cube_laplacian(f, "flip")
print(f"max |spectral - flip| over 2^6 points: {np.max(np.abs(spec.values - flip.values)):.1e}")

print()
print("== Exact norms ==")
x1 = BooleanFunction.from_walsh(3, {(1,): 1.0})
print(f"|x_1|_p = {cube_lp_norm(x1, 3.7):.6f} for every p")
two = BooleanFunction.from_walsh(2, {(1,): 1.0, (2,): 1.0})
print(f"|x_1 + x_2|_1 = {cube_lp_norm(two, 1.0):.6f}")

print()
print("== Tail extremal evidence tables ==")
print("minimum of |Delta f|_p / |f|_p over the d-th tail span (upper bounds):")
for p in (2.0, 4.0):
    values = []
    for d in range(1, 6):
        est = cube_extremal(5, d, p, SearchOptions(starts=6))
        values.append(est.value)
    cells = "   ".join(f"d={d}: {v:8.5f}" for d, v in zip(range(1, 6), values))
    print(f"  n=5, p={p:g}:   {cells}")
print("(p=2 row is exactly d by Parseval; growth in d at other p is the open question)")
