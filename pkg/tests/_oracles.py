"""Independent oracles shared by the test modules.

Everything here deliberately avoids the package's own solver paths:
hermegauss nodes straight from numpy, raw monomial evaluation, and a
coarse-grid + Nelder-Mead search for best-approximation values.
"""

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from scipy.optimize import minimize


def grid_search_best_approx(gval_fn, degree_cap, p, npts=140):
    """Best L^p approximation error by real polynomials of degree <= cap.

    Valid for real-valued targets (taking real parts never increases the
    objective).  Coarse coefficient grid picks the basin, a simplex search
    refines it.
    """
    x, w = hermegauss(npts)
    w = w / w.sum()
    rows = [np.ones_like(x), x, x * x - 1.0, x**3 - 3 * x]
    basis = np.vstack(rows[: degree_cap + 1])
    target = gval_fn(x)

    def objective(c):
        return float(w @ np.abs(target - c @ basis) ** p)

    best = None
    grid = np.linspace(-4, 4, 5)
    for c0 in np.stack(np.meshgrid(*[grid] * (degree_cap + 1)), -1).reshape(-1, degree_cap + 1):
        val = objective(c0)
        if best is None or val < best[0]:
            best = (val, c0)
    res = minimize(
        objective,
        best[1],
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 8000, "maxfev": 12000},
    )
    return res.fun ** (1.0 / p)
