"""Best L^p(dgamma_n) approximation by polynomials of bounded degree.

For p in (1, inf) the objective |g - phi|_p^p is strictly convex in the
coefficients of phi, so the minimizer is unique.  The solver works on a
quadrature-discretized objective with damped iteratively-reweighted least
squares: each step solves the weighted normal equations and backtracks
(Armijo, halving) on the true objective.  The first-order condition doubles
as a dual optimality certificate: at the solution the residual density
|r|^{p-2} r must be orthogonal to every basis polynomial of degree <= d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import operators, quadrature
from .hermite import HermiteExpansion, hermite_design
from .sampling import multi_indices

GRAD_TOL = 1e-9
IRLS_FLOOR = 1e-12
ARMIJO_C = 1e-4


@dataclass(frozen=True)
class ApproxOptions:
    max_iter: int = 200
    grad_tol: float = GRAD_TOL
    grid_tol: float = 1e-9


@dataclass(frozen=True)
class ApproxResult:
    """Solution of one best-approximation problem.

    ``error`` is the achieved |g - phi*|_p on the solve grid;
    ``certificate`` is the largest dual pairing |<g - phi*, H_alpha>| over
    |alpha| <= d with the subgradient density, which vanishes at the exact
    minimizer.
    """

    minimizer: HermiteExpansion
    error: float
    iterations: int
    converged: bool
    gradient_norm: float
    certificate: float


def _residual_weights(abs_r: np.ndarray, p: float) -> np.ndarray:
    if p >= 2:
        return abs_r ** (p - 2.0)
    return np.maximum(abs_r, IRLS_FLOOR) ** (p - 2.0)


def _subgradient_density(r: np.ndarray, abs_r: np.ndarray, p: float) -> np.ndarray:
    """|r|^{p-1} sign(r), written to avoid 0^negative warnings at zeros."""
    density = np.zeros_like(r)
    nz = abs_r > 0
    density[nz] = abs_r[nz] ** (p - 2.0) * r[nz]
    return density


def _objective_and_gradient(A, gv, wts, c, p):
    r = gv - A @ c
    abs_r = np.abs(r)
    phi = float(wts @ abs_r**p)
    grad = -p * (A.T @ (wts * _subgradient_density(r, abs_r, p)))
    return phi, grad, r, abs_r


def _irls_step(A, gv, wts, c, abs_r, p):
    """Target of one reweighted-least-squares solve (exact minimizer at p=2)."""
    u = wts * _residual_weights(abs_r, p)
    M = A.T @ (u[:, None] * A)
    rhs = A.T @ (u * gv)
    return np.linalg.solve(M, rhs) - c


def _newton_step(A, wts, grad, r, abs_r, p):
    """Damped-Newton direction on the stacked (Re c, Im c) parameters.

    Only used for p >= 2 where the Hessian of |r|^p is bounded.  The blocks
    come from d^2|r|^p = p|r|^{p-2} I + p(p-2)|r|^{p-4} (Re r, Im r)^T(..).
    """
    k = A.shape[1]
    base = p * abs_r ** (p - 2.0)
    cross = np.zeros_like(abs_r)
    nz = abs_r > 0
    cross[nz] = p * (p - 2.0) * abs_r[nz] ** (p - 4.0)
    u, v = r.real, r.imag
    Haa = A.T @ ((wts * (base + cross * u * u))[:, None] * A)
    Hab = A.T @ ((wts * (cross * u * v))[:, None] * A)
    Hbb = A.T @ ((wts * (base + cross * v * v))[:, None] * A)
    H = np.block([[Haa, Hab], [Hab, Hbb]])
    rhs = -np.concatenate([grad.real, grad.imag])
    x = np.linalg.solve(H + 1e-14 * np.trace(H) / (2 * k) * np.eye(2 * k), rhs)
    return x[:k] + 1j * x[k:]


def irls_minimize(A, gv, wts, p, c0, opts: ApproxOptions = ApproxOptions()):
    """Minimize sum w_i |gv_i - (A c)_i|^p over complex c.

    Damped Newton steps for p >= 2, floored reweighted least squares for
    p < 2, both with Armijo backtracking (halving).  Returns
    (c, phi, gradient_norm, iterations, converged).  Shared by the public
    solver and by the extremal-constant search, which re-solves this inner
    problem at every objective evaluation.
    """
    c = np.asarray(c0, dtype=complex).copy()
    phi, grad, r, abs_r = _objective_and_gradient(A, gv, wts, c, p)
    iterations = 0

    def compute_step():
        try:
            if p >= 2:
                return _newton_step(A, wts, grad, r, abs_r, p)
            return _irls_step(A, gv, wts, c, abs_r, p)
        except np.linalg.LinAlgError:
            return -grad

    for iterations in range(1, opts.max_iter + 1):
        gnorm = np.linalg.norm(grad)
        if gnorm <= opts.grad_tol:
            return c, phi, float(gnorm), iterations - 1, True
        step = compute_step()
        descent = float(np.real(np.vdot(grad, step)))
        if descent >= 0:
            step = -grad
            descent = -float(gnorm**2)
        t, progressed = 1.0, False
        while t > 1e-14:
            cand = c + t * step
            phi_new, grad_new, r_new, abs_new = _objective_and_gradient(A, gv, wts, cand, p)
            if phi_new <= phi + ARMIJO_C * t * descent:
                progressed = phi - phi_new > 1e-15 * abs(phi)
                c, phi, grad, r, abs_r = cand, phi_new, grad_new, r_new, abs_new
                break
            t *= 0.5
        if progressed:
            continue
        # objective differences fell below float resolution: polish with
        # full steps in the quadratic basin while the gradient keeps falling
        for _ in range(40):
            gnorm = np.linalg.norm(grad)
            if gnorm <= opts.grad_tol:
                break
            step = compute_step()
            if np.linalg.norm(step) > 1e-6 * (1.0 + np.linalg.norm(c)):
                break
            phi_new, grad_new, r_new, abs_new = _objective_and_gradient(A, gv, wts, c + step, p)
            if np.linalg.norm(grad_new) < gnorm:
                c, phi, grad, r, abs_r = c + step, phi_new, grad_new, r_new, abs_new
            else:
                break
        break
    converged = bool(np.linalg.norm(grad) <= opts.grad_tol)
    return c, phi, float(np.linalg.norm(grad)), iterations, converged


def _solve_grid(g: HermiteExpansion, p: float, grid_tol: float):
    """Quadrature grid fixed for one solve; adaptive sizing for non-even p."""
    degree = max(g.max_degree, 1)
    target = max(int(math.ceil(2 * p * degree)), 80)
    m = target // 2 + 1

    def grid_at(mm: int):
        rule = quadrature.gauss_rule_for_degree(2 * mm - 1, g.dim)
        pts, wts = next(rule.iter_points())
        pts = pts if pts.ndim == 2 else pts.reshape(-1, 1)
        return pts, wts

    if p == int(p) and int(p) % 2 == 0:
        return grid_at(m)
    pts, wts = grid_at(m)
    ref = float(wts @ np.abs(g.evaluate(pts)) ** p)
    while 2 * m <= quadrature.MAX_NODES_PER_AXIS:
        pts2, wts2 = grid_at(2 * m)
        ref2 = float(wts2 @ np.abs(g.evaluate(pts2)) ** p)
        if abs(ref2 - ref) <= grid_tol * max(abs(ref2), 1e-300):
            return pts2, wts2
        m, pts, wts, ref = 2 * m, pts2, wts2, ref2
    return pts, wts


def best_approx(
    g: HermiteExpansion, d: int, p: float, opts: ApproxOptions = ApproxOptions()
) -> ApproxResult:
    """Best approximation of g by a Hermite polynomial of degree <= d in L^p.

    Valid for p in the open interval (1, inf); the minimizer is unique.
    Initialization is the spectral projection onto degree <= d, which is
    already optimal for p = 2.
    """
    if not 1 < p < math.inf:
        raise ValueError(f"best approximation needs p in (1, inf), got {p}")
    if d < 0:
        raise ValueError(f"degree bound must be >= 0, got {d}")
    indices = multi_indices(g.dim, d)
    if g.within_degree(d):
        return ApproxResult(g, 0.0, 0, True, 0.0, 0.0)

    pts, wts = _solve_grid(g, p, opts.grid_tol)
    A = hermite_design(indices, pts)
    gv = g.evaluate(pts)
    c0 = np.array([operators.project(g, 0, d).coefficient(a) for a in indices])
    c, phi, grad_norm, iterations, converged = irls_minimize(A, gv, wts, p, c0, opts)

    minimizer = HermiteExpansion(g.dim, dict(zip(indices, c)))
    certificate = _certificate(A, gv, wts, c, p)
    return ApproxResult(minimizer, phi ** (1.0 / p), iterations, converged, grad_norm, certificate)


def _certificate(A, gv, wts, c, p) -> float:
    r = gv - A @ c
    pairings = A.T @ (wts * _subgradient_density(r, np.abs(r), p))
    return float(np.max(np.abs(pairings))) if len(pairings) else 0.0


def jackson_quotient(g: HermiteExpansion, d: int, p: float, opts: ApproxOptions = ApproxOptions()) -> float:
    """sqrt(d) * (best degree-d approximation error) / |grad g|_p.

    The gradient norm is the L^p norm of the pointwise Euclidean length of
    the gradient tuple.  Constant inputs are rejected (zero gradient).
    """
    if d < 1:
        raise ValueError(f"jackson quotient needs d >= 1, got {d}")
    grad_parts = operators.gradient(g)
    if all(part.is_zero for part in grad_parts):
        raise ValueError("jackson quotient is undefined for (near-)constant inputs")
    req = quadrature.NormRequest(p, quadrature.achievable_tol(p, domain="real"))
    denom = operators.gradient_norm(g, req)
    error = best_approx(g, d, p, opts).error
    return math.sqrt(d) * error / float(denom)
