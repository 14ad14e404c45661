"""Analytic polynomials on C^n and the inequality checks built on them.

An analytic polynomial is a finite sum c_alpha z^alpha; each monomial is an
eigenvector of the Ornstein-Uhlenbeck generator with eigenvalue |alpha|, and
the underlying measure is the standard Gaussian on C^n identified with
R^{2n}.  ``check_inequality`` evaluates one of the theorem-backed bounds and
returns a report with honest quadrature error bars; every kind is a theorem,
so a failing report signals an implementation bug, not new mathematics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import operators, quadrature
from .hermite import TermExpansion

#: check kinds accepted by :func:`check_inequality`
KINDS = (
    "heat_smoothing",
    "spectral_lower",
    "grad_lower",
    "bernstein",
    "interpolation",
    "moment",
    "janson",
    "reverse_heat",
)


class AnalyticPoly(TermExpansion):
    """Polynomial sum c_alpha z^alpha on C^n with sparse complex coefficients."""

    domain = "complex"
    basis = "analytic"
    __slots__ = ()

    @staticmethod
    def _coord_table(z: np.ndarray, kmax: int) -> np.ndarray:
        return np.vander(z, kmax + 1, increasing=True).T

    def evaluate(self, point):
        """Evaluate at complex points: scalar, (n,), (npts,) for n=1, or (npts, n)."""
        pts, single = _as_complex_block(point, self._dim)
        vals = np.zeros(len(pts), dtype=complex)
        if not self.is_zero:
            tables = []
            for j in range(self._dim):
                kmax = max(a[j] for a in self._terms)
                tables.append(np.vander(pts[:, j], kmax + 1, increasing=True).T)
            for alpha, c in self._terms.items():
                prod = tables[0][alpha[0]].copy()
                for j in range(1, self._dim):
                    prod *= tables[j][alpha[j]]
                vals += c * prod
        return vals[0] if single else vals

    def l2_norm_squared(self) -> float:
        """Exact squared L^2(dgamma_{2n}) norm: sum |c_alpha|^2 2^{|alpha|} alpha!."""
        return sum(abs(c) ** 2 * 2.0 ** a.order * a.factorial() for a, c in self._terms.items())


def _as_complex_block(point, dim: int):
    arr = np.asarray(point, dtype=complex)
    if arr.ndim == 0:
        if dim != 1:
            raise ValueError(f"scalar point given for a {dim}-variable polynomial")
        return arr.reshape(1, 1), True
    if arr.ndim == 1:
        if dim == 1:
            return arr.reshape(-1, 1), False
        if len(arr) != dim:
            raise ValueError(f"point has length {len(arr)}, expected {dim}")
        return arr.reshape(1, dim), True
    if arr.ndim == 2 and arr.shape[1] == dim:
        return arr, False
    raise ValueError(f"cannot interpret points of shape {arr.shape} for dim {dim}")


def analytic_lp_norm(f: AnalyticPoly, req) -> quadrature.NormResult:
    """L^p(dgamma_{2n}) norm; polar rule for n=1, tensor rule otherwise."""
    return quadrature.lp_norm(f, req)


def rotate(f: AnalyticPoly, theta: float) -> AnalyticPoly:
    """Rotate the argument: f(z) -> f(e^{i theta} z).

    Multiplies the coefficient at alpha by e^{i theta |alpha|}; all Gaussian
    norms are invariant under it.
    """
    return f._new({a: c * cmath.exp(1j * theta * a.order) for a, c in f.terms.items()})


def complex_gradient(f: AnalyticPoly) -> tuple[AnalyticPoly, ...]:
    """Holomorphic partials (d/dz_1 f, ..., d/dz_n f)."""
    parts = []
    for j in range(f.dim):
        terms = {}
        for a, c in f.terms.items():
            if a[j] > 0:
                key = a.lowered(j)
                terms[key] = terms.get(key, 0) + c * a[j]
        parts.append(f._new(terms))
    return tuple(parts)


def real_gradient_norm(f: AnalyticPoly, req) -> quadrature.NormResult:
    """L^p norm of the full R^{2n} gradient length of an analytic polynomial.

    For analytic f the x- and y-partials at each complex coordinate both have
    modulus |df/dz_j|, so |grad f| = sqrt(2 sum_j |df/dz_j|^2).
    """
    parts = [g for g in complex_gradient(f) if not g.is_zero]
    if not parts:
        return quadrature.NormResult(0.0, 0.0, 0)
    degree = max(g.max_degree for g in parts)
    base = quadrature.lp_norm_channels(parts, f.dim, degree, req, domain="complex")
    return quadrature.NormResult(
        math.sqrt(2.0) * float(base), base.achieved_tol, base.refinements
    )


def gradient_ratio(f: AnalyticPoly, d: int, p: float, tol: float = 1e-8) -> float:
    """Empirical ratio |grad f|_p / (sqrt(d) |f|_p) for f in the d-tail.

    The sharp constant relating the two sides is not known numerically, so
    this is reported as data rather than asserted against a bound.
    """
    if not f.in_tail(d):
        raise ValueError(f"input is not supported on frequencies >= {d}")
    req = quadrature.NormRequest(p, tol)
    return float(real_gradient_norm(f, req)) / (math.sqrt(d) * float(analytic_lp_norm(f, req)))


achievable_tol = quadrature.achievable_tol


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality check: lhs <= rhs up to quadrature error.

    ``tol`` is the slack allowance actually used (three times the combined
    achieved quadrature tolerance plus a roundoff floor); the check passes
    iff slack >= -tol.
    """

    kind: str
    lhs: float
    rhs: float
    slack: float
    tol: float
    passed: bool
    n: int = 1
    p: float | None = None
    q: float | None = None
    d: int | None = None
    t: float | None = None
    rho: float | None = None
    zero_input: bool = False

    def as_row(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "d": self.d,
            "t": self.t,
            "rho": self.rho,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tol": self.tol,
            "pass": self.passed,
            "zero_input": self.zero_input,
        }


def _report(kind, f, lhs, rhs, norms, **params) -> InequalityReport:
    scale = max(abs(float(lhs)), abs(float(rhs)), 1.0)
    quad_tol = sum(n.achieved_tol for n in norms) * scale
    allowance = 3.0 * quad_tol + 1e-12 * scale
    slack = float(rhs) - float(lhs)
    return InequalityReport(
        kind=kind,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=slack,
        tol=allowance,
        passed=slack >= -allowance,
        n=f.dim,
        zero_input=f.is_zero,
        **params,
    )


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def check_inequality(
    kind: str,
    f: AnalyticPoly,
    *,
    p: float | None = None,
    q: float | None = None,
    d: int | None = None,
    t: float | None = None,
    rho: float | None = None,
    tol: float | None = None,
    max_refinements: int = 12,
) -> InequalityReport:
    """Evaluate one theorem-backed inequality on an analytic polynomial.

    Membership constraints (tail or degree cap) are hard errors when
    violated.  The zero polynomial passes every kind trivially and the
    report is flagged.  When ``tol`` is omitted, a reachable quadrature
    tolerance is chosen from the exponents involved.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown inequality kind {kind!r}")
    if tol is None:
        # n = 1 integrates on the kink-friendly polar rule; higher dimensions
        # fall back to tensor grids with their coarser reachable accuracy
        grade = "complex" if f.dim == 1 else "real"
        tol = achievable_tol(*(e for e in (p, q) if e is not None), domain=grade)

    def norm(g, exponent):
        return quadrature.lp_norm(g, quadrature.NormRequest(exponent, tol, max_refinements))

    if kind == "heat_smoothing":
        _require(p is not None and p >= 1, "heat_smoothing needs p >= 1")
        _require(t is not None and t >= 0, "heat_smoothing needs t >= 0")
        _require(d is not None and d >= 0, "heat_smoothing needs a tail degree d >= 0")
        _require(f.in_tail(d), f"input is not in the tail space of frequencies >= {d}")
        lhs = norm(operators.spectral_apply(f, operators.heat(t)), p)
        nf = norm(f, p)
        return _report(kind, f, lhs, math.exp(-t * d) * nf, [lhs, nf], p=p, d=d, t=t)

    if kind == "spectral_lower":
        _require(p is not None and p >= 1, "spectral_lower needs p >= 1")
        _require(d is not None and d >= 1, "spectral_lower needs d >= 1")
        _require(f.in_tail(d), f"input is not in the tail space of frequencies >= {d}")
        nf = norm(f, p)
        nl = norm(operators.spectral_apply(f, operators.number_operator()), p)
        return _report(kind, f, d * nf, nl, [nf, nl], p=p, d=d)

    if kind == "grad_lower":
        _require(p is not None and p >= 1, "grad_lower needs p >= 1")
        _require(d is not None and d >= 1, "grad_lower needs d >= 1")
        _require(f.in_tail(d), f"input is not in the tail space of frequencies >= {d}")
        nf = norm(f, p)
        nh = norm(operators.spectral_apply(f, operators.power(0.5)), p)
        return _report(kind, f, math.sqrt(d) * nf, nh, [nf, nh], p=p, d=d)

    if kind == "bernstein":
        _require(p is not None and p >= 1, "bernstein needs p >= 1")
        _require(d is not None and d >= 0, "bernstein needs a degree cap d >= 0")
        _require(f.within_degree(d), f"input has frequencies above {d}")
        nl = norm(operators.spectral_apply(f, operators.number_operator()), p)
        nf = norm(f, p)
        return _report(kind, f, nl, d * nf, [nl, nf], p=p, d=d)

    if kind == "interpolation":
        _require(p is not None and p >= 1, "interpolation needs p >= 1")
        nh = norm(operators.spectral_apply(f, operators.power(0.5)), p)
        nf = norm(f, p)
        nl = norm(operators.spectral_apply(f, operators.number_operator()), p)
        rhs = 2.0 * math.sqrt(float(nf)) * math.sqrt(float(nl))
        return _report(kind, f, nh, rhs, [nh, nf, nl], p=p)

    if kind == "moment":
        _require(p is not None and q is not None and 0 < p < q and q >= 1,
                 "moment comparison needs 0 < p < q and q >= 1")
        _require(d is not None and d >= 1, "moment comparison needs d >= 1")
        _require(f.within_degree(d), f"input has frequencies above {d}")
        nq = norm(f, q)
        np_ = norm(f, p)
        return _report(kind, f, nq, (q / p) ** (d / 2.0) * np_, [nq, np_], p=p, q=q, d=d)

    if kind == "janson":
        _require(p is not None and q is not None and 0 < p < q and q >= 1,
                 "janson needs 0 < p < q and q >= 1")
        _require(rho is not None and 0 < rho <= math.sqrt(p / q) + 1e-12,
                 "janson needs 0 < rho <= sqrt(p/q)")
        lhs = norm(operators.dilate(f, min(rho, 1.0)), q)
        nf = norm(f, p)
        return _report(kind, f, lhs, nf, [lhs, nf], p=p, q=q, rho=rho)

    if kind == "reverse_heat":
        _require(q is not None and q >= 1, "reverse_heat needs q >= 1")
        _require(t is not None and t >= 0, "reverse_heat needs t >= 0")
        _require(d is not None and d >= 0, "reverse_heat needs a degree cap d >= 0")
        _require(f.within_degree(d), f"input has frequencies above {d}")
        nq = norm(f, q)
        nh = norm(operators.spectral_apply(f, operators.heat(t)), q)
        return _report(kind, f, nq, math.exp(t * d) * nh, [nq, nh], q=q, d=d, t=t)

    raise AssertionError("unreachable")


def run_random_suite(
    count: int = 200,
    dim: int = 1,
    degree: int = 8,
    seed: int | None = None,
    p_values: tuple = (1.0, 1.5, 2.0, 3.0, 4.0),
    t_values: tuple = (0.1, 0.5, 1.0),
    moment_pairs: tuple = ((1.0, 2.0), (2.0, 4.0), (0.5, 1.0)),
    tail_degree: int | None = None,
    tol: float | None = None,
    janson_rho: float | None = None,
) -> list[InequalityReport]:
    """Run every check kind over seeded random analytic polynomials.

    Returns the reports in a fixed deterministic order: polynomials are
    generated from the seed, p cycles through ``p_values``, and the tail
    degree cycles through 1..3 unless pinned by ``tail_degree``.  The janson
    dilation defaults to its extreme admissible value sqrt(p/q).
    """
    from .sampling import DEFAULT_SEED, random_analytic

    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    reports = []
    for i in range(count):
        f = random_analytic(dim, degree, rng)
        p = p_values[i % len(p_values)]
        d_tail = tail_degree if tail_degree is not None else 1 + i % 3
        d_cap = max(f.max_degree, 1)
        f_tail = operators.project(f, d_tail)

        for t in t_values:
            reports.append(check_inequality("heat_smoothing", f_tail, p=p, d=d_tail, t=t, tol=tol))
            reports.append(check_inequality("reverse_heat", f, q=p, d=d_cap, t=t, tol=tol))
        reports.append(check_inequality("spectral_lower", f_tail, p=p, d=d_tail, tol=tol))
        reports.append(check_inequality("grad_lower", f_tail, p=p, d=d_tail, tol=tol))
        reports.append(check_inequality("bernstein", f, p=p, d=d_cap, tol=tol))
        reports.append(check_inequality("interpolation", f, p=p, tol=tol))
        for pp, qq in moment_pairs:
            reports.append(check_inequality("moment", f, p=pp, q=qq, d=d_cap, tol=tol))
            rho = janson_rho if janson_rho is not None else math.sqrt(pp / qq)
            reports.append(check_inequality("janson", f, p=pp, q=qq, rho=rho, tol=tol))
    return reports
