"""Spectral operators acting on Hermite and analytic expansions.

Everything here is diagonal in the respective eigenbasis: the
Ornstein-Uhlenbeck generator multiplies the coefficient at alpha by |alpha|,
its fractional powers by |alpha|^s, the heat semigroup by e^{-t|alpha|}.
The gradient is the one non-diagonal operator and acts coefficientwise
through d/dx_j H_alpha = alpha_j H_{alpha - e_j}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad as _scipy_quad

from . import quadrature
from .hermite import HermiteExpansion, MultiIndex

ZERO_MEAN_REL_TOL = 1e-14


@dataclass(frozen=True)
class SpectralMultiplier:
    """A function of the frequency |alpha| applied coefficientwise.

    kind is one of ``power`` (|alpha|^s, with 0^s := 0 for s != 0),
    ``heat`` (e^{-t |alpha|}) or ``indicator`` (1 for low <= |alpha| <= high).
    """

    kind: str
    s: float = 0.0
    t: float = 0.0
    low: int = 0
    high: float = math.inf

    def factor(self, k: int) -> float:
        if self.kind == "power":
            if k == 0:
                return 1.0 if self.s == 0 else 0.0
            return float(k) ** self.s
        if self.kind == "heat":
            return math.exp(-self.t * k)
        if self.kind == "indicator":
            return 1.0 if self.low <= k <= self.high else 0.0
        raise ValueError(f"unknown multiplier kind {self.kind!r}")


def power(s: float) -> SpectralMultiplier:
    """Fractional power of the number operator: coefficient factor |alpha|^s."""
    return SpectralMultiplier("power", s=float(s))


def heat(t: float) -> SpectralMultiplier:
    """Heat semigroup multiplier e^{-t |alpha|}; requires t >= 0."""
    if t < 0:
        raise ValueError(f"heat time must be >= 0, got {t}")
    return SpectralMultiplier("heat", t=float(t))


def indicator(low: int, high: float = math.inf) -> SpectralMultiplier:
    """Band projection multiplier 1_{low <= |alpha| <= high}."""
    if low > high:
        raise ValueError(f"indicator needs low <= high, got [{low}, {high}]")
    return SpectralMultiplier("indicator", low=int(low), high=high)


def number_operator() -> SpectralMultiplier:
    """The Ornstein-Uhlenbeck generator itself: factor |alpha|."""
    return power(1.0)


def coefficient_norm(h) -> float:
    """Euclidean norm of the raw coefficient vector."""
    return math.sqrt(sum(abs(c) ** 2 for c in h.terms.values()))


def is_zero_mean(h) -> bool:
    """Whether the coefficient at alpha = 0 is negligible."""
    c0 = abs(h.coefficient((0,) * h.dim))
    return c0 <= ZERO_MEAN_REL_TOL * coefficient_norm(h)


def spectral_apply(h, m: SpectralMultiplier):
    """Apply a spectral multiplier; returns the same expansion type."""
    if m.kind == "power" and m.s < 0 and not is_zero_mean(h):
        raise ValueError("negative spectral powers require a zero-mean input")
    return h._new({a: c * m.factor(a.order) for a, c in h.terms.items()})


def project(h, low: int, high: float = math.inf):
    """Keep the terms with low <= |alpha| <= high."""
    if low > high:
        raise ValueError(f"project needs low <= high, got [{low}, {high}]")
    return h._new({a: c for a, c in h.terms.items() if low <= a.order <= high})


def expectation(h) -> complex:
    """Mean against the Gaussian measure: the coefficient at alpha = 0."""
    return h.coefficient((0,) * h.dim)


def gradient(h: HermiteExpansion) -> tuple[HermiteExpansion, ...]:
    """The gradient tuple (d/dx_1 h, ..., d/dx_n h) in the Hermite basis."""
    parts = []
    for j in range(h.dim):
        terms = {}
        for a, c in h.terms.items():
            if a[j] > 0:
                key = a.lowered(j)
                terms[key] = terms.get(key, 0) + c * a[j]
        parts.append(h._new(terms))
    return tuple(parts)


def gradient_norm(h: HermiteExpansion, req) -> quadrature.NormResult:
    """L^p norm of the pointwise Euclidean length |grad h|."""
    parts = [g for g in gradient(h) if not g.is_zero]
    if not parts:
        return quadrature.NormResult(0.0, 0.0, 0)
    degree = max(g.max_degree for g in parts)
    return quadrature.lp_norm_channels(parts, h.dim, degree, req, domain=h.domain)


def dilate(f, rho: float):
    """Scale the argument of an analytic polynomial: z -> rho z.

    Multiplies the coefficient at alpha by rho^{|alpha|}; this realizes the
    heat flow at time t = -log(rho) on analytic inputs.
    """
    if f.domain != "complex":
        raise ValueError("dilate is defined for analytic polynomials")
    if not 0 < rho <= 1:
        raise ValueError(f"dilation factor must lie in (0, 1], got {rho}")
    return f._new({a: c * rho**a.order for a, c in f.terms.items()})


def semigroup_integral_factor(k: int, exponent: float) -> float:
    """Numerical factor for |alpha|^exponent from the semigroup integrals.

    exponent -1 uses int_0^inf e^{-tk} dt and exponent -1/2 uses
    (1/sqrt(pi)) int_0^inf e^{-tk} dt/sqrt(t); both are quadrature oracles
    for the spectrally-defined fractional powers.
    """
    if k < 1:
        raise ValueError("the semigroup integrals diverge at frequency 0")
    if exponent == -1.0:
        value, _ = _scipy_quad(lambda t: math.exp(-t * k), 0.0, np.inf)
        return value
    if exponent == -0.5:
        # substitute u = sqrt(t) to tame the endpoint singularity
        value, _ = _scipy_quad(lambda u: math.exp(-u * u * k), 0.0, np.inf)
        return 2.0 * value / math.sqrt(math.pi)
    raise ValueError("only exponents -1 and -1/2 have integral representations here")


def inverse_power_via_integral(h, exponent: float):
    """Apply |alpha|^exponent with factors obtained by numerical t-integration.

    Verification oracle for ``power(-1)`` and ``power(-1/2)``; requires a
    zero-mean input like the spectral definition does.
    """
    if not is_zero_mean(h):
        raise ValueError("negative spectral powers require a zero-mean input")
    factors = {}
    terms = {}
    for a, c in h.terms.items():
        k = a.order
        if k == 0:
            continue
        if k not in factors:
            factors[k] = semigroup_integral_factor(k, exponent)
        terms[a] = c * factors[k]
    return h._new(terms)
