"""Seeded random polynomial generators used by the verification suites.

Coefficients are independent complex Gaussians scaled by 1/sqrt(alpha!) so
that energy spreads across frequencies, then the result is normalized in
L^2.  All suites draw through a fixed 64-bit seed for reproducibility.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .analytic import AnalyticPoly
from .hermite import HermiteExpansion, MultiIndex

DEFAULT_SEED = 0x5EED7A11


def multi_indices(dim: int, max_degree: int, min_degree: int = 0) -> list[MultiIndex]:
    """All multi-indices with min_degree <= |alpha| <= max_degree, in lex order."""
    out = []
    for entries in itertools.product(range(max_degree + 1), repeat=dim):
        if min_degree <= sum(entries) <= max_degree:
            out.append(MultiIndex(entries))
    return out


def _draw(rng: np.random.Generator, indices) -> dict:
    re = rng.standard_normal(len(indices))
    im = rng.standard_normal(len(indices))
    return {
        a: (re[i] + 1j * im[i]) / math.sqrt(a.factorial())
        for i, a in enumerate(indices)
    }


def random_hermite(
    dim: int, degree: int, rng: np.random.Generator, min_degree: int = 0
) -> HermiteExpansion:
    """Random Hermite expansion with unit L^2(dgamma_n) norm."""
    h = HermiteExpansion(dim, _draw(rng, multi_indices(dim, degree, min_degree)))
    return h * (1.0 / math.sqrt(h.l2_norm_squared()))


def random_analytic(
    dim: int, degree: int, rng: np.random.Generator, min_degree: int = 0
) -> AnalyticPoly:
    """Random analytic polynomial with unit L^2(dgamma_{2n}) norm."""
    f = AnalyticPoly(dim, _draw(rng, multi_indices(dim, degree, min_degree)))
    return f * (1.0 / math.sqrt(f.l2_norm_squared()))
