"""Numerical laboratory for Hermite spectral calculus on Gaussian tail spaces.

The package verifies, estimates, or exhibits sharpness for a family of
inequalities tied to the Ornstein-Uhlenbeck operator: lower bounds for
gradients and the generator on tail spaces, Jackson-type best-approximation
bounds and their duality with the former, Riesz-transform comparability,
Bernstein-Markov and moment-comparison bounds for analytic polynomials,
and the exact hypercube analogues of all of it.
"""

from .analytic import (
    AnalyticPoly,
    InequalityReport,
    analytic_lp_norm,
    check_inequality,
    complex_gradient,
    gradient_ratio,
    real_gradient_norm,
    rotate,
    run_random_suite,
)
from .approx import ApproxOptions, ApproxResult, best_approx, jackson_quotient
from .extremal import ConstantEstimate, SearchOptions, duality_table, estimate_constant
from .hamming import (
    BooleanFunction,
    cube_extremal,
    cube_laplacian,
    cube_lp_norm,
    martingale_difference,
    walsh_inverse,
    walsh_transform,
)
from .hermite import (
    HermiteExpansion,
    MonomialExpansion,
    MultiIndex,
    hermite_eval,
    hermite_via_integral,
    to_hermite_basis,
    to_monomial_basis,
)
from .operators import (
    SpectralMultiplier,
    dilate,
    expectation,
    gradient,
    gradient_norm,
    heat,
    indicator,
    inverse_power_via_integral,
    number_operator,
    power,
    project,
    spectral_apply,
)
from .quadrature import (
    ConvergenceError,
    NormRequest,
    NormResult,
    QuadratureRule,
    achievable_tol,
    build_rule,
    inner_product,
    integrate,
    lp_norm,
)
from .sampling import DEFAULT_SEED, multi_indices, random_analytic, random_hermite

__version__ = "0.1.0"

__all__ = [
    "AnalyticPoly",
    "ApproxOptions",
    "ApproxResult",
    "BooleanFunction",
    "ConstantEstimate",
    "ConvergenceError",
    "DEFAULT_SEED",
    "HermiteExpansion",
    "InequalityReport",
    "MonomialExpansion",
    "MultiIndex",
    "NormRequest",
    "NormResult",
    "QuadratureRule",
    "SearchOptions",
    "SpectralMultiplier",
    "achievable_tol",
    "analytic_lp_norm",
    "best_approx",
    "build_rule",
    "check_inequality",
    "complex_gradient",
    "cube_extremal",
    "cube_laplacian",
    "cube_lp_norm",
    "dilate",
    "duality_table",
    "estimate_constant",
    "expectation",
    "gradient",
    "gradient_norm",
    "gradient_ratio",
    "heat",
    "hermite_eval",
    "hermite_via_integral",
    "indicator",
    "inner_product",
    "integrate",
    "inverse_power_via_integral",
    "jackson_quotient",
    "lp_norm",
    "martingale_difference",
    "multi_indices",
    "number_operator",
    "power",
    "project",
    "random_analytic",
    "random_hermite",
    "real_gradient_norm",
    "rotate",
    "run_random_suite",
    "spectral_apply",
    "to_hermite_basis",
    "to_monomial_basis",
    "walsh_inverse",
    "walsh_transform",
]
