"""Sparse polynomial arithmetic in the probabilists' Hermite and monomial bases.

The Hermite family here is the *probabilists'* one throughout: monic,
orthogonal for the weight e^{-x^2/2}/sqrt(2 pi), with <H_k, H_k> = k!.
Multivariate polynomials are sparse mappings from multi-indices to complex
coefficients; all objects are immutable and safe to share between workers.
"""

from __future__ import annotations

import math
from functools import lru_cache
from types import MappingProxyType

import numpy as np

from . import quadrature

# Monomial coefficients of H_k grow like k!; past this degree a float64
# basis change is no longer trustworthy.
MAX_CONVERSION_DEGREE = 40


class MultiIndex(tuple):
    """A tuple of nonnegative exponents, one per variable."""

    __slots__ = ()

    def __new__(cls, entries):
        idx = super().__new__(cls, (int(e) for e in entries))
        if any(e < 0 for e in idx):
            raise ValueError(f"multi-index entries must be nonnegative, got {tuple(idx)}")
        return idx

    @property
    def order(self) -> int:
        """Total degree |alpha|."""
        return sum(self)

    def factorial(self) -> float:
        """alpha! = prod_j alpha_j!"""
        return float(math.prod(math.factorial(a) for a in self))

    def lowered(self, j: int) -> "MultiIndex":
        """alpha - e_j; requires alpha_j >= 1."""
        return MultiIndex(self[:j] + (self[j] - 1,) + self[j + 1 :])


def _normalize_terms(dim: int, terms) -> dict:
    items = terms.items() if hasattr(terms, "items") else terms
    out = {}
    for alpha, c in items:
        alpha = alpha if isinstance(alpha, MultiIndex) else MultiIndex(alpha)
        if len(alpha) != dim:
            raise ValueError(f"multi-index {tuple(alpha)} has length {len(alpha)}, expected {dim}")
        c = complex(c)
        if c != 0:
            out[alpha] = out.get(alpha, 0) + c
    return {a: c for a, c in out.items() if c != 0}


class TermExpansion:
    """Shared sparse-term plumbing for the basis-specific expansion types."""

    domain = "real"
    basis = "abstract"
    __slots__ = ("_dim", "_terms", "_min_degree", "_max_degree")

    def __init__(self, dim: int, terms=()):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self._dim = int(dim)
        self._terms = _normalize_terms(self._dim, terms)
        orders = [a.order for a in self._terms]
        self._min_degree = min(orders) if orders else 0
        self._max_degree = max(orders) if orders else 0

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def terms(self):
        """Read-only mapping MultiIndex -> nonzero complex coefficient."""
        return MappingProxyType(self._terms)

    @property
    def min_degree(self) -> int:
        return self._min_degree

    @property
    def max_degree(self) -> int:
        return self._max_degree

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, alpha) -> complex:
        return self._terms.get(MultiIndex(alpha), 0j)

    def coordinate_degrees(self) -> tuple[int, ...]:
        """Largest exponent appearing in each coordinate."""
        if self.is_zero:
            return (0,) * self._dim
        return tuple(max(a[j] for a in self._terms) for j in range(self._dim))

    def values_on_tables(self, tables, npts: int) -> np.ndarray:
        """Combine precomputed per-coordinate basis tables into values.

        ``tables[j]`` holds rows of basis-function values at the j-th
        coordinates of the evaluation points; rows may exceed what this
        polynomial needs.
        """
        if self.is_zero:
            return np.zeros(npts, dtype=complex)
        if self._dim == 1:
            coeffs = np.zeros(tables[0].shape[0], dtype=complex)
            for a, c in self._terms.items():
                coeffs[a[0]] = c
            return coeffs @ tables[0]
        vals = np.zeros(npts, dtype=complex)
        for alpha, c in self._terms.items():
            prod = tables[0][alpha[0]].copy()
            for j in range(1, self._dim):
                prod *= tables[j][alpha[j]]
            vals += c * prod
        return vals

    def in_tail(self, d: int) -> bool:
        """Membership in the tail space of frequencies >= d."""
        return self.is_zero or self._min_degree >= d

    def within_degree(self, d: int) -> bool:
        """Membership in the span of frequencies <= d."""
        return self.is_zero or self._max_degree <= d

    def _new(self, terms):
        return type(self)(self._dim, terms)

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self._terms)
        for a, c in other._terms.items():
            terms[a] = terms.get(a, 0) + c
        return self._new(terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({a: -c for a, c in self._terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, TermExpansion):
            return NotImplemented
        return self._new({a: c * scalar for a, c in self._terms.items()})

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugate (coefficientwise; basis functions are real)."""
        return self._new({a: c.conjugate() for a, c in self._terms.items()})

    def _check_compatible(self, other):
        if type(other) is not type(self) or other._dim != self._dim:
            raise ValueError(
                f"incompatible operands: {type(self).__name__}(dim={self._dim}) and "
                f"{type(other).__name__}(dim={getattr(other, 'dim', '?')})"
            )

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other._dim == self._dim
            and other._terms == self._terms
        )

    def __hash__(self):
        return hash((type(self).__name__, self._dim, frozenset(self._terms.items())))

    def allclose(self, other, rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        """Coefficientwise comparison with tolerance."""
        self._check_compatible(other)
        keys = set(self._terms) | set(other._terms)
        scale = max((abs(c) for c in self._terms.values()), default=0.0)
        return all(
            abs(self._terms.get(k, 0) - other._terms.get(k, 0)) <= atol + rtol * scale
            for k in keys
        )

    def __repr__(self):
        body = ", ".join(f"{tuple(a)}: {c:.6g}" for a, c in sorted(self._terms.items())[:6])
        more = "..." if len(self._terms) > 6 else ""
        return f"{type(self).__name__}(dim={self._dim}, {{{body}{more}}})"


def hermite_eval(k: int, x):
    """H_k(x) for the probabilists' (monic) Hermite polynomial.

    Uses the three-term recurrence H_{k+1} = x H_k - k H_{k-1}; accepts a
    scalar or an ndarray of evaluation points.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    arr = np.asarray(x, dtype=float)
    prev = np.ones_like(arr)
    if k == 0:
        return prev if arr.ndim else float(prev)
    cur = arr.copy()
    for j in range(1, k):
        prev, cur = cur, arr * cur - j * prev
    return cur if arr.ndim else float(cur)


def hermite_table(kmax: int, x: np.ndarray) -> np.ndarray:
    """Values H_0..H_kmax at the points x, as a (kmax+1, len(x)) table."""
    x = np.asarray(x, dtype=float)
    table = np.empty((kmax + 1,) + x.shape)
    table[0] = 1.0
    if kmax >= 1:
        table[1] = x
    for k in range(1, kmax):
        table[k + 1] = x * table[k] - k * table[k - 1]
    return table


class HermiteExpansion(TermExpansion):
    """Polynomial sum c_alpha H_alpha with sparse complex coefficients."""

    basis = "hermite"
    __slots__ = ()

    @staticmethod
    def _coord_table(x: np.ndarray, kmax: int) -> np.ndarray:
        return hermite_table(kmax, x)

    def evaluate(self, point):
        """Evaluate at one point (length-n sequence) or many ((npts, n) array).

        For dim == 1 a scalar or an (npts,) array is also accepted.
        """
        pts, single = _as_point_block(point, self._dim)
        if self.is_zero:
            vals = np.zeros(len(pts), dtype=complex)
            return vals[0] if single else vals
        tables = []
        for j in range(self._dim):
            kmax = max(a[j] for a in self._terms)
            tables.append(hermite_table(kmax, pts[:, j]))
        vals = np.zeros(len(pts), dtype=complex)
        for alpha, c in self._terms.items():
            prod = tables[0][alpha[0]].copy()
            for j in range(1, self._dim):
                prod *= tables[j][alpha[j]]
            vals += c * prod
        return vals[0] if single else vals

    def l2_norm_squared(self) -> float:
        """Parseval mass sum |c_alpha|^2 alpha!."""
        return sum(abs(c) ** 2 * a.factorial() for a, c in self._terms.items())


class MonomialExpansion(TermExpansion):
    """Polynomial sum c_alpha x^alpha with sparse complex coefficients."""

    basis = "monomial"
    __slots__ = ()

    @staticmethod
    def _coord_table(x: np.ndarray, kmax: int) -> np.ndarray:
        return np.vander(x, kmax + 1, increasing=True).T

    def evaluate(self, point):
        pts, single = _as_point_block(point, self._dim)
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

    def __mul__(self, other):
        if isinstance(other, MonomialExpansion):
            self._check_compatible(other)
            terms = {}
            for a, c in self._terms.items():
                for b, d in other._terms.items():
                    key = MultiIndex(x + y for x, y in zip(a, b))
                    terms[key] = terms.get(key, 0) + c * d
            return self._new(terms)
        return super().__mul__(other)

    __rmul__ = __mul__

    def derivative(self, j: int) -> "MonomialExpansion":
        """Partial derivative d/dx_j in the monomial basis."""
        terms = {}
        for a, c in self._terms.items():
            if a[j] > 0:
                terms[a.lowered(j)] = terms.get(a.lowered(j), 0) + c * a[j]
        return self._new(terms)


def _as_point_block(point, dim: int):
    """Normalize a point argument to an (npts, dim) float array."""
    arr = np.asarray(point, dtype=float)
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


@lru_cache(maxsize=None)
def _hermite_to_monomial_rows(kmax: int) -> np.ndarray:
    """Row k holds the monomial coefficients of H_k, built by the recurrence."""
    rows = np.zeros((kmax + 1, kmax + 1))
    rows[0, 0] = 1.0
    if kmax >= 1:
        rows[1, 1] = 1.0
    for k in range(1, kmax):
        rows[k + 1, 1:] = rows[k, :-1]
        rows[k + 1, :] -= k * rows[k - 1, :]
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def _monomial_to_hermite_rows(kmax: int) -> np.ndarray:
    """Row k expands x^k in the Hermite basis, by x H_m = H_{m+1} + m H_{m-1}."""
    rows = np.zeros((kmax + 1, kmax + 1))
    rows[0, 0] = 1.0
    if kmax >= 1:
        rows[1, 1] = 1.0
    for k in range(1, kmax):
        rows[k + 1, 1:] = rows[k, :-1]
        rows[k + 1, :-1] += rows[k, 1:] * np.arange(1, kmax + 1)
    rows.setflags(write=False)
    return rows


def _check_conversion_degree(expansion):
    if expansion.max_degree > MAX_CONVERSION_DEGREE:
        raise ValueError(
            f"basis conversion above degree {MAX_CONVERSION_DEGREE} is refused: "
            "monomial coefficients grow like k! and overwhelm float64"
        )


def _convert(expansion, rows_for, result_cls):
    _check_conversion_degree(expansion)
    out = {}
    for alpha, c in expansion.terms.items():
        factors = []
        for a in alpha:
            row = rows_for(a)[a]
            factors.append([(m, row[m]) for m in np.nonzero(row)[0]])
        stack = [((), 1.0)]
        for f in factors:
            stack = [(idx + (m,), w * v) for idx, w in stack for m, v in f]
        for idx, w in stack:
            key = MultiIndex(idx)
            out[key] = out.get(key, 0) + c * w
    return result_cls(expansion.dim, out)


def to_hermite_basis(m: MonomialExpansion) -> HermiteExpansion:
    """Rewrite a monomial expansion in the Hermite basis (same polynomial)."""
    return _convert(m, _monomial_to_hermite_rows, HermiteExpansion)


def to_monomial_basis(h: HermiteExpansion) -> MonomialExpansion:
    """Rewrite a Hermite expansion in the monomial basis (same polynomial)."""
    return _convert(h, _hermite_to_monomial_rows, MonomialExpansion)


def hermite_design(indices, points) -> np.ndarray:
    """Design matrix of Hermite basis values: H_alpha(x_i) at row i, column alpha.

    ``indices`` fixes the column order; used by the approximation and
    extremal solvers, which optimize over coefficient vectors in that order.
    """
    pts, _ = _as_point_block(points, len(indices[0]) if indices else 1)
    n = pts.shape[1]
    kmax = [max((a[j] for a in indices), default=0) for j in range(n)]
    tables = [hermite_table(kmax[j], pts[:, j]) for j in range(n)]
    cols = []
    for alpha in indices:
        col = tables[0][alpha[0]].copy()
        for j in range(1, n):
            col *= tables[j][alpha[j]]
        cols.append(col)
    return np.column_stack(cols) if cols else np.zeros((len(pts), 0))


def hermite_via_integral(alpha, x, rule: quadrature.QuadratureRule) -> complex:
    """H_alpha(x) through the integral definition int (x+iy)^alpha dgamma_n(y).

    An independent cross-check of the recurrence evaluation; ``rule`` must be
    a real Gaussian rule on n variables, exact at least to degree |alpha|.
    """
    alpha = MultiIndex(alpha)
    n = len(alpha)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if len(x) != n:
        raise ValueError(f"point has length {len(x)}, expected {n}")
    if rule.kind == "polar_complex":
        raise ValueError("hermite_via_integral needs a real rule, not polar_complex")
    if rule.dim != n:
        raise ValueError(f"rule dimension {rule.dim} does not match multi-index length {n}")
    if rule.exact_degree < alpha.order:
        raise ValueError(
            f"rule exact to degree {rule.exact_degree} is under-resolved for |alpha|={alpha.order}"
        )

    def integrand(y):
        y = y.reshape(-1, n)
        vals = np.ones(len(y), dtype=complex)
        for j in range(n):
            vals *= (x[j] + 1j * y[:, j]) ** alpha[j]
        return vals

    return quadrature.integrate(integrand, rule)
