"""Numerical integration against the standard Gaussian measure.

All rules integrate a *probability* measure: weights are positive and sum
to one.  Four node families are provided:

* ``gauss_hermite`` -- 1-D rule for dgamma_1 (weight e^{-x^2/2}/sqrt(2 pi)),
  built by Golub--Welsch on the Jacobi matrix of the monic three-term
  recurrence.
* ``gauss_laguerre`` -- 1-D rule for the weight e^{-s} ds on [0, inf); the
  radial half of the polar rule below.
* ``polar_complex`` -- rule for dgamma_2 on the complex plane written in
  polar coordinates z = r e^{i theta}, with Gauss--Laguerre in s = r^2/2
  and uniform angular nodes.  Integrates z^a zbar^b exactly when
  a + b <= 2 m_r - 1 and |a - b| < m_theta.
* ``tensor`` -- tensor product of 1-D gauss_hermite axes for dgamma_n;
  node grids are iterated lazily in fixed C order, never materialized
  beyond the per-axis arrays.

L^p norms with an even integer p are computed on a polynomially-exact rule
and carry no quadrature error.  Other exponents refine adaptively; |f|^p is
merely Hoelder-continuous at zeros of f, so convergence is algebraic and the
*achieved* relative tolerance is reported on every result.  Refinement that
stalls before the requested tolerance raises :class:`ConvergenceError`
rather than returning a silently wrong value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

MAX_NODES_PER_AXIS = 200
MAX_TENSOR_AXES = 6
MAX_ANGULAR_NODES = 1024
_CHUNK = 1 << 18
_TABLE_CACHE_LIMIT = 4_000_000  # entries; larger value tables are not cached


class ConvergenceError(RuntimeError):
    """Adaptive refinement stopped before reaching the requested tolerance."""

    def __init__(self, message: str, value: float, achieved_tol: float):
        super().__init__(message)
        self.value = value
        self.achieved_tol = achieved_tol


@dataclass(frozen=True)
class NormRequest:
    """How accurately an L^p norm should be computed.

    ``tol`` is a relative tolerance; it only matters for exponents where the
    integrand is not a polynomial (p not an even integer), in which case the
    node count is doubled until two successive values agree to within tol.
    """

    p: float
    tol: float = 1e-8
    max_refinements: int = 12

    def __post_init__(self):
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError(f"p must be finite and positive, got {self.p}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


class NormResult(float):
    """A norm value that remembers how accurately it was computed.

    Behaves as a plain float; ``achieved_tol`` is the relative tolerance
    actually reached (0.0 for polynomially-exact quadrature), and
    ``refinements`` counts adaptive doublings.
    """

    achieved_tol: float
    refinements: int

    def __new__(cls, value: float, achieved_tol: float = 0.0, refinements: int = 0):
        obj = super().__new__(cls, value)
        obj.achieved_tol = achieved_tol
        obj.refinements = refinements
        return obj


def _golub_welsch(diag: np.ndarray, offdiag: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights from a Jacobi matrix, for a unit-mass measure."""
    if len(diag) == 1:
        return diag.copy(), np.ones(1)
    nodes, vectors = eigh_tridiagonal(diag, offdiag)
    weights = vectors[0] ** 2
    return nodes, weights


def _gauss_hermite_1d(m: int) -> tuple[np.ndarray, np.ndarray]:
    # Monic probabilists' recurrence He_{k+1} = x He_k - k He_{k-1}:
    # zero diagonal, off-diagonal sqrt(k).
    nodes, weights = _golub_welsch(np.zeros(m), np.sqrt(np.arange(1.0, m)))
    # Enforce the exact symmetry of the measure (odd moments vanish).
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    if m % 2 == 1:
        nodes[m // 2] = 0.0
    return nodes, weights


def _gauss_laguerre_1d(m: int) -> tuple[np.ndarray, np.ndarray]:
    # Monic Laguerre recurrence for weight e^{-s}: a_k = 2k+1, b_k = k^2.
    return _golub_welsch(2.0 * np.arange(m) + 1.0, np.arange(1.0, m))


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights realizing integration against dgamma.

    ``nodes`` is (m,) for the 1-D kinds, (npts, 2) rows of (radius, angle)
    for ``polar_complex``.  Tensor rules keep only the per-axis 1-D arrays
    in ``axes``; their full grid is streamed by :meth:`iter_points`.  The
    ``cache`` dict memoizes evaluation tables for repeated norm computations
    and never affects results.
    """

    kind: str
    dim: int
    exact_degree: int
    nodes: np.ndarray | None = None
    weights: np.ndarray | None = None
    axes: tuple[tuple[np.ndarray, np.ndarray], ...] = field(default=())
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def node_count(self) -> int:
        if self.kind == "tensor":
            return int(np.prod([len(n) for n, _ in self.axes]))
        return len(self.weights)

    @property
    def complex_points(self) -> np.ndarray:
        """Evaluation points z = r e^{i theta} of a polar rule."""
        if self.kind != "polar_complex":
            raise ValueError("complex_points is only defined for polar_complex rules")
        return self.nodes[:, 0] * np.exp(1j * self.nodes[:, 1])

    @property
    def single_block(self) -> bool:
        return self.kind != "tensor" or self.node_count <= _CHUNK

    def iter_points(self, chunk: int = _CHUNK):
        """Yield (points, weights) blocks in a fixed deterministic order."""
        if self.kind == "tensor":
            sizes = [len(n) for n, _ in self.axes]
            total = int(np.prod(sizes))
            for start in range(0, total, chunk):
                flat = np.arange(start, min(start + chunk, total))
                idx = np.unravel_index(flat, sizes)
                pts = np.column_stack([self.axes[a][0][idx[a]] for a in range(self.dim)])
                wts = np.ones(len(flat))
                for a in range(self.dim):
                    wts *= self.axes[a][1][idx[a]]
                yield pts, wts
        elif self.kind == "polar_complex":
            yield self.complex_points, self.weights
        else:
            yield self.nodes, self.weights

    def weight_sum(self) -> float:
        if self.kind == "tensor":
            return float(np.prod([w.sum() for _, w in self.axes]))
        return float(self.weights.sum())


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=128)
def _build_rule_cached(kind: str, sizes: tuple, dim: int) -> QuadratureRule:
    if kind == "gauss_hermite":
        (m,) = sizes
        _check_axis_size(m)
        nodes, weights = _gauss_hermite_1d(m)
        return QuadratureRule("gauss_hermite", 1, 2 * m - 1, _freeze(nodes), _freeze(weights))
    if kind == "gauss_laguerre":
        (m,) = sizes
        _check_axis_size(m)
        nodes, weights = _gauss_laguerre_1d(m)
        return QuadratureRule("gauss_laguerre", 1, 2 * m - 1, _freeze(nodes), _freeze(weights))
    if kind == "polar_complex":
        m_r, m_theta = sizes
        _check_axis_size(m_r)
        if not (1 <= m_theta <= MAX_ANGULAR_NODES):
            raise ValueError(f"angular node count {m_theta} outside [1, {MAX_ANGULAR_NODES}]")
        s_nodes, s_weights = _gauss_laguerre_1d(m_r)
        radii = np.sqrt(2.0 * s_nodes)
        angles = 2.0 * np.pi * np.arange(m_theta) / m_theta
        r_grid, a_grid = np.meshgrid(radii, angles, indexing="ij")
        nodes = np.column_stack([r_grid.ravel(), a_grid.ravel()])
        weights = np.repeat(s_weights / m_theta, m_theta)
        return QuadratureRule(
            "polar_complex", 1, min(2 * m_r - 1, m_theta - 1), _freeze(nodes), _freeze(weights)
        )
    if kind == "tensor":
        if not (1 <= dim <= MAX_TENSOR_AXES):
            raise ValueError(f"tensor rules support 1..{MAX_TENSOR_AXES} axes, got {dim}")
        if len(sizes) != dim:
            raise ValueError("per-axis sizes must match dim")
        axes = []
        for m in sizes:
            _check_axis_size(m)
            n, w = _gauss_hermite_1d(m)
            axes.append((_freeze(n), _freeze(w)))
        exact = min(2 * m - 1 for m in sizes)
        return QuadratureRule("tensor", dim, exact, axes=tuple(axes))
    raise ValueError(f"unknown rule kind {kind!r}")


def build_rule(kind: str, size, dim: int = 1) -> QuadratureRule:
    """Construct a quadrature rule; nodes sorted, fully deterministic.

    size: node count m for the 1-D kinds; (m_r, m_theta) for polar_complex;
    an int or per-axis tuple for tensor.  Rules are cached and shared, so
    the returned object must be treated as read-only (its arrays are).
    """
    if np.isscalar(size):
        sizes = (int(size),) * (dim if kind == "tensor" else 1)
    else:
        sizes = tuple(int(s) for s in size)
    return _build_rule_cached(kind, sizes, dim)


def _check_axis_size(m: int):
    if m < 1:
        raise ValueError("node count must be >= 1")
    if m > MAX_NODES_PER_AXIS:
        raise ValueError(
            f"node count {m} exceeds the stability cap of {MAX_NODES_PER_AXIS} per axis"
        )


def integrate(f, rule: QuadratureRule) -> complex:
    """Sum w_i f(x_i) over the rule, reducing chunks in a fixed order.

    ``f`` receives the whole block of points at once: an (m,) array for 1-D
    rules, an (npts, dim) array for tensor rules, a complex (npts,) array
    for polar rules.
    """
    total = 0.0 + 0.0j
    for pts, wts in rule.iter_points():
        vals = np.asarray(f(pts))
        if not np.all(np.isfinite(vals)):
            raise ValueError("integrand returned a non-finite value at a quadrature node")
        total += complex(np.dot(wts, vals))
    return total


def gauss_rule_for_degree(degree: int, dim: int) -> QuadratureRule:
    """Smallest tensor/1-D Gauss-Hermite rule exact for total degree ``degree``."""
    m = max(degree, 0) // 2 + 1
    if dim == 1:
        return build_rule("gauss_hermite", m)
    return build_rule("tensor", m, dim=dim)


def polar_rule_for_degree(degree: int) -> QuadratureRule:
    """Polar rule exact for all z^a zbar^b with a + b <= degree."""
    m_r = max(degree, 0) // 2 + 1
    return build_rule("polar_complex", (m_r, max(degree, 0) + 1))


def complex_pairs(x: np.ndarray) -> np.ndarray:
    """Fold real points on R^{2n} into complex points on C^n."""
    return x[:, 0::2] + 1j * x[:, 1::2]


def channel_for(h):
    """Adapter mapping raw quadrature points to values of an expansion."""
    if h.domain == "complex" and h.dim > 1:
        return lambda x: h.evaluate(complex_pairs(x))
    return h.evaluate


def _coordinate_block(rule: QuadratureRule, pts: np.ndarray, domain: str) -> np.ndarray:
    """Points as an (npts, dim-in-the-expansion's-sense) coordinate array."""
    if rule.kind == "polar_complex":
        return pts.reshape(-1, 1)
    if domain == "complex":
        return complex_pairs(pts)
    return pts if pts.ndim == 2 else pts.reshape(-1, 1)


def _values_on_rule_block(h, rule: QuadratureRule, pts: np.ndarray) -> np.ndarray:
    """Values of an expansion on a single-block rule, with table caching."""
    coords = None
    ckey = ("coords", h.domain)
    if ckey in rule.cache:
        coords = rule.cache[ckey]
    else:
        coords = _coordinate_block(rule, pts, h.domain)
        rule.cache[ckey] = coords
    npts = len(coords)
    tables = []
    for j, kneed in enumerate(h.coordinate_degrees()):
        tkey = ("table", h.basis, h.domain, j)
        built = rule.cache.get(tkey)
        if built is None or built.shape[0] <= kneed:
            table = h._coord_table(coords[:, j], kneed)
            if table.size <= _TABLE_CACHE_LIMIT:
                rule.cache[tkey] = table
            built = table
        tables.append(built)
    return h.values_on_tables(tables, npts)


def _channel_values(ch, rule: QuadratureRule, pts: np.ndarray) -> np.ndarray:
    if hasattr(ch, "terms") and rule.single_block:
        return _values_on_rule_block(ch, rule, pts)
    if hasattr(ch, "terms"):
        return channel_for(ch)(pts)
    return np.asarray(ch(pts))


def _abs2_on_block(channels, rule, pts) -> np.ndarray:
    acc = None
    for ch in channels:
        v = _channel_values(ch, rule, pts)
        a = v.real**2 + v.imag**2 if np.iscomplexobj(v) else v * v
        acc = a if acc is None else acc + a
    return acc


def _as_request(req) -> NormRequest:
    return req if isinstance(req, NormRequest) else NormRequest(float(req))


def _is_even_integer(p: float) -> bool:
    return p == int(p) and int(p) % 2 == 0


def lp_norm_channels(channels, dim: int, poly_degree: int, req, domain: str = "real") -> NormResult:
    """L^p norm of the Euclidean length of a tuple of channels.

    Channels are expansion objects (preferred; evaluation tables are then
    cached per rule) or callables on raw quadrature points.  The integrand
    is (sum_j |f_j|^2)^{p/2}; ``poly_degree`` bounds the degree of each
    channel so that even-integer p admits an exact rule.
    """
    req = _as_request(req)
    p = req.p
    if domain not in ("real", "complex"):
        raise ValueError(f"unknown domain {domain!r}")
    axes = dim if domain == "real" else 2 * dim

    def exact_rule() -> QuadratureRule:
        target = int(p) * poly_degree
        if domain == "complex" and dim == 1:
            return polar_rule_for_degree(target)
        return gauss_rule_for_degree(target, axes)

    def ladder_size(level: int) -> int | None:
        base = max(poly_degree + 1, 10)
        m = round(base * 1.5**level)
        if m > MAX_NODES_PER_AXIS:
            prev = round(base * 1.5 ** (level - 1))
            # allow one final level clamped to the cap
            return MAX_NODES_PER_AXIS if prev < MAX_NODES_PER_AXIS else None
        return m

    def ladder_rule(level: int) -> QuadratureRule | None:
        m = ladder_size(level)
        if m is None:
            return None
        if domain == "complex" and dim == 1:
            m_t = min(max(2 * poly_degree + 1, 2 * m + 1), MAX_ANGULAR_NODES)
            return build_rule("polar_complex", (m, m_t))
        return build_rule("gauss_hermite", m) if axes == 1 else build_rule("tensor", m, dim=axes)

    def value_on(rule: QuadratureRule) -> float:
        total = 0.0
        for pts, wts in rule.iter_points():
            total += float(np.dot(wts, _abs2_on_block(channels, rule, pts) ** (p / 2.0)))
        return total ** (1.0 / p)

    if _is_even_integer(p):
        return NormResult(value_on(exact_rule()), 0.0, 0)

    prev_raw = math.inf
    change = math.inf
    prev = value_on(ladder_rule(0))
    for level in range(1, req.max_refinements + 1):
        rule = ladder_rule(level)
        if rule is None:
            raise ConvergenceError(
                f"L^{p} norm refinement hit the {MAX_NODES_PER_AXIS}-node axis cap at"
                f" relative change {change:.3e} (requested {req.tol:.3e})",
                prev,
                change,
            )
        cur = value_on(rule)
        raw = abs(cur - prev) / max(abs(cur), 1e-300)
        # guard against a lucky cancellation between successive levels
        change = raw + (0.25 * prev_raw if math.isfinite(prev_raw) else 0.0)
        if change < req.tol and level >= 2:
            return NormResult(cur, change, level)
        prev, prev_raw = cur, raw
    raise ConvergenceError(
        f"L^{p} norm did not converge within {req.max_refinements} refinements"
        f" (last relative change {change:.3e}, requested {req.tol:.3e})",
        prev,
        change,
    )


def achievable_tol(*exponents: float, domain: str = "real") -> float:
    """Default adaptive tolerance reliably reachable at the given exponents.

    |f|^p is merely Hoelder-continuous at zeros of f, so node-doubling
    converges algebraically and small exponents cannot reach 1e-8 within
    the axis caps.  The polar rule ("complex") fares better because the
    angular average smooths the kinks; Gauss-Hermite grids resolve them at
    the bulk node spacing ~ m^{-1/2} only.  Even integers are exact and
    ignore the tolerance entirely.
    """
    worst = min(exponents)
    if domain == "complex":
        if worst >= 2:
            return 1e-7
        if worst >= 1.5:
            return 2e-5
        if worst >= 1:
            return 2e-4
        return 2e-3
    if worst >= 3:
        return 1e-5
    if worst > 2:
        return 1e-4
    if worst >= 1.5:
        return 5e-3
    return 2e-2


def lp_norm(h, req) -> NormResult:
    """L^p(dgamma) norm of a polynomial expansion.

    Even integer p is computed on a polynomially-exact rule; other exponents
    use adaptive node doubling and report the achieved relative tolerance on
    the result.
    """
    req = _as_request(req)
    if h.is_zero:
        return NormResult(0.0, 0.0, 0)
    return lp_norm_channels([h], h.dim, h.max_degree, req, domain=h.domain)


def inner_product(f, g) -> complex:
    """Sesquilinear Gaussian inner product integral f gbar dgamma_n."""
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if f.domain != g.domain or f.domain != "real":
        raise ValueError("inner_product is defined for real-domain expansions")
    if f.is_zero or g.is_zero:
        return 0.0 + 0.0j
    rule = gauss_rule_for_degree(f.max_degree + g.max_degree, f.dim)
    total = 0.0 + 0.0j
    for pts, wts in rule.iter_points():
        fv = _channel_values(f, rule, pts)
        gv = _channel_values(g, rule, pts)
        total += complex(np.dot(wts, fv * np.conj(gv)))
    return total


def gaussian_moment(k: int) -> float:
    """E[X^k] for standard Gaussian X: 0 for odd k, (k-1)!! for even k."""
    if k % 2 == 1:
        return 0.0
    return float(math.prod(range(k - 1, 0, -2))) if k else 1.0


def integrate_monomial_moments(m) -> complex:
    """Moment-by-moment integral of a monomial expansion against dgamma_n.

    Independent of any quadrature rule; serves as a brute-force oracle.
    """
    total = 0.0 + 0.0j
    for alpha, c in m.terms.items():
        total += c * math.prod(gaussian_moment(a) for a in alpha)
    return total
