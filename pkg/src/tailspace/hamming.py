"""Fourier-Walsh analysis on the hypercube {-1,1}^n.

The discrete side of the story: exact small-n computations that mirror the
Gaussian tail-space estimates.  Functions are stored as value tables over
all 2^n points; point index i encodes coordinates by bits, x_j = 1 - 2*bit,
and coordinates are numbered 1..n in the public subset mapping.  Norms are
exact finite averages, so the only error anywhere is float roundoff.

The discrete Laplacian is kept in both of its guises: the coordinate-flip
form (sum of martingale differences) and the Walsh multiplier |S|.  Their
agreement is a standing cross-check, not an implementation detail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extremal import (
    ConstantEstimate,
    RatioObjective,
    SearchOptions,
    _NormTerm,
    multi_start_extremum,
)

MAX_DIM = 12


def _check_power_of_two(size: int) -> int:
    n = size.bit_length() - 1
    if size <= 0 or 1 << n != size:
        raise ValueError(f"value table length {size} is not a power of two")
    return n


def walsh_transform(values) -> np.ndarray:
    """Walsh coefficients a_S = E[f chi_S], indexed by subset bitmask.

    Bit j-1 of the mask corresponds to coordinate j.  Fast butterfly; the
    inverse is :func:`walsh_inverse` and the round trip is exact to float
    roundoff.
    """
    a = np.asarray(values, dtype=complex).copy()
    n = _check_power_of_two(len(a))
    h = 1
    while h < len(a):
        for start in range(0, len(a), 2 * h):
            top = a[start : start + h].copy()
            bottom = a[start + h : start + 2 * h]
            a[start : start + h] = top + bottom
            a[start + h : start + 2 * h] = top - bottom
        h *= 2
    return a / len(a)


def walsh_inverse(coeffs) -> np.ndarray:
    """Value table from Walsh coefficients (unscaled butterfly)."""
    a = np.asarray(coeffs, dtype=complex)
    _check_power_of_two(len(a))
    return walsh_transform(a) * len(a)


def _subset_mask(subset) -> int:
    mask = 0
    for j in subset:
        if not 1 <= j:
            raise ValueError(f"coordinates are numbered from 1, got {j}")
        mask |= 1 << (j - 1)
    return mask


def _mask_subset(mask: int) -> tuple:
    return tuple(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


class BooleanFunction:
    """A function on {-1,1}^n given by its 2^n values, with cached Walsh side."""

    __slots__ = ("_n", "_values", "_walsh")

    def __init__(self, values):
        values = np.asarray(values, dtype=complex)
        self._n = _check_power_of_two(len(values))
        if self._n > MAX_DIM:
            raise ValueError(f"dimension {self._n} exceeds the cap of {MAX_DIM}")
        self._values = values
        self._values.setflags(write=False)
        self._walsh = None

    @classmethod
    def from_walsh(cls, n: int, coeffs) -> "BooleanFunction":
        """Build from a subset->coefficient mapping or a 2^n mask-indexed array."""
        if hasattr(coeffs, "items"):
            arr = np.zeros(1 << n, dtype=complex)
            for subset, c in coeffs.items():
                arr[_subset_mask(subset)] = c
        else:
            arr = np.asarray(coeffs, dtype=complex)
            if len(arr) != 1 << n:
                raise ValueError(f"expected {1 << n} coefficients, got {len(arr)}")
        f = cls(walsh_inverse(arr))
        f._walsh = arr.copy()
        f._walsh.setflags(write=False)
        return f

    @property
    def n(self) -> int:
        return self._n

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def walsh_array(self) -> np.ndarray:
        """Walsh coefficients indexed by subset bitmask (lazily cached)."""
        if self._walsh is None:
            self._walsh = walsh_transform(self._values)
            self._walsh.setflags(write=False)
        return self._walsh

    @property
    def walsh(self) -> dict:
        """Nonzero Walsh coefficients as {sorted 1-based subset tuple: a_S}."""
        arr = self.walsh_array
        return {_mask_subset(m): arr[m] for m in range(len(arr)) if arr[m] != 0}

    def points(self) -> np.ndarray:
        """The (2^n, n) array of evaluation points x_j = 1 - 2*bit_{j-1}(i)."""
        idx = np.arange(1 << self._n)
        return 1 - 2 * ((idx[:, None] >> np.arange(self._n)[None, :]) & 1)

    def __eq__(self, other):
        return (
            isinstance(other, BooleanFunction)
            and other._n == self._n
            and np.array_equal(other._values, self._values)
        )

    def __repr__(self):
        return f"BooleanFunction(n={self._n})"


def popcounts(n: int) -> np.ndarray:
    """|S| for every subset bitmask of {1..n}."""
    masks = np.arange(1 << n, dtype=np.uint32)
    counts = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        counts += (masks >> j) & 1
    return counts


def cube_laplacian(f: BooleanFunction, method: str = "spectral") -> BooleanFunction:
    """The hypercube Laplacian: multiplies a_S by |S|.

    ``method='flip'`` computes it from the defining coordinate differences
    (f(x) - f(x with x_j flipped))/2 summed over j; both implementations are
    kept as mutual oracles.
    """
    if method == "spectral":
        return BooleanFunction.from_walsh(f.n, f.walsh_array * popcounts(f.n))
    if method == "flip":
        vals = f.values
        out = np.zeros_like(vals)
        idx = np.arange(len(vals))
        for j in range(f.n):
            out += 0.5 * (vals - vals[idx ^ (1 << j)])
        return BooleanFunction(out)
    raise ValueError(f"unknown Laplacian method {method!r}")


def martingale_difference(f: BooleanFunction, j: int) -> BooleanFunction:
    """D_j f(x) = (f(x) - f(x with coordinate j flipped))/2; j is 1-based."""
    if not 1 <= j <= f.n:
        raise ValueError(f"coordinate {j} outside 1..{f.n}")
    idx = np.arange(len(f.values))
    return BooleanFunction(0.5 * (f.values - f.values[idx ^ (1 << (j - 1))]))


def cube_lp_norm(f: BooleanFunction, p: float) -> float:
    """Exact discrete norm (2^-n sum |f(x)|^p)^{1/p}; p >= 1 finite."""
    if not (p >= 1 and math.isfinite(p)):
        raise ValueError(f"cube norms need finite p >= 1, got {p}")
    return float(np.mean(np.abs(f.values) ** p) ** (1.0 / p))


def tail_masks(n: int, d: int) -> list[int]:
    """Subset bitmasks with |S| >= d, in increasing mask order."""
    counts = popcounts(n)
    return [int(m) for m in range(1 << n) if counts[m] >= d]


def cube_extremal(
    n: int, d: int, p: float, opts: SearchOptions = SearchOptions()
) -> ConstantEstimate:
    """Minimize |Delta f|_p / |f|_p over the tail span {a_S = 0 for |S| < d}.

    The result is an upper bound for the best constant at (n, d, p); at
    p = 2 the minimum is exactly d, attained on level d.  Runs the same
    multi-start sphere engine as the Gaussian constants, with exact cube
    norms in place of quadrature.
    """
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"need 1 <= n <= {MAX_DIM}, got {n}")
    if d > n:
        raise ValueError(f"empty tail span: d={d} exceeds n={n}")
    masks = tail_masks(n, d)
    counts = popcounts(n)
    pts = np.arange(1 << n)
    # character matrix chi_S(x_i) = (-1)^{popcount(i & S)}
    chars = np.empty((1 << n, len(masks)))
    for k, m in enumerate(masks):
        chars[:, k] = 1.0 - 2.0 * (counts[pts & m] & 1)
    weights = np.full(1 << n, 1.0 / (1 << n))
    lap = chars * np.array([counts[m] for m in masks], dtype=float)
    objective = RatioObjective(_NormTerm([lap], weights, p), _NormTerm([chars], weights, p))
    c, _, iterations, converged_fraction = multi_start_extremum(
        objective, len(masks), False, opts
    )
    coeffs = np.zeros(1 << n, dtype=complex)
    for k, m in enumerate(masks):
        coeffs[m] = c[k]
    extremizer = BooleanFunction.from_walsh(n, coeffs)
    value = cube_lp_norm(cube_laplacian(extremizer), p) / cube_lp_norm(extremizer, p)
    return ConstantEstimate(
        kind="cube_extremal",
        n=n,
        p=p,
        d=d,
        D=n,
        value=value,
        extremizer=extremizer,
        starts=opts.starts,
        iterations=iterations,
        seed=opts.seed,
        converged_fraction=converged_fraction,
        label=f"restricted estimate (n = {n})",
    )
