"""Jacobi polynomials, normalized zonal profiles, and the step-2 difference kernels.

Everything here is scalar/array math on [-1, 1]: three-term recurrences for
P_n^{(a,b)}, the normalized profile R_n (value 1 at t=1), the alternating
step-2 degree differences used to build the convolution kernel Phi_n, and the
Gamma-based reproducing constants.  All Gamma arithmetic is done in the log
domain so that degrees up to ~1e5 stay inside double range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

_T_DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class DimensionParams:
    """Ambient dimension d >= 3 with the derived index lambda = (d-2)/2."""

    d: int
    lam: float = field(init=False)
    sphere_area: float = field(init=False)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 3:
            raise ValueError(f"dimension must be an integer >= 3, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "lam", (self.d - 2) / 2.0)
        object.__setattr__(self, "sphere_area", sphere_surface_area(self.d))

    @property
    def zonal_alpha(self) -> float:
        """Jacobi index (d-3)/2 of the zonal reduction weight (1-t^2)^((d-3)/2)."""
        return (self.d - 3) / 2.0


@dataclass(frozen=True)
class JacobiParams:
    """Degree and indices of a Jacobi polynomial P_n^{(alpha,beta)}."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError(f"degree must be a nonnegative integer, got {self.n}")
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise ValueError(
                f"Jacobi indices must exceed -1, got alpha={self.alpha}, beta={self.beta}"
            )


@dataclass(frozen=True)
class KernelProfile:
    """A zonal kernel sampled at increasing abscissae t = cos(theta) in [-1, 1]."""

    dims: DimensionParams
    degree: int
    abscissae: np.ndarray
    values: np.ndarray
    kind: str  # normalized-jacobi | phi-kernel | projection-kernel

    def __post_init__(self):
        t = np.asarray(self.abscissae, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise ValueError("abscissae and values must be 1-D arrays of equal length")
        if t.size and (t[0] < -1.0 - _T_DOMAIN_TOL or t[-1] > 1.0 + _T_DOMAIN_TOL):
            raise ValueError("abscissae must lie in [-1, 1]")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("abscissae must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("kernel values must be finite")
        object.__setattr__(self, "abscissae", t)
        object.__setattr__(self, "values", v)


def sphere_surface_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2.0) / math.exp(gammaln(d / 2.0))


def chebyshev_abscissae(num: int) -> np.ndarray:
    """num strictly increasing points cos(pi k / (num-1)), denser near t = +-1."""
    if num < 2:
        raise ValueError("need at least 2 abscissae")
    return np.cos(np.linspace(math.pi, 0.0, num))


def _check_t(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < -1.0 - _T_DOMAIN_TOL) or np.any(t > 1.0 + _T_DOMAIN_TOL):
        raise ValueError("argument t outside [-1, 1]")
    return np.clip(t, -1.0, 1.0)


def jacobi_sweep(nmax: int, alpha: float, beta: float, t) -> np.ndarray:
    """All Jacobi values P_k^{(alpha,beta)}(t) for k = 0..nmax.

    Forward three-term recurrence in the degree, vectorized over t.  Returns an
    array of shape (nmax+1, len(t)).  The forward direction is stable here:
    the dominant solution of the recurrence is the polynomial itself.
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("Jacobi indices must exceed -1")
    t = _check_t(np.atleast_1d(t))
    out = np.empty((nmax + 1, t.size))
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 0.5 * ((alpha + beta + 2.0) * t + (alpha - beta))
    ab = alpha + beta
    for k in range(2, nmax + 1):
        c1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        c2 = (2.0 * k + ab - 1.0) * (2.0 * k + ab) * (2.0 * k + ab - 2.0)
        c3 = (2.0 * k + ab - 1.0) * (alpha * alpha - beta * beta)
        c4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab)
        out[k] = ((c2 * t + c3) * out[k - 1] - c4 * out[k - 2]) / c1
    return out


def jacobi_eval(params: JacobiParams, t):
    """P_n^{(alpha,beta)}(t) by forward recurrence; accepts scalars or arrays."""
    scalar = np.isscalar(t) or getattr(t, "ndim", 1) == 0
    vals = jacobi_sweep(params.n, params.alpha, params.beta, t)[params.n]
    return float(vals[0]) if scalar else vals


def jacobi_endpoint(n: int, alpha: float) -> float:
    """P_n^{(alpha,beta)}(1) = binom(n+alpha, n), computed in the log domain."""
    return math.exp(gammaln(n + alpha + 1.0) - gammaln(alpha + 1.0) - gammaln(n + 1.0))


def normalized_jacobi_sweep(dims: DimensionParams, nmax: int, t) -> np.ndarray:
    """R_k(t) = P_k^{(a,a)}(t) / P_k^{(a,a)}(1) for k = 0..nmax, a = lambda - 1/2."""
    a = dims.lam - 0.5
    sweep = jacobi_sweep(nmax, a, a, t)
    ends = np.array([jacobi_endpoint(k, a) for k in range(nmax + 1)])
    return sweep / ends[:, None]


def normalized_jacobi(dims: DimensionParams, n: int, t):
    """R_n(t), the degree-n zonal profile normalized to R_n(1) = 1."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    scalar = np.isscalar(t) or getattr(t, "ndim", 1) == 0
    a = dims.lam - 0.5
    vals = jacobi_sweep(n, a, a, t)[n] / jacobi_endpoint(n, a)
    return float(vals[0]) if scalar else vals


def delta2_diff(dims: DimensionParams, ell: int, n: int, t):
    """ell-th order step-2 difference of R in the degree variable at fixed t.

    Direct alternating-binomial sum over R_{n+2j}, j = 0..ell; all degrees come
    from one recurrence sweep.
    """
    if ell < 1:
        raise ValueError("difference order ell must be >= 1")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    scalar = np.isscalar(t) or getattr(t, "ndim", 1) == 0
    sweep = normalized_jacobi_sweep(dims, n + 2 * ell, np.atleast_1d(t))
    acc = np.zeros(sweep.shape[1])
    for j in range(ell + 1):
        acc += (-1) ** j * math.comb(ell, j) * sweep[n + 2 * j]
    return float(acc[0]) if scalar else acc


def c_n_constant(dims: DimensionParams, n: int) -> float:
    """Reproducing constant of the normalized zonal kernel; grows like n^{d-2}."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    d = dims.d
    logv = (
        gammaln(d / 2.0)
        - math.log(2.0)
        - (d / 2.0) * math.log(math.pi)
        + math.log(d + 2.0 * n - 2.0)
        - math.log(d + n - 2.0)
        + gammaln(d + n - 1.0)
        - gammaln(n + 1.0)
        - gammaln(d - 1.0)
    )
    if logv > 700.0:
        raise OverflowError(f"c_n overflows double range at d={d}, n={n}")
    return math.exp(logv)


def proj_constant(dims: DimensionParams, k: int) -> float:
    """Constant C_{k,d} in front of the degree-k projection kernel."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    d = dims.d
    logv = (
        gammaln(d / 2.0)
        + gammaln((d - 1.0) / 2.0)
        - math.log(2.0)
        - (d / 2.0) * math.log(math.pi)
        - gammaln(d - 1.0)
        + math.log(2.0 * k + d - 2.0)
        + gammaln(k + d - 2.0)
        - gammaln(k + (d - 1.0) / 2.0)
    )
    if logv > 700.0:
        raise OverflowError(f"C_(k,d) overflows double range at d={d}, k={k}")
    return math.exp(logv)


def phi_kernel(dims: DimensionParams, n: int, t):
    """Convolution kernel Phi_n(t): c_n times the (d-2)-fold step-2 difference.

    The difference order is fixed to d-2, the smallest integer exceeding
    lambda, which makes sup |Phi_n| = O(n^lambda).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    ell = dims.d - 2
    return c_n_constant(dims, n) * delta2_diff(dims, ell, n, t)


def phi_kernel_profile(dims: DimensionParams, n: int, num: int = 2048) -> KernelProfile:
    """Phi_n sampled on Chebyshev abscissae (dense near the poles)."""
    t = chebyshev_abscissae(num)
    return KernelProfile(dims, n, t, phi_kernel(dims, n, t), "phi-kernel")


def projection_kernel_profile(dims: DimensionParams, k: int, num: int = 2048) -> KernelProfile:
    """C_{k,d} P_k^{((d-3)/2,(d-3)/2)} sampled on Chebyshev abscissae."""
    t = chebyshev_abscissae(num)
    a = dims.zonal_alpha
    vals = proj_constant(dims, k) * jacobi_sweep(k, a, a, t)[k]
    return KernelProfile(dims, k, t, vals, "projection-kernel")


def normalized_jacobi_profile(dims: DimensionParams, n: int, num: int = 2048) -> KernelProfile:
    t = chebyshev_abscissae(num)
    return KernelProfile(dims, n, t, normalized_jacobi(dims, n, t), "normalized-jacobi")
