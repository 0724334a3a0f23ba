"""Quadrature rules: weighted Gauss rules on [-1,1], periodic azimuth, sphere products.

Rules self-certify at construction through a moment audit against exact
Gamma-function moments; a failed audit aborts instead of returning a silently
inexact rule.  Node/weight generation for the ultraspherical weight
(1-t^2)^((d-3)/2) is delegated to scipy's Golub-Welsch solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.special import gammaln, roots_jacobi

from .errors import BudgetError
from .special_fn import DimensionParams, sphere_surface_area

DEFAULT_NODE_CAP = 20_000_000
_MAX_PRODUCT_DIM = 6

GAUSS_ULTRASPHERICAL = "gauss-ultraspherical"
PERIODIC_UNIFORM = "periodic-uniform"
SPHERE_PRODUCT = "sphere-product"


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable nodes/weights with a certified polynomial exactness degree.

    nodes has shape (N,) for 1-D rules and (N, d) for sphere rules; weights are
    strictly positive and sum to the measure of the underlying domain.
    """

    kind: str
    dims: DimensionParams | None
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    domain_measure: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if weights.ndim != 1 or len(weights) != len(nodes):
            raise ValueError("weights must be 1-D and match the node count")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must all be positive")
        total = float(np.sum(weights))
        if abs(total - self.domain_measure) > 1e-12 * abs(self.domain_measure):
            raise ValueError(
                f"weight sum {total!r} disagrees with domain measure "
                f"{self.domain_measure!r} beyond relative 1e-12"
            )
        if self.kind == SPHERE_PRODUCT:
            norms = np.linalg.norm(nodes, axis=1)
            worst = float(np.max(np.abs(norms - 1.0)))
            if worst > 1e-14:
                raise ValueError(f"sphere node off the unit sphere by {worst:.3e}")

    @property
    def size(self) -> int:
        return len(self.weights)


def ultraspherical_measure(d: int) -> float:
    """Integral of (1-t^2)^((d-3)/2) over [-1, 1]."""
    a = (d - 3) / 2.0
    return math.exp(
        (2.0 * a + 1.0) * math.log(2.0) + 2.0 * gammaln(a + 1.0) - gammaln(2.0 * a + 2.0)
    )


def ultraspherical_moment(d: int, k: int) -> float:
    """Exact moment of t^k against (1-t^2)^((d-3)/2); zero for odd k."""
    if k % 2 == 1:
        return 0.0
    m = k // 2
    a = (d - 3) / 2.0
    return math.exp(gammaln(m + 0.5) + gammaln(a + 1.0) - gammaln(m + a + 1.5))


def _audit_ultraspherical(nodes: np.ndarray, weights: np.ndarray, d: int, degree: int,
                          rtol: float = 1e-10) -> float:
    """Check all moments up to `degree`; returns the worst scaled error."""
    worst = 0.0
    tpow = np.ones_like(nodes)
    abs_tpow = np.ones_like(nodes)
    abst = np.abs(nodes)
    for k in range(degree + 1):
        if k > 0:
            tpow = tpow * nodes
            abs_tpow = abs_tpow * abst
        approx = float(np.dot(weights, tpow))
        scale = max(float(np.dot(weights, abs_tpow)), 1e-300)
        err = abs(approx - ultraspherical_moment(d, k)) / scale
        worst = max(worst, err)
        if err > rtol:
            raise RuntimeError(
                f"moment audit failed for degree-{k} moment of the "
                f"{d}-dim ultraspherical rule: scaled error {err:.3e}"
            )
    return worst


def gauss_ultraspherical(dims: DimensionParams, num_nodes: int) -> QuadratureRule:
    """Gauss rule for the weight (1-t^2)^((d-3)/2), exact to degree 2n-1."""
    if num_nodes < 1:
        raise ValueError("need at least one node")
    a = dims.zonal_alpha
    nodes, weights = roots_jacobi(num_nodes, a, a)
    degree = 2 * num_nodes - 1
    _audit_ultraspherical(nodes, weights, dims.d, degree)
    return QuadratureRule(
        GAUSS_ULTRASPHERICAL, dims, nodes, weights, degree, ultraspherical_measure(dims.d)
    )


def periodic_uniform(num_points: int) -> QuadratureRule:
    """Uniform rule on [0, 2pi); exact for trigonometric degree <= n-1."""
    if num_points < 1:
        raise ValueError("need at least one point")
    nodes = 2.0 * math.pi * np.arange(num_points) / num_points
    weights = np.full(num_points, 2.0 * math.pi / num_points)
    return QuadratureRule(PERIODIC_UNIFORM, None, nodes, weights, num_points - 1, 2.0 * math.pi)


def sphere_monomial_moment(d: int, exponents) -> float:
    """Exact integral of prod x_i^{a_i} over the unit sphere in R^d."""
    a = np.asarray(exponents, dtype=int)
    if len(a) != d:
        raise ValueError("need one exponent per coordinate")
    if np.any(a % 2 == 1):
        return 0.0
    return 2.0 * math.exp(
        float(np.sum(gammaln((a + 1.0) / 2.0))) - gammaln((float(np.sum(a)) + d) / 2.0)
    )


def product_rule_size(d: int, max_degree: int, azimuth_points: int | None = None) -> int:
    """Node count of the product rule without building it."""
    n_polar = (max_degree + 2) // 2 if max_degree >= 1 else 1
    m = azimuth_points if azimuth_points is not None else max(max_degree + 1, 1)
    return m * n_polar ** (d - 2)


def sphere_product_rule(dims: DimensionParams, max_degree: int,
                        node_cap: int = DEFAULT_NODE_CAP) -> QuadratureRule:
    """Product rule on S^{d-1} exact for spherical polynomials of total degree
    <= max_degree.

    Built recursively: a Gauss ultraspherical rule in each polar angle (cosine
    variable) and a uniform azimuthal rule with max_degree+1 points.  Odd
    monomials integrate to zero by node symmetry, so Gauss exactness in each
    factor suffices for total-degree exactness.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    if dims.d > _MAX_PRODUCT_DIM:
        raise ValueError(
            f"product rules support d <= {_MAX_PRODUCT_DIM}; node count explodes beyond that"
        )
    size = product_rule_size(dims.d, max_degree)
    if size > node_cap:
        raise BudgetError(
            f"product rule for d={dims.d}, degree {max_degree} needs {size} nodes "
            f"(cap {node_cap})"
        )
    n_polar = (max_degree + 2) // 2 if max_degree >= 1 else 1
    m_azimuth = max(max_degree + 1, 1)

    phi = 2.0 * math.pi * np.arange(m_azimuth) / m_azimuth
    pts = np.column_stack([np.sin(phi), np.cos(phi)])  # x2 = r cos(phi), x1 = r sin(phi)
    wts = np.full(m_azimuth, 2.0 * math.pi / m_azimuth)

    for j in range(3, dims.d + 1):
        a = (j - 3) / 2.0
        t, wt = roots_jacobi(n_polar, a, a)
        s = np.sqrt(1.0 - t * t)
        # new point set: (s_i * y_k, t_i) for every inner point y_k
        pts = np.concatenate(
            [np.column_stack([si * pts, np.full(len(pts), ti)]) for ti, si in zip(t, s)]
        )
        wts = np.concatenate([wi * wts for wi in wt])

    rule = QuadratureRule(
        SPHERE_PRODUCT, dims, pts, wts, max_degree, sphere_surface_area(dims.d)
    )
    audit_sphere_rule(rule)
    return rule


def audit_sphere_rule(rule: QuadratureRule, full_degree: int = 8, samples: int = 200,
                      rtol: float = 1e-10, seed: int = 2024) -> float:
    """Moment audit of a sphere rule against exact monomial integrals.

    All monomials up to min(full_degree, exactness) are checked, plus a
    deterministic random sample of higher-degree monomials up to the exactness
    degree.  Raises on failure, returns the worst scaled error.
    """
    d = rule.dims.d
    deg = rule.exactness_degree
    exps = list(_monomials_up_to(d, min(full_degree, deg)))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        total = int(rng.integers(min(full_degree, deg) + 1, deg + 1)) if deg > full_degree else None
        if total is None:
            break
        cuts = np.sort(rng.integers(0, total + 1, size=d - 1))
        parts = np.diff(np.concatenate (([0], cuts, [total])))
        exps.append(tuple(int(x) for x in parts))
    worst = 0.0
    for a in exps:
        vals = np.prod(rule.nodes ** np.asarray(a, dtype=float), axis=1)
        approx = float(np.dot(rule.weights, vals))
        exact = sphere_monomial_moment(d, a)
        scale = max(float(np.dot(rule.weights, np.abs(vals))), 1e-300)
        err = abs(approx - exact) / scale
        worst = max(worst, err)
        if err > rtol:
            raise RuntimeError(
                f"sphere moment audit failed for monomial {a}: scaled error {err:.3e}"
            )
    return worst


def _monomials_up_to(d: int, degree: int):
    def rec(prefix, remaining, slots):
        if slots == 1:
            for k in range(remaining + 1):
                yield tuple(prefix + [k])
            return
        for k in range(remaining + 1):
            yield from rec(prefix + [k], remaining - k, slots - 1)

    yield from rec([], degree, d)


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]):
    """Sum w_i f(x_i) with deterministic pairwise accumulation.

    f receives the full node array ((N,) or (N, d)) and must return finite
    values at every node; a non-finite value aborts with the offending node.
    """
    vals = np.asarray(f(rule.nodes))
    if vals.shape != (rule.size,):
        raise ValueError(f"integrand returned shape {vals.shape}, expected ({rule.size},)")
    finite = np.isfinite(vals) if not np.iscomplexobj(vals) else (
        np.isfinite(vals.real) & np.isfinite(vals.imag)
    )
    if not np.all(finite):
        i = int(np.argmin(finite))
        raise ValueError(f"integrand non-finite at node {i}: {rule.nodes[i]!r}")
    return complex(np.sum(rule.weights * vals)) if np.iscomplexobj(vals) else float(
        np.sum(rule.weights * vals)
    )


# --- optional flat-file caching ------------------------------------------------

def rule_cache_path(cache_dir: str | Path, kind: str, d: int, size: int) -> Path:
    return Path(cache_dir) / f"{kind}_d{d}_n{size}.txt"


def save_rule(rule: QuadratureRule, cache_dir: str | Path) -> Path:
    """Write one decimal record per node (17 significant digits) plus a header."""
    d = rule.dims.d if rule.dims is not None else 1
    path = rule_cache_path(cache_dir, rule.kind, d, rule.size)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="ascii") as fh:
        fh.write(f"# kind={rule.kind} d={d} size={rule.size} "
                 f"exactness={rule.exactness_degree} measure={rule.domain_measure!r}\n")
        nodes = rule.nodes if rule.nodes.ndim == 2 else rule.nodes[:, None]
        for row, w in zip(nodes, rule.weights):
            fh.write(" ".join(f"{x:.17g}" for x in row) + f" {w:.17g}\n")
    return path


def load_rule(cache_dir: str | Path, kind: str, d: int, size: int) -> QuadratureRule:
    path = rule_cache_path(cache_dir, kind, d, size)
    with path.open("r", encoding="ascii") as fh:
        header = fh.readline()
        fields = dict(part.split("=", 1) for part in header.lstrip("# ").split())
        exactness = int(fields["exactness"])
        measure = float(fields["measure"])
        rows = np.loadtxt(fh, ndmin=2)
    nodes, weights = rows[:, :-1], rows[:, -1]
    if nodes.shape[1] == 1:
        nodes = nodes[:, 0]
    dims = DimensionParams(d) if kind != PERIODIC_UNIFORM else None
    return QuadratureRule(kind, dims, nodes, weights, exactness, measure)
