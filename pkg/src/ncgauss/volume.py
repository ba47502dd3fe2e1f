"""Regularized volumes of the physical / separable / entangled regions.

The integrand is ``regularizer * metric density`` over the open unit disk
in (m, n); regions are carved out of the disk by the numeric smallest
symplectic eigenvalues.  Three integration engines are available:

* ``gauss``: tensor Gauss-Legendre in polar coordinates at two node
  levels; the reported std_error is the refinement difference.  Default
  for single-region values (tight, deterministic).
* ``mc``: stratified Monte Carlo over the disk via the area-uniform polar
  map; std_error from within-stratum variances.  Default for sweeps.
* ``mc-cartesian``: plain rejection sampling on [-1, 1]^2, kept as an
  independent cross-check of the polar map.

All engines evaluate every region on the same sample points (common
random numbers), so nested-region differences are nonnegative pointwise
and the entangled volume is never negative.  Fixed (seed, method, budget)
reproduce estimates bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .infogeo import (
    fisher_det_batch,
    regularizer_batch,
    toy_metric_det_batch,
    toy_regularizer_closed_batch,
)
from .phasespace import NCParams, nc_form, ppt_form
from .states import CLASSIFY_TOL, RIM_MARGIN, min_nu_batch, toy_covariance_batch

REGION_KINDS = ("positive-disk", "quantum", "separable", "entangled")
BACKENDS = ("paper", "numeric")
DENSITIES = ("det", "sqrt-det")
METHODS = ("gauss", "mc", "mc-cartesian")

MIN_BUDGET = 10_000


@dataclass(frozen=True)
class RegionSpec:
    """A parameter region: one of ``positive-disk``, ``quantum``,
    ``separable``, ``entangled`` at fixed deformation scales."""

    kind: str
    nc: NCParams = field(default_factory=NCParams)

    def __post_init__(self):
        if self.kind not in REGION_KINDS:
            raise DomainError(f"unknown region kind {self.kind!r}; expected one of {REGION_KINDS}")


@dataclass(frozen=True)
class IntegralEstimate:
    """Value, error estimate, and provenance of one volume integral."""

    value: float
    std_error: float
    evals: int
    method: str
    note: str | None = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError("integral estimate must be finite")
        if self.std_error < 0.0 or self.evals <= 0:
            raise DomainError("std_error must be >= 0 and evals > 0")


@dataclass(frozen=True)
class SweepRow:
    param_value: float
    gamma_quantum: IntegralEstimate
    gamma_separable: IntegralEstimate
    gamma_entangled: IntegralEstimate

    @property
    def ratio(self) -> float:
        """Entangled-to-separable volume ratio (NaN when separable is 0)."""
        s = self.gamma_separable.value
        return self.gamma_entangled.value / s if s > 0.0 else float("nan")

    @property
    def ratio_std_error(self) -> float:
        s = self.gamma_separable.value
        if s <= 0.0:
            return float("nan")
        e = self.gamma_entangled.value
        var = (self.gamma_entangled.std_error / s) ** 2 + (
            e * self.gamma_separable.std_error / s**2
        ) ** 2
        return math.sqrt(var)


@dataclass(frozen=True)
class SweepTable:
    """One row per grid value of the swept parameter."""

    parameter: str
    fixed: dict
    rows: tuple[SweepRow, ...]

    @property
    def grid(self) -> list[float]:
        return [row.param_value for row in self.rows]


# ---------------------------------------------------------------------------
# integration engines
# ---------------------------------------------------------------------------

class _GaussEngine:
    """Two-level tensor Gauss-Legendre quadrature in polar coordinates."""

    name = "gauss"

    def __init__(self, budget: int, seed: int):
        # split the evaluation budget over two refinement levels
        n_hi = int(math.sqrt(budget * 9.0 / 13.0))
        n_hi = min(max(n_hi, 24), 200)
        n_lo = max(16, (2 * n_hi) // 3)
        self.levels = [self._nodes(n_lo), self._nodes(n_hi)]
        self.evals = n_hi * n_hi + n_lo * n_lo

    @staticmethod
    def _nodes(n: int):
        xr, wr = np.polynomial.legendre.leggauss(n)
        r = np.minimum(0.5 * (xr + 1.0), 1.0 - RIM_MARGIN)
        wr = 0.5 * wr
        xp, wp = np.polynomial.legendre.leggauss(n)
        phi = math.pi * (xp + 1.0)
        wp = math.pi * wp
        pts = np.stack(
            [
                (r[:, None] * np.cos(phi)[None, :]).ravel(),
                (r[:, None] * np.sin(phi)[None, :]).ravel(),
            ],
            axis=1,
        )
        weights = ((r * wr)[:, None] * wp[None, :]).ravel()  # jacobian r
        return pts, weights

    def points(self):
        return [pts for pts, _ in self.levels]

    def estimate(self, f_list, mask_list):
        vals = []
        for (_, w), f, mask in zip(self.levels, f_list, mask_list):
            vals.append(float(np.sum(w * f * mask)))
        return vals[1], abs(vals[1] - vals[0]), self.evals


class _StratifiedMCEngine:
    """Stratified Monte Carlo over the disk via the area-uniform polar map
    (u, phi) -> (sqrt(u) cos phi, sqrt(u) sin phi)."""

    name = "mc"

    def __init__(self, budget: int, seed: int):
        k = max(2, int(budget**0.25))
        per_cell = max(2, budget // (k * k))
        rng = np.random.default_rng(seed)
        u01 = rng.random((k, k, per_cell, 2))
        iu, iphi = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
        u = (iu[..., None] + u01[..., 0]) / k
        phi = 2.0 * math.pi * (iphi[..., None] + u01[..., 1]) / k
        r = np.minimum(np.sqrt(u), 1.0 - RIM_MARGIN)
        self.k, self.per_cell = k, per_cell
        self.pts = np.stack(
            [(r * np.cos(phi)).ravel(), (r * np.sin(phi)).ravel()], axis=1
        )
        self.evals = k * k * per_cell

    def points(self):
        return [self.pts]

    def estimate(self, f_list, mask_list):
        g = (f_list[0] * mask_list[0]).reshape(self.k * self.k, self.per_cell)
        cell_mean = g.mean(axis=1)
        cell_var = g.var(axis=1, ddof=1)
        area = math.pi
        ncells = self.k * self.k
        value = area * float(cell_mean.mean())
        var = (area / ncells) ** 2 * float(np.sum(cell_var / self.per_cell))
        return value, math.sqrt(var), self.evals


class _CartesianMCEngine:
    """Plain rejection Monte Carlo on the bounding square."""

    name = "mc-cartesian"

    def __init__(self, budget: int, seed: int):
        rng = np.random.default_rng(seed)
        pts = rng.uniform(-1.0, 1.0, size=(budget, 2))
        self.inside = np.hypot(pts[:, 0], pts[:, 1]) < 1.0 - RIM_MARGIN
        self.pts = pts[self.inside]
        self.n_total = budget
        self.evals = budget

    def points(self):
        return [self.pts]

    def estimate(self, f_list, mask_list):
        g = np.zeros(self.n_total)
        g[self.inside] = 4.0 * f_list[0] * mask_list[0]
        value = float(g.mean())
        se = float(g.std(ddof=1)) / math.sqrt(self.n_total)
        return value, se, self.evals


def _make_engine(method: str, budget: int, seed: int):
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    if budget < MIN_BUDGET:
        raise DomainError(f"budget must be >= {MIN_BUDGET}, got {budget}")
    cls = {
        "gauss": _GaussEngine,
        "mc": _StratifiedMCEngine,
        "mc-cartesian": _CartesianMCEngine,
    }[method]
    return cls(budget, seed)


# ---------------------------------------------------------------------------
# integrand and region masks
# ---------------------------------------------------------------------------

def density_values(
    points: np.ndarray, kappa: float, backend: str = "paper", density: str = "det"
) -> np.ndarray:
    """Regularized metric density at an (N, 2) array of in-disk points."""
    if backend not in BACKENDS:
        raise DomainError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if density not in DENSITIES:
        raise DomainError(f"unknown density {density!r}; expected one of {DENSITIES}")
    if kappa <= 0.0:
        raise DomainError("kappa must be positive")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if backend == "paper":
        ups = toy_regularizer_closed_batch(pts, kappa)
        dens = toy_metric_det_batch(pts)
    else:
        ups = regularizer_batch(toy_covariance_batch(pts), kappa)
        dens = fisher_det_batch(pts)
    if density == "sqrt-det":
        dens = np.sqrt(dens)
    return ups * dens


def _region_masks(points_list, nc: NCParams, tol: float):
    """(quantum, separable) masks for each point set, shared eigensolves."""
    omega = nc_form(nc)
    omega_p = ppt_form(omega)
    out = []
    for pts in points_list:
        nu = min_nu_batch(pts, omega)
        nup = min_nu_batch(pts, omega_p)
        quantum = nu >= 1.0 - tol
        out.append((quantum, quantum & (nup >= 1.0 - tol)))
    return out


def _mask_for_kind(kind: str, q: np.ndarray, s: np.ndarray) -> np.ndarray:
    if kind == "positive-disk":
        return np.ones_like(q, dtype=bool)
    if kind == "quantum":
        return q
    if kind == "separable":
        return s
    return q & ~s  # entangled


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def integrate_region(
    region: RegionSpec,
    kappa: float,
    backend: str = "numeric",
    density: str = "det",
    budget: int = 50_000,
    seed: int = 0,
    method: str = "gauss",
    tol: float = CLASSIFY_TOL,
) -> IntegralEstimate:
    """Regularized volume of one region.

    Deterministic for fixed (seed, method, budget).  An empty region
    yields value 0 with a zero-measure note rather than an error.
    """
    engine = _make_engine(method, budget, seed)
    pts_list = engine.points()
    f_list = [density_values(p, kappa, backend, density) for p in pts_list]
    if region.kind == "positive-disk":
        masks = [np.ones(len(p), dtype=bool) for p in pts_list]
    else:
        qs = _region_masks(pts_list, region.nc, tol)
        masks = [_mask_for_kind(region.kind, q, s) for q, s in qs]
    value, std_error, evals = engine.estimate(f_list, masks)
    note = None
    if all(not m.any() for m in masks):
        note = "zero-measure region (no accepted sample points)"
        value, std_error = 0.0, 0.0
    return IntegralEstimate(value, std_error, evals, engine.name, note)


def entangled_volume(
    nc: NCParams,
    kappa: float,
    backend: str = "numeric",
    density: str = "det",
    budget: int = 50_000,
    seed: int = 0,
    method: str = "gauss",
    tol: float = CLASSIFY_TOL,
) -> IntegralEstimate:
    """Volume of the entangled region, ``quantum minus separable``.

    Evaluated from the pointwise indicator difference on shared sample
    points, so the result is nonnegative by construction and coincides
    with the difference of the two region integrals at the same seed.
    """
    return integrate_region(
        RegionSpec("entangled", nc), kappa, backend, density, budget, seed, method, tol
    )


def sweep(
    parameter: str,
    grid,
    fixed: dict | None = None,
    backend: str = "paper",
    density: str = "det",
    budget: int = 50_000,
    seed: int = 0,
    method: str = "mc",
    tol: float = CLASSIFY_TOL,
) -> SweepTable:
    """Quantum / separable / entangled volumes along a parameter grid.

    ``parameter`` is one of ``kappa``, ``theta``, ``eta``; ``fixed`` holds
    the remaining two of (kappa, theta, eta), defaulting to 0 deformation
    and kappa = 4.  One set of sample points (per the method and seed) is
    shared by every grid value and every region, so columns vary smoothly
    along the grid and ratios inherit the pointwise region nesting.
    """
    if parameter not in ("kappa", "theta", "eta"):
        raise DomainError(f"unknown sweep parameter {parameter!r}")
    grid = [float(g) for g in grid]
    if not grid:
        raise DomainError("sweep grid must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("sweep grid must be strictly increasing")
    fixed = dict(fixed or {})
    defaults = {"kappa": 4.0, "theta": 0.0, "eta": 0.0}
    for key, val in defaults.items():
        if key != parameter:
            fixed.setdefault(key, val)
    fixed = {k: float(v) for k, v in fixed.items() if k != parameter}

    engine = _make_engine(method, budget, seed)
    pts_list = engine.points()

    cached_masks = None
    cached_f = None
    rows = []
    for value in grid:
        params = dict(fixed)
        params[parameter] = value
        nc = NCParams(params["theta"], params["eta"])  # validates theta*eta < 1
        kappa = params["kappa"]
        if kappa <= 0.0:
            raise DomainError("kappa must be positive")

        if parameter == "kappa":
            if cached_masks is None:
                cached_masks = _region_masks(pts_list, nc, tol)
            qs = cached_masks
            f_list = [density_values(p, kappa, backend, density) for p in pts_list]
        else:
            if cached_f is None:
                cached_f = [density_values(p, kappa, backend, density) for p in pts_list]
            f_list = cached_f
            qs = _region_masks(pts_list, nc, tol)

        estimates = {}
        for kind in ("quantum", "separable", "entangled"):
            masks = [_mask_for_kind(kind, q, s) for q, s in qs]
            val, se, evals = engine.estimate(f_list, masks)
            note = None
            if all(not m.any() for m in masks):
                note = "zero-measure region (no accepted sample points)"
                val, se = 0.0, 0.0
            estimates[kind] = IntegralEstimate(val, se, evals, engine.name, note)
        rows.append(
            SweepRow(value, estimates["quantum"], estimates["separable"], estimates["entangled"])
        )
    return SweepTable(parameter=parameter, fixed=fixed, rows=tuple(rows))
