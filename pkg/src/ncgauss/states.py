"""Bipartite Gaussian covariance family, symplectic spectra, and the
physical / separable / entangled state classifier.

The covariance family is the two-mode-per-party pure-state form

    Sigma(m, n) = (b/2) [[I4, gamma], [gamma, I4]],
    gamma = [[n I2, m sz], [m sz, -n I2]],     b = (1+R)/(1-R),

with ``R = hypot(m, n) < 1`` (sz the 2x2 diagonal sign matrix).  Its
eigenvalues are (b/2)(1 +- R), each fourfold.

A state is physical iff the smallest symplectic eigenvalue of Sigma with
respect to the deformed form is >= 1, and separable iff the same holds
after the partial-transpose reflection of party B.  The classifier uses
the numeric spectra (general eigensolver) as ground truth; the closed-form
expressions :func:`nu_minus` / :func:`nu_prime_minus` are provided for the
audit path and are exact only on the ``n = 0, eta = 0`` slice (see
:mod:`ncgauss.report`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DegeneracyError,
    DimensionError,
    DomainError,
    NumericDomainError,
    SpectrumError,
    SymmetryError,
)
from .phasespace import DarbouxMap, NCParams, SymplecticForm, nc_form, ppt_form

SZ = np.diag([1.0, -1.0])

#: default tolerance on the nu >= 1 classification thresholds
CLASSIFY_TOL = 1e-9

#: points closer to the unit circle than this are treated as outside
RIM_MARGIN = 1e-9


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric positive-definite 2n x 2n second-moment matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] % 2:
            raise DimensionError(f"covariance must be square even-dim, got {mat.shape}")
        scale = max(np.max(np.abs(mat)), 1.0)
        if np.max(np.abs(mat - mat.T)) > 1e-12 * scale:
            raise SymmetryError("covariance matrix is not symmetric within 1e-12")
        mat = 0.5 * (mat + mat.T)
        if np.linalg.eigvalsh(mat)[0] <= 0.0:
            raise DegeneracyError("covariance matrix is not positive definite")
        out = mat.copy()
        out.flags.writeable = False
        object.__setattr__(self, "matrix", out)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_modes(self) -> int:
        return self.dim // 2


@dataclass(frozen=True)
class ToyPoint:
    """Covariance-family parameters (m, n) plus the deformation scales."""

    m: float
    n: float
    nc: NCParams = field(default_factory=NCParams)

    def __post_init__(self):
        if not (np.isfinite(self.m) and np.isfinite(self.n)):
            raise DomainError("m and n must be finite")
        if self.radius >= 1.0:
            raise DomainError(
                f"(m, n) = ({self.m:g}, {self.n:g}) is outside the positivity disk"
            )

    @property
    def radius(self) -> float:
        return float(np.hypot(self.m, self.n))

    @property
    def b(self) -> float:
        r = self.radius
        return (1.0 + r) / (1.0 - r)


class StateClass(enum.Enum):
    UNPHYSICAL = "Unphysical"
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"


def _toy_matrix(m: float, n: float) -> np.ndarray:
    r = np.hypot(m, n)
    b = (1.0 + r) / (1.0 - r)
    gamma = np.zeros((4, 4))
    gamma[:2, :2] = n * np.eye(2)
    gamma[:2, 2:] = m * SZ
    gamma[2:, :2] = m * SZ
    gamma[2:, 2:] = -n * np.eye(2)
    sig = np.eye(8)
    sig[:4, 4:] = gamma.T
    sig[4:, :4] = gamma
    return 0.5 * b * sig


def toy_covariance(p: ToyPoint) -> CovarianceMatrix:
    """Covariance matrix of the family at ``(p.m, p.n)`` (8x8)."""
    return CovarianceMatrix(_toy_matrix(p.m, p.n))


def darboux_conjugate(
    sigma: CovarianceMatrix, s: DarbouxMap, direction: str = "push"
) -> CovarianceMatrix:
    """Transport a covariance along a Darboux map.

    ``push`` maps a commutative-frame covariance to the deformed frame,
    ``S Sigma S^T``; ``pull`` applies the inverse map.  The result is
    symmetrized and must remain positive definite.
    """
    if direction not in ("push", "pull"):
        raise DomainError(f"direction must be 'push' or 'pull', got {direction!r}")
    if sigma.dim != s.dim:
        raise DimensionError(
            f"covariance dim {sigma.dim} does not match map dim {s.dim}"
        )
    mat = s.matrix if direction == "push" else s.inverse_matrix()
    out = mat @ sigma.matrix @ mat.T
    try:
        return CovarianceMatrix(0.5 * (out + out.T))
    except DegeneracyError as exc:
        raise DegeneracyError(
            f"{direction} produced a numerically degenerate covariance"
        ) from exc


def symplectic_spectrum(sigma: CovarianceMatrix, omega: SymplecticForm) -> np.ndarray:
    """Positive symplectic eigenvalues of ``sigma`` w.r.t. ``omega``, ascending.

    These are the n positive values ``nu`` such that ``+-i nu / 2`` are
    eigenvalues of ``omega^{-1} sigma``.  Computed in real arithmetic from
    the general spectrum of ``2 omega^{-1} sigma``, whose eigenvalues are
    ``+-i nu``; a non-negligible real part (> 1e-8 relative) means the
    inputs do not define a valid spectrum and raises :class:`SpectrumError`.
    """
    if sigma.dim != omega.dim:
        raise DimensionError(
            f"covariance dim {sigma.dim} does not match form dim {omega.dim}"
        )
    c = 2.0 * np.linalg.solve(omega.matrix, sigma.matrix)
    ev = linalg.spectrum_real_general(c)
    top = np.max(np.abs(ev))
    if np.max(np.abs(ev.real)) > 1e-8 * top:
        raise SpectrumError(
            "not a valid symplectic spectrum: eigenvalues of 2*inv(omega)*sigma "
            f"have relative real part {np.max(np.abs(ev.real)) / top:.3e}"
        )
    nus = np.sort(ev.imag[ev.imag > 0.0])
    if len(nus) != sigma.n_modes:
        raise SpectrumError(
            f"expected {sigma.n_modes} positive values, found {len(nus)}"
        )
    return nus


# ---------------------------------------------------------------------------
# closed-form smallest symplectic eigenvalues
# ---------------------------------------------------------------------------

def _omega_pm(m: float, n: float, theta: float, eta: float, sign: float) -> float:
    """The two auxiliary polynomials entering the closed forms (upper sign
    feeds the post-reflection eigenvalue, lower sign the plain one)."""
    s = sign
    return (
        2.0 * (1.0 + s * eta * eta)
        + (1.0 - s * n * n) * (eta * eta + theta * theta)
        + s * 2.0 * (1.0 + eta * theta) * m * m
        + n * (1.0 - s) * (eta * eta - theta * theta)
        + 2.0 * m * (1.0 + s) * (eta + theta)
    )


def _nu_closed(p: ToyPoint, sign: float) -> float:
    theta, eta = p.nc.theta, p.nc.eta
    r = p.radius
    w = _omega_pm(p.m, p.n, theta, eta, sign)
    one = 1.0 - eta * theta
    disc = w * w - 4.0 * one * one * (1.0 - r * r) ** 2
    if disc < -1e-12:
        raise NumericDomainError(
            f"negative discriminant {disc:.6e} in closed-form eigenvalue at "
            f"(m, n, theta, eta) = ({p.m:g}, {p.n:g}, {theta:g}, {eta:g})"
        )
    inner = w - np.sqrt(max(disc, 0.0))
    if inner < -1e-12:
        raise NumericDomainError(
            f"negative inner radicand {inner:.6e} in closed-form eigenvalue at "
            f"(m, n, theta, eta) = ({p.m:g}, {p.n:g}, {theta:g}, {eta:g})"
        )
    return float(p.b / (one * np.sqrt(2.0)) * np.sqrt(max(inner, 0.0)))


def nu_minus(p: ToyPoint) -> float:
    """Closed-form smallest symplectic eigenvalue (physicality threshold).

    Radicands in [-1e-12, 0) are clamped to zero (degenerate double roots);
    larger negative radicands raise :class:`NumericDomainError`.  Exact on
    the ``n = 0, eta = 0`` slice; audit deviations elsewhere with
    :func:`ncgauss.report.closed_form_audit`.
    """
    return _nu_closed(p, -1.0)


def nu_prime_minus(p: ToyPoint) -> float:
    """Closed-form smallest symplectic eigenvalue after the partial-transpose
    reflection (separability threshold).  Same domain handling as
    :func:`nu_minus`."""
    return _nu_closed(p, +1.0)


# ---------------------------------------------------------------------------
# vectorized numeric spectra and classification
# ---------------------------------------------------------------------------

def toy_covariance_batch(points: np.ndarray) -> np.ndarray:
    """Stack of family covariances for an (N, 2) array of (m, n) points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    m, n = pts[:, 0], pts[:, 1]
    r = np.hypot(m, n)
    if np.any(r >= 1.0):
        raise DomainError("all points must lie strictly inside the unit disk")
    b = (1.0 + r) / (1.0 - r)
    sig = np.zeros((len(pts), 8, 8))
    idx = np.arange(8)
    sig[:, idx, idx] = 1.0
    # x-x / p-p coupling (n) and x-p cross coupling (m) between the parties
    for i, j, v in [
        (0, 4, n), (1, 5, n), (2, 6, -n), (3, 7, -n),
        (0, 6, m), (1, 7, -m), (2, 4, m), (3, 5, -m),
    ]:
        sig[:, i, j] = v
        sig[:, j, i] = v
    return 0.5 * b[:, None, None] * sig


def min_nu_batch(points: np.ndarray, omega: SymplecticForm) -> np.ndarray:
    """Smallest symplectic eigenvalue of the family at many (m, n) points.

    Fast path behind classification grids and volume integration; the
    spectra come from the same eigensolver route as
    :func:`symplectic_spectrum` but skip per-point residual checks.
    """
    sig = toy_covariance_batch(points)
    oinv = np.linalg.inv(omega.matrix)
    c = 2.0 * np.einsum("ij,njk->nik", oinv, sig)
    ev = np.linalg.eigvals(c)
    pos = np.where(ev.imag > 0.0, ev.imag, np.inf)
    return np.min(pos, axis=1)


def classify(p: ToyPoint, tol: float = CLASSIFY_TOL) -> StateClass:
    """Classify a family point as Unphysical, Separable, or Entangled.

    Physicality and separability are decided from the numeric smallest
    symplectic eigenvalues with a tolerance ``tol`` on the unit thresholds,
    so boundary states (e.g. the vacuum) classify as physical.  Order of
    tests guarantees the separable set is contained in the physical one.
    """
    sigma = toy_covariance(p)
    omega = nc_form(p.nc)
    nu = symplectic_spectrum(sigma, omega)[0]
    if nu < 1.0 - tol:
        return StateClass.UNPHYSICAL
    nup = symplectic_spectrum(sigma, ppt_form(omega))[0]
    if nup >= 1.0 - tol:
        return StateClass.SEPARABLE
    return StateClass.ENTANGLED


def classify_grid(
    points: np.ndarray, nc: NCParams, tol: float = CLASSIFY_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized classifier: boolean masks (quantum, separable) for an
    (N, 2) array of in-disk points."""
    omega = nc_form(nc)
    nu = min_nu_batch(points, omega)
    nup = min_nu_batch(points, ppt_form(omega))
    quantum = nu >= 1.0 - tol
    separable = quantum & (nup >= 1.0 - tol)
    return quantum, separable


def disk_grid(n: int = 101, margin: float = RIM_MARGIN) -> np.ndarray:
    """(N, 2) array of points of an n x n Cartesian grid over [-1, 1]^2
    restricted to radius < 1 - margin."""
    xs = np.linspace(-1.0, 1.0, n)
    mm, nn = np.meshgrid(xs, xs, indexing="ij")
    mask = mm**2 + nn**2 < (1.0 - margin) ** 2
    return np.stack([mm[mask], nn[mask]], axis=1)


def flatten_index(mu: int, nu: int, n: int) -> int:
    """Row-major upper-triangle position (1-based) of entry (mu, nu) in a
    2n x 2n symmetric matrix; bijective onto 1..n(2n+1)."""
    if not (1 <= mu <= nu <= 2 * n):
        raise IndexError(f"need 1 <= mu <= nu <= 2n, got mu={mu}, nu={nu}, n={n}")
    head = sum(2 * n - r for r in range(mu - 1))
    return head + nu - mu + 1
