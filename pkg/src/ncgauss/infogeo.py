"""Fisher-Rao metrics on covariance families and the volume regularizer.

Two routes to the metric are kept deliberately independent:

* :func:`fisher_metric_numeric` differentiates an arbitrary covariance
  family by central differences and evaluates
  ``g_uv = Tr[inv(S) dS_u inv(S) dS_v] / 2`` directly; this is the
  ground-truth backend.
* :func:`toy_metric_closed_form` evaluates the published closed-form
  entries for the two-parameter family exactly as printed.  Those entries
  carry a sign defect in their scaling part, so the two routes disagree;
  :func:`ncgauss.report.metric_audit` quantifies the gap.  The closed-form
  determinant :func:`toy_metric_det` is, by contrast, consistent with the
  numeric metric.

The regularizer ``exp(-Tr[adj S]/kappa) * log(1 + det(S)^m)`` damps the
divergence of the metric density near the rim of the parameter disk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .errors import DomainError, StepError
from .phasespace import DarbouxMap
from .states import CovarianceMatrix, ToyPoint, toy_covariance, toy_covariance_batch

#: default relative finite-difference step
FD_STEP = 1e-5

#: fixed regularizer exponent for the two-parameter family (its parameter
#: count); makes the generic form coincide with the closed form below
TOY_EXPONENT = 2


@dataclass(frozen=True)
class CovarianceFamily:
    """A smooth parametrized family of covariance matrices.

    ``evaluate`` maps a length-``param_dim`` parameter vector to a
    :class:`CovarianceMatrix` and must be deterministic on its domain
    (raise :class:`DomainError` outside it).
    """

    param_dim: int
    evaluate: Callable[[np.ndarray], CovarianceMatrix]


def toy_family() -> CovarianceFamily:
    """The built-in two-parameter family over (m, n).

    The scale factor b = (1+R)/(1-R) depends on the radius alone, so the
    family is smooth everywhere except at the origin, where b is conic.
    Central differences evaluated exactly at (0, 0) cancel the scale
    variation and return the shape-only metric diag(4, 4); the radial
    limit of the metric determinant there is 80.
    """
    return CovarianceFamily(
        param_dim=2,
        evaluate=lambda p: toy_covariance(ToyPoint(float(p[0]), float(p[1]))),
    )


def pushed_family(family: CovarianceFamily, s: DarbouxMap) -> CovarianceFamily:
    """The family transported to the deformed frame, ``S Sigma(.) S^T``."""
    mat = s.matrix

    def evaluate(p):
        inner = family.evaluate(p).matrix
        out = mat @ inner @ mat.T
        return CovarianceMatrix(0.5 * (out + out.T))

    return CovarianceFamily(param_dim=family.param_dim, evaluate=evaluate)


def _fd_derivatives(family, point, steps):
    """Central-difference derivative stack; DomainError propagates."""
    derivs = []
    for mu, h in enumerate(steps):
        e = np.zeros(len(point))
        e[mu] = h
        up = family.evaluate(point + e).matrix
        down = family.evaluate(point - e).matrix
        derivs.append((up - down) / (2.0 * h))
    return derivs


def _metric_from_derivatives(center: np.ndarray, derivs) -> np.ndarray:
    sinv = np.linalg.inv(center)
    k = len(derivs)
    w = [sinv @ d for d in derivs]
    g = np.empty((k, k))
    for mu in range(k):
        for nu in range(mu, k):
            g[mu, nu] = g[nu, mu] = 0.5 * np.trace(w[mu] @ w[nu])
    return g


def fisher_metric_numeric(
    family: CovarianceFamily,
    point,
    step: float = FD_STEP,
    richardson: bool = False,
) -> np.ndarray:
    """Fisher information matrix of a covariance family at ``point``.

    Derivatives use central differences with per-coordinate step
    ``step * max(1, |theta_mu|)``; with ``richardson`` the step-halved
    estimate is combined to cancel the leading truncation term.  The
    output is exactly symmetric.

    Raises:
        StepError: a perturbed evaluation left the family's domain; the
            exception carries the largest step that stays inside.
    """
    point = np.asarray(point, dtype=float)
    if point.shape != (family.param_dim,):
        raise DomainError(
            f"point has shape {point.shape}, family expects ({family.param_dim},)"
        )
    if step <= 0.0:
        raise DomainError("step must be positive")
    steps = np.array([step * max(1.0, abs(t)) for t in point])

    def attempt(hs):
        derivs = _fd_derivatives(family, point, hs)
        return _metric_from_derivatives(family.evaluate(point).matrix, derivs)

    try:
        g = attempt(steps)
        if richardson:
            g_half = attempt(steps / 2.0)
            g = (4.0 * g_half - g) / 3.0
        return g
    except DomainError:
        suggested = None
        hs = steps / 2.0
        for _ in range(60):
            try:
                _fd_derivatives(family, point, hs)
                suggested = float(hs.max())
                break
            except DomainError:
                hs = hs / 2.0
        raise StepError(
            "perturbed point exits the family domain; shrink step"
            + (f" (suggested maximal step {suggested:.3e})" if suggested else ""),
            suggested_step=suggested,
        ) from None


def fisher_metric_batch(
    points: np.ndarray, step: float = FD_STEP, richardson: bool = False
) -> np.ndarray:
    """Numeric Fisher metric of the built-in family at many (m, n) points,
    as an (N, 2, 2) stack (vectorized central differences).

    Steps are capped near the rim so all perturbed points stay inside the
    disk; the cap only binds where the regularized integrand is already
    negligible.  ``richardson`` combines step and half-step estimates to
    cancel the leading truncation term (the metric grows like
    ``(1-R)^-2`` toward the rim, where plain central differences lose a
    few digits).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    r = np.hypot(pts[:, 0], pts[:, 1])
    h = np.minimum(step, 0.45 * np.maximum(1.0 - 1e-9 - r, 1e-12))

    def at_step(hs):
        center = toy_covariance_batch(pts)
        sinv = np.linalg.inv(center)
        w = []
        for mu in range(2):
            e = np.zeros((len(pts), 2))
            e[:, mu] = hs
            dsig = (toy_covariance_batch(pts + e) - toy_covariance_batch(pts - e)) / (
                2.0 * hs[:, None, None]
            )
            w.append(np.einsum("nij,njk->nik", sinv, dsig))
        g = np.empty((len(pts), 2, 2))
        g[:, 0, 0] = 0.5 * np.einsum("nij,nji->n", w[0], w[0])
        g[:, 1, 1] = 0.5 * np.einsum("nij,nji->n", w[1], w[1])
        g[:, 0, 1] = g[:, 1, 0] = 0.5 * np.einsum("nij,nji->n", w[0], w[1])
        return g

    g = at_step(h)
    if richardson:
        g = (4.0 * at_step(h / 2.0) - g) / 3.0
    return g


def fisher_det_batch(points: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Determinant of the numeric Fisher metric at many (m, n) points."""
    g = fisher_metric_batch(points, step)
    return g[:, 0, 0] * g[:, 1, 1] - g[:, 0, 1] * g[:, 1, 0]


# ---------------------------------------------------------------------------
# closed forms for the two-parameter family
# ---------------------------------------------------------------------------

def toy_metric_closed_form(m: float, n: float) -> np.ndarray:
    """Closed-form 2x2 metric entries as printed, in (m, n) order.

    The second (scaling) members have an R^2 denominator, so the point
    (0, 0) is excluded; use :func:`fisher_metric_numeric` at the origin.
    Known to differ from the numeric metric (sign of the scaling part);
    kept verbatim for the audit path.
    """
    r2 = m * m + n * n
    if r2 == 0.0:
        raise DomainError(
            "closed-form scaling part is singular at (0, 0); use the numeric metric"
        )
    if r2 >= 1.0:
        raise DomainError("(m, n) must lie inside the unit disk")
    r = np.sqrt(r2)
    d = (1.0 - r2) ** 2
    g0_mm = 4.0 * (1.0 + m * m - n * n) / d
    g0_nn = 4.0 * (1.0 - m * m + n * n) / d
    g0_mn = 8.0 * m * n / d
    cb = 16.0 / (r2 * (r2 - 1.0) * (r + 1.0))
    return np.array(
        [
            [g0_mm + cb * m * m, g0_mn + cb * m * n],
            [g0_mn + cb * m * n, g0_nn + cb * n * n],
        ]
    )


def toy_metric_det(m: float, n: float) -> float:
    """Closed-form metric determinant ``16/(1-R^2)^3 * (1 + (2-R)^2)``.

    Agrees with ``det(fisher_metric_numeric)`` for the built-in family
    (unlike the printed entries above).  Diverges as R -> 1.
    """
    r2 = m * m + n * n
    if r2 >= 1.0:
        raise DomainError("(m, n) must lie inside the unit disk")
    r = np.sqrt(r2)
    return 16.0 / (1.0 - r2) ** 3 * (1.0 + (2.0 - r) ** 2)


def toy_tau(m: float, n: float) -> float:
    """Closed-form adjugate trace of the family covariance:
    ``(1 - R^2)^3 b^7 / 16``."""
    r2 = m * m + n * n
    if r2 >= 1.0:
        raise DomainError("(m, n) must lie inside the unit disk")
    r = np.sqrt(r2)
    b = (1.0 + r) / (1.0 - r)
    return (1.0 - r2) ** 3 * b**7 / 16.0


def _safe_log1p_power(det: np.ndarray, exponent: int) -> np.ndarray:
    """log(1 + det^exponent) without intermediate overflow."""
    det = np.asarray(det, dtype=float)
    with np.errstate(over="ignore"):
        powed = det**exponent
    out = np.where(np.isfinite(powed), np.log1p(np.where(np.isfinite(powed), powed, 0.0)), exponent * np.log(np.maximum(det, 1e-300)))
    return out


def regularizer(sigma: CovarianceMatrix, kappa: float, exponent: int = TOY_EXPONENT) -> float:
    """Volume regularizer ``exp(-Tr[adj(S)]/kappa) * log(1 + det(S)^exponent)``.

    Strictly increasing in ``kappa``; decays to zero wherever the adjugate
    trace blows up, which is what renders the volume integrals finite.
    """
    if kappa <= 0.0:
        raise DomainError("kappa must be positive")
    if exponent < 1:
        raise DomainError("exponent must be >= 1")
    adj = linalg.adjugate(sigma.matrix)
    tau = float(np.trace(adj))
    det = float(np.linalg.det(sigma.matrix))
    with np.errstate(over="ignore"):
        damp = np.exp(-tau / kappa)
    return float(damp * _safe_log1p_power(det, exponent))


def regularizer_batch(sig_stack: np.ndarray, kappa: float, exponent: int = TOY_EXPONENT) -> np.ndarray:
    """Vectorized :func:`regularizer` over a stack of covariance matrices
    (assumed valid and well-conditioned; adjugate via det * inverse)."""
    if kappa <= 0.0:
        raise DomainError("kappa must be positive")
    det = np.linalg.det(sig_stack)
    tr_inv = np.trace(np.linalg.inv(sig_stack), axis1=1, axis2=2)
    tau = det * tr_inv
    with np.errstate(over="ignore"):
        damp = np.exp(-tau / kappa)
    return damp * _safe_log1p_power(det, exponent)


def toy_regularizer_closed_form(m: float, n: float, kappa: float) -> float:
    """Closed form of the regularizer on the family:
    ``exp(-tau/kappa) * log(1 + b^2 tau^2 (1-R^2)^2 / 256)`` with
    :func:`toy_tau`.  Equals the generic route to ~1e-12 relative."""
    if kappa <= 0.0:
        raise DomainError("kappa must be positive")
    return float(toy_regularizer_closed_batch(np.array([[m, n]]), kappa)[0])


def toy_regularizer_closed_batch(points: np.ndarray, kappa: float) -> np.ndarray:
    """Vectorized :func:`toy_regularizer_closed_form` over (N, 2) points."""
    if kappa <= 0.0:
        raise DomainError("kappa must be positive")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    if np.any(r2 >= 1.0):
        raise DomainError("all points must lie inside the unit disk")
    r = np.sqrt(r2)
    b = (1.0 + r) / (1.0 - r)
    tau = (1.0 - r2) ** 3 * b**7 / 16.0
    arg = b * b * tau * tau * (1.0 - r2) ** 2 / 256.0
    with np.errstate(over="ignore"):
        damp = np.exp(-tau / kappa)
    return damp * _safe_log1p_power(arg, 1)


def toy_metric_det_batch(points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`toy_metric_det` over (N, 2) points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    if np.any(r2 >= 1.0):
        raise DomainError("all points must lie inside the unit disk")
    r = np.sqrt(r2)
    return 16.0 / (1.0 - r2) ** 3 * (1.0 + (2.0 - r) ** 2)
