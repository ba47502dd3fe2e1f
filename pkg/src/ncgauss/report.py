"""Audit of the closed-form expressions against the numeric ground truth.

The closed forms shipped with this package (smallest symplectic
eigenvalues, metric entries, the volume anchor value) are kept verbatim
from their published source, and several of them are internally
inconsistent.  This module quantifies every known discrepancy on fixed
grids and produces the machine- and human-readable report the CLI
``report`` subcommand emits.  The numeric eigensolver / finite-difference
routes are the reference in every comparison.
"""

from __future__ import annotations

import json

import numpy as np

from . import linalg
from .infogeo import fisher_metric_batch, toy_metric_closed_form, toy_metric_det_batch
from .phasespace import NCParams, nc_form, ppt_form
from .states import disk_grid, min_nu_batch, toy_covariance_batch
from .volume import RegionSpec, integrate_region

#: deformation settings probed by the closed-form eigenvalue audit
AUDIT_SETTINGS = ((0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.3, 0.3))

#: published anchor for the positive-disk volume and its stated kappa
ANCHOR_VALUE = 1.95268
ANCHOR_KAPPA = 2.0
ANCHOR_RTOL = 0.005


def _nu_closed_batch(points: np.ndarray, theta: float, eta: float, sign: float):
    """Vectorized closed-form eigenvalue; returns (values, invalid_mask).

    Points whose radicands fall below -1e-12 are marked invalid instead of
    raising, so whole-grid audits can count them.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    m, n = pts[:, 0], pts[:, 1]
    r2 = m * m + n * n
    r = np.sqrt(r2)
    b = (1.0 + r) / (1.0 - r)
    s = sign
    w = (
        2.0 * (1.0 + s * eta * eta)
        + (1.0 - s * n * n) * (eta * eta + theta * theta)
        + s * 2.0 * (1.0 + eta * theta) * m * m
        + n * (1.0 - s) * (eta * eta - theta * theta)
        + 2.0 * m * (1.0 + s) * (eta + theta)
    )
    one = 1.0 - eta * theta
    disc = w * w - 4.0 * one * one * (1.0 - r2) ** 2
    invalid = disc < -1e-12
    inner = w - np.sqrt(np.maximum(disc, 0.0))
    invalid |= inner < -1e-12
    vals = b / (one * np.sqrt(2.0)) * np.sqrt(np.maximum(inner, 0.0))
    return vals, invalid


def closed_form_audit(grid_n: int = 101, settings=AUDIT_SETTINGS) -> dict:
    """Max deviation of the closed-form smallest eigenvalues from the
    numeric spectra over a disk grid, per deformation setting."""
    pts = disk_grid(grid_n)
    rows = []
    for theta, eta in settings:
        nc = NCParams(theta, eta)
        omega = nc_form(nc)
        nu_num = min_nu_batch(pts, omega)
        nup_num = min_nu_batch(pts, ppt_form(omega))
        entry = {"theta": theta, "eta": eta, "points": int(len(pts))}
        for tag, sign, ref in (("nu", -1.0, nu_num), ("nu_prime", +1.0, nup_num)):
            vals, invalid = _nu_closed_batch(pts, theta, eta, sign)
            ok = ~invalid
            dev = float(np.max(np.abs(vals[ok] - ref[ok]))) if ok.any() else float("nan")
            entry[f"max_abs_dev_{tag}"] = dev
            entry[f"invalid_domain_{tag}"] = int(invalid.sum())
            entry[f"within_1e-8_{tag}"] = bool(dev <= 1e-8 and not invalid.any())
        rows.append(entry)
    return {
        "grid": f"{grid_n}x{grid_n} Cartesian grid on [-1,1]^2, open unit disk",
        "settings": rows,
        "sign_assignment": (
            "lower-sign auxiliary polynomial -> plain eigenvalue, upper-sign -> "
            "reflected eigenvalue; this pairing reproduces both commutative "
            "limits (b*sqrt(1-R^2) and 1+R) on the n=0 axis and is exact on "
            "the {n=0, eta=0} slice (all m for the plain eigenvalue, m >= 0 "
            "for the reflected one, whose polynomial carries a term odd in m "
            "that the even numeric spectrum cannot have). The swapped pairing "
            "fails the commutative limits, so the printed assignment is kept."
        ),
        "conclusion": (
            "closed forms deviate from the numeric spectra away from the "
            "{n=0, eta=0, m>=0} slice (their m^2 terms behave like R^2 "
            "there, and the theta/eta roles are not symmetric as the "
            "numeric spectra require); the classifier and the volume "
            "integrals therefore use the numeric spectra everywhere"
        ),
    }


def metric_audit(grid_n: int = 101) -> dict:
    """Entrywise gap between the printed closed-form metric and the numeric
    Fisher metric; also checks the closed-form determinant, which -- unlike
    the entries -- agrees with the numeric metric."""
    pts = disk_grid(grid_n)
    radii = np.hypot(pts[:, 0], pts[:, 1])
    pts = pts[radii > 0.0]  # closed-form scaling part singular at the origin
    g_num = fisher_metric_batch(pts, richardson=True)
    g_closed = np.array([toy_metric_closed_form(m, n) for m, n in pts])
    entry_dev = float(np.max(np.abs(g_num - g_closed)))
    det_num = g_num[:, 0, 0] * g_num[:, 1, 1] - g_num[:, 0, 1] ** 2
    det_closed = toy_metric_det_batch(pts)
    det_rel = float(np.max(np.abs(det_num - det_closed) / det_closed))
    return {
        "grid": f"{grid_n}x{grid_n} Cartesian grid on [-1,1]^2, open unit disk, origin excluded",
        "points": int(len(pts)),
        "max_abs_entry_dev": entry_dev,
        "max_rel_det_dev": det_rel,
        "note": (
            "the printed scaling members enter with the opposite sign of what "
            "the numeric metric shows (their (R^2-1) denominators would need "
            "to read (1-R^2)); the closed-form determinant nevertheless "
            "matches the numeric metric determinant, so the determinant-based "
            "volume backends agree"
        ),
    }


def anchor_resolution(budget: int = 20_000) -> dict:
    """Evaluate the positive-disk volume at the published anchor settings
    for both densities and record which (if either) reproduces the anchor."""
    region = RegionSpec("positive-disk")
    out = {"kappa": ANCHOR_KAPPA, "target": ANCHOR_VALUE}
    matching = None
    for density, key in (("det", "value_det"), ("sqrt-det", "value_sqrt_det")):
        est = integrate_region(
            region, ANCHOR_KAPPA, backend="paper", density=density,
            budget=budget, method="gauss",
        )
        out[key] = est.value
        out[f"rel_dev_{key.removeprefix('value_')}"] = abs(est.value - ANCHOR_VALUE) / ANCHOR_VALUE
        if abs(est.value - ANCHOR_VALUE) <= ANCHOR_RTOL * ANCHOR_VALUE and matching is None:
            matching = density
    est4 = integrate_region(
        region, 2.0 * ANCHOR_KAPPA, backend="paper", density="det",
        budget=budget, method="gauss",
    )
    out["matching_density"] = matching
    out["value_det_at_double_kappa"] = est4.value
    out["figure_default_density"] = "det"
    out["note"] = (
        "at kappa=2 neither density reproduces the anchor under the "
        "regularizer exp(-Tr[adj]/kappa)*log(1+det^2); the det density "
        "reproduces it to all published digits at kappa=4 (equivalently, "
        "the published kappa differs by a factor of two from its own "
        "regularizer definition). The det density is therefore the "
        "figure-reproduction default."
    )
    return out


def eigenvalue_audit(grid_n: int = 101) -> dict:
    """Covariance eigenvalues at (0.6, 0) and the adjugate-trace identity.

    Confirms the eigenvalues are (b/2)(1 +- R) -- each fourfold -- and that
    Tr[adj Sigma] follows the closed form (1-R^2)^3 b^7 / 16; flags the
    (2/b)(1 +- R) variant, which is inconsistent with both.
    """
    sig = toy_covariance_batch(np.array([[0.6, 0.0]]))[0]
    eigs = linalg.eig_symmetric(sig)
    b, r = 4.0, 0.6
    dev_half_b = max(
        float(np.max(np.abs(eigs[:4] - 0.5 * b * (1 - r)))),
        float(np.max(np.abs(eigs[4:] - 0.5 * b * (1 + r)))),
    )
    dev_two_over_b = max(
        float(np.max(np.abs(eigs[:4] - 2.0 / b * (1 - r)))),
        float(np.max(np.abs(eigs[4:] - 2.0 / b * (1 + r)))),
    )
    pts = disk_grid(grid_n)
    sigs = toy_covariance_batch(pts)
    tau_num = np.linalg.det(sigs) * np.trace(np.linalg.inv(sigs), axis1=1, axis2=2)
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    rr = np.sqrt(r2)
    bb = (1.0 + rr) / (1.0 - rr)
    tau_closed = (1.0 - r2) ** 3 * bb**7 / 16.0
    tau_rel = float(np.max(np.abs(tau_num - tau_closed) / tau_closed))
    return {
        "eigenvalues_at_(0.6,0)": [float(x) for x in eigs],
        "max_dev_from_(b/2)(1+-R)": dev_half_b,
        "max_dev_from_(2/b)(1+-R)": dev_two_over_b,
        "tau_identity_max_rel_dev": tau_rel,
        "note": (
            "the covariance eigenvalues are (b/2)(1 +- R), each fourfold; the "
            "(2/b)(1 +- R) variant is inconsistent with the adjugate-trace "
            "closed form, which the numeric trace confirms"
        ),
    }


def build_report(grid_n: int = 101, budget: int = 20_000) -> dict:
    """Full audit: closed-form eigenvalues, metric entries, anchor value,
    covariance eigenvalues."""
    return {
        "nu_closed_form_audit": closed_form_audit(grid_n),
        "metric_audit": metric_audit(grid_n),
        "anchor_resolution": anchor_resolution(budget),
        "eigenvalue_audit": eigenvalue_audit(grid_n),
    }


def render_text(report: dict) -> str:
    """Human-readable rendering of :func:`build_report` output."""
    lines = ["closed-form vs numeric discrepancy report", "=" * 42, ""]
    nu = report["nu_closed_form_audit"]
    lines.append(f"[smallest symplectic eigenvalues]  grid: {nu['grid']}")
    for s in nu["settings"]:
        lines.append(
            f"  theta={s['theta']:<4g} eta={s['eta']:<4g} "
            f"max|d nu|={s['max_abs_dev_nu']:.3e} "
            f"(invalid domain: {s['invalid_domain_nu']})  "
            f"max|d nu'|={s['max_abs_dev_nu_prime']:.3e} "
            f"(invalid domain: {s['invalid_domain_nu_prime']})"
        )
    lines.append(f"  sign assignment: {nu['sign_assignment']}")
    lines.append(f"  conclusion: {nu['conclusion']}")
    lines.append("")
    met = report["metric_audit"]
    lines.append(f"[metric entries]  grid: {met['grid']}")
    lines.append(
        f"  max entrywise |closed - numeric| = {met['max_abs_entry_dev']:.6e} ; "
        f"max relative determinant gap = {met['max_rel_det_dev']:.3e}"
    )
    lines.append(f"  note: {met['note']}")
    lines.append("")
    anc = report["anchor_resolution"]
    lines.append(f"[volume anchor]  target {anc['target']} at kappa={anc['kappa']:g}")
    lines.append(
        f"  det density: {anc['value_det']:.9g} (rel dev {anc['rel_dev_det']:.3%}) ; "
        f"sqrt-det density: {anc['value_sqrt_det']:.9g} "
        f"(rel dev {anc['rel_dev_sqrt_det']:.3%})"
    )
    lines.append(
        f"  matching density at kappa={anc['kappa']:g}: {anc['matching_density']} ; "
        f"det density at kappa={2 * anc['kappa']:g}: {anc['value_det_at_double_kappa']:.9g}"
    )
    lines.append(f"  figure default density: {anc['figure_default_density']}")
    lines.append(f"  note: {anc['note']}")
    lines.append("")
    eig = report["eigenvalue_audit"]
    lines.append("[covariance eigenvalues]")
    lines.append(
        "  eigs at (0.6, 0): "
        + " ".join(f"{x:.6g}" for x in eig["eigenvalues_at_(0.6,0)"])
    )
    lines.append(
        f"  max dev from (b/2)(1+-R): {eig['max_dev_from_(b/2)(1+-R)']:.3e} ; "
        f"from (2/b)(1+-R): {eig['max_dev_from_(2/b)(1+-R)']:.3e}"
    )
    lines.append(
        f"  adjugate-trace identity max rel dev: {eig['tau_identity_max_rel_dev']:.3e}"
    )
    lines.append(f"  note: {eig['note']}")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
