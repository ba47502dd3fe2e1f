import numpy as np

from ncgauss.report import (
    anchor_resolution,
    build_report,
    closed_form_audit,
    eigenvalue_audit,
    metric_audit,
    render_json,
    render_text,
)


def test_closed_form_audit_structure():
    audit = closed_form_audit(grid_n=41)
    assert len(audit["settings"]) == 4
    for entry in audit["settings"]:
        assert entry["points"] > 0
        assert np.isfinite(entry["max_abs_dev_nu"])
        assert np.isfinite(entry["max_abs_dev_nu_prime"])
        assert entry["invalid_domain_nu"] >= 0
    assert audit["sign_assignment"]
    assert audit["conclusion"]


def test_closed_form_audit_finds_known_discrepancies():
    audit = closed_form_audit(grid_n=41)
    by_setting = {(e["theta"], e["eta"]): e for e in audit["settings"]}
    # commutative reflected eigenvalue is exact only along n = 0; off-axis it
    # deviates at the 0.1..1 level
    assert by_setting[(0.0, 0.0)]["max_abs_dev_nu_prime"] > 1e-3
    # momentum-sector deformation drives printed radicands negative
    assert by_setting[(0.0, 0.5)]["invalid_domain_nu"] > 0
    # nothing is uniformly within 1e-8
    assert not any(e["within_1e-8_nu"] and e["within_1e-8_nu_prime"] for e in audit["settings"])


def test_metric_audit_separates_entries_from_determinant():
    audit = metric_audit(grid_n=41)
    assert audit["max_abs_entry_dev"] > 1.0  # printed entries disagree
    assert audit["max_rel_det_dev"] < 1e-4  # determinant agrees
    assert audit["points"] > 0


def test_anchor_resolution_records_the_kappa_gap():
    anchor = anchor_resolution(budget=15_000)
    assert anchor["matching_density"] is None
    assert np.isclose(anchor["value_det"], 0.43698978, rtol=1e-6)
    assert np.isclose(anchor["value_sqrt_det"], 0.04777314, rtol=1e-6)
    assert np.isclose(anchor["value_det_at_double_kappa"], 1.95268, rtol=5e-6)
    assert anchor["figure_default_density"] == "det"


def test_eigenvalue_audit_flags_variant():
    audit = eigenvalue_audit(grid_n=41)
    assert audit["max_dev_from_(b/2)(1+-R)"] <= 1e-10
    assert audit["max_dev_from_(2/b)(1+-R)"] > 1.0
    assert audit["tau_identity_max_rel_dev"] <= 1e-10


def test_report_renders_non_empty():
    rep = build_report(grid_n=41, budget=15_000)
    text = render_text(rep)
    assert "discrepancy report" in text
    assert "sign assignment" in text
    assert len(text) > 500
    assert render_json(rep).startswith("{")
