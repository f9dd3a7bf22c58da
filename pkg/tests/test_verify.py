import math

import numpy as np
import pytest

from gencs import families, verify
from gencs.reporting import RunConfig


def test_normalization_power_grid():
    e = families.make_power_iterate(2)
    rec = verify.check_normalization(e, list(np.linspace(0.2, 3.0, 8)), 48, 1e-10)
    assert rec.residual <= 1e-10 and rec.passed


def test_normalization_logdisc_grid():
    rec = verify.check_normalization(families.make_logdisc(), [0.1 * i for i in range(1, 10)], 64, 1e-12)
    assert rec.residual <= 1e-12


def test_laguerre_modes_disagree():
    rec = verify.check_normalization(families.make_laguerre(2.0), [5.0], 64, 1e-10)
    assert rec.informational
    row = rec.diagnostics["modes"][0]
    assert row["relative_discrepancy"] > 0


def test_skipped_points_are_listed():
    rec = verify.check_normalization(families.make_power_iterate(2), [0.0, 1.0], 32, 1e-10)
    assert rec.diagnostics["skipped"][0]["r"] == 0.0


def test_resolution_records():
    rec, _ = verify.check_resolution(families.make_bessel(), 16, 1e-8)
    assert rec.passed
    rec, _ = verify.check_resolution(families.make_laguerre(3.0), 12, 1e-8)
    assert rec.passed
    rec = verify.disc_measure_factor(families.make_disc(2.0, 2.0), 16, 1e-8)
    assert rec.passed
    np.testing.assert_allclose(rec.diagnostics["bare_diagonal"], 0.5, atol=1e-8)


def test_isometry_examples():
    e = families.make_logdisc()
    assert verify.isometry_integral(e, np.eye(4)[0]).value == pytest.approx(1.0, abs=1e-8)
    d = families.make_disc(1.0, 1.0)
    phi = np.array([1.0, 1.0]) / math.sqrt(2)
    assert verify.isometry_integral(d, phi).value == pytest.approx(1.0, abs=1e-6)
    p = families.make_power_iterate(2)
    phi = verify.random_unit_vectors(1, 16, 3)[0]
    assert verify.isometry_integral(p, phi).value == pytest.approx(1.0, abs=1e-6)


def test_square_integrability_logdisc():
    e = families.make_logdisc()
    val, ref, tail = verify.square_integrability(e, (0.3, 0.2), (0.6, 1.9), 64, "modulus")
    assert abs(val - ref) <= 1e-6


def test_positivity_examples():
    rec = verify.positivity_diagnostics(families.make_laguerre(2.0), 5.0)
    assert rec.diagnostics["first_violation"] == 1 and rec.informational
    rec = verify.positivity_diagnostics(families.make_bessel(), 1.0)
    assert rec.diagnostics["negative_indices"] == [] and rec.residual == 0.0
    rec = verify.positivity_diagnostics(families.make_bessel(), 4.0)
    assert rec.diagnostics["first_violation"] == 0


def test_rodrigues_examples():
    rec = verify.rodrigues_equivalence(2.0, 1.0, 1)
    assert rec.diagnostics["laguerre_form"] == pytest.approx(2 / math.e, rel=1e-14)
    assert rec.diagnostics["product_rule"] == pytest.approx(2 / math.e, rel=1e-14)
    rec0 = verify.rodrigues_equivalence(2.5, 0.7, 0)
    assert rec0.diagnostics["laguerre_form"] == pytest.approx(math.exp(-0.7) * 0.7**2.5, rel=1e-15)
    assert verify.rodrigues_equivalence(3.0, 2.0, 3).residual <= 1e-7


def test_series_ratio_below_one():
    rec = verify.series_ratio_check(families.make_disc(1.0, 1.0))
    assert rec.passed
    assert all(p["below_one"] for p in rec.diagnostics["points"])


def test_suite_is_deterministic():
    cfg = RunConfig(family="disc", grids={"pairs": 6, "sq_pairs": 2, "isometry_vectors": 2})
    a = verify.run_suite(cfg).to_dict()
    b = verify.run_suite(cfg).to_dict()
    assert a == b
    assert a["config"]["seed"] == 42


def test_passed_flags_recomputable():
    rep = verify.run_suite(RunConfig(family="logdisc", grids={"pairs": 4, "sq_pairs": 1, "isometry_vectors": 1}))
    for c in rep.to_dict()["checks"]:
        assert c["passed"] == (c["residual"] <= c["tolerance"])
