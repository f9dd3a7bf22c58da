import math

import numpy as np
import pytest

from gencs import algebra, families
from gencs.errors import RatioUndefined


def test_canonical_ladder_is_standard():
    t = algebra.ladder_matrices(families.make_canonical(), 8)
    np.testing.assert_allclose(t.x, np.arange(8), rtol=1e-14, atol=1e-14)
    np.testing.assert_allclose(np.diag(t.a, 1), np.sqrt(np.arange(1, 8)), rtol=1e-14)
    res = algebra.commutator_check(t)
    assert res.details["[a,a+]"] < 1e-15


def test_logdisc_x_values():
    t = algebra.ladder_matrices(families.make_logdisc(), 6)
    assert t.x[1] == pytest.approx(2.0) and t.x[2] == pytest.approx(12.0)
    assert t.a[1, 2] == pytest.approx(2 * math.sqrt(2 * (2 - 0.5)))
    d = np.diff(np.asarray(t.x[1:], dtype=float))
    np.testing.assert_allclose(d, [8 * m + 2 for m in range(1, 5)], rtol=1e-14)


def test_disc_x_values():
    t = algebra.ladder_matrices(families.make_disc(1.0, 1.0), 6)
    np.testing.assert_allclose(t.x[1:], [(2 * m - 1) / (2 * m + 1) for m in range(1, 6)], rtol=1e-13)


@pytest.mark.parametrize("name", ["power", "laguerre", "bessel", "disc", "logdisc"])
def test_commutators_dim32(name):
    res = algebra.commutator_check(algebra.ladder_matrices(families.make_family(name), 32))
    assert res.residual <= 1e-12


def test_unscaled_forms_differ_from_exact():
    res = algebra.commutator_check(algebra.ladder_matrices(families.make_logdisc(), 16))
    assert res.boundary["unscaled [N,a]"] > 1e-3


def test_su11_entries_and_check():
    s = algebra.su11_triple(8)
    C = s.A @ s.A_dagger - s.A_dagger @ s.A
    assert C[1, 1] == pytest.approx(2 * 1 + 0.5)
    assert 2 * s.frakN[0, 0] == pytest.approx(0.5)
    assert algebra.su11_check(32).residual <= 1e-12


def test_eigenstates():
    res = algebra.eigenstate_residual(families.make_logdisc(), 1.0, 0.0, 16)
    assert res.residual == 0.0
    res = algebra.eigenstate_residual(families.make_logdisc(), math.exp(-0.5), 0.0, 48)
    assert res.residual <= 1e-10
    res = algebra.eigenstate_residual(families.make_disc(1.0, 1.0), 0.7, math.pi / 3, 64)
    # truncation bound plus a rounding allowance
    assert res.residual <= res.bound + 1e-14


def test_nogo_power_ratios():
    res = algebra.annihilator_nogo_scan(families.make_power_iterate(2), 2.0, 0.0, 3)
    # Phi_{m+1}/Phi_m = z^{2^m}, normalized by sqrt(x_{m+1}) through rho
    x, _ = algebra._x_sequence(families.make_power_iterate(2), 5)
    raw = [2.0 ** (2**m) for m in range(4)]
    np.testing.assert_allclose(np.abs(res.ratios), raw, rtol=1e-12)
    assert res.dispersion > 100


def test_nogo_disc_constant():
    res = algebra.annihilator_nogo_scan(families.make_disc(1.0, 1.0), 0.3, 0.4, 6)
    assert res.dispersion <= 1e-14


def test_nogo_laguerre_positive():
    res = algebra.annihilator_nogo_scan(families.make_laguerre(2.0), 1.0, 0.0, 5)
    assert res.dispersion > 0


def test_nogo_power_at_one_undefined():
    with pytest.raises(RatioUndefined):
        algebra.annihilator_nogo_scan(families.make_power_iterate(2), 1.0, 0.0, 4)
