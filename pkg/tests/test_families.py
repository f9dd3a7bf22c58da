import math

import numpy as np
import pytest
from scipy import integrate as sint
from scipy import special

from gencs import core, families
from gencs.errors import ParameterError


def test_power_rho_and_phi():
    e = families.make_power_iterate(2)
    assert [e.spec.rho(m) for m in range(3)] == pytest.approx([1.0, 2.0, 24.0], rel=1e-14)
    assert e.spec.phi(1, 1.5, 0.3) == pytest.approx(1.5**2 * np.exp(0.6j))
    # int_0^inf r^4 2 r e^{-r^2} dr = Gamma(3)
    val, _ = sint.quad(lambda r: r**4 * 2 * r * math.exp(-r * r), 0, np.inf, epsabs=0, epsrel=1e-13)
    assert e.radial_moment_oracle(1) == pytest.approx(2.0, rel=1e-14)
    assert val == pytest.approx(2.0, rel=1e-12)


def test_laguerre_oracle_and_measure():
    e = families.make_laguerre(2.0)
    # int e^-r L_1^2(r) dr = int e^-r (3 - r) dr = 2 = rho(1)
    val, _ = sint.quad(lambda r: math.exp(-r) * (3 - r), 0, np.inf, epsrel=1e-13)
    assert val == pytest.approx(2.0, rel=1e-12)
    assert e.radial_moment_oracle(1) == pytest.approx(2.0, rel=1e-13)
    np.testing.assert_allclose(e.spec.weight(np.array([0.5, 2.0])), np.exp(-np.array([0.5, 2.0])), rtol=1e-15)
    e3 = families.make_laguerre(3.0)
    rs = np.array([0.5, 2.0])
    np.testing.assert_allclose(e3.spec.weight(rs), rs * np.exp(-rs), rtol=1e-15)
    for r in (0.5, 2.0):
        assert core.normalization(e3.spec, r, mode="signed") == pytest.approx((r * r + 2 * r + 2) / r**3, rel=1e-12)


def test_laguerre_parameters():
    with pytest.raises(ParameterError):
        families.make_laguerre(0.5)
    with pytest.raises(ParameterError):
        families.make_laguerre(2.0, beta=2.0)


def test_bessel_moment_oracle():
    # raw Laplace integral int e^-r r^(1/2) J_(1/2)(r) dr = 1/sqrt(2 pi)
    val, _ = sint.quad(lambda r: math.exp(-r) * math.sqrt(r) * special.jv(0.5, r), 0, np.inf, epsrel=1e-12, limit=200)
    assert val == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-10)
    e = families.make_bessel()
    for m in range(5):
        assert e.moment_target(m) == pytest.approx(1.0, rel=1e-13)


def test_bessel_radicand_sign():
    spec = families.make_bessel().spec
    assert spec.radicand(1, np.array([2.0]))[0, 0] > 0
    assert spec.radicand(1, np.array([4.0]))[0, 0] < 0


def test_disc_rho_and_boundary():
    e = families.make_disc(1.0, 1.0)
    assert e.spec.rho(1) == pytest.approx(1.0 / 3.0, rel=1e-14)
    for m in range(6):
        assert e.spec.rho(m) == pytest.approx(1.0 / (2 * m + 1), rel=1e-13)
    c = e.spec.coeff_table(6, np.array([1.0]))[:, 0]
    assert np.all(c[1:] == 0)
    # beta integral at nu = 1: int_0^1 (1 - x)^2 dx = 1/3
    val, _ = sint.quad(lambda x: (1 - x) ** 2, 0, 1)
    assert math.exp(e.log_moment_oracle(1)) == pytest.approx(val, rel=1e-13)


def test_disc_closed_form_matches_series():
    for y, nu in ((1.0, 1.0), (2.0, 2.0), (0.5, 3.5)):
        spec = families.make_disc(y, nu).spec
        for r in np.linspace(0.1 * y, y, 7):
            ref = families.disc_normalization_closed_form(y, nu, r)
            assert core.normalization(spec, r) == pytest.approx(ref, rel=1e-13)


def test_disc_measures():
    scaled = families.make_disc(2.0, 2.0)
    bare = families.make_disc(2.0, 2.0, measure="bare")
    assert scaled.moment_target(3) == pytest.approx(1.0, rel=1e-13)
    assert bare.moment_target(3) == pytest.approx(0.5, rel=1e-13)
    with pytest.raises(ParameterError):
        families.make_disc(1.0, 1.0, measure="other")


def test_logdisc_values():
    e = families.make_logdisc()
    assert core.normalization(e.spec, math.exp(-1)) == pytest.approx(math.cosh(1.0), rel=1e-15)
    assert sum(1 / math.factorial(2 * m) for m in range(20)) == pytest.approx(math.cosh(1.0), rel=1e-15)
    # corrected measure w = 1: int_0^1 (log r)^2 dr = 2
    val, _ = sint.quad(lambda r: math.log(r) ** 2, 0, 1)
    assert e.radial_moment_oracle(1) == pytest.approx(val, rel=1e-10)
    assert families.make_logdisc("inverse_square").radial_moment_oracle(1) == math.inf
    c = e.spec.coeff_table(5, np.array([1.0]))[:, 0]
    assert np.all(c[1:] == 0)


def test_make_family_errors():
    with pytest.raises(ParameterError, match="alpha"):
        families.make_family("disc", {"alpha": 2})
    with pytest.raises(ParameterError, match="nope"):
        families.make_family("nope")
    with pytest.raises(ParameterError, match="k"):
        families.make_family("power", {"k": 2.5})
    assert families.make_family("power", {"k": 3}).spec.param_dict == {"k": 3}
    assert set(families.FAMILY_SCHEMAS) == {"power", "laguerre", "bessel", "disc", "logdisc"}
