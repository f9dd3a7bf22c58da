import math

import mpmath
import numpy as np
import pytest
from scipy import special

from gencs import specfun
from gencs.errors import DomainError


def test_ln_gamma_values():
    assert specfun.ln_gamma(1.0) == 0.0
    assert specfun.ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    assert specfun.ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        specfun.ln_gamma(x)


def test_upper_gamma_closed_forms():
    assert specfun.upper_gamma(2.0, 1.0) == pytest.approx(2.0 / math.e, rel=1e-14)
    assert specfun.upper_gamma(3.5, 0.0) == pytest.approx(math.gamma(3.5), rel=1e-15)
    for x in (0.1, 1.0, 7.0, 40.0):
        assert specfun.upper_gamma(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0, 3.7, 12.0])
@pytest.mark.parametrize("x", [0.01, 0.5, 2.0, 5.0, 13.0, 60.0])
def test_upper_gamma_against_scipy(alpha, x):
    ref = special.gammaincc(alpha, x) * special.gamma(alpha)
    assert specfun.upper_gamma(alpha, x) == pytest.approx(ref, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("alpha,x", [(2.0, 1.0), (0.5, 3.0), (6.0, 4.0)])
def test_incomplete_gamma_sum(alpha, x):
    total = specfun.upper_gamma(alpha, x) + specfun.lower_gamma(alpha, x)
    assert total == pytest.approx(math.gamma(alpha), rel=1e-13)


def test_upper_gamma_domain():
    with pytest.raises(DomainError):
        specfun.upper_gamma(0.0, 1.0)
    with pytest.raises(DomainError):
        specfun.upper_gamma(1.0, -0.1)


def test_laguerre_small_cases():
    assert specfun.laguerre_alpha(0, 2.5, 3.0) == 1.0
    assert specfun.laguerre_alpha(1, 2.0, 1.0) == pytest.approx(2.0, rel=1e-15)
    assert specfun.laguerre_alpha(2, 0.0, 1.0) == pytest.approx(-0.5, rel=1e-14)


def test_laguerre_table_against_scipy():
    xs = np.linspace(0.0, 30.0, 61)
    L = specfun.laguerre_table(40, 2.0, xs)
    for m in (0, 1, 5, 17, 39):
        ref = special.eval_genlaguerre(m, 2.0, xs)
        np.testing.assert_allclose(L[m], ref, rtol=1e-11, atol=1e-11 * np.max(np.abs(ref)))


def test_laguerre_domain():
    with pytest.raises(DomainError):
        specfun.laguerre_alpha(-1, 2.0, 1.0)
    with pytest.raises(DomainError):
        specfun.laguerre_alpha(2, -1.5, 1.0)
    with pytest.raises(DomainError):
        specfun.laguerre_alpha(2, 2.0, -1.0)


def test_bessel_half_closed_forms():
    assert abs(specfun.bessel_j_half(0, math.pi)) < 1e-15
    assert specfun.bessel_j_half(0, 1.0) == pytest.approx(math.sqrt(2 / math.pi) * math.sin(1.0), rel=1e-14)
    ref1 = math.sqrt(2 / math.pi) * (math.sin(1.0) - math.cos(1.0))
    assert specfun.bessel_j_half(1, 1.0) == pytest.approx(ref1, rel=1e-13)
    assert specfun.bessel_j_half(0, 1.0) == pytest.approx(0.6713967, abs=5e-8)
    assert specfun.bessel_j_half(1, 1.0) == pytest.approx(0.2402978, abs=5e-8)


@pytest.mark.parametrize("x", [0.05, 0.9, 3.3, 11.0, 47.0])
def test_bessel_table_against_scipy(x):
    J = specfun.bessel_half_table(60, [x])[:, 0]
    ref = special.jv(np.arange(60) + 0.5, x)
    big = np.max(np.abs(ref))
    np.testing.assert_allclose(J, ref, rtol=1e-11, atol=1e-13 * big)


def test_bessel_series_oracle_agrees():
    for m in range(6):
        for x in (0.3, 1.0, 4.0):
            assert specfun.bessel_j_half(m, x) == pytest.approx(specfun.bessel_j_series(m + 0.5, x), rel=1e-12, abs=1e-300)


def test_bessel_domain():
    with pytest.raises(DomainError):
        specfun.bessel_j_half(0, 0.0)


def test_i_half():
    assert specfun.i_half(2.0) == pytest.approx(math.sinh(2.0) / math.sqrt(math.pi), rel=1e-15)
    assert specfun.i_half(2.0) == pytest.approx(2.0462369, abs=5e-8)
    assert specfun.i_half(2.0) == pytest.approx(float(mpmath.besseli(0.5, 2)), rel=1e-14)
    with pytest.raises(DomainError):
        specfun.i_half(-1.0)
    with pytest.raises(DomainError):
        specfun.i_half(1e4)


def test_i_half_series_identity():
    # sum_m x^m J_{m+1/2}(x) / m! = I_{1/2}(x)
    x = 1.0
    J = specfun.bessel_half_table(41, [x])[:, 0]
    s = sum(x**m * J[m] / math.factorial(m) for m in range(41))
    assert s == pytest.approx(specfun.i_half(x), rel=1e-14)


def test_pochhammer():
    assert specfun.pochhammer(3.2, 0) == 1.0
    assert specfun.pochhammer(2.0, 4) == 120.0
    assert specfun.pochhammer(2.0, 6) == pytest.approx(math.factorial(7), rel=1e-15)
    assert specfun.pochhammer(1.5, 100) == pytest.approx(float(mpmath.rf(1.5, 100)), rel=1e-12)
    assert specfun.log_pochhammer(2.0, 500) == pytest.approx(float(mpmath.log(mpmath.rf(2, 500))), rel=1e-13)
    with pytest.raises(DomainError):
        specfun.pochhammer(0.0, 2)
    with pytest.raises(DomainError):
        specfun.pochhammer(1.0, 2.5)
