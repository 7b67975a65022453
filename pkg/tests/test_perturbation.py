import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_sphere.perturbation import (
    MIN_TRUSTED_X,
    ModeSeed,
    kappa_of_eta_m,
    mode_seed,
    tan_condition_residual,
    x_of_eta_kappa,
)
from spectral_sphere.specfun import NU_DEFAULT as NU


def test_dye_kappa_oracle():
    # mpmath at 60 digits
    assert kappa_of_eta_m(1.479, 17779, NU) == pytest.approx(-2.1763719880579202033e-05, rel=1e-14)


def test_dye_size_parameter():
    x = x_of_eta_kappa(1.479, kappa_of_eta_m(1.479, 17779))
    assert x == pytest.approx(37767.209457865104168, rel=1e-14)
    assert x == pytest.approx(2 * math.pi * 3.3e6 / 549.0083, rel=1e-4)


def test_diode_kappa():
    assert kappa_of_eta_m(3.4, 679, NU) == pytest.approx(-4.823056874511995225e-04, rel=1e-14)


def test_unit_size_parameter_is_untrusted():
    kappa = -math.log(2.479 / 0.479) / 2
    assert x_of_eta_kappa(1.479, kappa) == pytest.approx(1.0, rel=1e-15)
    s = ModeSeed(1, 1.479, kappa, 1.0)
    assert not s.trusted


def test_kappa_vanishes_for_large_eta():
    ks = [kappa_of_eta_m(eta, 100) for eta in (1.5, 3.0, 10.0, 100.0, 1e4)]
    assert all(k < 0 for k in ks)
    assert all(b > a for a, b in zip(ks, ks[1:]))


@given(st.floats(1.0001, 50), st.integers(1, 10**6))
def test_algebraic_equivalence(eta, m):
    kappa = kappa_of_eta_m(eta, m, NU)
    x = x_of_eta_kappa(eta, kappa)
    assert kappa < 0
    # x eta = pi (m + (nu+1)/2)  and  x kappa = -ln((eta+1)/(eta-1)) / 2
    assert x * eta == pytest.approx(math.pi * (m + (NU + 1) / 2), rel=1e-12)
    assert x * kappa == pytest.approx(-math.log((eta + 1) / (eta - 1)) / 2, rel=1e-12)


@pytest.mark.parametrize("eta", [1.0, 0.5, -2.0])
def test_domain_errors(eta):
    with pytest.raises(ValueError):
        kappa_of_eta_m(eta, 10)


def test_domain_errors_kappa_and_m():
    with pytest.raises(ValueError):
        x_of_eta_kappa(1.5, 0.0)
    with pytest.raises(ValueError):
        x_of_eta_kappa(1.5, 1e-3)
    with pytest.raises(ValueError):
        kappa_of_eta_m(1.5, 0)
    with pytest.raises(ValueError):
        ModeSeed(3, 1.5, 1e-5, 1e3)


def test_tan_residual_unit_index():
    x = 1000.0
    expected = cmath.tan(x - math.pi * NU / 2) + 1j
    r = tan_condition_residual(1.0, x, NU)
    assert r == pytest.approx(expected, rel=1e-9)
    assert r == pytest.approx(-0.99455358 + 1j, abs=1e-8)


def test_tan_residual_is_order_inverse_x():
    # |r| x is the same constant along the family, so the residual shrinks with m
    prods = []
    for m in (100, 400, 1600, 17779, 71116):
        s = mode_seed(1.479, m)
        prods.append(abs(tan_condition_residual(complex(s.eta, s.kappa), s.x)) * s.x)
    assert prods[3] == pytest.approx(0.1287, rel=1e-3)
    assert max(prods) / min(prods) < 1.01


def test_tan_residual_shrinks_with_m():
    r = [abs(tan_condition_residual(complex(s.eta, s.kappa), s.x))
         for s in (mode_seed(1.479, 17779), mode_seed(1.479, 4 * 17779))]
    assert r[1] < r[0] / 3


def test_tan_residual_guard():
    with pytest.raises(ValueError):
        tan_condition_residual(1.5, MIN_TRUSTED_X)
