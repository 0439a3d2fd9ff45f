"""Closed-form Gaussian transforms, quadrature, and window samples."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirpcube import (ParamMatrix, SampledSignal, SmallBError, WindowSpec,
                       cp_params, gaussian_lct, matrix_for, numeric_lct,
                       window_samples)

from _oracles import gaussian_cp


# frozen from the hand-simplified variant-1 forms C = 1/sqrt(lam + i*alpha),
# P = -1/(alpha - i*lam) at lam = 0.5, alpha = 0.3
_C1 = 1.262056672007879 - 0.34956946100236697j
_P1 = -0.88235294117647067 - 1.4705882352941178j


def test_cp_params_frozen_variant1():
    kp = cp_params(matrix_for(1, 0.5), 0.3)
    assert abs(kp.C - _C1) < 1e-15
    assert abs(kp.P - _P1) < 1e-15


def test_cp_params_variant_identities():
    for lam in (-3.0, 0.0, 0.7):
        for alpha in (0.1, 2.0, 40.0):
            kp1 = cp_params(matrix_for(1, lam), alpha)
            assert abs(kp1.P - (-1.0 / (alpha - 1j * lam))) < 1e-15
            kp2 = cp_params(matrix_for(2, lam), alpha)
            assert abs(kp2.P - complex(-alpha, lam)) < 1e-15
            assert kp2.C == 1.0


def test_cp_params_matches_reference_all_variants():
    for variant in (1, 2, 5, 6):
        for lam in (-5.0, -0.2, 1.3):
            cc, pp = gaussian_cp(variant, lam, 0.8)
            kp = cp_params(matrix_for(variant, lam), 0.8)
            assert abs(kp.C - cc) < 1e-14
            assert abs(kp.P - pp) < 1e-14


def test_cp_params_rejects_bad_alpha():
    with pytest.raises(ValueError):
        cp_params(matrix_for(2, 1.0), 0.0)


@settings(max_examples=200, deadline=None)
@given(a=st.floats(0.3, 2.0), b=st.floats(-2.5, 2.5).filter(
           lambda v: abs(v) > 1e-3),
       c=st.floats(-1.5, 1.5), alpha=st.floats(0.05, 50.0),
       flip=st.booleans())
def test_decay_and_principal_branch(a, b, c, alpha, flip):
    """Re(P) < 0 and Re(C) > 0 for every unit-determinant matrix."""
    if flip:
        a = -a
    d = (1.0 + b * c) / a
    kp = cp_params(ParamMatrix(a, b, c, d), alpha)
    assert kp.P.real < 0.0
    assert kp.C.real > 0.0


def test_gaussian_lct_fourier_literal():
    # Fourier matrix (0, 1; -1, 0), alpha = 0.7:
    # L(u) = exp(-i*pi/4)/sqrt(0.7) * exp(-pi*u^2/0.7)
    got = gaussian_lct(ParamMatrix(0.0, 1.0, -1.0, 0.0), 0.7, 1.3)
    want = 0.00042947871217219867 - 0.00042947871217219861j
    assert abs(got - want) < 1e-17
    got0 = gaussian_lct(ParamMatrix(0.0, 1.0, -1.0, 0.0), 0.7, 0.0)
    assert abs(got0 - cmath.exp(-1j * cmath.pi / 4) / math.sqrt(0.7)) < 1e-15


def test_gaussian_lct_identity_like():
    # b = 0, a = d = 1 (variant-2 family): the Gaussian passes through
    # with a chirp factor; at lam = 0 it is exactly the input Gaussian.
    got = gaussian_lct(matrix_for(2, 0.0), 2.0, 0.9)
    assert abs(got - math.exp(-2.0 * math.pi * 0.81)) < 1e-15


def test_gaussian_lct_vectorized():
    u = np.linspace(-2, 2, 7)
    vals = gaussian_lct(matrix_for(1, 0.4), 0.6, u)
    assert vals.shape == (7,)
    assert abs(vals[3] - gaussian_lct(matrix_for(1, 0.4), 0.6, 0.0)) < 1e-15


def test_numeric_lct_matches_closed_form():
    alpha = 0.7
    t = np.linspace(-14.0, 14.0, 4001)
    g = SampledSignal(np.exp(-alpha * np.pi * t**2), t[1] - t[0], t0=t[0])
    m = ParamMatrix(0.0, 1.0, -1.0, 0.0)
    u = np.linspace(-3.0, 3.0, 13)
    got = numeric_lct(m, g, u)
    want = gaussian_lct(m, alpha, u)
    assert np.abs(got - want).max() / np.abs(want).max() < 1e-9


def test_numeric_lct_small_b():
    g = SampledSignal(np.ones(8), 0.1)
    with pytest.raises(SmallBError):
        numeric_lct(ParamMatrix(1.0, 1e-6, 0.0, 1.0), g, [0.0])
    # just above the floor it must at least run
    numeric_lct(ParamMatrix(1.0, 2e-6, 0.0, 1.0), g, [0.0])


def test_window_samples_variant2_center():
    for lam in (-4.0, 0.0, 9.0):
        w = window_samples(WindowSpec(2, 3.3), lam, np.array([0.0]))
        assert abs(w[0] - 1.0) < 1e-15


def test_window_samples_variant6_zero_lambda():
    # lam = 0 rotation is the Fourier matrix: w = e^{-i pi/4}/sqrt(alpha)
    # * exp(-pi tau^2 / alpha)
    alpha = 1.6
    tau = np.array([0.0, 0.5])
    w = window_samples(WindowSpec(6, alpha), 0.0, tau)
    c0 = cmath.exp(-1j * cmath.pi / 4) / math.sqrt(alpha)
    assert abs(w[0] - c0) < 1e-15
    assert abs(w[1] - c0 * math.exp(-math.pi * 0.25 / alpha)) < 1e-15


def test_window_samples_moments():
    tau = np.linspace(-1, 1, 9)
    spec = WindowSpec(1, 0.5)
    w0 = window_samples(spec, 0.3, tau)
    w1 = window_samples(spec, 0.3, tau, moment=1)
    w2 = window_samples(spec, 0.3, tau, moment=2)
    np.testing.assert_allclose(w1, tau * w0, rtol=1e-15)
    np.testing.assert_allclose(w2, tau**2 * w0, rtol=1e-15)
    with pytest.raises(ValueError):
        window_samples(spec, 0.3, tau, moment=3)
