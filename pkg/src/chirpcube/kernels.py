"""Linear canonical transforms of Gaussian windows: closed forms and quadrature.

The transform of x with matrix (a, b; c, d), ad - bc = 1, is

    b != 0:  L(u) = (1/sqrt(i*b)) * integral x(t)
                      * exp(i*pi*(a*t^2 - 2*u*t + d*u^2)/b) dt
    b == 0:  L(u) = sqrt(d) * exp(i*pi*c*d*u^2) * x(d*u)

with 1/sqrt(i*b) = exp(-i*(pi/4)*sign(b)) / sqrt(|b|). For the Gaussian
window g(t) = exp(-alpha*pi*t^2) both cases collapse to the closed form
C * exp(P*pi*u^2) returned by :func:`cp_params`.
"""

from dataclasses import dataclass

import numpy as np

from .core import ParamMatrix, SampledSignal, WindowSpec, matrix_for
from .errors import SmallBError

__all__ = ["KernelParams", "cp_params", "gaussian_lct", "numeric_lct",
           "window_samples"]

_B_FLOOR = 1e-6


@dataclass(frozen=True)
class KernelParams:
    """Closed-form Gaussian image parameters: L(u) = C * exp(P*pi*u^2).

    Re(P) < 0 for every unit-determinant matrix and alpha > 0, so the
    image is again a decaying Gaussian envelope.
    """

    C: complex
    P: complex


def cp_params(m: ParamMatrix, alpha: float) -> KernelParams:
    """Closed-form parameters of the transform of exp(-alpha*pi*t^2).

    C = 1/sqrt(a + i*alpha*b) with the principal root (its real part is
    positive whenever b != 0), and P = (i*d*alpha + c)/(b*alpha - i*a).
    The same expressions cover b == 0.
    """
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    c_val = 1.0 / np.sqrt(complex(m.a, alpha * m.b))
    p_val = complex(m.c, m.d * alpha) / complex(m.b * alpha, -m.a)
    return KernelParams(C=complex(c_val), P=complex(p_val))


def gaussian_lct(m: ParamMatrix, alpha: float, u) -> np.ndarray | complex:
    """Evaluate the closed-form Gaussian image C*exp(P*pi*u^2) at u."""
    kp = cp_params(m, alpha)
    u = np.asarray(u, dtype=float)
    out = kp.C * np.exp(kp.P * np.pi * u**2)
    return complex(out) if out.ndim == 0 else out


def numeric_lct(m: ParamMatrix, x: SampledSignal, u) -> np.ndarray:
    """Trapezoidal quadrature of the b != 0 transform integral at points u.

    Raises SmallBError for |b| <= 1e-6 (the oscillatory kernel is
    unusable there; use the b == 0 closed form instead). Accuracy is
    limited by the sample range and rate of x, not by this rule.
    """
    if abs(m.b) <= _B_FLOOR:
        raise SmallBError(f"|b| = {abs(m.b)!r} is too small for quadrature")
    u = np.atleast_1d(np.asarray(u, dtype=float))
    t = x.times
    w = np.full(x.n, x.dt)
    w[0] *= 0.5
    w[-1] *= 0.5
    inv_sqrt_ib = np.exp(-1j * (np.pi / 4.0) * np.sign(m.b)) / np.sqrt(abs(m.b))
    inner = x.samples * w * np.exp(1j * np.pi * (m.a / m.b) * t**2)
    cross = np.exp(-2j * np.pi * np.outer(u, t) / m.b)
    return inv_sqrt_ib * np.exp(1j * np.pi * (m.d / m.b) * u**2) * (cross @ inner)


def window_samples(spec: WindowSpec, lam: float, tau: np.ndarray,
                   moment: int = 0) -> np.ndarray:
    """Transformed-window samples tau^moment * C * exp(P*pi*tau^2).

    (C, P) come from the spec's variant matrix at chirp-axis value lam.
    ``moment`` multiplies by tau^moment for the reassignment numerators.
    """
    if moment not in (0, 1, 2):
        raise ValueError(f"moment must be 0, 1 or 2, got {moment!r}")
    kp = cp_params(matrix_for(spec.variant, lam), spec.alpha)
    w = kp.C * np.exp(kp.P * np.pi * np.asarray(tau, dtype=float) ** 2)
    if moment:
        w = w * tau**moment
    return w
