"""Mode retrieval from ridge tracks by solving the cross-term system.

Near a ridge, each component x_i(t) = A_i(t) exp(2i*pi*phi_i(t)) behaves
like a linear chirp, and its transform value at (t, xi, lam) has the
closed form x_i(t) * C(lam) * (-(P(lam) + i*gamma))^(-1/2)
* exp(pi*(xi - phi_i')^2 / (P(lam) + i*gamma)), with (C, P) the window's
closed-form parameters. Evaluating the full transform at each ridge i's
own (xi_i, lam_i) therefore gives a K x K linear system

    sum_j coeff[i, j] * x_j(t) = T_i(t)

whose coefficients depend only on the ridge frequencies and chirprates.
Re(P) < 0 makes every -(P + i*gamma) lie in the right half plane, so the
principal square root is the correct branch throughout, and the diagonal
of a single-ridge system under variant 2 reduces to alpha^(-1/2).
"""

from dataclasses import dataclass

import numpy as np

from .core import SampledSignal, TFCGrid, WindowSpec, matrix_for, paired_rate
from .errors import DirectionError, ZeroChirprate
from .kernels import cp_params, window_samples
from .ridge import RidgeSet
from .transform import _check_signal, _padded_frames, _tau_axis

__all__ = ["ModeSet", "coeff_matrix", "condition_number", "retrieve_modes"]

#: relative singular-value cutoff below which the solve switches to the
#: pseudo-inverse least-squares solution
_RCOND = 1e-8


@dataclass(frozen=True)
class ModeSet:
    """Retrieved component series: values[k, m] at frame_times[m]."""

    values: np.ndarray
    frame_times: np.ndarray

    @property
    def k(self) -> int:
        return self.values.shape[0]


def _ridge_lambda(variant: int, gamma: float) -> float:
    """Chirp-axis value whose bin responds to chirprate gamma."""
    try:
        return paired_rate(variant, gamma)
    except DirectionError:
        raise ZeroChirprate(
            f"variant {variant} cannot evaluate a ridge with chirprate 0"
        ) from None


def coeff_matrix(spec: WindowSpec, ridges: RidgeSet, frame: int) -> np.ndarray:
    """K x K cross-term coefficient matrix at one frame.

    Row i evaluates at ridge i's (xi_i, lambda_i); column j carries
    component j's response there.
    """
    gam = ridges.gamma[:, frame]
    xi = ridges.xi[:, frame]
    k = gam.size
    out = np.empty((k, k), dtype=np.complex128)
    for i in range(k):
        lam_i = _ridge_lambda(spec.variant, gam[i])
        kp = cp_params(matrix_for(spec.variant, lam_i), spec.alpha)
        q = kp.P + 1j * gam  # row of Q_ij over columns j
        dxi = xi[i] - xi
        out[i] = kp.C / np.sqrt(-q) * np.exp(np.pi * dxi**2 / q)
    return out


def condition_number(mat: np.ndarray) -> float:
    """2-norm condition number; +inf when the smallest singular value is 0."""
    s = np.linalg.svd(mat, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def retrieve_modes(x: SampledSignal, spec: WindowSpec, grid: TFCGrid,
                   ridges: RidgeSet) -> ModeSet:
    """Solve the per-frame cross-term system along the given ridges.

    The transform is evaluated directly at each ridge's exact frequency
    and paired chirp-axis value (no grid snapping), then the K x K system
    is solved by least squares with singular values below _RCOND times
    the largest treated as zero.
    """
    _check_signal(x, grid)
    if ridges.frame_times.size != grid.n_frames:
        raise ValueError(
            f"ridges carry {ridges.frame_times.size} frames, grid has "
            f"{grid.n_frames}"
        )
    tau = _tau_axis(grid)
    frames = _padded_frames(x, grid)
    k = ridges.k
    n_m = grid.n_frames
    modes = np.empty((k, n_m), dtype=np.complex128)
    t_vec = np.empty(k, dtype=np.complex128)
    for m in range(n_m):
        for i in range(k):
            lam_i = _ridge_lambda(spec.variant, ridges.gamma[i, m])
            w = window_samples(spec, lam_i, tau)
            osc = np.exp(-2j * np.pi * ridges.xi[i, m] * tau)
            t_vec[i] = np.dot(frames[m], w * osc) * grid.dt
        coeff = coeff_matrix(spec, ridges, m)
        sol, *_ = np.linalg.lstsq(coeff, t_vec, rcond=_RCOND)
        modes[:, m] = sol
    return ModeSet(values=modes, frame_times=grid.frame_times.copy())
