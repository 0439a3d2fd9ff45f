"""Windowed transform cubes over the (chirp, frequency, time) grid.

Each frame m is the signal restricted to tau_k = (k - n//2)*dt around the
frame time (zero-padded outside the record), multiplied by the transformed
window at chirp bin lambda_l, and mapped to the one-sided frequency axis
eta_j = j/(n*dt):

    T[l, j, m] = sum_k x(t_m + tau_k) * w_l(tau_k)
                 * exp(-2i*pi*(k - n//2)*j/n) * dt

computed as a batched FFT followed by the exp(+2i*pi*(n//2)*j/n) phase
correction. ``moment`` weights the window by tau^moment (the reassignment
numerators need moments 1 and 2).
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import SampledSignal, TFCCube, TFCGrid, WindowSpec
from .errors import GridMismatch
from .kernels import window_samples

__all__ = ["wlct_cube", "magnitude_cube"]


def _check_signal(x: SampledSignal, grid: TFCGrid) -> None:
    if x.n != grid.n:
        raise GridMismatch(f"signal has {x.n} samples, grid expects {grid.n}")
    if abs(x.dt - grid.dt) > 1e-12 * grid.dt or abs(x.t0 - grid.t0) > 1e-9:
        raise GridMismatch(
            f"signal sampling (dt={x.dt!r}, t0={x.t0!r}) does not match "
            f"grid (dt={grid.dt!r}, t0={grid.t0!r})"
        )


def _tau_axis(grid: TFCGrid) -> np.ndarray:
    return (np.arange(grid.n) - grid.n // 2) * grid.dt


def _padded_frames(x: SampledSignal, grid: TFCGrid) -> np.ndarray:
    """(n_frames, n) read-only view; row m is x around frame m, zero-padded."""
    n = grid.n
    pad = np.zeros(2 * n - 1, dtype=np.complex128)
    pad[n // 2 : n // 2 + n] = x.samples
    return sliding_window_view(pad, n)[:: grid.hop]


def _freq_phase(grid: TFCGrid) -> np.ndarray:
    """Per-bin factor folding the index correction and the dt quadrature."""
    j = np.arange(grid.n_freq)
    return np.exp(2j * np.pi * (grid.n // 2) * j / grid.n) * grid.dt


def _transform_slice(windowed: np.ndarray, n_freq: int,
                     phase: np.ndarray) -> np.ndarray:
    """FFT one windowed frame batch (n_frames, n) into (n_freq, n_frames)."""
    return (np.fft.fft(windowed, axis=1)[:, :n_freq] * phase).T


def wlct_cube(x: SampledSignal, spec: WindowSpec, grid: TFCGrid,
              moment: int = 0) -> TFCCube:
    """Dense complex transform cube of x under spec over grid."""
    _check_signal(x, grid)
    tau = _tau_axis(grid)
    frames = _padded_frames(x, grid)
    phase = _freq_phase(grid)
    out = np.empty((grid.n_chirp, grid.n_freq, grid.n_frames),
                   dtype=np.complex128)
    for l, lam in enumerate(grid.chirp_axis):
        w = window_samples(spec, lam, tau, moment)
        out[l] = _transform_slice(frames * w, grid.n_freq, phase)
    source = "wlct" if moment == 0 else f"wlct-m{moment}"
    return TFCCube(values=out, grid=grid, source=source)


def magnitude_cube(cube: TFCCube) -> TFCCube:
    """Pointwise magnitude of a cube (source tagged with "-mag")."""
    return TFCCube(values=np.abs(cube.values), grid=cube.grid,
                   source=cube.source + "-mag")
