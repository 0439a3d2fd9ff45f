"""Second-order reassignment maps and synchrosqueezing.

From the moment cubes T (window), T1 (tau-weighted), T2 (tau^2-weighted)
every voxel gets a local frequency and chirprate estimate:

    D     = T1^2 - T*T2
    omega = eta_j - Re( T*T1 / (2i*pi*D) )
    rate  = Re( i*P_l + T^2 / (2i*pi*D) )

which are exact (omega = phi', rate = phi'') for a Gaussian-family window
on a linear chirp. ``lam`` is the chirp-axis value paired with ``rate``
under the variant. The mask keeps voxels where |T| and |D| clear the
floor and all maps are finite.

Synchrosqueezing reaccumulates a cube's values at the estimated
(rate, omega) into the uniform squeeze axes, nearest half-open bin
[center - step/2, center + step/2), dropping estimates outside the axes;
accumulation order is chirp-major then frequency, so complex sums are
reproducible bit-for-bit.
"""

from dataclasses import dataclass

import numpy as np

from .core import TFCCube, TFCGrid, WindowSpec, matrix_for
from .errors import GridMismatch
from .kernels import cp_params

__all__ = ["ReassignMaps", "reassignment_maps", "synchrosqueeze"]


@dataclass(frozen=True)
class ReassignMaps:
    """Per-voxel frequency/chirp estimates with their validity mask.

    omega: local frequency estimate (Hz); chirprate: local chirprate
    estimate (Hz/s); lam: the chirp-axis value paired with chirprate
    (infinite where chirprate = 0 under variants 1/5 -- masked out);
    mask: True where the estimates are usable.
    """

    omega: np.ndarray
    chirprate: np.ndarray
    lam: np.ndarray
    mask: np.ndarray


def _slice_maps(t0v, t1v, t2v, p_val, eta, variant, eps):
    """Maps for one chirp slice; arrays shaped (n_freq, n_frames).

    ``eps`` broadcasts against the slice (scalar or per-frame row).
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        det = t1v * t1v - t0v * t2v
        denom = 2j * np.pi * det
        omega = eta[:, None] - np.real(t0v * t1v / denom)
        rate = np.real(1j * p_val + t0v * t0v / denom)
        if variant in (2, 6):
            lam = -rate
        else:
            lam = 1.0 / rate
    mask = (np.abs(t0v) > eps) & (np.abs(det) > eps)
    mask &= np.isfinite(omega) & np.isfinite(rate) & np.isfinite(lam)
    omega = np.where(mask, omega, 0.0)
    rate = np.where(mask, rate, 0.0)
    return omega, rate, lam, mask


def _frame_floor(t0_vals: np.ndarray, grid: TFCGrid, epsilon) -> np.ndarray:
    """Magnitude floor per frame: epsilon_rel * max|T|, or a fixed value."""
    if epsilon is not None:
        return np.full(t0_vals.shape[-1], float(epsilon))
    return grid.epsilon_rel * np.abs(t0_vals).max(axis=(0, 1))


def reassignment_maps(t0c: TFCCube, t1c: TFCCube, t2c: TFCCube,
                      spec: WindowSpec, grid: TFCGrid,
                      epsilon: float | None = None) -> ReassignMaps:
    """Frequency/chirp estimate maps from the three moment cubes.

    ``epsilon`` fixes an absolute magnitude floor; default is the
    per-frame floor grid.epsilon_rel * max|T|.
    """
    shape = (grid.n_chirp, grid.n_freq, grid.n_frames)
    for c in (t0c, t1c, t2c):
        if c.values.shape != shape:
            raise GridMismatch(
                f"cube shape {c.values.shape} does not match grid {shape}"
            )
    eps = _frame_floor(t0c.values, grid, epsilon)
    omega = np.empty(shape)
    rate = np.empty(shape)
    lam = np.empty(shape)
    mask = np.empty(shape, dtype=bool)
    for l, lam_l in enumerate(grid.chirp_axis):
        p_val = cp_params(matrix_for(spec.variant, lam_l), spec.alpha).P
        omega[l], rate[l], lam[l], mask[l] = _slice_maps(
            t0c.values[l], t1c.values[l], t2c.values[l],
            p_val, grid.freq_axis, spec.variant, eps,
        )
    return ReassignMaps(omega=omega, chirprate=rate, lam=lam, mask=mask)


def _squeeze_slice(out_flat, vals, omega, rate, mask, grid, frame_idx):
    """Accumulate one chirp slice into the squeezed cube (in place)."""
    n1 = grid.squeeze_chirp_axis.size
    n2 = grid.squeeze_freq_axis.size
    p = np.floor((rate + grid.r0 + 0.5 * grid.d_gamma)
                 / grid.d_gamma).astype(np.int64)
    q = np.floor((omega + 0.5 * grid.d_xi) / grid.d_xi).astype(np.int64)
    ok = mask & (p >= 0) & (p < n1) & (q >= 0) & (q < n2)
    if not ok.any():
        return
    flat = (p[ok] * n2 + q[ok]) * frame_idx.shape[-1] + frame_idx[ok]
    np.add.at(out_flat, flat, vals[ok])


def synchrosqueeze(cube: TFCCube, maps: ReassignMaps, spec: WindowSpec,
                   grid: TFCGrid) -> TFCCube:
    """Reaccumulate cube values at their (chirprate, omega) estimates.

    The result is indexed by (squeeze_chirp_axis, squeeze_freq_axis,
    frames); its dtype follows the input (complex for transform cubes,
    real for smoothed magnitude cubes).
    """
    shape = (grid.n_chirp, grid.n_freq, grid.n_frames)
    if cube.values.shape != shape or maps.omega.shape != shape:
        raise GridMismatch(
            f"cube {cube.values.shape} / maps {maps.omega.shape} do not "
            f"match grid {shape}"
        )
    n1 = grid.squeeze_chirp_axis.size
    n2 = grid.squeeze_freq_axis.size
    out = np.zeros((n1, n2, grid.n_frames), dtype=cube.values.dtype)
    out_flat = out.reshape(-1)
    frame_idx = np.broadcast_to(np.arange(grid.n_frames),
                                (grid.n_freq, grid.n_frames))
    for l in range(grid.n_chirp):
        _squeeze_slice(out_flat, cube.values[l], maps.omega[l],
                       maps.chirprate[l], maps.mask[l], grid, frame_idx)
    return TFCCube(values=out, grid=grid, source="squeezed-" + cube.source)
