"""Greedy ridge peeling on squeezed magnitude cubes.

Each ridge starts at the cube's global maximum voxel and is tracked
frame-by-frame in both directions, restricted to a jump window around the
previous frame's bin. After a ridge is recorded, a neighborhood around it
is zeroed so the next ridge seeds elsewhere. Argmax ties resolve to the
lower frequency bin, then the lower chirp bin; a frame whose whole jump
window is zero keeps the previous bin.
"""

from dataclasses import dataclass

import numpy as np

from .core import TFCCube
from .errors import InsufficientEnergy

__all__ = ["RidgeSet", "extract_ridges"]


@dataclass(frozen=True)
class RidgeSet:
    """Per-component frequency/chirprate tracks on the squeeze axes.

    xi and gamma are (k, n_frames) arrays in descending peak-energy
    order; frame_times gives the time of each column.
    """

    xi: np.ndarray
    gamma: np.ndarray
    frame_times: np.ndarray

    @property
    def k(self) -> int:
        return self.xi.shape[0]


def _window_argmax(vals: np.ndarray, p_prev: int, q_prev: int,
                   max_jump_gamma: int, max_jump_xi: int) -> tuple[int, int]:
    """Best bin in the jump window of one frame; ties to low xi, then gamma."""
    p0 = max(0, p_prev - max_jump_gamma)
    p1 = min(vals.shape[0], p_prev + max_jump_gamma + 1)
    q0 = max(0, q_prev - max_jump_xi)
    q1 = min(vals.shape[1], q_prev + max_jump_xi + 1)
    sub = vals[p0:p1, q0:q1]
    if not sub.any():
        return p_prev, q_prev
    # transpose so the C-order argmax scans frequency-major
    qi, pi = np.unravel_index(int(np.argmax(sub.T)), (sub.shape[1],
                                                      sub.shape[0]))
    return p0 + pi, q0 + qi


def extract_ridges(squeezed: TFCCube, k: int, max_jump_xi: int = 3,
                   max_jump_gamma: int = 3,
                   clear_radius: tuple[int, int] = (5, 5)) -> RidgeSet:
    """Peel k ridges from a squeezed cube (complex cubes are abs'd first).

    Raises InsufficientEnergy when fewer than k nonzero seeds exist.
    ``clear_radius`` is the (chirp, frequency) half-width zeroed around
    each recorded ridge before the next peel.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k!r}")
    work = np.abs(squeezed.values)
    n1, n2, n_m = work.shape
    grid = squeezed.grid
    cr_g, cr_x = clear_radius
    xi = np.empty((k, n_m))
    gamma = np.empty((k, n_m))

    for comp in range(k):
        # seed ties break like the window argmax: low xi, then low gamma
        seed = int(np.argmax(work.transpose(1, 0, 2)))
        q_seed, p_seed, m_seed = np.unravel_index(seed, (n2, n1, n_m))
        if work[p_seed, q_seed, m_seed] <= 0.0:
            raise InsufficientEnergy(
                f"only {comp} nonzero ridge seeds for k = {k}"
            )
        path_p = np.empty(n_m, dtype=int)
        path_q = np.empty(n_m, dtype=int)
        path_p[m_seed], path_q[m_seed] = p_seed, q_seed
        for m in range(m_seed + 1, n_m):
            path_p[m], path_q[m] = _window_argmax(
                work[:, :, m], path_p[m - 1], path_q[m - 1],
                max_jump_gamma, max_jump_xi,
            )
        for m in range(m_seed - 1, -1, -1):
            path_p[m], path_q[m] = _window_argmax(
                work[:, :, m], path_p[m + 1], path_q[m + 1],
                max_jump_gamma, max_jump_xi,
            )
        gamma[comp] = grid.squeeze_chirp_axis[path_p]
        xi[comp] = grid.squeeze_freq_axis[path_q]
        for m in range(n_m):
            p, q = path_p[m], path_q[m]
            work[max(0, p - cr_g) : p + cr_g + 1,
                 max(0, q - cr_x) : q + cr_x + 1, m] = 0.0

    return RidgeSet(xi=xi, gamma=gamma, frame_times=grid.frame_times.copy())
