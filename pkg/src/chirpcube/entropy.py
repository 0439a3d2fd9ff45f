"""Cube concentration entropy and window-width tuning.

The order-ell Renyi entropy of a magnitude cube,

    E = log2( sum w*|T|^(2*ell) / (sum w*|T|^2)^ell ) / (1 - ell),

decreases as energy concentrates, so the best window width alpha is the
entropy argmin over a candidate grid. The cell weight w is the voxel
measure: frame spacing * frequency step * chirp cell. Variants 2/6
integrate the chirp axis linearly (d_lambda, or |lam|*ln2*da on dyadic
grids); variants 1/5 use the scale measure on the positive-lambda half
only (ln2*da on dyadic grids, d_lambda/lam on uniform ones).
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import SampledSignal, TFCCube, TFCGrid, WindowSpec
from .errors import EmptyCube
from .transform import wlct_cube

__all__ = ["renyi_entropy", "default_alpha_grid", "tune_alpha", "TuneResult"]


def _chirp_weights(variant: int, grid: TFCGrid) -> np.ndarray:
    """Per-chirp-bin integration weight (time/frequency factors excluded)."""
    lam = grid.chirp_axis
    if variant in (2, 6):
        if grid.d_lambda is not None:
            return np.full(lam.size, grid.d_lambda)
        return np.abs(lam) * math.log(2.0) * grid.da
    # variants 1/5: scale measure, positive-lambda bins only
    w = np.zeros(lam.size)
    pos = lam > 0
    if grid.d_lambda is not None:
        w[pos] = grid.d_lambda / lam[pos]
    else:
        w[pos] = math.log(2.0) * grid.da
    return w


def renyi_entropy(cube: TFCCube, spec: WindowSpec,
                  order: float = 2.5) -> float:
    """Order-``order`` Renyi entropy of |cube| under the variant's measure.

    Invariant under rescaling of the cube values. Raises EmptyCube when
    the weighted energy is zero.
    """
    if order <= 2.0:
        raise ValueError(f"entropy order must exceed 2, got {order!r}")
    grid = cube.grid
    mag = np.abs(cube.values)
    peak = mag.max(initial=0.0)
    if peak == 0.0:
        raise EmptyCube("cube has no energy")
    w = _chirp_weights(spec.variant, grid)[:, None, None]
    cell = grid.d_eta * grid.hop * grid.dt
    a = (mag / peak) ** 2
    num = float(np.sum(w * a**order)) * cell
    den = float(np.sum(w * a)) * cell
    if den == 0.0:
        raise EmptyCube("cube has no energy in the weighted region")
    return math.log2(num / den**order) / (1.0 - order)


def default_alpha_grid(variant: int) -> np.ndarray:
    """32 log-spaced candidates inside the variant's admissible range.

    Variants 1/5: [0.01, 1); variant 2: [1, 100]; variant 6: (1, 100]
    (alpha = 1 itself is inadmissible there).
    """
    if variant in (1, 5):
        return np.geomspace(0.01, 1.0, 33)[:32]
    if variant == 6:
        return np.geomspace(1.0, 100.0, 33)[1:]
    return np.geomspace(1.0, 100.0, 32)


@dataclass(frozen=True)
class TuneResult:
    """Entropy curve over the alpha candidates and its argmin."""

    alpha_opt: float
    alphas: np.ndarray
    entropies: np.ndarray


def tune_alpha(x: SampledSignal, variant: int, grid: TFCGrid,
               alphas=None, order: float = 2.5) -> TuneResult:
    """Pick the entropy-minimizing window width for x under the variant.

    ``alphas`` defaults to default_alpha_grid(variant); ties resolve to
    the smaller alpha (candidates are evaluated in ascending order).
    """
    if alphas is None:
        alphas = default_alpha_grid(variant)
    alphas = np.sort(np.asarray(alphas, dtype=float))
    if alphas.size == 0:
        raise ValueError("alpha candidate grid is empty")
    entropies = np.empty(alphas.size)
    for i, alpha in enumerate(alphas):
        spec = WindowSpec(variant, float(alpha))
        cube = wlct_cube(x, spec, grid)
        entropies[i] = renyi_entropy(cube, spec, order)
    best = int(np.argmin(entropies))
    return TuneResult(alpha_opt=float(alphas[best]), alphas=alphas,
                      entropies=entropies)
