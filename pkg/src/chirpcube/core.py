"""Shared value types: parameter matrices, window specs, signals, grids, cubes.

Axis conventions used everywhere downstream:

* cube values are indexed ``[chirp bin, frequency bin, frame]``;
* the frequency axis is one-sided, ``eta_j = j * d_eta`` for
  ``j = 0 .. n//2`` (``n//2 + 1`` bins);
* frames are taken every ``hop`` samples, centered on the sample times.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DeterminantError, DirectionError, GridError, UnknownVariant

__all__ = [
    "VARIANTS",
    "ParamMatrix",
    "matrix_for",
    "paired_rate",
    "WindowSpec",
    "SampledSignal",
    "TFCGrid",
    "build_grid",
    "TFCCube",
]

#: Supported transform variants. 1 and 5 parametrize chirp content through
#: 1/lambda (multiplicative family); 2 and 6 through -lambda (additive family).
VARIANTS = (1, 2, 5, 6)

_DET_TOL = 1e-12


@dataclass(frozen=True)
class ParamMatrix:
    """2x2 real parameter matrix (a, b; c, d) with unit determinant."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not math.isfinite(det) or abs(det - 1.0) > _DET_TOL:
            raise DeterminantError(f"determinant {det!r} is not 1 within {_DET_TOL}")

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def __matmul__(self, other: "ParamMatrix") -> "ParamMatrix":
        return ParamMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def matrix_for(variant: int, lam: float) -> ParamMatrix:
    """Parameter matrix of the given variant at chirp-axis value ``lam``.

    Variants 5 and 6 are rotations by arccot(lam) in (0, pi), built
    algebraically (sin = 1/sqrt(1+lam^2), cos = lam*sin) so the determinant
    is exact to rounding.
    """
    if variant == 1:
        return ParamMatrix(lam, 1.0, -1.0, 0.0)
    if variant == 2:
        return ParamMatrix(1.0, 0.0, lam, 1.0)
    if variant in (5, 6):
        s = 1.0 / math.sqrt(1.0 + lam * lam)
        c = lam * s
        return ParamMatrix(c, s, -s, c)
    raise UnknownVariant(f"variant must be one of {VARIANTS}, got {variant!r}")


def paired_rate(variant: int, value: float) -> float:
    """Involutive map between chirprates and chirp-axis values.

    For variants 2 and 6 the pairing is ``x -> -x``; for 1 and 5 it is
    ``x -> 1/x`` (DirectionError at 0). Applying it to a chirp-axis value
    yields the chirprate that bin responds to, and vice versa.
    """
    if variant in (2, 6):
        return -value
    if variant in (1, 5):
        if value == 0.0:
            raise DirectionError(f"variant {variant} has no pairing for value 0")
        return 1.0 / value
    raise UnknownVariant(f"variant must be one of {VARIANTS}, got {variant!r}")


@dataclass(frozen=True)
class WindowSpec:
    """Gaussian analysis window exp(-alpha*pi*t^2) under a transform variant.

    Variant 5 requires alpha < 1 and variant 6 requires alpha > 1 (the
    rotation-family closed forms change character at alpha = 1).
    """

    variant: int
    alpha: float

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise UnknownVariant(
                f"variant must be one of {VARIANTS}, got {self.variant!r}"
            )
        if not (self.alpha > 0.0) or not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if self.variant == 5 and not self.alpha < 1.0:
            raise ValueError(f"variant 5 needs alpha < 1, got {self.alpha!r}")
        if self.variant == 6 and not self.alpha > 1.0:
            raise ValueError(f"variant 6 needs alpha > 1, got {self.alpha!r}")


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SampledSignal:
    """Uniformly sampled complex signal: samples[k] at t0 + k*dt."""

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        if not (self.dt > 0.0) or not math.isfinite(self.dt):
            raise ValueError(f"dt must be positive and finite, got {self.dt!r}")
        object.__setattr__(self, "samples", _readonly(samples))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt


_GRID_KINDS = ("uniform", "dyadic", "uniform-pos", "dyadic-pos")


@dataclass(frozen=True)
class TFCGrid:
    """Time-frequency-chirp analysis grid plus the squeeze target axes.

    ``chirp_axis`` holds the lambda values the cube is computed at:
    uniform kinds step linearly from +r0 down to -r0, dyadic kinds place
    geometric bins a0*2^(l*da) on both signs (never containing 0), and the
    "-pos" kinds keep only the half that maps to positive chirprates.
    The squeeze axes are always uniform: chirprates -r0..r0 step d_gamma,
    frequencies 0..(n2-1)*d_xi.
    """

    n: int
    dt: float
    t0: float
    hop: int
    kind: str
    chirp_axis: np.ndarray = field(repr=False)
    freq_axis: np.ndarray = field(repr=False)
    frame_times: np.ndarray = field(repr=False)
    squeeze_chirp_axis: np.ndarray = field(repr=False)
    squeeze_freq_axis: np.ndarray = field(repr=False)
    d_eta: float
    d_lambda: float | None
    r0: float
    a0: float | None
    da: float | None
    d_gamma: float
    d_xi: float
    epsilon_rel: float
    #: the n_chirp build_grid was asked for ("-pos" kinds keep only half)
    n_chirp_req: int = 0

    @property
    def n_freq(self) -> int:
        return self.freq_axis.size

    @property
    def n_chirp(self) -> int:
        return self.chirp_axis.size

    @property
    def n_frames(self) -> int:
        return self.frame_times.size

    @property
    def time_axis(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt

    def build_params(self) -> dict:
        """Parameters sufficient to rebuild this grid with build_grid."""
        return {
            "n": self.n,
            "dt": self.dt,
            "t0": self.t0,
            "n_chirp": self.n_chirp_req,
            "kind": self.kind,
            "hop": self.hop,
            "r0": self.r0,
            "a0": self.a0,
            "da": self.da,
            "d_gamma": self.d_gamma,
            "d_xi": self.d_xi,
            "epsilon_rel": self.epsilon_rel,
        }


def build_grid(
    n: int,
    dt: float,
    *,
    t0: float = 0.0,
    n_chirp: int | None = None,
    kind: str = "uniform",
    hop: int = 1,
    r0: float | None = None,
    a0: float | None = None,
    da: float | None = None,
    d_gamma: float | None = None,
    d_xi: float | None = None,
    epsilon_rel: float = 1e-4,
) -> TFCGrid:
    """Build the analysis grid for an n-sample signal at spacing dt.

    Defaults: n_chirp = 2*(n//2); r0 = quarter of the Nyquist frequency;
    a0 = dt; da = 0.05; d_gamma = 2*r0/(n_chirp-1); d_xi = the frequency
    step 1/(n*dt). ``epsilon_rel`` scales the per-frame magnitude floor
    used by the reassignment mask.
    """
    if n < 2:
        raise GridError(f"need at least 2 samples, got {n}")
    if not (dt > 0.0 and math.isfinite(dt)):
        raise GridError(f"dt must be positive and finite, got {dt!r}")
    if hop < 1 or hop != int(hop):
        raise GridError(f"hop must be a positive integer, got {hop!r}")
    if kind not in _GRID_KINDS:
        raise GridError(f"kind must be one of {_GRID_KINDS}, got {kind!r}")
    if n_chirp is None:
        n_chirp = 2 * (n // 2)
    if n_chirp < 2:
        raise GridError(f"need at least 2 chirp bins, got {n_chirp}")

    nyquist = 0.5 / dt
    if r0 is None:
        r0 = nyquist / 4.0
    if not (r0 > 0.0):
        raise GridError(f"r0 must be positive, got {r0!r}")
    if a0 is None:
        a0 = dt
    if da is None:
        da = 0.05
    if not (a0 > 0.0 and da > 0.0):
        raise GridError(f"a0 and da must be positive, got {a0!r}, {da!r}")

    d_eta = 1.0 / (n * dt)
    n_f = n // 2 + 1
    freq_axis = np.arange(n_f) * d_eta

    d_lambda: float | None = 2.0 * r0 / (n_chirp - 1)
    half = n_chirp // 2
    if kind == "uniform":
        chirp_axis = r0 - np.arange(n_chirp) * d_lambda
    elif kind == "uniform-pos":
        chirp_axis = -np.arange(1, half + 1) * d_lambda
    elif kind == "dyadic":
        d_lambda = None
        neg = -a0 * 2.0 ** (np.arange(half, 0, -1) * da)
        pos = a0 * 2.0 ** (np.arange(1, n_chirp - half + 1) * da)
        chirp_axis = np.concatenate([neg, pos])
    else:  # dyadic-pos
        d_lambda = None
        chirp_axis = a0 * 2.0 ** (np.arange(1, half + 1) * da)

    if d_gamma is None:
        d_gamma = 2.0 * r0 / (n_chirp - 1)
    if d_xi is None:
        d_xi = d_eta
    if not (d_gamma > 0.0 and d_xi > 0.0):
        raise GridError(f"d_gamma and d_xi must be positive, got {d_gamma!r}, {d_xi!r}")
    if not (epsilon_rel >= 0.0):
        raise GridError(f"epsilon_rel must be nonnegative, got {epsilon_rel!r}")

    n1 = int(math.floor(2.0 * r0 / d_gamma + 1e-9)) + 1
    n2 = int(math.floor((n // 2) * d_eta / d_xi + 1e-9))
    if n2 < 1:
        raise GridError(f"d_xi {d_xi!r} leaves no frequency squeeze bins")
    squeeze_chirp_axis = -r0 + np.arange(n1) * d_gamma
    squeeze_freq_axis = np.arange(n2) * d_xi

    frame_times = (t0 + np.arange(n) * dt)[::hop]

    return TFCGrid(
        n=n,
        dt=dt,
        t0=t0,
        hop=int(hop),
        kind=kind,
        chirp_axis=_readonly(chirp_axis),
        freq_axis=_readonly(freq_axis),
        frame_times=_readonly(frame_times),
        squeeze_chirp_axis=_readonly(squeeze_chirp_axis),
        squeeze_freq_axis=_readonly(squeeze_freq_axis),
        d_eta=d_eta,
        d_lambda=d_lambda,
        r0=float(r0),
        a0=float(a0) if kind.startswith("dyadic") else None,
        da=float(da) if kind.startswith("dyadic") else None,
        d_gamma=float(d_gamma),
        d_xi=float(d_xi),
        epsilon_rel=float(epsilon_rel),
        n_chirp_req=int(n_chirp),
    )


@dataclass(frozen=True)
class TFCCube:
    """Dense cube of values indexed [chirp bin, frequency bin, frame].

    ``source`` names the producing operation ("wlct", "wlct-mag", "xray",
    "squeezed-..."); squeezed cubes are indexed by the squeeze axes instead
    of (chirp_axis, freq_axis).
    """

    values: np.ndarray
    grid: TFCGrid
    source: str

    def __post_init__(self):
        if self.values.ndim != 3:
            raise GridError(f"cube values must be 3-D, got shape {self.values.shape}")

    @property
    def shape(self):
        return self.values.shape
