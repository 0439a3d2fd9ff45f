"""Built-in benchmark signals, error metrics, and series perturbation.

Three two-component unit-amplitude test signals, all sampled at 128 Hz:

* x1: crossing linear chirps, phases -4t^2 + 50t and 6t^2 + 10t on
  [0, 4) -- instantaneous frequencies cross at (2 s, 34 Hz);
* y2: crossing linear chirps, phases 4t^2 + 20t and 6t^2 + 12t on
  [0, 4) -- crossing at (2 s, 36 Hz);
* z3: a linear chirp plus a sinusoidally modulated chirp, phases
  2t^2 + 18t and 2t^2 + 18t + (64/pi)*cos(pi*t/8 + pi/2) on [0, 8) --
  crossing at (4 s, 34 Hz).
"""

from dataclasses import dataclass

import numpy as np

from .core import SampledSignal
from .errors import LengthMismatch, UnknownId, ZeroSeries

__all__ = ["BenchmarkSignal", "benchmark", "BENCHMARK_NAMES",
           "rmse_central", "central_slice", "perturb_series"]

BENCHMARK_NAMES = ("x1", "y2", "z3")

_RATE = 128.0


@dataclass(frozen=True)
class BenchmarkSignal:
    """A built-in test signal with its per-component ground truth.

    modes, inst_freq, inst_chirp are (k, n) arrays sampled on
    signal.times; crossing_time/crossing_freq locate where the component
    frequencies meet.
    """

    name: str
    signal: SampledSignal
    modes: np.ndarray
    inst_freq: np.ndarray
    inst_chirp: np.ndarray
    crossing_time: float
    crossing_freq: float

    @property
    def k(self) -> int:
        return self.modes.shape[0]


def _linear_chirp(t: np.ndarray, half_rate: float, f0: float):
    """Unit chirp exp(2i*pi*(half_rate*t^2 + f0*t)) with IF/chirprate."""
    phase = half_rate * t**2 + f0 * t
    mode = np.exp(2j * np.pi * phase)
    inst_freq = 2.0 * half_rate * t + f0
    inst_chirp = np.full(t.size, 2.0 * half_rate)
    return mode, inst_freq, inst_chirp


def benchmark(name: str) -> BenchmarkSignal:
    """Build one of the built-in benchmark signals by name."""
    if name not in BENCHMARK_NAMES:
        raise UnknownId(f"no benchmark named {name!r}; "
                        f"choose from {BENCHMARK_NAMES}")
    if name == "x1":
        n = 512
        t = np.arange(n) / _RATE
        m1, f1, c1 = _linear_chirp(t, -4.0, 50.0)
        m2, f2, c2 = _linear_chirp(t, 6.0, 10.0)
        cross_t, cross_f = 2.0, 34.0
    elif name == "y2":
        n = 512
        t = np.arange(n) / _RATE
        m1, f1, c1 = _linear_chirp(t, 4.0, 20.0)
        m2, f2, c2 = _linear_chirp(t, 6.0, 12.0)
        cross_t, cross_f = 2.0, 36.0
    else:  # z3
        n = 1024
        t = np.arange(n) / _RATE
        m1, f1, c1 = _linear_chirp(t, 2.0, 18.0)
        phase2 = 2.0 * t**2 + 18.0 * t + (64.0 / np.pi) * np.cos(
            np.pi * t / 8.0 + np.pi / 2.0)
        m2 = np.exp(2j * np.pi * phase2)
        f2 = 4.0 * t + 18.0 - 8.0 * np.sin(np.pi * t / 8.0 + np.pi / 2.0)
        c2 = 4.0 - np.pi * np.cos(np.pi * t / 8.0 + np.pi / 2.0)
        cross_t, cross_f = 4.0, 34.0
    modes = np.stack([m1, m2])
    signal = SampledSignal(samples=modes.sum(axis=0), dt=1.0 / _RATE, t0=0.0)
    return BenchmarkSignal(
        name=name,
        signal=signal,
        modes=modes,
        inst_freq=np.stack([f1, f2]),
        inst_chirp=np.stack([c1, c2]),
        crossing_time=cross_t,
        crossing_freq=cross_f,
    )


def central_slice(n: int) -> slice:
    """Index range n//8 .. (7*n)//8 inclusive (edge frames excluded)."""
    return slice(n // 8, (7 * n) // 8 + 1)


def rmse_central(f: np.ndarray, f_hat: np.ndarray) -> float:
    """Root-mean-square error over the central index range.

    The mean is over the retained count, i.e.
    ||f - f_hat||_2 / sqrt(len(kept)).
    """
    f = np.asarray(f)
    f_hat = np.asarray(f_hat)
    if f.shape != f_hat.shape or f.ndim != 1:
        raise LengthMismatch(
            f"series shapes {f.shape} and {f_hat.shape} must be equal 1-D"
        )
    kept = central_slice(f.size)
    diff = f[kept] - f_hat[kept]
    return float(np.sqrt(np.mean(np.abs(diff) ** 2)))


def perturb_series(series: np.ndarray, snr_db: float, seed: int) -> np.ndarray:
    """Add seeded white Gaussian noise at the given signal-to-noise ratio.

    Signal power is the raw mean square (mean not removed). Raises
    ZeroSeries for an all-zero input.
    """
    series = np.asarray(series, dtype=float)
    power = float(np.mean(series**2))
    if power == 0.0:
        raise ZeroSeries("cannot scale noise against an all-zero series")
    sigma = np.sqrt(power * 10.0 ** (-snr_db / 10.0))
    rng = np.random.default_rng(seed)
    return series + rng.standard_normal(series.size) * sigma
