"""Deterministic file formats: cubes, tracks, modes, heatmaps, signals.

Cubes are written as raw little-endian float64 (re, im) pairs in
row-major (chirp, frequency, frame) order next to a JSON sidecar holding
the shape, axes, and grid parameters. All text outputs use %.17g floats,
sorted JSON keys, and carry no timestamps, so identical runs produce
byte-identical files.
"""

import csv
import json
from pathlib import Path

import numpy as np

from .core import SampledSignal, TFCCube, build_grid
from .errors import GridError
from .reconstruct import ModeSet
from .ridge import RidgeSet

__all__ = [
    "SignalFormatError",
    "save_cube",
    "load_cube",
    "save_ridges",
    "save_modes",
    "save_rmse",
    "write_pgm",
    "load_signal",
]


class SignalFormatError(ValueError):
    """Input signal file is missing, empty, or malformed (a usage error)."""


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def save_cube(base: str | Path, cube: TFCCube) -> tuple[Path, Path]:
    """Write <base>.f64 (raw interleaved pairs) and <base>.json sidecar."""
    base = Path(base)
    raw_path = base.with_suffix(".f64")
    json_path = base.with_suffix(".json")
    vals = np.ascontiguousarray(cube.values, dtype=np.complex128)
    vals.view(np.float64).astype("<f8").tofile(raw_path)
    squeezed = cube.source.startswith("squeezed")
    grid = cube.grid
    sidecar = {
        "format": "float64-le interleaved (re, im), row-major",
        "order": ["chirp", "frequency", "frame"],
        "shape": list(cube.values.shape),
        "source": cube.source,
        "chirp_axis": (grid.squeeze_chirp_axis if squeezed
                       else grid.chirp_axis).tolist(),
        "freq_axis": (grid.squeeze_freq_axis if squeezed
                      else grid.freq_axis).tolist(),
        "frame_times": grid.frame_times.tolist(),
        "grid": grid.build_params(),
    }
    json_path.write_text(json.dumps(sidecar, sort_keys=True, indent=1)
                         + "\n")
    return raw_path, json_path


def load_cube(base: str | Path) -> TFCCube:
    """Read a cube written by save_cube."""
    base = Path(base)
    sidecar = json.loads(base.with_suffix(".json").read_text())
    shape = tuple(sidecar["shape"])
    raw = np.fromfile(base.with_suffix(".f64"), dtype="<f8")
    vals = raw.view(np.complex128).reshape(shape)
    if not np.any(vals.imag):
        vals = vals.real.copy()
    grid = build_grid(**sidecar["grid"])
    return TFCCube(values=vals, grid=grid, source=sidecar["source"])


def save_ridges(path: str | Path, ridges: RidgeSet) -> Path:
    """CSV of ridge tracks: one row per (frame, component)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "k", "xi", "gamma"])
        for m, t in enumerate(ridges.frame_times):
            for k in range(ridges.k):
                writer.writerow([_fmt(t), k, _fmt(ridges.xi[k, m]),
                                 _fmt(ridges.gamma[k, m])])
    return path


def save_modes(path: str | Path, modes: ModeSet) -> Path:
    """CSV of retrieved modes: one row per (frame, component)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "k", "re", "im"])
        for m, t in enumerate(modes.frame_times):
            for k in range(modes.k):
                v = modes.values[k, m]
                writer.writerow([_fmt(t), k, _fmt(v.real), _fmt(v.imag)])
    return path


def save_rmse(path: str | Path, rmse) -> Path:
    """CSV of per-component reconstruction errors."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "rmse"])
        for k, value in enumerate(np.asarray(rmse, dtype=float)):
            writer.writerow([k, _fmt(value)])
    return path


def write_pgm(path: str | Path, image: np.ndarray) -> Path:
    """Binary 8-bit PGM of a nonneg 2-D array, max scaled to white."""
    path = Path(path)
    img = np.asarray(image, dtype=float)
    if img.ndim != 2:
        raise ValueError(f"image must be 2-D, got shape {img.shape}")
    peak = img.max(initial=0.0)
    if peak > 0.0:
        img = img / peak
    data = np.round(img * 255.0).astype(np.uint8)
    with path.open("wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode())
        fh.write(data.tobytes())
    return path


def _load_signal_csv(path: Path) -> SampledSignal:
    rows = []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh)):
            if not row or row[0].strip().startswith("#"):
                continue
            if lineno == 0 and not _is_number(row[0]):
                continue  # header line
            if len(row) < 3:
                raise SignalFormatError(
                    f"{path}: line {lineno + 1}: need t,re,im columns"
                )
            try:
                rows.append((float(row[0]), float(row[1]), float(row[2])))
            except ValueError as exc:
                raise SignalFormatError(
                    f"{path}: line {lineno + 1}: {exc}"
                ) from None
    if len(rows) < 2:
        raise SignalFormatError(f"{path}: need at least 2 samples")
    arr = np.asarray(rows)
    t = arr[:, 0]
    steps = np.diff(t)
    dt = steps[0]
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=1e-12):
        raise SignalFormatError(f"{path}: time column must step uniformly")
    return SampledSignal(samples=arr[:, 1] + 1j * arr[:, 2], dt=float(dt),
                         t0=float(t[0]))


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def _load_signal_raw(path: Path) -> SampledSignal:
    sidecar_path = path.with_suffix(".json")
    if not sidecar_path.exists():
        raise SignalFormatError(
            f"{path}: raw signals need a {sidecar_path.name} sidecar "
            f"with dt (and optional t0)"
        )
    try:
        sidecar = json.loads(sidecar_path.read_text())
        dt = float(sidecar["dt"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise SignalFormatError(f"{sidecar_path}: {exc}") from None
    raw = np.fromfile(path, dtype="<f8")
    if raw.size == 0 or raw.size % 2:
        raise SignalFormatError(
            f"{path}: expected nonempty interleaved (re, im) float64 pairs"
        )
    samples = raw.view(np.complex128)
    return SampledSignal(samples=samples, dt=dt,
                         t0=float(sidecar.get("t0", 0.0)))


def load_signal(path: str | Path) -> SampledSignal:
    """Read a signal file: .csv with t,re,im rows, or raw interleaved
    float64 pairs with a .json sidecar giving dt and t0."""
    path = Path(path)
    if not path.exists():
        raise SignalFormatError(f"{path}: no such file")
    if path.stat().st_size == 0:
        raise SignalFormatError(f"{path}: file is empty")
    if path.suffix.lower() == ".csv":
        return _load_signal_csv(path)
    return _load_signal_raw(path)
