"""Windowed linear canonical transforms on a time-frequency-chirprate cube.

The pipeline: transform a signal against a bank of chirp-parametrized
Gaussian windows (wlct_cube), sharpen the magnitude along per-bin chirp
lines (xray_cube), estimate per-voxel frequency/chirprate corrections
(reassignment_maps) and reaccumulate (synchrosqueeze), tune the window
width by entropy (tune_alpha), peel ridges (extract_ridges), and solve
the cross-term system for the mode series (retrieve_modes). run_pipeline
chains it all; the ``chirpcube`` command exposes it on the CLI.
"""

from .bench import (PerturbationReport, PipelineConfig, PipelineReport,
                    default_grid_kind, perturbation_study, run_pipeline)
from .core import (VARIANTS, ParamMatrix, SampledSignal, TFCCube, TFCGrid,
                   WindowSpec, build_grid, matrix_for, paired_rate)
from .entropy import (TuneResult, default_alpha_grid, renyi_entropy,
                      tune_alpha)
from .errors import (ChirpcubeError, DeterminantError, DirectionError,
                     EmptyCube, GridError, GridMismatch, InsufficientEnergy,
                     LengthMismatch, SmallBError, UnknownId, UnknownVariant,
                     ZeroChirprate, ZeroSeries)
from .kernels import (KernelParams, cp_params, gaussian_lct, numeric_lct,
                      window_samples)
from .reassign import ReassignMaps, reassignment_maps, synchrosqueeze
from .reconstruct import (ModeSet, coeff_matrix, condition_number,
                          retrieve_modes)
from .ridge import RidgeSet, extract_ridges
from .signals import (BENCHMARK_NAMES, BenchmarkSignal, benchmark,
                      central_slice, perturb_series, rmse_central)
from .transform import magnitude_cube, wlct_cube
from .xray import XrayWindow, gaussian_xray_window, xray_cube

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "VARIANTS", "ParamMatrix", "SampledSignal", "TFCCube", "TFCGrid",
    "WindowSpec", "build_grid", "matrix_for", "paired_rate",
    # kernels
    "KernelParams", "cp_params", "gaussian_lct", "numeric_lct",
    "window_samples",
    # transform
    "wlct_cube", "magnitude_cube",
    # xray
    "XrayWindow", "gaussian_xray_window", "xray_cube",
    # reassign
    "ReassignMaps", "reassignment_maps", "synchrosqueeze",
    # entropy
    "TuneResult", "default_alpha_grid", "renyi_entropy", "tune_alpha",
    # ridge
    "RidgeSet", "extract_ridges",
    # reconstruct
    "ModeSet", "coeff_matrix", "condition_number", "retrieve_modes",
    # signals
    "BENCHMARK_NAMES", "BenchmarkSignal", "benchmark", "central_slice",
    "perturb_series", "rmse_central",
    # bench
    "PerturbationReport", "PipelineConfig", "PipelineReport",
    "default_grid_kind", "perturbation_study", "run_pipeline",
    # errors
    "ChirpcubeError", "DeterminantError", "DirectionError", "EmptyCube",
    "GridError", "GridMismatch", "InsufficientEnergy", "LengthMismatch",
    "SmallBError", "UnknownId", "UnknownVariant", "ZeroChirprate",
    "ZeroSeries",
]
