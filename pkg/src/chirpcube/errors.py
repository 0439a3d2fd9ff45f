"""Exception types raised across the package."""

__all__ = [
    "ChirpcubeError",
    "DeterminantError",
    "UnknownVariant",
    "GridError",
    "GridMismatch",
    "SmallBError",
    "DirectionError",
    "EmptyCube",
    "InsufficientEnergy",
    "ZeroChirprate",
    "LengthMismatch",
    "ZeroSeries",
    "UnknownId",
]


class ChirpcubeError(Exception):
    """Base class for every error this package raises deliberately."""


class DeterminantError(ChirpcubeError, ValueError):
    """Parameter matrix is not area-preserving (determinant != 1)."""


class UnknownVariant(ChirpcubeError, ValueError):
    """Transform variant is not one of the supported family members."""


class GridError(ChirpcubeError, ValueError):
    """Analysis grid cannot be built from the requested parameters."""


class GridMismatch(ChirpcubeError, ValueError):
    """Signal, cube, or map does not belong to the given grid."""


class SmallBError(ChirpcubeError, ValueError):
    """Quadrature kernel is degenerate (|b| too small for the b != 0 form)."""


class DirectionError(ChirpcubeError, ValueError):
    """Chirp bin with parameter 0 cannot be mapped for this variant."""


class EmptyCube(ChirpcubeError, ValueError):
    """Cube carries no energy, so the requested functional is undefined."""


class InsufficientEnergy(ChirpcubeError, ValueError):
    """Fewer nonzero ridge seeds exist than the number requested."""


class ZeroChirprate(ChirpcubeError, ValueError):
    """Ridge chirprate 0 has no matrix parameter under this variant."""


class LengthMismatch(ChirpcubeError, ValueError):
    """Series lengths differ where equal lengths are required."""


class ZeroSeries(ChirpcubeError, ValueError):
    """All-zero series has no defined signal-to-noise scaling."""


class UnknownId(ChirpcubeError, ValueError):
    """No built-in signal with the requested name."""
