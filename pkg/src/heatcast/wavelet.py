"""Ricker (Mexican-hat) continuous wavelet transform and scalogram export."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .series import SeriesKind

# Amplitude of the unit-scale Ricker wavelet at t=0: 2 / (sqrt(3) * pi^(1/4)).
RICKER_PEAK = 2.0 / (math.sqrt(3.0) * math.pi ** 0.25)


class Boundary(enum.Enum):
    REFLECT = "reflect"
    ZERO_PAD = "zeropad"


class WaveletError(ValueError):
    """Invalid wavelet configuration or input."""


def ricker_eval(t):
    """Ricker wavelet psi(t) = RICKER_PEAK * (1 - t^2) * exp(-t^2 / 2)."""
    t = np.asarray(t, dtype=np.float64)
    out = RICKER_PEAK * (1.0 - t * t) * np.exp(-0.5 * t * t)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class WaveletConfig:
    """Scale grid and discretization choices for the transform.

    Defaults: integer scales {1..s} (row i of a scalogram then corresponds to
    a period of roughly i hours), reflective boundary, kernel support
    truncated at 4 standard widths per side.
    """

    scales: int
    scale_grid: tuple[float, ...] = field(default=())
    boundary: Boundary = Boundary.REFLECT
    support_radius_factor: float = 4.0

    def __post_init__(self):
        if self.scales < 1:
            raise WaveletError("scale count must be >= 1")
        grid = self.scale_grid or tuple(float(a) for a in range(1, self.scales + 1))
        grid = tuple(float(a) for a in grid)
        if len(grid) != self.scales:
            raise WaveletError(f"scale grid has {len(grid)} entries for {self.scales} scales")
        if grid[0] <= 0 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise WaveletError("scale grid must be positive and strictly increasing")
        if self.support_radius_factor <= 0:
            raise WaveletError("support radius factor must be positive")
        object.__setattr__(self, "scale_grid", grid)


def discretize_wavelet(scale: float, cfg: WaveletConfig) -> np.ndarray:
    """Sample (1/sqrt(a)) * psi(k/a) on integer offsets and re-center to zero mean.

    The support covers k in [-ceil(f*a), +ceil(f*a)].  The continuous Ricker
    has zero mean but its truncated samples do not; subtracting the sample
    mean makes constant-signal annihilation exact.
    """
    if scale <= 0:
        raise WaveletError("scale must be positive")
    half = math.ceil(cfg.support_radius_factor * scale)
    offsets = np.arange(-half, half + 1, dtype=np.float64)
    kernel = ricker_eval(offsets / scale) / math.sqrt(scale)
    kernel -= kernel.mean()
    return kernel


@lru_cache(maxsize=32)
def _kernels(cfg: WaveletConfig) -> tuple[np.ndarray, ...]:
    kernels = tuple(discretize_wavelet(a, cfg) for a in cfg.scale_grid)
    for k in kernels:
        k.setflags(write=False)
    return kernels


@dataclass(frozen=True)
class Scalogram:
    """CWT coefficients on an s x h grid (rows = scales, columns = time)."""

    coefficients: np.ndarray
    scale_grid: tuple[float, ...]
    source_kind: SeriesKind | None = None

    def __post_init__(self):
        coeff = np.asarray(self.coefficients, dtype=np.float64)
        if coeff.ndim != 2 or coeff.shape[0] != len(self.scale_grid):
            raise WaveletError(
                f"coefficient grid {coeff.shape} does not match {len(self.scale_grid)} scales")
        if not np.all(np.isfinite(coeff)):
            raise WaveletError("scalogram contains non-finite coefficients")
        coeff = coeff.copy()
        coeff.setflags(write=False)
        object.__setattr__(self, "coefficients", coeff)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coefficients.shape


def _pad(window: np.ndarray, half: int, boundary: Boundary) -> np.ndarray:
    if boundary is Boundary.REFLECT:
        return np.pad(window, half, mode="reflect")
    return np.pad(window, half, mode="constant")


def cwt(window, cfg: WaveletConfig,
        source_kind: SeriesKind | None = None) -> Scalogram:
    """Transform an h-sample window into an s x h scalogram.

    coefficient[i][b] = sum_k kernel_i[k] * padded_window[b + k], with the
    padding chosen by cfg.boundary (reflect by default, so a 24-sample window
    is not given an artificial step at its edges).
    """
    window = np.asarray(window, dtype=np.float64)
    if window.ndim != 1 or window.size < 1:
        raise WaveletError("window must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(window)):
        raise WaveletError("window contains non-finite values")

    rows = np.empty((cfg.scales, window.size), dtype=np.float64)
    for i, kernel in enumerate(_kernels(cfg)):
        half = (kernel.size - 1) // 2
        padded = _pad(window, half, cfg.boundary)
        rows[i] = np.correlate(padded, kernel, mode="valid")
    return Scalogram(rows, cfg.scale_grid, source_kind)


def scalogram_to_csv(scalogram: Scalogram, stream) -> None:
    """Write coefficients as s rows x h comma-separated columns."""
    for row in scalogram.coefficients:
        stream.write(",".join(repr(float(v)) for v in row))
        stream.write("\n")


def scalogram_to_pgm(scalogram: Scalogram) -> bytes:
    """Render as binary 8-bit grayscale PGM, min-max normalized per image.

    A constant image maps to all black rather than dividing by zero.
    """
    coeff = scalogram.coefficients
    lo, hi = coeff.min(), coeff.max()
    if hi > lo:
        gray = np.round((coeff - lo) / (hi - lo) * 255.0).astype(np.uint8)
    else:
        gray = np.zeros(coeff.shape, dtype=np.uint8)
    height, width = gray.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + gray.tobytes()
