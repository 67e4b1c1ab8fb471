"""Wavelet transform tests against an independently coded direct-sum oracle."""

import math

import numpy as np
import pytest

from heatcast.series import SeriesKind
from heatcast.wavelet import (Boundary, Scalogram, WaveletConfig, WaveletError,
                              cwt, discretize_wavelet, ricker_eval,
                              scalogram_to_csv, scalogram_to_pgm)

# --- oracle: naive triple-loop direct sum, no shared code with the library ---

def oracle_ricker(t: float) -> float:
    return 2.0 / math.sqrt(3.0) / math.pi ** 0.25 * (1.0 - t * t) * math.exp(-t * t / 2.0)


def oracle_kernel(scale: float, factor: float = 4.0) -> list[float]:
    half = math.ceil(factor * scale)
    raw = [oracle_ricker(k / scale) / math.sqrt(scale) for k in range(-half, half + 1)]
    mean = sum(raw) / len(raw)
    return [v - mean for v in raw]


def _mirror(p: int, n: int) -> int:
    if n == 1:
        return 0
    while p < 0 or p >= n:
        if p < 0:
            p = -p
        if p >= n:
            p = 2 * (n - 1) - p
    return p


def oracle_cwt(window, scales, reflect: bool, factor: float = 4.0) -> list[list[float]]:
    n = len(window)
    grid = []
    for scale in scales:
        kernel = oracle_kernel(scale, factor)
        half = (len(kernel) - 1) // 2
        row = []
        for b in range(n):
            total = 0.0
            for k, weight in enumerate(kernel):
                p = b + k - half
                if reflect:
                    total += weight * window[_mirror(p, n)]
                elif 0 <= p < n:
                    total += weight * window[p]
            row.append(total)
        grid.append(row)
    return grid


class TestRickerEval:
    def test_peak_value(self):
        # closed form: 2 / (sqrt(3) * pi^(1/4))
        assert ricker_eval(0.0) == pytest.approx(0.8673250706, abs=1e-9)

    def test_zero_crossings_exact(self):
        assert ricker_eval(1.0) == 0.0
        assert ricker_eval(-1.0) == 0.0

    def test_tail_value(self):
        assert ricker_eval(3.0) == pytest.approx(-0.0770817, abs=1e-6)

    def test_even_symmetry(self):
        ts = np.linspace(0.0, 6.0, 101)
        np.testing.assert_array_equal(ricker_eval(ts), ricker_eval(-ts))


class TestDiscretizeWavelet:
    def test_zero_mean_within_1e12(self):
        cfg = WaveletConfig(scales=24)
        for scale in cfg.scale_grid:
            kernel = discretize_wavelet(scale, cfg)
            assert abs(kernel.sum()) < 1e-12

    def test_symmetric_samples(self):
        cfg = WaveletConfig(scales=24)
        for scale in (1.0, 3.0, 7.5, 24.0):
            kernel = discretize_wavelet(scale, cfg)
            np.testing.assert_array_equal(kernel, kernel[::-1])

    def test_unit_scale_length(self):
        cfg = WaveletConfig(scales=1)
        assert discretize_wavelet(1.0, cfg).size == 9

    def test_support_rule(self):
        cfg = WaveletConfig(scales=1, support_radius_factor=4.0)
        for scale, expected_half in ((2.0, 8), (2.5, 10), (24.0, 96)):
            assert discretize_wavelet(scale, cfg).size == 2 * expected_half + 1

    def test_rejects_nonpositive_scale(self):
        cfg = WaveletConfig(scales=1)
        with pytest.raises(WaveletError):
            discretize_wavelet(0.0, cfg)


class TestWaveletConfig:
    def test_default_grid_is_integers(self):
        cfg = WaveletConfig(scales=4)
        assert cfg.scale_grid == (1.0, 2.0, 3.0, 4.0)

    def test_rejects_unsorted_grid(self):
        with pytest.raises(WaveletError):
            WaveletConfig(scales=2, scale_grid=(2.0, 1.0))

    def test_rejects_grid_length_mismatch(self):
        with pytest.raises(WaveletError):
            WaveletConfig(scales=3, scale_grid=(1.0, 2.0))


class TestCwt:
    def test_constant_window_annihilated(self):
        cfg = WaveletConfig(scales=24)
        for c in (1.0, -3.5, 1234.5):
            grid = cwt(np.full(24, c), cfg).coefficients
            assert np.max(np.abs(grid)) <= 1e-9 * abs(c)

    def test_all_zero_window_exactly_zero(self):
        for boundary in Boundary:
            cfg = WaveletConfig(scales=24, boundary=boundary)
            grid = cwt(np.zeros(24), cfg).coefficients
            assert np.array_equal(grid, np.zeros((24, 24)))

    def test_linearity(self):
        cfg = WaveletConfig(scales=24)
        rng = np.random.default_rng(7)
        for _ in range(10):
            x = rng.uniform(-1, 1, 24)
            y = rng.uniform(-1, 1, 24)
            alpha, beta = rng.uniform(-2, 2, 2)
            combined = cwt(alpha * x + beta * y, cfg).coefficients
            separate = alpha * cwt(x, cfg).coefficients + beta * cwt(y, cfg).coefficients
            np.testing.assert_allclose(combined, separate, atol=1e-10)

    def test_impulse_interior_column_is_center_tap(self):
        # long window so no padding overlaps any kernel support at b0
        cfg = WaveletConfig(scales=24)
        h, b0 = 256, 128
        window = np.zeros(h)
        window[b0] = 1.0
        grid = cwt(window, cfg).coefficients
        for i, scale in enumerate(cfg.scale_grid):
            kernel = discretize_wavelet(scale, cfg)
            center = kernel[(kernel.size - 1) // 2]
            assert grid[i, b0] == pytest.approx(center, abs=1e-12)

    def test_impulse_shift_covariance_interior(self):
        cfg = WaveletConfig(scales=8)
        h, b0 = 128, 60
        first = np.zeros(h)
        first[b0] = 1.0
        second = np.zeros(h)
        second[b0 + 1] = 1.0
        g1 = cwt(first, cfg).coefficients
        g2 = cwt(second, cfg).coefficients
        # compare columns whose kernel support stays inside the window for both
        margin = math.ceil(cfg.support_radius_factor * cfg.scale_grid[-1])
        inner = slice(b0 - margin + 1, b0 + margin)
        np.testing.assert_allclose(g2[:, inner.start + 1:inner.stop],
                                   g1[:, inner.start:inner.stop - 1], atol=1e-12)

    def test_matches_oracle_both_boundaries(self):
        rng = np.random.default_rng(11)
        cfgs = {True: WaveletConfig(scales=24, boundary=Boundary.REFLECT),
                False: WaveletConfig(scales=24, boundary=Boundary.ZERO_PAD)}
        for _ in range(5):
            window = rng.uniform(-1, 1, 24)
            for reflect, cfg in cfgs.items():
                expected = np.array(oracle_cwt(window.tolist(), cfg.scale_grid, reflect))
                np.testing.assert_allclose(cwt(window, cfg).coefficients, expected, atol=1e-10)

    def test_finite_at_scale_24_with_unit_values(self):
        cfg = WaveletConfig(scales=24)
        rng = np.random.default_rng(3)
        grid = cwt(rng.uniform(-1, 1, 24), cfg).coefficients
        assert np.all(np.isfinite(grid))
        assert grid.shape == (24, 24)

    def test_rejects_non_finite_input(self):
        cfg = WaveletConfig(scales=4)
        window = np.zeros(24)
        window[3] = np.nan
        with pytest.raises(WaveletError):
            cwt(window, cfg)


class TestScalogramExport:
    def _sample(self):
        cfg = WaveletConfig(scales=4)
        rng = np.random.default_rng(5)
        return cwt(rng.uniform(0, 1, 24), cfg, source_kind=SeriesKind.RATE)

    def test_csv_round_trip(self, tmp_path):
        scalogram = self._sample()
        path = tmp_path / "scalo.csv"
        with open(path, "w") as fh:
            scalogram_to_csv(scalogram, fh)
        loaded = np.loadtxt(path, delimiter=",")
        np.testing.assert_array_equal(loaded, scalogram.coefficients)

    def test_pgm_header_and_size(self):
        scalogram = self._sample()
        blob = scalogram_to_pgm(scalogram)
        header = b"P5\n24 4\n255\n"
        assert blob.startswith(header)
        assert len(blob) == len(header) + 4 * 24

    def test_pgm_normalization_spans_full_range(self):
        scalogram = self._sample()
        blob = scalogram_to_pgm(scalogram)
        pixels = np.frombuffer(blob.split(b"255\n", 1)[1], dtype=np.uint8)
        assert pixels.min() == 0 and pixels.max() == 255

    def test_pgm_constant_image_is_black(self):
        scalogram = Scalogram(np.full((2, 3), 7.0), (1.0, 2.0))
        pixels = np.frombuffer(scalogram_to_pgm(scalogram).split(b"255\n", 1)[1],
                               dtype=np.uint8)
        assert np.all(pixels == 0)

    def test_scalogram_shape_validation(self):
        with pytest.raises(WaveletError):
            Scalogram(np.zeros((3, 24)), (1.0, 2.0))
