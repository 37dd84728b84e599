"""Threshold calibration: boxplot fences and grid round-up."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saferoam.calibration import (
    CalibrationError,
    Fences,
    SpeedSampleSet,
    boxplot_fences,
    calibrate_threshold,
    load_speed_samples,
)

speeds = st.lists(
    st.floats(min_value=0.0, max_value=10.0, allow_nan=False),
    min_size=4,
    max_size=60,
)


def samples(*values):
    return SpeedSampleSet(samples=tuple(values))


class TestBoxplotFences:
    def test_one_to_five(self):
        # Hand computation with linear interpolation at p*(n-1):
        # q1 at index 1 -> 2, median 3, q3 at index 3 -> 4, iqr 2, fences -1/7.
        f = boxplot_fences(samples(1, 2, 3, 4, 5))
        assert f.q1 == pytest.approx(2.0)
        assert f.median == pytest.approx(3.0)
        assert f.q3 == pytest.approx(4.0)
        assert f.iqr == pytest.approx(2.0)
        assert f.lower_fence == pytest.approx(-1.0)
        assert f.upper_fence == pytest.approx(7.0)
        assert f.cumulative_fraction_at_upper == 1.0

    def test_uniform_grid_with_outlier(self):
        # 0.1..0.7 plus a 5.0 outlier: q1 = 0.275, q3 = 0.625, fence 1.15,
        # so the 5.0 sits outside and 7 of 8 samples stay under the fence.
        f = boxplot_fences(samples(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 5.0))
        assert f.q1 == pytest.approx(0.275)
        assert f.q3 == pytest.approx(0.625)
        assert f.upper_fence == pytest.approx(1.15)
        assert 5.0 > f.upper_fence
        assert f.cumulative_fraction_at_upper == pytest.approx(7 / 8)

    def test_all_equal_degenerates_cleanly(self):
        f = boxplot_fences(samples(0.4, 0.4, 0.4, 0.4, 0.4))
        assert f.iqr == 0.0
        assert f.lower_fence == f.upper_fence == pytest.approx(0.4)
        assert f.cumulative_fraction_at_upper == 1.0

    def test_order_does_not_matter(self):
        assert boxplot_fences(samples(5, 1, 4, 2, 3)) == boxplot_fences(
            samples(1, 2, 3, 4, 5)
        )

    def test_too_few_samples_rejected(self):
        with pytest.raises(CalibrationError):
            boxplot_fences(samples(1, 2, 3))

    def test_negative_sample_rejected(self):
        with pytest.raises(CalibrationError):
            samples(0.5, -0.1, 0.3, 0.4)

    @given(speeds)
    @settings(max_examples=200)
    def test_matches_numpy_quartiles(self, values):
        f = boxplot_fences(samples(*values))
        q1, med, q3 = np.percentile(values, [25, 50, 75])
        assert f.q1 == pytest.approx(q1, abs=1e-12)
        assert f.median == pytest.approx(med, abs=1e-12)
        assert f.q3 == pytest.approx(q3, abs=1e-12)

    @given(speeds, st.floats(min_value=0.1, max_value=10.0, allow_nan=False))
    @settings(max_examples=100)
    def test_scales_linearly(self, values, k):
        base = boxplot_fences(samples(*values))
        scaled = boxplot_fences(samples(*(v * k for v in values)))
        for a, b in (
            (base.q1, scaled.q1),
            (base.q3, scaled.q3),
            (base.upper_fence, scaled.upper_fence),
        ):
            assert b == pytest.approx(a * k, rel=1e-9, abs=1e-9)

    @given(speeds)
    def test_quartiles_ordered(self, values):
        f = boxplot_fences(samples(*values))
        assert f.q1 <= f.median <= f.q3
        assert f.iqr == pytest.approx(f.q3 - f.q1)


class TestCalibrateThreshold:
    # Evenly spaced samples put q3 + 1.5*iqr at the first value + 4.5 steps.
    FENCE_078 = (0.33, 0.43, 0.53, 0.63)

    def test_sample_set_reproduces_published_mapping(self):
        f = boxplot_fences(samples(*self.FENCE_078))
        assert f.upper_fence == pytest.approx(0.78)
        assert calibrate_threshold(samples(*self.FENCE_078)) == pytest.approx(0.80)

    def test_on_grid_fence_stays_put(self):
        # Evenly spaced from 0.30 by 0.10: fence = 0.30 + 0.45 = 0.75.
        vals = (0.30, 0.40, 0.50, 0.60)
        assert calibrate_threshold(samples(*vals)) == pytest.approx(0.75)

    def test_just_over_grid_rounds_up(self):
        # Fence lands at 0.7501: the next grid point is 0.80.
        vals = (0.3001, 0.4001, 0.5001, 0.6001)
        fence = boxplot_fences(samples(*vals)).upper_fence
        assert 0.75 < fence < 0.76
        assert calibrate_threshold(samples(*vals)) == pytest.approx(0.80)

    def test_threshold_never_below_fence(self):
        vals = (0.2, 0.5, 0.6, 0.9, 1.1)
        fence = boxplot_fences(samples(*vals)).upper_fence
        v_t = calibrate_threshold(samples(*vals))
        assert fence <= v_t < fence + 0.05

    def test_bad_rounding_rejected(self):
        with pytest.raises(CalibrationError):
            calibrate_threshold(samples(1, 2, 3, 4), rounding=0.0)

    @given(speeds, st.sampled_from([0.01, 0.05, 0.1]))
    def test_round_up_property(self, values, step):
        fence = boxplot_fences(samples(*values)).upper_fence
        v_t = calibrate_threshold(samples(*values), rounding=step)
        assert v_t >= fence - 1e-9
        assert v_t - fence < step + 1e-9


class TestCsvLoader:
    def test_plain_values(self, tmp_path):
        path = tmp_path / "speeds.csv"
        path.write_text("0.5\n0.6\n0.7\n0.8\n")
        loaded = load_speed_samples(path)
        assert loaded.samples == (0.5, 0.6, 0.7, 0.8)

    def test_header_skipped(self, tmp_path):
        path = tmp_path / "speeds.csv"
        path.write_text("speed_mps\n0.5\n0.6\n0.7\n0.8\n")
        assert load_speed_samples(path).samples == (0.5, 0.6, 0.7, 0.8)

    def test_first_column_used(self, tmp_path):
        path = tmp_path / "speeds.csv"
        path.write_text("0.5,participant-1\n0.6,participant-1\n")
        assert load_speed_samples(path).samples == (0.5, 0.6)

    def test_garbage_line_named(self, tmp_path):
        path = tmp_path / "speeds.csv"
        path.write_text("0.5\nnot-a-number\n")
        with pytest.raises(CalibrationError, match="line 2"):
            load_speed_samples(path)
