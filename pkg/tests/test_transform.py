import math

import numpy as np
import pytest

from taylorlab.errors import ConfigError, SampleError
from taylorlab.ingest import embedded_dataset
from taylorlab.series import Dataset, Quarter, Series
from taylorlab.transform import (
    TransformConfig,
    build_taylor_dataset,
    hp_filter_gap,
    inflation_gap,
    linear_trend_gap,
    yoy_change,
)


def _series(vals, name="x", start=Quarter(1990, 1)):
    return Series(name, start, tuple(vals))


class TestYoyChange:
    def test_constant_log_series_is_zero(self):
        out = yoy_change(_series([3.7] * 10), 4)
        assert out.values == pytest.approx((0.0,) * 6, abs=0)

    def test_linear_in_logs_is_constant(self):
        out = yoy_change(_series([t / 100 for t in range(12)]), 4)
        assert out.values == pytest.approx((4.0,) * 8, abs=1e-12)

    def test_us_cpi_1991q1_against_log_oracle(self):
        import mpmath

        oracle = float(100 * (mpmath.log(mpmath.mpf("134.767"))
                              - mpmath.log(mpmath.mpf("128.033"))))
        cpi = embedded_dataset("us")["cpi"]
        from taylorlab.series import natural_log

        out = yoy_change(natural_log(cpi), 4)
        assert out.at(Quarter(1991, 1)) == pytest.approx(oracle, abs=1e-12)
        assert out.at(Quarter(1991, 1)) == pytest.approx(5.1258, abs=5e-4)

    def test_exhausted_sample_raises(self):
        with pytest.raises(SampleError):
            yoy_change(_series([1.0, 2.0]), 4)


class TestInflationGap:
    def test_constant_cpi_gives_minus_target(self):
        out = inflation_gap(_series([104.3] * 9, "cpi"))
        assert out.values == pytest.approx((-2.0,) * 5, abs=1e-12)

    def test_us_1991q1(self):
        out = inflation_gap(embedded_dataset("us")["cpi"])
        assert out.at(Quarter(1991, 1)) == pytest.approx(3.1258, abs=5e-4)

    def test_zero_target_equals_raw_yoy(self):
        cpi = _series([100.0, 101, 103, 104, 107, 110, 112, 115, 118], "cpi")
        raw = inflation_gap(cpi, TransformConfig(inflation_target=0.0))
        shifted = inflation_gap(cpi)
        assert np.allclose(np.array(raw.values) - 2.0, shifted.values)

    def test_scale_invariance(self):
        cpi = _series([100.0, 101, 103, 104, 107, 110, 112, 115, 118], "cpi")
        scaled = _series([v * 7.3 for v in cpi.values], "cpi")
        assert np.allclose(inflation_gap(cpi).values, inflation_gap(scaled).values)


class TestLinearTrendGap:
    def test_log_linear_gdp_has_zero_gap(self):
        vals = [100.0 * math.exp(0.01 * t) for t in range(20)]
        out = linear_trend_gap(_series(vals, "gdp"))
        assert np.allclose(out.values, 0.0, atol=1e-9)

    def test_closed_form_three_points(self):
        # log values 0, 1, 3: slope 3/2, intercept -1/6
        vals = [1.0, math.e, math.e**3]
        out = linear_trend_gap(_series(vals, "gdp"))
        assert out.values == pytest.approx(
            (100 / 6, -100 / 3, 100 / 6), abs=1e-9
        )

    def test_scaling_gdp_leaves_gaps_unchanged(self):
        rng = np.random.default_rng(3)
        vals = rng.uniform(50, 150, size=30)
        a = linear_trend_gap(_series(vals, "gdp"))
        b = linear_trend_gap(_series(vals * 11.0, "gdp"))
        assert np.allclose(a.values, b.values, atol=1e-9)

    def test_residuals_sum_zero_and_orthogonal_to_trend(self):
        rng = np.random.default_rng(4)
        vals = rng.uniform(50, 150, size=40)
        gaps = np.array(linear_trend_gap(_series(vals, "gdp")).values)
        t = np.arange(len(gaps))
        assert abs(gaps.sum()) < 1e-9 * np.abs(gaps).sum()
        assert abs(gaps @ t) < 1e-8 * np.abs(gaps).sum() * len(gaps)

    def test_too_short_raises(self):
        with pytest.raises(SampleError):
            linear_trend_gap(_series([1.0, 2.0], "gdp"))


def _dense_hp_gap(logvals, lam):
    n = len(logvals)
    D = np.zeros((n - 2, n))
    for i in range(n - 2):
        D[i, i : i + 3] = [1.0, -2.0, 1.0]
    trend = np.linalg.solve(np.eye(n) + lam * D.T @ D, logvals)
    return 100.0 * (logvals - trend)


class TestHpFilterGap:
    def test_linear_log_series_has_zero_gap(self):
        vals = [100.0 * math.exp(0.02 * t) for t in range(30)]
        out = hp_filter_gap(_series(vals, "gdp"), 1600.0)
        assert np.allclose(out.values, 0.0, atol=1e-8)

    def test_constant_series_has_zero_gap(self):
        out = hp_filter_gap(_series([42.0] * 12, "gdp"), 1600.0)
        assert np.allclose(out.values, 0.0, atol=1e-10)

    def test_matches_dense_solve_oracle(self):
        rng = np.random.default_rng(11)
        vals = rng.uniform(80, 120, size=8)
        out = hp_filter_gap(_series(vals, "gdp"), 1600.0)
        assert np.allclose(out.values, _dense_hp_gap(np.log(vals), 1600.0), atol=1e-8)

    def test_matches_dense_oracle_on_long_sample(self):
        gdp = embedded_dataset("us")["real_gdp"]
        out = hp_filter_gap(gdp, 1600.0)
        oracle = _dense_hp_gap(np.log(gdp.values), 1600.0)
        assert np.allclose(out.values, oracle, atol=1e-8)

    def test_small_lambda_tracks_series(self):
        rng = np.random.default_rng(12)
        vals = rng.uniform(80, 120, size=25)
        out = hp_filter_gap(_series(vals, "gdp"), 1e-8)
        assert np.max(np.abs(out.values)) < 1e-5

    def test_large_lambda_approaches_linear_trend(self):
        rng = np.random.default_rng(13)
        vals = rng.uniform(80, 120, size=25)
        hp = hp_filter_gap(_series(vals, "gdp"), 1e12)
        lin = linear_trend_gap(_series(vals, "gdp"))
        assert np.allclose(hp.values, lin.values, atol=0.1)

    def test_residuals_orthogonal_to_linear_functions(self):
        rng = np.random.default_rng(14)
        vals = rng.uniform(80, 120, size=40)
        gaps = np.array(hp_filter_gap(_series(vals, "gdp"), 1600.0).values)
        t = np.arange(len(gaps), dtype=float)
        scale = np.abs(gaps).sum() * len(gaps)
        assert abs(gaps.sum()) < 1e-8 * scale
        assert abs(gaps @ t) < 1e-8 * scale * len(gaps)

    def test_nonpositive_lambda_raises(self):
        from taylorlab.errors import DomainError

        with pytest.raises(DomainError):
            hp_filter_gap(_series([1.0] * 10, "gdp"), 0.0)


class TestBuildTaylorDataset:
    def test_us_adjusted_sample(self, us_data):
        from taylorlab.series import align_sample

        M = align_sample(
            us_data, ["it", "inflation_gap", "output_gap", "s"],
            Quarter(1991, 1), Quarter(2020, 1),
        )
        assert M.shape[0] == 117

    def test_uk_same_adjusted_span(self, uk_data):
        assert uk_data["inflation_gap"].start == Quarter(1991, 1)
        assert uk_data["inflation_gap"].end == Quarter(2020, 1)

    def test_missing_cpi_names_series(self):
        d = Dataset("toy", {"real_gdp": _series([1.0] * 10)})
        with pytest.raises(SampleError, match="cpi"):
            build_taylor_dataset(d)

    def test_raw_series_kept(self, us_data):
        for name in ("real_gdp", "cpi", "interest_rate", "stock_index"):
            assert name in us_data.series


class TestTransformConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(inflation_target=math.nan),
            dict(yoy_lag=0),
            dict(detrend="bandpass"),
            dict(hp_lambda=-1.0),
        ],
    )
    def test_invalid_config_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            TransformConfig(**kwargs)
