from fractions import Fraction

import numpy as np
import pytest

from taylorlab.errors import CollinearityError, ConfigError, SampleError
from taylorlab.hac import HacConfig
from taylorlab.ols import RegressionSpec, Term, fit_ols
from taylorlab.series import Dataset, Quarter, Series


def _toy_dataset(columns: dict, start=Quarter(2000, 1)) -> Dataset:
    return Dataset(
        "toy", {k: Series(k, start, tuple(v)) for k, v in columns.items()}
    )


def _random_dataset(rng, T=40, names=("y", "x1", "x2", "x3")):
    return _toy_dataset({n: rng.normal(size=T) for n in names})


class TestTermParsing:
    def test_lag_syntax(self):
        t = Term.parse("inflation_gap(-2)")
        assert t.name == "inflation_gap" and t.lag == 2
        assert t.label == "inflation_gap(-2)"

    def test_plain_name(self):
        assert Term.parse("s") == Term("s", 0)

    def test_malformed(self):
        with pytest.raises(ConfigError):
            Term.parse("s(+1)")

    def test_duplicate_terms_rejected(self):
        with pytest.raises(ConfigError):
            RegressionSpec("y", ("x", "x"))


class TestFitOls:
    def test_perfect_fit(self):
        x = np.arange(1.0, 11.0)
        d = _toy_dataset({"y": 2 * x, "x": x})
        fit = fit_ols(d, RegressionSpec("y", ("x",)))
        assert fit.coef("x") == pytest.approx(2.0, abs=1e-12)
        assert fit.coef("C") == pytest.approx(0.0, abs=1e-10)
        assert fit.r2 == pytest.approx(1.0, abs=1e-12)
        assert fit.ssr == pytest.approx(0.0, abs=1e-18)

    def test_us_baseline_coefficients(self, us_data):
        fit = fit_ols(us_data, RegressionSpec("it", ("inflation_gap", "output_gap", "const")))
        assert fit.n_obs == 117
        assert fit.coef("inflation_gap") == pytest.approx(0.906309, abs=5e-3)
        assert fit.coef("output_gap") == pytest.approx(0.454512, abs=5e-3)
        assert fit.coef("C") == pytest.approx(2.451161, abs=5e-3)
        assert fit.sample == (Quarter(1991, 1), Quarter(2020, 1))

    def test_residual_orthogonality(self):
        rng = np.random.default_rng(21)
        d = _random_dataset(rng)
        fit = fit_ols(d, RegressionSpec("y", ("x1", "x2", "x3")))
        e = np.asarray(fit.residuals.values)
        y = fit.y_vector
        assert np.max(np.abs(fit.x_matrix.T @ e)) < 1e-8 * np.linalg.norm(y)
        assert abs(e.mean()) < 1e-10  # constant included

    def test_fitted_plus_residuals_reproduce_y(self):
        rng = np.random.default_rng(22)
        d = _random_dataset(rng)
        fit = fit_ols(d, RegressionSpec("y", ("x1", "x2")))
        recon = fit.x_matrix @ fit.coefficients + np.asarray(fit.residuals.values)
        assert np.allclose(recon, fit.y_vector, rtol=1e-12, atol=1e-12)

    def test_adding_regressor_never_decreases_r2(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            d = _random_dataset(rng)
            small = fit_ols(d, RegressionSpec("y", ("x1",)))
            big = fit_ols(d, RegressionSpec("y", ("x1", "x2")))
            assert big.r2 >= small.r2 - 1e-12

    def test_durbin_watson_range(self):
        rng = np.random.default_rng(24)
        for _ in range(5):
            d = _random_dataset(rng)
            fit = fit_ols(d, RegressionSpec("y", ("x1", "x2")))
            assert 0.0 <= fit.durbin_watson <= 4.0

    def test_exact_rational_oracle_five_obs(self):
        # normal equations solved exactly in rational arithmetic
        rng = np.random.default_rng(25)
        for _ in range(5):
            Xi = rng.integers(-9, 10, size=(5, 2))
            yi = rng.integers(-9, 10, size=5)
            X = [[Fraction(1), Fraction(int(a)), Fraction(int(b))] for a, b in Xi]
            xtx = [[sum(r[i] * r[j] for r in X) for j in range(3)] for i in range(3)]
            xty = [sum(r[i] * Fraction(int(v)) for r, v in zip(X, yi)) for i in range(3)]
            # gaussian elimination in Fractions
            M = [row[:] + [rhs] for row, rhs in zip(xtx, xty)]
            for col in range(3):
                piv = next(r for r in range(col, 3) if M[r][col] != 0)
                M[col], M[piv] = M[piv], M[col]
                for r in range(3):
                    if r != col:
                        f = M[r][col] / M[col][col]
                        M[r] = [a - f * b for a, b in zip(M[r], M[col])]
            oracle = [float(M[i][3] / M[i][i]) for i in range(3)]

            d = _toy_dataset({
                "y": [float(v) for v in yi],
                "a": [float(v) for v in Xi[:, 0]],
                "b": [float(v) for v in Xi[:, 1]],
            })
            fit = fit_ols(d, RegressionSpec("y", ("const", "a", "b")))
            assert np.allclose(fit.coefficients, oracle, atol=1e-10)

    def test_information_criteria_identities(self, us_data):
        fit = fit_ols(us_data, RegressionSpec("it", ("inflation_gap", "output_gap", "const")))
        T, k, ll = fit.n_obs, fit.n_params, fit.log_likelihood
        assert fit.aic == pytest.approx((-2 * ll + 2 * k) / T, abs=1e-12)
        assert fit.schwarz == pytest.approx((-2 * ll + k * np.log(T)) / T, abs=1e-12)
        assert fit.hannan_quinn == pytest.approx(
            (-2 * ll + 2 * k * np.log(np.log(T))) / T, abs=1e-12
        )

    def test_covariance_symmetric_psd(self):
        rng = np.random.default_rng(26)
        d = _random_dataset(rng)
        fit = fit_ols(d, RegressionSpec("y", ("x1", "x2", "x3")))
        V = fit.covariance
        assert np.allclose(V, V.T, atol=1e-14)
        assert np.linalg.eigvalsh(V).min() >= -1e-10 * np.trace(V)

    def test_collinearity_names_column(self):
        x = np.arange(1.0, 21.0)
        d = _toy_dataset({"y": 2 * x, "x": x, "x2": 3 * x})
        with pytest.raises(CollinearityError, match="x2"):
            fit_ols(d, RegressionSpec("y", ("x", "x2"), include_constant=False))

    def test_sample_too_small(self):
        d = _toy_dataset({"y": [1.0, 2.0], "x": [1.0, 3.0]})
        with pytest.raises(SampleError):
            fit_ols(d, RegressionSpec("y", ("x",)))

    def test_explicit_sample_honored(self, uk_data):
        spec = RegressionSpec(
            "it", ("const", "inflation_gap", "output_gap"),
            sample=(Quarter(1991, 1), Quarter(2020, 1)),
        )
        assert fit_ols(uk_data, spec).n_obs == 117

    def test_constant_position_follows_spec_order(self, us_data):
        head = fit_ols(us_data, RegressionSpec("it", ("const", "inflation_gap")))
        tail = fit_ols(us_data, RegressionSpec("it", ("inflation_gap", "const")))
        assert head.labels == ("C", "inflation_gap")
        assert tail.labels == ("inflation_gap", "C")
        assert head.coef("C") == pytest.approx(tail.coef("C"), abs=1e-12)

    def test_hac_covariance_leaves_point_estimates_unchanged(self, us_data):
        spec_c = RegressionSpec("it", ("inflation_gap", "output_gap", "s", "const"))
        spec_h = RegressionSpec(
            "it", ("inflation_gap", "output_gap", "s", "const"), covariance=HacConfig()
        )
        a, b = fit_ols(us_data, spec_c), fit_ols(us_data, spec_h)
        assert np.allclose(a.coefficients, b.coefficients, atol=0)
        assert not np.allclose(a.std_errors, b.std_errors)
