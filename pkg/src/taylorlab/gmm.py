"""Linear instrumental-variables GMM with HAC moment weighting.

Estimation starts from two-stage least squares (weighting (Z'Z/T)^-1),
then performs a fixed number of weight updates: each update rebuilds the
Bartlett-kernel long-run covariance of the moment series z_t * e_t from
the current residuals and re-solves the quadratic problem. The J
statistic is evaluated with the weighting matrix the final coefficients
were estimated under; the reported coefficient covariance re-weights with
the final residuals, which is the convention that reproduces the
published standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dist
from .errors import CollinearityError, ConfigError, SampleError
from .hac import HacConfig, default_bandwidth, long_run_cov
from .ols import CONST, RegressionSpec, Term, _coerce_terms, build_design, summarize
from .series import Dataset, Quarter


@dataclass(frozen=True)
class GmmSpec:
    base: RegressionSpec
    instruments: tuple[Term, ...]
    add_constant_instrument: bool = True
    weighting: str | HacConfig = HacConfig()
    weight_updates: int = 1

    def __post_init__(self):
        inst = list(_coerce_terms(self.instruments))
        if self.add_constant_instrument and not any(t.name == CONST for t in inst):
            inst.insert(0, Term(CONST))
        object.__setattr__(self, "instruments", tuple(inst))
        if len(inst) < len(self.base.regressors):
            raise ConfigError(
                f"under-identified: {len(inst)} instruments for "
                f"{len(self.base.regressors)} parameters"
            )
        if isinstance(self.weighting, str) and self.weighting != "classical":
            raise ConfigError(f"unknown weighting {self.weighting!r}")
        if self.weight_updates < 0:
            raise ConfigError("weight_updates must be non-negative")


@dataclass(frozen=True)
class GmmResult:
    spec: GmmSpec
    labels: tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    covariance: np.ndarray
    j_statistic: float
    j_prob: float
    instrument_rank: int
    sample: tuple[Quarter, Quarter]
    n_obs: int
    n_params: int
    r2: float
    adj_r2: float
    se_regression: float
    ssr: float
    durbin_watson: float
    mean_dep: float
    sd_dep: float

    def coef(self, label: str) -> float:
        return self.coefficients[self.labels.index(label)]


def _solve_gmm(X, Z, y, W):
    A = X.T @ Z @ W @ Z.T @ X
    return np.linalg.solve(A, X.T @ Z @ W @ Z.T @ y), A


def fit_linear_gmm(d: Dataset, spec: GmmSpec) -> GmmResult:
    """Estimate a linear model by instrumented GMM."""
    base = spec.base
    all_terms = [base.dependent, *base.regressors, *spec.instruments]
    if base.sample is None:
        from .ols import _auto_sample

        sample = _auto_sample(d, all_terms)
        base = RegressionSpec(
            base.dependent, base.regressors, base.include_constant, sample, base.covariance
        )
    y, X, sample = build_design(d, base)
    T, k = X.shape
    start, end = sample
    zcols = [
        np.ones(T) if t.name == CONST else t.resolve(d).window(start, end)
        for t in spec.instruments
    ]
    Z = np.column_stack(zcols)
    rank = np.linalg.matrix_rank(Z)
    if rank < Z.shape[1]:
        raise CollinearityError("instrument matrix is rank deficient")

    if isinstance(spec.weighting, HacConfig):
        m = spec.weighting.bandwidth or default_bandwidth(T)
        df_adjust = spec.weighting.df_adjust
        moment_cov = lambda e: long_run_cov(Z * e[:, None], m)
    else:  # classical: residual variance times Z'Z/T
        df_adjust = True
        moment_cov = lambda e: float(e @ e) / T * (Z.T @ Z) / T

    # step 0: two-stage least squares
    W = np.linalg.inv(Z.T @ Z / T)
    beta, _ = _solve_gmm(X, Z, y, W)
    for _ in range(spec.weight_updates):
        e = y - X @ beta
        W = np.linalg.inv(moment_cov(e))
        beta, _ = _solve_gmm(X, Z, y, W)

    e = y - X @ beta
    gbar = Z.T @ e / T
    j_stat = float(T * gbar @ W @ gbar)
    over_id = Z.shape[1] - k
    j_prob = dist.chi2_sf(max(j_stat, 0.0), over_id) if over_id > 0 else math.nan

    # reported covariance: re-weight with the final residuals
    W_cov = np.linalg.inv(moment_cov(e))
    _, A = _solve_gmm(X, Z, y, W_cov)
    V = np.linalg.inv(A) * T
    if df_adjust:
        V *= T / (T - k)
    V = 0.5 * (V + V.T)

    se = np.sqrt(np.diag(V))
    t_stats = beta / se
    p_values = np.array([dist.student_t_sf2(t, T - k) for t in t_stats])
    stats = summarize(y, X, beta, base.has_constant)
    stats.pop("residual_vector")
    stats.pop("log_likelihood")
    return GmmResult(
        spec=spec,
        labels=tuple(t.label for t in base.regressors),
        coefficients=beta,
        std_errors=se,
        t_stats=t_stats,
        p_values=p_values,
        covariance=V,
        j_statistic=j_stat,
        j_prob=j_prob,
        instrument_rank=int(rank),
        sample=sample,
        n_obs=T,
        n_params=k,
        **stats,
    )
