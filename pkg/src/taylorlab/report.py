"""Rendering of estimation results and comparison against golden tables."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .diagnostics import TestReport
from .errors import ConfigError
from .gmm import GmmResult
from .ols import FitResult


def _fmt_p(p: float) -> str:
    # printed convention: tiny p-values render as 0.0000
    return "0.0000" if p < 5e-5 else f"{p:.4f}"


def flatten(result) -> dict:
    """Flat label -> value view of a result, used for golden lookups."""
    if isinstance(result, (FitResult, GmmResult)):
        out = {}
        for i, lab in enumerate(result.labels):
            out[f"coef:{lab}"] = float(result.coefficients[i])
            out[f"se:{lab}"] = float(result.std_errors[i])
            out[f"t:{lab}"] = float(result.t_stats[i])
            out[f"p:{lab}"] = float(result.p_values[i])
        for key in (
            "r2", "adj_r2", "se_regression", "ssr", "durbin_watson",
            "mean_dep", "sd_dep", "n_obs", "n_params",
        ):
            out[key] = float(getattr(result, key))
        if isinstance(result, FitResult):
            for key in ("log_likelihood", "f_statistic", "f_prob", "aic",
                        "schwarz", "hannan_quinn"):
                out[key] = float(getattr(result, key))
        else:
            out["j_statistic"] = result.j_statistic
            out["j_prob"] = result.j_prob
            out["instrument_rank"] = float(result.instrument_rank)
        return out
    if isinstance(result, TestReport):
        out = {}
        for s in result.statistics:
            out[f"stat:{s.form}"] = s.value
            out[f"p:{s.form}"] = s.p
        for key, value in getattr(result, "details", ()) or ():
            out[key] = value
        return out
    raise ConfigError(f"cannot flatten object of type {type(result).__name__}")


def to_dict(result) -> dict:
    """Full-precision structured view for JSON output."""
    if isinstance(result, (FitResult, GmmResult)):
        d = {
            "kind": "gmm" if isinstance(result, GmmResult) else "fit",
            "sample": [str(result.sample[0]), str(result.sample[1])],
            "labels": list(result.labels),
            "coefficients": [float(v) for v in result.coefficients],
            "std_errors": [float(v) for v in result.std_errors],
            "t_stats": [float(v) for v in result.t_stats],
            "p_values": [float(v) for v in result.p_values],
        }
        d.update(flatten(result))
        return d
    if isinstance(result, TestReport):
        return {
            "kind": "test",
            "name": result.name,
            "null_hypothesis": result.null_hypothesis,
            "statistics": [
                {"form": s.form, "value": s.value, "df": list(s.df), "p": s.p}
                for s in result.statistics
            ],
        }
    raise ConfigError(f"cannot render object of type {type(result).__name__}")


def render_table(result, fmt: str = "text") -> str:
    """Render a fit, GMM fit or test report as text or JSON."""
    if fmt == "json":
        return json.dumps(to_dict(result), sort_keys=True, allow_nan=True)
    if fmt != "text":
        raise ConfigError(f"unknown output format {fmt!r}")

    if isinstance(result, (FitResult, GmmResult)):
        lines = [
            f"Sample: {result.sample[0]} {result.sample[1]}",
            f"Included observations: {result.n_obs}",
            "",
            f"{'Variable':<18}{'Coefficient':>14}{'Std. Error':>14}"
            f"{'t-Statistic':>14}{'Prob.':>10}",
        ]
        for i, lab in enumerate(result.labels):
            lines.append(
                f"{lab:<18}{result.coefficients[i]:>14.6f}{result.std_errors[i]:>14.6f}"
                f"{result.t_stats[i]:>14.6f}{_fmt_p(result.p_values[i]):>10}"
            )
        lines.append("")
        block = [
            ("R-squared", result.r2),
            ("Adjusted R-squared", result.adj_r2),
            ("S.E. of regression", result.se_regression),
            ("Sum squared resid", result.ssr),
            ("Durbin-Watson stat", result.durbin_watson),
            ("Mean dependent var", result.mean_dep),
            ("S.D. dependent var", result.sd_dep),
        ]
        if isinstance(result, FitResult):
            block += [
                ("Log likelihood", result.log_likelihood),
                ("Akaike info criterion", result.aic),
                ("Schwarz criterion", result.schwarz),
                ("Hannan-Quinn criter.", result.hannan_quinn),
                ("F-statistic", result.f_statistic),
                ("Prob(F-statistic)", result.f_prob),
            ]
        else:
            block += [
                ("J-statistic", result.j_statistic),
                ("Prob(J-statistic)", result.j_prob),
                ("Instrument rank", float(result.instrument_rank)),
            ]
        for label, value in block:
            if math.isnan(value):
                continue
            text = _fmt_p(value) if label.startswith("Prob") else f"{value:.6f}"
            lines.append(f"{label:<24}{text:>14}")
        return "\n".join(lines) + "\n"

    if isinstance(result, TestReport):
        lines = [result.name, f"Null hypothesis: {result.null_hypothesis}", ""]
        lines.append(f"{'Statistic':<12}{'Value':>14}{'df':>12}{'Prob.':>10}")
        for s in result.statistics:
            df = ",".join(str(v) for v in s.df)
            lines.append(f"{s.form:<12}{s.value:>14.6f}{df:>12}{_fmt_p(s.p):>10}")
        for key, value in getattr(result, "details", ()) or ():
            lines.append(f"{key:<26}{value:>14.6f}")
        return "\n".join(lines) + "\n"

    raise ConfigError(f"cannot render object of type {type(result).__name__}")


@dataclass(frozen=True)
class GoldenCell:
    expected: float
    abs_tol: float | None
    rel_tol: float | None

    def __post_init__(self):
        if self.abs_tol is None and self.rel_tol is None:
            raise ConfigError("golden cell needs at least one tolerance")


@dataclass(frozen=True)
class GoldenTable:
    table_id: int
    country: str
    cells: dict[str, GoldenCell]


@dataclass(frozen=True)
class CellDiff:
    label: str
    observed: float
    expected: float
    abs_tol: float | None
    rel_tol: float | None
    passed: bool


@dataclass(frozen=True)
class GoldenDiff:
    table_id: int
    rows: tuple[CellDiff, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def load_golden(table_id: int) -> GoldenTable:
    """Load a shipped golden table by id (1..17)."""
    path = resources.files("taylorlab.golden").joinpath(f"table{table_id:02d}.json")
    try:
        payload = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"no golden table with id {table_id}") from None
    cells = {
        label: GoldenCell(v[0], v[1], v[2]) for label, v in payload["cells"].items()
    }
    return GoldenTable(payload["table_id"], payload["country"], cells)


def compare_golden(result, golden: GoldenTable) -> GoldenDiff:
    """Per-cell diff of a result against its golden table."""
    values = flatten(result)
    rows = []
    for label, cell in sorted(golden.cells.items()):
        if label not in values:
            raise ConfigError(
                f"golden table {golden.table_id} labels unknown field {label!r}"
            )
        obs = values[label]
        err = abs(obs - cell.expected)
        ok = False
        if cell.abs_tol is not None and err <= cell.abs_tol:
            ok = True
        if cell.rel_tol is not None and err <= cell.rel_tol * abs(cell.expected):
            ok = True
        rows.append(CellDiff(label, obs, cell.expected, cell.abs_tol, cell.rel_tol, ok))
    return GoldenDiff(golden.table_id, tuple(rows))


def render_diff(diff: GoldenDiff) -> str:
    lines = [
        f"Table {diff.table_id}: {'PASS' if diff.passed else 'FAIL'} "
        f"({sum(r.passed for r in diff.rows)}/{len(diff.rows)} cells)"
    ]
    for r in diff.rows:
        mark = "ok  " if r.passed else "FAIL"
        lines.append(
            f"  {mark} {r.label:<24} observed {r.observed:>14.6f}"
            f"  expected {r.expected:>14.6f}"
        )
    return "\n".join(lines) + "\n"
