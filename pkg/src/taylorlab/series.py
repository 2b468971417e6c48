"""Calendar-aware quarterly series: containers, lagging, logs, sample alignment.

All observation containers are immutable; every operation returns a new
object. A series is a contiguous run of quarterly values anchored at a
start quarter, so observation ``k`` always belongs to ``start + k``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SampleError

_QUARTER_RE = re.compile(r"^(\d{4})[-: ]?Q([1-4])$", re.IGNORECASE)


@dataclass(frozen=True, order=True)
class Quarter:
    """A calendar quarter, totally ordered by (year, q)."""

    year: int
    q: int

    def __post_init__(self):
        if self.q not in (1, 2, 3, 4):
            raise DomainError(f"quarter number must be 1..4, got {self.q}")

    @classmethod
    def parse(cls, text: str) -> "Quarter":
        """Parse forms like '1991Q1', '1991-Q1' or '1991:Q1'."""
        m = _QUARTER_RE.match(text.strip())
        if not m:
            raise DomainError(f"cannot parse quarter {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def index(self) -> int:
        """Position on the absolute quarter axis (year 0 Q1 = 0)."""
        return self.year * 4 + (self.q - 1)

    def offset(self, k: int) -> "Quarter":
        i = self.index + k
        return Quarter(i // 4, i % 4 + 1)

    def __sub__(self, other: "Quarter") -> int:
        return self.index - other.index

    def __str__(self) -> str:
        return f"{self.year}Q{self.q}"


def quarter_range(start: Quarter, end: Quarter) -> list[Quarter]:
    """All quarters from start to end inclusive; empty if end < start."""
    return [start.offset(k) for k in range(end - start + 1)]


@dataclass(frozen=True)
class Series:
    """Contiguous quarterly observations with no internal gaps."""

    name: str
    start: Quarter
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) == 0:
            raise SampleError(f"series {self.name!r} must hold at least one value")
        for k, v in enumerate(self.values):
            if not math.isfinite(v):
                raise DomainError(
                    f"series {self.name!r} has non-finite value at {self.start.offset(k)}"
                )

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> Quarter:
        return self.start.offset(len(self.values) - 1)

    def covers(self, start: Quarter, end: Quarter) -> bool:
        return self.start <= start and end <= self.end

    def at(self, quarter: Quarter) -> float:
        if not self.covers(quarter, quarter):
            raise SampleError(
                f"series {self.name!r} spans {self.start}..{self.end}, "
                f"no observation at {quarter}"
            )
        return self.values[quarter - self.start]

    def window(self, start: Quarter, end: Quarter) -> np.ndarray:
        """Observations over [start, end] as a float array."""
        if not self.covers(start, end):
            raise SampleError(
                f"series {self.name!r} spans {self.start}..{self.end}, "
                f"cannot cover {start}..{end}"
            )
        lo = start - self.start
        return np.asarray(self.values[lo : lo + (end - start) + 1])

    def renamed(self, name: str) -> "Series":
        return Series(name, self.start, self.values)


def lag(s: Series, k: int) -> Series:
    """Shift a series back by k quarters on the common calendar.

    The result at quarter t equals s at t-k; the first k observations of
    the original calendar have no lagged counterpart and are dropped.
    """
    if k < 0:
        raise DomainError(f"lag must be non-negative, got {k}")
    if k == 0:
        return s
    if k >= len(s):
        raise SampleError(
            f"lag {k} of series {s.name!r} (length {len(s)}) leaves an empty sample"
        )
    return Series(f"{s.name}(-{k})", s.start.offset(k), s.values[: len(s) - k])


def natural_log(s: Series) -> Series:
    """Elementwise natural log; every value must be strictly positive."""
    for i, v in enumerate(s.values):
        if v <= 0:
            raise DomainError(
                f"log of series {s.name!r} undefined at {s.start.offset(i)}: value {v}"
            )
    return Series(f"log_{s.name}", s.start, tuple(math.log(v) for v in s.values))


CORE_SERIES = ("real_gdp", "cpi", "interest_rate", "stock_index")


@dataclass(frozen=True)
class Dataset:
    """Named collection of series for one country.

    ``span`` is the intersection of the member series' calendars; it is
    the widest range over which every series has an observation.
    """

    country: str
    series: dict[str, Series] = field(default_factory=dict)

    def __post_init__(self):
        if not self.series:
            raise SampleError("dataset needs at least one series")
        start = max(s.start for s in self.series.values())
        end = min(s.end for s in self.series.values())
        if end < start:
            raise SampleError(
                f"series of dataset {self.country!r} share no common quarter"
            )

    @property
    def span(self) -> tuple[Quarter, Quarter]:
        return (
            max(s.start for s in self.series.values()),
            min(s.end for s in self.series.values()),
        )

    def require(self, *names: str) -> None:
        missing = [n for n in names if n not in self.series]
        if missing:
            raise SampleError(
                f"dataset {self.country!r} is missing series: {', '.join(missing)}"
            )

    def require_core(self) -> None:
        self.require(*CORE_SERIES)

    def with_series(self, *added: Series) -> "Dataset":
        merged = dict(self.series)
        for s in added:
            merged[s.name] = s
        return Dataset(self.country, merged)

    def __getitem__(self, name: str) -> Series:
        try:
            return self.series[name]
        except KeyError:
            raise SampleError(
                f"dataset {self.country!r} has no series {name!r}"
            ) from None


def align_sample(
    d: Dataset, names: list[str], start: Quarter, end: Quarter
) -> np.ndarray:
    """Rectangular observation matrix over [start, end].

    Rows are quarters, columns follow ``names``. Raises a sample error
    naming the maximal feasible range if any series falls short.
    """
    if end < start:
        raise SampleError(f"empty sample range {start}..{end}")
    for name in names:
        d[name]  # existence check with a series-level message
    feas_start = max(d[n].start for n in names)
    feas_end = min(d[n].end for n in names)
    short = [n for n in names if not d[n].covers(start, end)]
    if short:
        raise SampleError(
            f"series {', '.join(repr(n) for n in short)} cannot cover "
            f"{start}..{end}; maximal feasible range is {feas_start}..{feas_end}"
        )
    return np.column_stack([d[n].window(start, end) for n in names])
