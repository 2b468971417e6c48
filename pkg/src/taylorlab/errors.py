"""Exception types shared across the package."""


class TaylorLabError(Exception):
    """Base class for all package errors."""


class DomainError(TaylorLabError, ValueError):
    """A value lies outside the mathematical domain of an operation."""


class SampleError(TaylorLabError):
    """A requested sample is empty or cannot be covered by the data."""


class CollinearityError(TaylorLabError):
    """The design (or instrument) matrix is rank deficient."""


class ConfigError(TaylorLabError):
    """Invalid or inconsistent configuration."""


class IngestError(TaylorLabError):
    """Malformed input data (CSV parsing, remote payload decoding)."""


class FetchError(TaylorLabError):
    """Remote retrieval failed and no cached copy was available."""
