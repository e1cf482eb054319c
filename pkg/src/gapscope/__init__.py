"""gapscope: prime-gap inequality scans and pseudo-equidistribution
diagnostics at desk scale (first 2^20 primes and beyond).

The hot numeric loops live in a compiled extension with a pure-Python
twin; `gapscope.kernels.BACKEND` names the one in use.
"""

__version__ = "0.1.0"

from .errors import (CacheCorruptionError, CacheError, CacheFormatError,
                     CapacityError, ConfigurationError, DomainError,
                     EmptySampleError, GapscopeError, MonotonicityError)
from .numerics import LogRoot, compensated_sum, log_root, ratio_minus_one
from .prime_engine import (PrimeTable, gap, load_cache, primes_first,
                           save_cache)
from .sequences import (NATURALS, PRIMES, ExponentSeries, SequenceKind,
                        build_series, combo, exponent, exponent_asymptote,
                        term)
from .stats import SampleStats, summarize, windowed_summaries

__all__ = [
    "__version__",
    "CacheCorruptionError", "CacheError", "CacheFormatError", "CapacityError",
    "ConfigurationError", "DomainError", "EmptySampleError", "GapscopeError",
    "MonotonicityError",
    "LogRoot", "compensated_sum", "log_root", "ratio_minus_one",
    "PrimeTable", "gap", "load_cache", "primes_first", "save_cache",
    "NATURALS", "PRIMES", "ExponentSeries", "SequenceKind", "build_series",
    "combo", "exponent", "exponent_asymptote", "term",
    "SampleStats", "summarize", "windowed_summaries",
]
