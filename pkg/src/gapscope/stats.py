"""Exact summary statistics for exponent series.

Means are compensated sums over the defined entries in index order;
medians use exact selection (even counts average the two central order
statistics, no interpolation). Undefined entries are excluded but always
counted, so a report can never silently hide them.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, EmptySampleError


@dataclass(frozen=True)
class SampleStats:
    count: int
    defined_count: int
    mean: float
    median: float
    min: float
    max: float


def exact_median(values):
    """Median by selection; even count -> midpoint of the central pair."""
    m = values.size
    if m == 0:
        raise EmptySampleError("median of an empty sample")
    k = (m - 1) // 2
    if m % 2:
        return float(np.partition(values, k)[k])
    part = np.partition(values, [k, k + 1])
    return (float(part[k]) + float(part[k + 1])) / 2.0


def _stats_of(values, count):
    defined = values[~np.isnan(values)]
    if defined.size == 0:
        raise EmptySampleError("no defined entries in the requested range")
    mean = kernels.neumaier_sum(defined) / defined.size
    return SampleStats(count=int(count), defined_count=int(defined.size),
                       mean=mean, median=exact_median(defined),
                       min=float(np.min(defined)), max=float(np.max(defined)))


def summarize(series, rng=None):
    """SampleStats of an ExponentSeries over [start, stop] (inclusive).

    rng defaults to the full series range.
    """
    if rng is None:
        start, stop = series.start, series.stop
    else:
        start, stop = rng
    if stop < start:
        raise DomainError(f"empty range [{start}, {stop}]")
    lo = series.index_of(start)
    hi = series.index_of(stop) + 1
    return _stats_of(series.values[lo:hi], hi - lo)


def windowed_summaries(series, window_size):
    """Per-window SampleStats over disjoint consecutive windows.

    A window_size larger than the series yields one full-range window.
    """
    if window_size < (1 << 10):
        raise DomainError(f"window_size must be >= 1024, got {window_size}")
    n = len(series)
    out = []
    for lo in range(0, n, window_size):
        hi = min(lo + window_size, n)
        out.append(_stats_of(series.values[lo:hi], hi - lo))
    return out
