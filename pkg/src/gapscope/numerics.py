"""Cancellation-free kernels for n-th roots near 1 and compensated sums.

Quantities of the form s^{1/n} land within ~1e-5 of 1 at n ~ 10^6, where
raw doubles keep only ~11 meaningful digits. Everything here therefore
works in "frac" form (value - 1) via log/log1p/expm1 rearrangements and
never exponentiates a value near 1 directly.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, MonotonicityError


@dataclass(frozen=True)
class LogRoot:
    """n-th root of s carried as (log s)/n and expm1 of it.

    frac == s^{1/n} - 1 to full double precision; the root itself is
    1 + frac.
    """

    n: int
    log_value: float
    frac: float

    @property
    def root(self):
        return 1.0 + self.frac


def log_root(s_n, n):
    """LogRoot of s_n^{1/n} for s_n >= 1, n >= 1."""
    if n < 1:
        raise DomainError(f"root index must be >= 1, got {n}")
    if s_n < 1:
        raise DomainError(f"sequence value must be >= 1, got {s_n}")
    lv = math.log(s_n) / n
    return LogRoot(n=int(n), log_value=lv, frac=math.expm1(lv))


def ratio_minus_one(n, s_n, s_next):
    """s_n^{1/n} / s_next^{1/(n+1)} - 1, computed cancellation-free.

    Uses expm1(d) with d = (ln s_n - n*log1p((s_next-s_n)/s_n)) / (n(n+1)),
    which is algebraically ln s_n/n - ln s_next/(n+1) with the ~5-digit
    cancellation between the raw terms eliminated. The sign of the result
    equals the sign of d.
    """
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    if s_next <= s_n:
        raise MonotonicityError(f"s_next={s_next} must exceed s_n={s_n}")
    if s_n < 2:
        raise DomainError(f"s_n must be >= 2, got {s_n}")
    sn = float(s_n)
    snext = float(s_next)
    d = (math.log(sn) - n * math.log1p((snext - sn) / sn)) / (n * (n + 1.0))
    return math.expm1(d)


def compensated_sum(values):
    """Neumaier-compensated sum of a finite stream, in stream order.

    The error is bounded by ~2*eps*sum(|x|) independent of length at the
    scales this package sums. float64 arrays go through the kernel
    backend; any other iterable is summed here (identical algorithm,
    identical result).
    """
    if isinstance(values, np.ndarray) and values.dtype == np.float64:
        return kernels.neumaier_sum(np.ascontiguousarray(values))
    s = 0.0
    c = 0.0
    for x in values:
        x = float(x)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c
