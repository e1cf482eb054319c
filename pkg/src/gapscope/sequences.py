"""Sequences under study and their decay-exponent series.

Three families share one interface: the naturals, the primes, and
non-negative linear combinations alpha*p_r + beta*r. The decay exponent
of a sequence at index n is -ln(f(n)/f(n+1) - 1)/ln(n) for f(n) =
s_n^{1/n}; it is undefined when f(n) <= f(n+1).
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import ConfigurationError, DomainError
from .numerics import ratio_minus_one


@dataclass(frozen=True)
class SequenceKind:
    """Selector for the sequence under study.

    variant is one of "naturals", "primes", "combo"; combo terms are
    alpha*p_r + beta*r with alpha, beta >= 0 and not both zero, which
    keeps the sequence strictly increasing.
    """

    variant: str
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.variant not in ("naturals", "primes", "combo"):
            raise ConfigurationError(f"unknown sequence variant {self.variant!r}")
        if self.variant == "combo":
            if self.alpha < 0 or self.beta < 0:
                raise ConfigurationError("combo coefficients must be non-negative")
            if self.alpha == 0 and self.beta == 0:
                raise ConfigurationError("combo coefficients must not both be zero")

    @property
    def needs_table(self):
        return self.variant == "primes" or (self.variant == "combo" and self.alpha != 0)

    def __str__(self):
        if self.variant == "combo":
            return f"combo:{self.alpha:g},{self.beta:g}"
        return self.variant


NATURALS = SequenceKind("naturals")
PRIMES = SequenceKind("primes")


def combo(alpha, beta):
    return SequenceKind("combo", alpha=float(alpha), beta=float(beta))


def parse_kind(text):
    """Parse a CLI kind token: "naturals", "primes", or "combo:A,B"."""
    if text in ("naturals", "primes"):
        return SequenceKind(text)
    if text.startswith("combo:"):
        parts = text[len("combo:"):].split(",")
        if len(parts) != 2:
            raise ConfigurationError(f"combo spec {text!r} is not combo:A,B")
        try:
            return combo(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise ConfigurationError(f"bad combo coefficients in {text!r}") from exc
    raise ConfigurationError(f"unknown sequence kind {text!r}")


def _require_table(kind, table, r):
    if table is None:
        raise ConfigurationError(f"kind {kind} requires a prime table")
    if r > table.count:
        raise IndexError(f"index {r} outside table of {table.count} primes")


def term(kind, r, table=None):
    """s_r for the given kind (1-based)."""
    if r < 1:
        raise IndexError(f"sequence index must be >= 1, got {r}")
    if kind.variant == "naturals":
        return float(r)
    if kind.variant == "primes":
        _require_table(kind, table, r)
        return float(table.prime(r))
    if kind.alpha != 0:
        _require_table(kind, table, r)
        p = float(table.prime(r))
    else:
        p = 0.0
    return kind.alpha * p + kind.beta * float(r)


def terms_array(kind, n, table=None):
    """s_1..s_n as a float64 array (exact for integer-valued kinds)."""
    if n < 1:
        raise IndexError(f"sequence length must be >= 1, got {n}")
    idx = np.arange(1, n + 1, dtype=np.float64)
    if kind.variant == "naturals":
        return idx
    if kind.variant == "primes":
        _require_table(kind, table, n)
        return table.values_f64[:n].copy()
    if kind.alpha != 0:
        _require_table(kind, table, n)
        return kind.alpha * table.values_f64[:n] + kind.beta * idx
    return kind.beta * idx


def exponent(kind, n, table=None):
    """Decay exponent at n, or None when f(n) <= f(n+1); requires n >= 2."""
    if n < 2:
        raise DomainError(f"exponent needs n >= 2 (ln 1 = 0), got {n}")
    s_n = term(kind, n, table)
    s_next = term(kind, n + 1, table)
    frac = ratio_minus_one(n, s_n, s_next)
    if frac <= 0:
        return None
    return -math.log(frac) / math.log(n)


def exponent_asymptote(n):
    """Leading-order drift of the exponent: 2 - ln(ln n)/ln(n), n >= 3."""
    if n < 3:
        raise DomainError(f"asymptote needs n >= 3, got {n}")
    ln = math.log(n)
    return 2.0 - math.log(ln) / ln


@dataclass(frozen=True, eq=False)
class ExponentSeries:
    """Exponent values for n = start..stop with explicit undefined flags.

    values[i] is the exponent at n = start+i, NaN when undefined;
    fracs[i] is the corresponding f(n)/f(n+1) - 1.
    """

    kind: SequenceKind
    start: int
    fracs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.fracs.setflags(write=False)
        self.values.setflags(write=False)

    def __len__(self):
        return int(self.values.size)

    @property
    def stop(self):
        """Largest index in the series (inclusive)."""
        return self.start + len(self) - 1

    @cached_property
    def ns(self):
        return np.arange(self.start, self.stop + 1, dtype=np.int64)

    def index_of(self, n):
        if not self.start <= n <= self.stop:
            raise IndexError(f"n={n} outside series [{self.start}, {self.stop}]")
        return n - self.start

    def value(self, n):
        """Exponent at n, or None when undefined."""
        v = float(self.values[self.index_of(n)])
        return None if math.isnan(v) else v

    def frac(self, n):
        return float(self.fracs[self.index_of(n)])

    def defined_mask(self):
        return ~np.isnan(self.values)


def build_series(kind, start, stop, table=None):
    """ExponentSeries over n in [start, stop] (inclusive)."""
    if start < 2:
        raise DomainError(f"series start must be >= 2, got {start}")
    if stop < start:
        raise DomainError(f"empty series range [{start}, {stop}]")
    s = terms_array(kind, stop + 1, table)
    fracs, values = kernels.ratio_series(s, start)
    return ExponentSeries(kind=kind, start=start, fracs=fracs, values=values)
