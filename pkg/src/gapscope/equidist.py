"""Quantitative equidistribution diagnostics for the ratio sets {s_r/s_n}.

For a strictly increasing sequence, the points s_1/s_n, ..., s_n/s_n lie
in (0, 1]; this module measures how uniformly they fill the interval:
Riemann-sum convergence against closed-form integrals, exact star
discrepancy, Weyl exponential-sum moduli, and the s_[nt]/s_n scaling
ratio.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigurationError, DomainError
from .sequences import terms_array

# test functions with closed-form integrals over [0,1]; "root_n" is
# x -> x^{1/n} with integral n/(n+1)
_TEST_FNS = {
    "one": (kernels.FN_ONE, lambda n: 1.0),
    "identity": (kernels.FN_IDENTITY, lambda n: 0.5),
    "square": (kernels.FN_SQUARE, lambda n: 1.0 / 3.0),
    "root_n": (kernels.FN_ROOT, lambda n: n / (n + 1.0)),
    "exp_cos": (kernels.FN_COS, lambda n: 0.0),
}

TEST_FN_NAMES = tuple(_TEST_FNS)


@dataclass(frozen=True)
class RiemannCheck:
    test_fn: str
    sum: float
    integral: float
    abs_error: float


@dataclass(frozen=True, eq=False)
class DiscrepancyReport:
    """Equidistribution diagnostics for one (kind, n)."""

    kind: object
    n: int
    star_discrepancy: float
    weyl: tuple  # of (h, modulus)
    riemann: tuple  # of RiemannCheck


def ratios(kind, n, table=None):
    """The ratio multiset {s_r/s_n : r <= n} as a float64 array."""
    if n < 2:
        raise DomainError(f"ratio set needs n >= 2, got {n}")
    s = terms_array(kind, n, table)
    return s / s[-1]


def riemann_sum_check(kind, n, test_fn, table=None):
    """Compare (1/n)·sum f(s_r/s_n) with the closed-form integral of f."""
    try:
        fn_id, integral_of = _TEST_FNS[test_fn]
    except KeyError:
        raise ConfigurationError(
            f"unknown test function {test_fn!r}; choose from {TEST_FN_NAMES}") from None
    x = ratios(kind, n, table)
    aux = 1.0 / n if fn_id == kernels.FN_ROOT else 0.0
    total = kernels.riemann_sum(x, fn_id, aux)
    mean = total / n
    integral = integral_of(n)
    return RiemannCheck(test_fn=test_fn, sum=mean, integral=integral,
                        abs_error=abs(mean - integral))


def star_discrepancy(kind, n, table=None):
    """Exact star discrepancy D*_n of the ratio multiset.

    Sorted-sample formula D* = max_i max(i/n - x_(i), x_(i) - (i-1)/n).
    The ratios of an increasing sequence are already sorted; np.sort is
    a cheap no-op pass that keeps the formula honest for any input.
    """
    x = np.sort(ratios(kind, n, table))
    return kernels.star_discrepancy_sorted(x)


def weyl_sum(kind, n, h, table=None):
    """Modulus of the order-h normalized Weyl sum of the ratio multiset."""
    if h < 1:
        raise DomainError(f"Weyl order must be >= 1, got {h}")
    return kernels.weyl_modulus(ratios(kind, n, table), h)


def scaling_limit(kind, n, t, table=None):
    """s_[nt] / s_n for t in (0, 1]."""
    m = int(n * t)
    if m < 1:
        raise DomainError(f"floor(n*t) = {m} < 1 for n={n}, t={t}")
    if m > n:
        raise DomainError(f"t={t} exceeds 1")
    s = terms_array(kind, n, table)
    return float(s[m - 1] / s[n - 1])


# canonical t grid for scaling reports; t ranges over all of [0,1] in the
# limit statement, which is not finitely checkable
T_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def scaling_profile(kind, n, table=None, ts=T_GRID):
    """(t, s_[nt]/s_n) pairs over the standard t grid."""
    s = terms_array(kind, n, table)
    out = []
    for t in ts:
        m = int(n * t)
        if m < 1:
            raise DomainError(f"floor(n*t) = {m} < 1 for n={n}, t={t}")
        out.append((t, float(s[m - 1] / s[n - 1])))
    return out


def discrepancy_report(kind, n, table=None, hs=(1, 2), test_fns=("identity",)):
    """DiscrepancyReport bundling the three meters at one (kind, n)."""
    x = ratios(kind, n, table)
    xs = np.sort(x)
    disc = kernels.star_discrepancy_sorted(xs)
    weyl = tuple((h, kernels.weyl_modulus(x, h)) for h in hs)
    checks = []
    for name in test_fns:
        fn_id, integral_of = _TEST_FNS[name]
        aux = 1.0 / n if fn_id == kernels.FN_ROOT else 0.0
        mean = kernels.riemann_sum(x, fn_id, aux) / n
        integral = integral_of(n)
        checks.append(RiemannCheck(name, mean, integral, abs(mean - integral)))
    return DiscrepancyReport(kind=kind, n=n, star_discrepancy=disc,
                             weyl=weyl, riemann=tuple(checks))
