"""Finite-range scans of every gap-bound inequality and asymptotic identity.

Each check reports violations, an extremal witness (the index where the
inequality failed hardest or came closest to failing), and the smallest
threshold N past which all tested indices comply. Root-form inequalities
are evaluated in frac form via the cancellation-free ratio kernel; the
direct forms differ from 1 by ~1e-11 at n ~ 10^6 and are untestable in
native doubles.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConfigurationError, DomainError
from .numerics import log_root
from .sequences import build_series, terms_array

# High-precision constants, sourced from the test oracle (20 digits);
# thresholds derived from them are computed, never hardcoded.
GAMMA = 0.57721566490153286061
MERTENS = 0.26149721284764278375


def granville_limit():
    """The 2*e^{-gamma} threshold for the max gap/ln^2 p ratio."""
    return 2.0 * math.exp(-GAMMA)


GAP_BOUND_FORMS = ("cramer_granville", "eq10", "eq27", "eq20", "eq28")
_FORM_ALIASES = {"cg": "cramer_granville"}
_FORM_IDS = {
    "cramer_granville": kernels.FORM_CRAMER_GRANVILLE,
    "eq10": kernels.FORM_EQ10,
    "eq27": kernels.FORM_EQ27,
    "eq20": kernels.FORM_EQ20,
    "eq28": kernels.FORM_EQ28,
}


@dataclass(frozen=True)
class ConjectureConfig:
    """Shared scan parameters.

    c0 scales the negative ratio floor, c the h-ratio/eq28 term, eps the
    sandwich and eq20 exponents, cg_m the Cramer-Granville constant.
    """

    c0: float = 1.0
    c: float = 2.0
    eps: float = 0.5
    cg_m: float = 1.2
    granville: float = field(default_factory=granville_limit)

    def __post_init__(self):
        if not self.c0 > 0:
            raise ConfigurationError(f"c0 must be > 0, got {self.c0}")
        if not self.c > 1:
            raise ConfigurationError(f"c must be > 1, got {self.c}")
        if not 0 < self.eps < 1:
            raise ConfigurationError(f"eps must lie in (0, 1), got {self.eps}")
        if not self.cg_m > 1:
            raise ConfigurationError(f"M must be > 1, got {self.cg_m}")


@dataclass(frozen=True)
class Witness:
    n: int
    lhs: float
    rhs: float


@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of one inequality scan over an index range.

    threshold_index is the smallest N such that the inequality holds for
    every tested n > N (start-1 when the whole range is clean).
    """

    name: str
    range: tuple
    violations: list
    max_margin_witness: Witness
    threshold_index: int
    details: dict = field(default_factory=dict)


def _check_range(rng, lo, hi, what):
    start, stop = rng
    if not (lo <= start <= stop <= hi):
        raise IndexError(f"{what} range [{start}, {stop}] outside [{lo}, {hi}]")
    return int(start), int(stop)


def _threshold(violations, start):
    return max(violations) if violations else start - 1


def _frac_series(table, start, stop):
    """frac(n) = p_n^{1/n}/p_{n+1}^{1/(n+1)} - 1 for n = start..stop."""
    s = table.values_f64[:stop + 1]
    frac, _ = kernels.ratio_series(s, start)
    return frac


def check_firoozbakht(table, rng):
    """Scan p_n^{1/n} > p_{n+1}^{1/(n+1)}, i.e. frac(n) > 0."""
    start, stop = _check_range(rng, 1, table.count - 1, "firoozbakht")
    frac = _frac_series(table, start, stop)
    bad = np.flatnonzero(frac <= 0.0)
    violations = [int(i) + start for i in bad]
    per_n = {n: (float(frac[n - start]), 0.0) for n in violations}
    worst = int(np.argmin(frac))
    witness = Witness(n=worst + start, lhs=float(frac[worst]), rhs=0.0)
    return ConjectureReport(
        name="firoozbakht", range=(start, stop), violations=violations,
        max_margin_witness=witness, threshold_index=_threshold(violations, start),
        details={"per_n": per_n})


def check_gap_bound(table, rng, form, *, m=1.2, eps=0.5, c=2.0):
    """Scan gap(n) < RHS(form, n) for one of GAP_BOUND_FORMS.

    Form parameters: cramer_granville uses m (> 1), eq20 uses eps
    (in (0,1)), eq28 uses c (> 1); eq10 and eq27 take none.
    """
    form = _FORM_ALIASES.get(form, form)
    if form not in _FORM_IDS:
        raise ConfigurationError(
            f"unknown gap-bound form {form!r}; choose from {GAP_BOUND_FORMS}")
    if form == "cramer_granville":
        if not m > 1:
            raise ConfigurationError(f"M must be > 1, got {m}")
        param = float(m)
    elif form == "eq20":
        if not 0 < eps < 1:
            raise ConfigurationError(f"eps must lie in (0, 1), got {eps}")
        param = float(eps)
    elif form == "eq28":
        if not c > 1:
            raise ConfigurationError(f"c must be > 1, got {c}")
        param = float(c)
    else:
        param = 0.0
    start, stop = _check_range(rng, 1, table.count - 1, form)
    violations, worst_n, worst_lhs, worst_rhs = kernels.gap_scan(
        table.primes, start, stop, _FORM_IDS[form], param)
    witness = Witness(n=int(worst_n), lhs=float(worst_lhs), rhs=float(worst_rhs))
    per_n = {}
    for n in violations:
        _, _, lhs_n, rhs_n = kernels.gap_scan(
            table.primes, n, n, _FORM_IDS[form], param)
        per_n[int(n)] = (float(lhs_n), float(rhs_n))
    details = {"form": form, "per_n": per_n}
    if form in ("cramer_granville", "eq20", "eq28"):
        details["param"] = param
    return ConjectureReport(
        name=form, range=(start, stop), violations=list(violations),
        max_margin_witness=witness, threshold_index=_threshold(violations, start),
        details=details)


@dataclass(frozen=True)
class CramerExtremes:
    max_ratio: float
    argmax_n: int
    exceeds_granville: bool


def cramer_ratio_extremes(table, rng):
    """Max of gap(n)/ln^2 p_n over the range, against 2*e^{-gamma}."""
    start, stop = _check_range(rng, 1, table.count - 1, "cramer ratio")
    best, best_n = kernels.cramer_max(table.primes, start, stop)
    return CramerExtremes(max_ratio=float(best), argmax_n=int(best_n),
                          exceeds_granville=bool(best > granville_limit()))


def check_sandwich(table, rng, eps):
    """Scan n^{-2} < frac(n) < n^{-2+eps} (frac form of the two-sided
    root inequality (1+n^{-2}) p_{n+1}^{1/(n+1)} < p_n^{1/n} <
    (1+n^{-2+eps}) p_{n+1}^{1/(n+1)})."""
    if not 0 < eps < 1:
        raise ConfigurationError(f"eps must lie in (0, 1), got {eps}")
    start, stop = _check_range(rng, 2, table.count - 1, "sandwich")
    frac = _frac_series(table, start, stop)
    ns = np.arange(start, stop + 1, dtype=np.float64)
    lower = ns ** -2.0
    upper = ns ** (-2.0 + eps)
    lo_bad = ~(frac > lower)
    hi_bad = ~(frac < upper)
    lower_violations = [int(i) + start for i in np.flatnonzero(lo_bad)]
    upper_violations = [int(i) + start for i in np.flatnonzero(hi_bad)]
    violations = sorted(set(lower_violations) | set(upper_violations))
    # margin: distance past (or short of) the nearer bound
    margin = np.maximum(lower - frac, frac - upper)
    worst = int(np.argmax(margin))
    nearer = lower[worst] if (lower[worst] - frac[worst]) >= (frac[worst] - upper[worst]) \
        else upper[worst]
    witness = Witness(n=worst + start, lhs=float(frac[worst]), rhs=float(nearer))
    per_n = {}
    for n in violations:
        i = n - start
        bound = lower[i] if not frac[i] > lower[i] else upper[i]
        per_n[n] = (float(frac[i]), float(bound))
    return ConjectureReport(
        name="sandwich", range=(start, stop), violations=violations,
        max_margin_witness=witness, threshold_index=_threshold(violations, start),
        details={"eps": float(eps), "lower_violations": lower_violations,
                 "upper_violations": upper_violations, "per_n": per_n})


def ratio_floor(n, log_s, c):
    """The floor -c*ln(s_n)/n^2 that a root ratio minus one must exceed."""
    return -c * log_s / (float(n) * float(n))


def check_ratio_floor(table, rng, c0):
    """Scan frac(n) > -c0*ln(p_n)/n^2 (frac form of
    p_n^{1/n} > (1 - c0*ln(p_n)/n^2) p_{n+1}^{1/(n+1)})."""
    if not c0 > 0:
        raise ConfigurationError(f"c0 must be > 0, got {c0}")
    start, stop = _check_range(rng, 1, table.count - 1, "ratio floor")
    frac = _frac_series(table, start, stop)
    ns = np.arange(start, stop + 1, dtype=np.float64)
    floor = -c0 * np.log(table.values_f64[start - 1:stop]) / (ns * ns)
    bad = np.flatnonzero(~(frac > floor))
    violations = [int(i) + start for i in bad]
    worst = int(np.argmax(floor - frac))
    witness = Witness(n=worst + start, lhs=float(frac[worst]), rhs=float(floor[worst]))
    per_n = {n: (float(frac[n - start]), float(floor[n - start])) for n in violations}
    return ConjectureReport(
        name="ratio_floor", range=(start, stop), violations=violations,
        max_margin_witness=witness, threshold_index=_threshold(violations, start),
        details={"c0": float(c0), "per_n": per_n})


def _frac_h(s, n):
    """h(n) - 1 where h(n) = (n+1)/n^2 * sum_{r<=n} s_r^{1/n}, in frac form.

    With F = sum_{r<=n} (s_r^{1/n} - 1), algebra gives
    h(n) - 1 = (n + (n+1)F)/n^2 with no near-1 cancellation.
    """
    F = kernels.frac_root_sum(s, n, n)
    return (n + (n + 1) * F) / (float(n) * float(n))


def check_h_ratio(kind, table, sample_ns, c):
    """Test h(n)/h(n+1) > 1 - c*ln(s_n)/n^2 at each sampled n.

    Each evaluation costs O(n); sample_ns should stay sparse.
    """
    if not c > 1:
        raise ConfigurationError(f"c must be > 1, got {c}")
    sample_ns = sorted(int(n) for n in sample_ns)
    if not sample_ns:
        raise ConfigurationError("sample_ns must not be empty")
    if sample_ns[0] < 2:
        raise DomainError(f"h-ratio needs n >= 2, got {sample_ns[0]}")
    top = sample_ns[-1] + 1
    s = terms_array(kind, top, table)
    violations = []
    samples = []
    worst = None
    worst_margin = -math.inf
    for n in sample_ns:
        fh = _frac_h(s, n)
        fh1 = _frac_h(s, n + 1)
        ratio_m1 = (fh - fh1) / (1.0 + fh1)
        floor = ratio_floor(n, math.log(s[n - 1]), c)
        holds = ratio_m1 > floor
        if not holds:
            violations.append(n)
        samples.append({"n": n, "h_ratio_minus_one": ratio_m1, "floor": floor,
                        "h_minus_one": fh})
        margin = floor - ratio_m1
        if margin > worst_margin:
            worst_margin = margin
            worst = Witness(n=n, lhs=ratio_m1, rhs=floor)
    return ConjectureReport(
        name="h_ratio", range=(sample_ns[0], sample_ns[-1]), violations=violations,
        max_margin_witness=worst, threshold_index=_threshold(violations, sample_ns[0]),
        details={"kind": str(kind), "c": float(c), "samples": samples})


@dataclass(frozen=True)
class MeanFormulaResult:
    """lhs = s_n^{1/n}; rhs = (n+1)/n^2 * sum_{r<=n} s_r^{1/n}.

    eq16_residual_scaled (primes only) is (lhs - refined RHS)*n*ln^2 n,
    where the refined RHS drops the r = n term and adds 1/n + 1/(n ln n);
    it is reported without an asserted bound.
    """

    kind: object
    n: int
    lhs: float
    rhs: float
    residual: float
    eq16_residual_scaled: float = None


def check_mean_formula(kind, table, n):
    if n < 1:
        raise DomainError(f"mean formula needs n >= 1, got {n}")
    s = terms_array(kind, n, table)
    lhs_frac = log_root(float(s[-1]), n).frac
    rhs_frac = _frac_h(s, n)
    scaled = None
    if kind.variant == "primes" and n >= 2:
        lnn = math.log(n)
        F2 = kernels.frac_root_sum(s, n, n - 1)
        frac16 = (-1.0 + (n + 1) * F2) / (float(n) * float(n)) \
            + 1.0 / n + 1.0 / (n * lnn)
        scaled = (lhs_frac - frac16) * n * lnn * lnn
    return MeanFormulaResult(kind=kind, n=int(n), lhs=1.0 + lhs_frac,
                             rhs=1.0 + rhs_frac, residual=lhs_frac - rhs_frac,
                             eq16_residual_scaled=scaled)


@dataclass(frozen=True)
class HarmonicAnalogy:
    """Finite-n estimates of the constants in the four sum asymptotics."""

    n: int
    gamma_est: float
    mertens_est: float
    power_ratio_naturals: float
    power_ratio_primes: float
    a_naturals: float
    a_primes: float


def check_harmonic_analogy(table, n, a_naturals=2.0, a_primes=1.0):
    """gamma / Mertens estimates and power-sum ratios at index n.

    gamma_est = sum 1/r - ln n; mertens_est = sum 1/p_r - ln ln p_n;
    the power ratios divide sum r^a and sum p_r^a by their asymptotes
    n^{a+1}/(a+1) and n*p_n^a/(a+1).
    """
    if n < 1 or n > table.count:
        raise IndexError(f"n={n} outside table of {table.count} primes")
    if a_naturals == -1 or a_primes == -1:
        raise DomainError("power-sum exponent a = -1 has no power asymptote")
    p = table.values_f64
    gamma_est = kernels.inv_index_sum(n) - math.log(n)
    mertens_est = kernels.recip_sum(p, n) - math.log(math.log(p[n - 1]))
    pr_nat = kernels.power_index_sum(n, a_naturals) \
        / (math.pow(n, a_naturals + 1.0) / (a_naturals + 1.0))
    pr_pri = kernels.power_sum(p, n, a_primes) \
        / (n * math.pow(p[n - 1], a_primes) / (a_primes + 1.0))
    return HarmonicAnalogy(n=int(n), gamma_est=gamma_est, mertens_est=mertens_est,
                           power_ratio_naturals=pr_nat, power_ratio_primes=pr_pri,
                           a_naturals=float(a_naturals), a_primes=float(a_primes))


def check_strong_conjecture(kind, table, rng):
    """Dyadic-block medians of exponent(n) - (2 - ln ln n / ln n).

    The asymptotic claim is operationalized as: |block median| decreases
    from one full dyadic block [2^k, 2^{k+1}) to the next, for k >= 10.
    Violating block starts are reported as violations.
    """
    hi = table.count - 1 if kind.needs_table else (1 << 62)
    start, stop = _check_range(rng, 3, hi, "strong conjecture")
    series = build_series(kind, start, stop, table)
    ns = series.ns.astype(np.float64)
    lnn = np.log(ns)
    diffs = series.values - (2.0 - np.log(lnn) / lnn)

    blocks = []
    k = max(10, math.ceil(math.log2(start)))
    while (1 << k) >= start and ((1 << (k + 1)) - 1) <= stop:
        lo = (1 << k) - start
        hi_idx = (1 << (k + 1)) - start  # exclusive
        block = diffs[lo:hi_idx]
        block = block[~np.isnan(block)]
        if block.size:
            blocks.append((k, float(np.median(block)), int(block.size)))
        k += 1

    violations = []
    for prev, cur in zip(blocks, blocks[1:]):
        if not abs(cur[1]) < abs(prev[1]):
            violations.append(1 << cur[0])
    decreasing = not violations

    defined = series.values[~np.isnan(series.values)]
    details = {
        "kind": str(kind),
        "block_medians": blocks,
        "decreasing": decreasing,
        "median_exponent": float(np.median(defined)) if defined.size else math.nan,
    }
    if blocks:
        worst_k, worst_med, _ = max(blocks, key=lambda b: abs(b[1]))
        witness = Witness(n=1 << worst_k, lhs=worst_med, rhs=0.0)
    else:
        witness = Witness(n=start, lhs=math.nan, rhs=0.0)
    return ConjectureReport(
        name="strong_conjecture", range=(start, stop), violations=violations,
        max_margin_witness=witness, threshold_index=_threshold(violations, start),
        details=details)
