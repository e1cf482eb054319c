import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapscope.errors import DomainError, EmptySampleError
from gapscope.sequences import NATURALS, ExponentSeries
from gapscope.stats import exact_median, summarize, windowed_summaries


def make_series(values, start=3):
    vals = np.asarray(values, dtype=np.float64)
    return ExponentSeries(kind=NATURALS, start=start,
                          fracs=np.zeros_like(vals), values=vals)


def test_summarize_basic():
    s = summarize(make_series([1.0, 2.0, 3.0, 4.0]))
    assert s.mean == 2.5
    assert s.median == 2.5
    assert s.min == 1.0 and s.max == 4.0
    assert s.count == 4 and s.defined_count == 4


def test_summarize_odd_count():
    s = summarize(make_series([5.0, 1.0, 3.0]))
    assert s.median == 3.0
    assert s.mean == 3.0


def test_summarize_excludes_undefined_but_counts_them():
    s = summarize(make_series([1.0, math.nan, 3.0, math.nan]))
    assert s.count == 4
    assert s.defined_count == 2
    assert s.mean == 2.0
    assert s.median == 2.0


def test_summarize_all_undefined():
    with pytest.raises(EmptySampleError):
        summarize(make_series([math.nan, math.nan]))


def test_summarize_subrange():
    series = make_series([1.0, 2.0, 3.0, 4.0, 5.0], start=10)
    s = summarize(series, (11, 13))
    assert s.count == 3
    assert s.mean == 3.0
    with pytest.raises(IndexError):
        summarize(series, (9, 12))
    with pytest.raises(DomainError):
        summarize(series, (13, 11))


def test_median_even_is_central_midpoint():
    s = summarize(make_series([1.0, 2.0, 10.0, 100.0]))
    assert s.median == 6.0  # (2 + 10) / 2, not an interpolated quantile


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(min_value=-1e9, max_value=1e9,
                          allow_nan=False, allow_infinity=False),
                min_size=1, max_size=200))
def test_median_matches_sorted_definition(xs):
    values = np.asarray(xs)
    got = exact_median(values.copy())
    srt = np.sort(values)
    m = len(xs)
    want = srt[m // 2] if m % 2 else (srt[m // 2 - 1] + srt[m // 2]) / 2.0
    assert got == want
    assert np.array_equal(np.asarray(xs), values)  # input untouched


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False, allow_infinity=False),
                min_size=1, max_size=300),
       st.randoms(use_true_random=False))
def test_shuffle_invariance(xs, rnd):
    base = summarize(make_series(xs))
    shuffled = list(xs)
    rnd.shuffle(shuffled)
    other = summarize(make_series(shuffled))
    assert other.median == base.median
    assert other.mean == pytest.approx(base.mean, abs=1e-12 * (1 + abs(base.mean)))
    assert base.min <= base.median <= base.max


def test_windowed_constant_series():
    series = make_series([2.5] * 5000)
    for w in windowed_summaries(series, 1 << 10):
        assert w.mean == w.median == 2.5


def test_windowed_partition():
    series = make_series(np.arange(5000, dtype=np.float64))
    wins = windowed_summaries(series, 2048)
    assert [w.count for w in wins] == [2048, 2048, 904]
    assert wins[0].min == 0.0 and wins[-1].max == 4999.0


def test_windowed_oversized_window_is_single_full_range():
    series = make_series(np.arange(1500, dtype=np.float64))
    wins = windowed_summaries(series, 1 << 11)
    assert len(wins) == 1
    assert wins[0].count == 1500


def test_windowed_size_validation():
    series = make_series([1.0] * 10)
    with pytest.raises(DomainError):
        windowed_summaries(series, 512)
