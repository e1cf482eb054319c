import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapscope import prime_engine
from gapscope.errors import CacheCorruptionError, CacheError, CacheFormatError, CapacityError
from gapscope.prime_engine import (load_cache, primes_first, save_cache,
                                   sieve_bound)
from oracles import trial_division_primes


def test_first_five():
    t = primes_first(5)
    assert t.primes.tolist() == [2, 3, 5, 7, 11]
    assert t.count == 5


def test_single_prime():
    t = primes_first(1)
    assert t.primes.tolist() == [2]
    assert t.prime(1) == 2


def test_one_based_indexing():
    t = primes_first(10)
    assert t.prime(1) == 2
    assert t.prime(2) == 3
    assert t.prime(10) == 29
    with pytest.raises(IndexError):
        t.prime(0)
    with pytest.raises(IndexError):
        t.prime(11)


def test_count_bounds():
    with pytest.raises(CapacityError):
        primes_first(0)
    with pytest.raises(CapacityError):
        primes_first(-3)
    with pytest.raises(CapacityError):
        primes_first(prime_engine.MAX_COUNT + 1)
    with pytest.raises(CapacityError):
        primes_first(2.5)


def test_small_counts_use_fixed_bound():
    for c in range(1, 7):
        t = primes_first(c)
        assert t.count == c
    assert sieve_bound(5) == 16
    # the Rosser-type estimate must dominate p_n from n = 6 on
    for n, p_n in ((6, 13), (10, 29), (100, 541), (1000, 7919)):
        assert sieve_bound(n) >= p_n


def test_gaps():
    t = primes_first(10)
    assert t.gap(1) == 1
    assert t.gap(2) == 2
    assert t.gap(4) == 4
    assert all(t.gap(n) % 2 == 0 for n in range(2, 10))
    with pytest.raises(IndexError):
        t.gap(0)
    with pytest.raises(IndexError):
        t.gap(10)


def test_matches_trial_division():
    expected = trial_division_primes(10 ** 5)
    t = primes_first(len(expected))
    assert t.primes.tolist() == expected


def test_pi_counts():
    t = primes_first(10000)
    for x in (10 ** 3, 10 ** 4, 10 ** 5):
        brute = len(trial_division_primes(x))
        assert int(np.count_nonzero(t.primes <= x)) == brute


def test_completeness_up_to_limit():
    t = primes_first(50)
    assert t.limit == t.prime(50)
    stored = set(t.primes.tolist())
    assert stored == set(trial_division_primes(t.limit))


def test_prefix_sum_reconstruction():
    t = primes_first(5000)
    rebuilt = t.prime(1) + np.concatenate(([0], np.cumsum(t.gaps())))
    assert np.array_equal(rebuilt, t.primes.astype(np.int64))


def test_gaps_fit_16_bits():
    t = primes_first(1 << 16)
    assert int(t.gaps().max()) < (1 << 16)


def test_table_immutable():
    t = primes_first(10)
    with pytest.raises(ValueError):
        t.primes[0] = 1


def test_cache_round_trip(tmp_path):
    t = primes_first(10)
    path = tmp_path / "ten.pgc"
    save_cache(t, path)
    loaded = load_cache(path)
    assert np.array_equal(loaded.primes, t.primes)
    assert loaded.limit == t.limit
    # byte-identical re-serialization
    path2 = tmp_path / "ten2.pgc"
    save_cache(loaded, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_cache_layout(tmp_path):
    t = primes_first(3)
    path = tmp_path / "three.pgc"
    save_cache(t, path)
    raw = path.read_bytes()
    assert raw[:4] == b"PGC1"
    assert raw[4] == 0x01
    assert int.from_bytes(raw[5:13], "little") == 3
    assert int.from_bytes(raw[13:21], "little") == 2
    assert int.from_bytes(raw[21:23], "little") == 1  # gap 2->3
    assert int.from_bytes(raw[23:25], "little") == 2  # gap 3->5
    assert len(raw) == 29


def test_cache_bad_magic(tmp_path):
    t = primes_first(10)
    path = tmp_path / "bad.pgc"
    save_cache(t, path)
    raw = bytearray(path.read_bytes())
    raw[:4] = b"XXXX"
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheFormatError) as exc:
        load_cache(path)
    assert exc.value.offset == 0


def test_cache_bad_version(tmp_path):
    t = primes_first(10)
    path = tmp_path / "bad.pgc"
    save_cache(t, path)
    raw = bytearray(path.read_bytes())
    raw[4] = 0x7F
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheFormatError) as exc:
        load_cache(path)
    assert exc.value.offset == 4


def test_cache_truncated_gaps(tmp_path):
    t = primes_first(100)
    path = tmp_path / "trunc.pgc"
    save_cache(t, path)
    raw = path.read_bytes()
    path.write_bytes(raw[:40])
    with pytest.raises(CacheCorruptionError) as exc:
        load_cache(path)
    assert exc.value.offset == 40


def test_cache_checksum_mismatch(tmp_path):
    t = primes_first(100)
    path = tmp_path / "flip.pgc"
    save_cache(t, path)
    raw = bytearray(path.read_bytes())
    raw[30] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheCorruptionError):
        load_cache(path)


def test_cache_errors_share_base(tmp_path):
    path = tmp_path / "junk.pgc"
    path.write_bytes(b"XXXXjunk")
    with pytest.raises(CacheError):
        load_cache(path)


@settings(max_examples=25, deadline=None)
@given(count=st.integers(min_value=1, max_value=400))
def test_cache_round_trip_any_count(tmp_path_factory, count):
    t = primes_first(count)
    path = tmp_path_factory.mktemp("pgc") / "t.pgc"
    save_cache(t, path)
    assert np.array_equal(load_cache(path).primes, t.primes)


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("GAPSCOPE_CACHE_DIR", str(tmp_path / "custom"))
    assert prime_engine.cache_dir() == tmp_path / "custom"
    t = prime_engine.load_or_build(25)
    assert t.count == 25
    assert (tmp_path / "custom" / "primes_25.pgc").exists()


def test_load_or_build_recovers_from_corruption(tmp_path, monkeypatch):
    monkeypatch.setenv("GAPSCOPE_CACHE_DIR", str(tmp_path))
    path = prime_engine.default_cache_path(30)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(b"garbage everywhere")
    t = prime_engine.load_or_build(30)
    assert t.count == 30
    assert load_cache(path).count == 30  # cache was rewritten


def test_big_table_examples(big_table):
    # last prime of the desk-scale table (the +1 slot holds the next prime)
    assert big_table.prime(1 << 20) == 16290047
    assert big_table.prime(2) == 3
