"""Generation, storage, and on-disk caching of the first N primes.

Indexing is 1-based everywhere: prime(1) == 2, gap(n) == p_{n+1} - p_n.
Tables are immutable once built and safe to share across threads.
"""

import math
import os
import struct
import zlib
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import kernels
from .errors import CacheCorruptionError, CacheFormatError, CapacityError

MAX_COUNT = 1 << 26  # desk-scale guard

_MAGIC = b"PGC1"
_VERSION = 0x01


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """The first `count` primes with O(1) prime and gap access.

    `limit` is the completeness bound: every prime <= limit is stored
    (it equals the largest stored prime, which is tighter than the raw
    sieve bound after truncating to exactly `count` primes).
    """

    primes: np.ndarray = field(repr=False)
    limit: int

    def __post_init__(self):
        self.primes.setflags(write=False)

    @property
    def count(self):
        return int(self.primes.size)

    def prime(self, n):
        """p_n, 1-based (prime(1) == 2)."""
        if not 1 <= n <= self.count:
            raise IndexError(f"prime index {n} outside [1, {self.count}]")
        return int(self.primes[n - 1])

    def gap(self, n):
        """p_{n+1} - p_n; requires 1 <= n < count."""
        if not 1 <= n < self.count:
            raise IndexError(f"gap index {n} outside [1, {self.count - 1}]")
        return int(self.primes[n]) - int(self.primes[n - 1])

    def gaps(self):
        """All gaps p_{n+1} - p_n as an int64 array (gaps()[0] is gap(1))."""
        return np.diff(self.primes.astype(np.int64))

    @cached_property
    def values_f64(self):
        """Primes as float64 (exact below 2^53); cached, read-only."""
        v = self.primes.astype(np.float64)
        v.setflags(write=False)
        return v


def sieve_bound(count):
    """Upper estimate for p_count: n(ln n + ln ln n) for n >= 6, else 16."""
    if count < 6:
        return 16
    ln = math.log(count)
    return int(count * (ln + math.log(ln))) + 1


def primes_first(count):
    """Build a PrimeTable holding exactly `count` primes."""
    if not isinstance(count, (int, np.integer)) or isinstance(count, bool):
        raise CapacityError(f"count must be an integer, got {type(count).__name__}")
    if not 1 <= count <= MAX_COUNT:
        raise CapacityError(f"count {count} outside [1, {MAX_COUNT}]")
    count = int(count)
    bound = sieve_bound(count)
    primes = kernels.sieve_first(count, bound)
    while primes.size < count:  # cannot happen for count >= 6, guarded anyway
        bound = int(bound * 1.1) + 16
        primes = kernels.sieve_first(count, bound)
    if primes.size > 1 and int(np.max(np.diff(primes.astype(np.int64)))) >= (1 << 16):
        raise CapacityError("prime gap exceeds 16 bits; cache format cannot hold it")
    return PrimeTable(primes=primes, limit=int(primes[-1]))


def gap(table, n):
    """Functional form of PrimeTable.gap."""
    return table.gap(n)


def save_cache(table, path):
    """Write the table in the gap-delta cache format (see load_cache)."""
    path = Path(path)
    payload = bytearray()
    payload += _MAGIC
    payload.append(_VERSION)
    payload += struct.pack("<Q", table.count)
    payload += struct.pack("<Q", table.prime(1))
    gaps = np.diff(table.primes).astype("<u2")
    payload += gaps.tobytes()
    payload += struct.pack("<I", zlib.crc32(bytes(payload)))
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(bytes(payload))
    os.replace(tmp, path)


def load_cache(path):
    """Read a table written by save_cache.

    Layout (little-endian): magic "PGC1", version 0x01, count u64, first
    prime u64, (count-1) gaps u16, CRC32 u32 over all preceding bytes.
    Header problems raise CacheFormatError; payload truncation or a
    checksum mismatch raises CacheCorruptionError. Both carry the byte
    offset of the problem.
    """
    data = Path(path).read_bytes()
    if len(data) < 4 or data[:4] != _MAGIC:
        raise CacheFormatError(f"bad magic {data[:4]!r}, expected {_MAGIC!r}", offset=0)
    if len(data) < 5:
        raise CacheFormatError("truncated header: missing version byte", offset=4)
    if data[4] != _VERSION:
        raise CacheFormatError(f"unsupported version {data[4]:#04x}", offset=4)
    if len(data) < 21:
        raise CacheFormatError("truncated header: missing count/first-prime fields",
                               offset=len(data))
    count = struct.unpack_from("<Q", data, 5)[0]
    if not 1 <= count <= MAX_COUNT:
        raise CacheFormatError(f"implausible prime count {count}", offset=5)
    first = struct.unpack_from("<Q", data, 13)[0]
    gaps_end = 21 + 2 * (count - 1)
    if len(data) < gaps_end:
        raise CacheCorruptionError("truncated gap stream", offset=len(data))
    if len(data) < gaps_end + 4:
        raise CacheCorruptionError("truncated checksum", offset=len(data))
    stored_crc = struct.unpack_from("<I", data, gaps_end)[0]
    actual_crc = zlib.crc32(data[:gaps_end])
    if stored_crc != actual_crc:
        raise CacheCorruptionError(
            f"checksum mismatch: stored {stored_crc:#010x}, computed {actual_crc:#010x}",
            offset=gaps_end)
    gaps = np.frombuffer(data, dtype="<u2", count=count - 1, offset=21)
    primes = np.empty(count, dtype=np.uint64)
    primes[0] = first
    np.cumsum(gaps, out=primes[1:], dtype=np.uint64)
    primes[1:] += first
    return PrimeTable(primes=primes, limit=int(primes[-1]))


def cache_dir():
    """Cache directory: GAPSCOPE_CACHE_DIR, else the platform cache dir."""
    env = os.environ.get("GAPSCOPE_CACHE_DIR")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "gapscope"


def default_cache_path(count):
    return cache_dir() / f"primes_{count}.pgc"


def load_or_build(count, use_cache=True):
    """Cached table fetch: load when a valid cache exists, else sieve.

    A missing, stale, or corrupted cache is never an error; the table is
    regenerated and the cache rewritten.
    """
    path = default_cache_path(count)
    if use_cache and path.exists():
        try:
            table = load_cache(path)
            if table.count == count:
                return table
        except (CacheFormatError, CacheCorruptionError, OSError):
            pass
    table = primes_first(count)
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            save_cache(table, path)
        except OSError:
            pass  # cache is an optimization, not a dependency
    return table
