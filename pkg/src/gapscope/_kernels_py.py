"""Pure-Python kernel backend.

Reference implementation of the hot numeric loops. gapscope.kernels picks
this module when the compiled extension is unavailable (or when
GAPSCOPE_PURE_PYTHON=1). Every function here is mirrored by
_kernels_cy.pyx with identical operation order and the same libm calls,
so the two backends produce bit-identical results.

All sums are sequential Neumaier-compensated in stream order; reports
built on top of them are byte-deterministic.
"""

import math

import numpy as np

BACKEND_NAME = "python"

# Segment buffer: 2^18 one-byte flags, each covering one odd number.
_SEGMENT_FLAGS = 1 << 18


def _as_list(values):
    return values.tolist() if isinstance(values, np.ndarray) else list(values)


def sieve_first(count, limit):
    """First `count` primes not exceeding `limit`, as a uint64 array.

    Segmented odd-only sieve of Eratosthenes. Returns fewer than `count`
    primes when the interval [2, limit] does not contain enough; the
    caller is responsible for growing `limit` and retrying.
    """
    if count <= 0 or limit < 2:
        return np.empty(0, dtype=np.uint64)

    chunks = [np.array([2], dtype=np.uint64)]
    found = 1
    if found >= count:
        return chunks[0][:count]

    root = math.isqrt(limit)
    base = _odd_base_primes(root)

    low = 3
    while low <= limit and found < count:
        last = low + 2 * (_SEGMENT_FLAGS - 1)
        if last > limit:
            last = limit if limit % 2 else limit - 1
        seg_n = ((last - low) >> 1) + 1
        flags = bytearray(b"\x01") * seg_n
        for q in base:
            start = q * q
            if start < low:
                start = ((low + q - 1) // q) * q
                if start % 2 == 0:
                    start += q
            idx = (start - low) >> 1
            if idx < seg_n:
                flags[idx::q] = bytes(1 + (seg_n - 1 - idx) // q)
        hits = np.flatnonzero(np.frombuffer(bytes(flags), dtype=np.uint8))
        seg_primes = (low + 2 * hits).astype(np.uint64)
        chunks.append(seg_primes)
        found += seg_primes.size
        low = last + 2

    out = np.concatenate(chunks)
    return out[:count] if out.size > count else out


def _odd_base_primes(root):
    """Odd primes <= root, via a dense odd-only sieve (root is small)."""
    if root < 3:
        return []
    m = (root - 1) // 2  # flags for 3, 5, ..., largest odd <= root
    flags = bytearray(b"\x01") * m
    i = 0
    while True:
        while i < m and not flags[i]:
            i += 1
        if i >= m:
            break
        q = 2 * i + 3
        if q * q > root:
            break
        start = (q * q - 3) >> 1
        flags[start::q] = bytes(1 + (m - 1 - start) // q)
        i += 1
    return [2 * j + 3 for j in range(m) if flags[j]]


def neumaier_sum(values):
    """Neumaier-compensated sequential sum of a float64 array."""
    s = 0.0
    c = 0.0
    for x in _as_list(values):
        x = float(x)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def ratio_series(s, start):
    """Per-index root-ratio quantities for n = start .. len(s)-1.

    `s` holds the sequence values 1-based (s[0] is the first term).
    Returns (frac, expn) where frac[i] = s_n^{1/n}/s_{n+1}^{1/(n+1)} - 1
    for n = start+i, computed cancellation-free, and expn[i] is the decay
    exponent -ln(frac)/ln(n), NaN when frac <= 0.
    """
    sl = _as_list(s)
    m = len(sl) - start
    frac = np.empty(m, dtype=np.float64)
    expn = np.empty(m, dtype=np.float64)
    log = math.log
    log1p = math.log1p
    expm1 = math.expm1
    nan = math.nan
    for i in range(m):
        n = start + i
        sn = float(sl[n - 1])
        snext = float(sl[n])
        d = (log(sn) - n * log1p((snext - sn) / sn)) / (n * (n + 1.0))
        f = expm1(d)
        frac[i] = f
        # exponent needs ln n > 0 and a positive ratio; NaN marks undefined
        expn[i] = -log(f) / log(n) if (f > 0.0 and n > 1) else nan
    return frac, expn


def frac_root_sum(s, n, upto):
    """Compensated sum of (s_r^{1/n} - 1) for r = 1..upto, in frac form."""
    sl = _as_list(s)
    total = 0.0
    c = 0.0
    log = math.log
    expm1 = math.expm1
    for r in range(upto):
        x = expm1(log(float(sl[r])) / n)
        t = total + x
        if abs(total) >= abs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def star_discrepancy_sorted(x):
    """Star discrepancy of sorted points in [0, 1] (sorted-sample formula)."""
    xl = _as_list(x)
    n = len(xl)
    best = 0.0
    for i in range(n):
        xi = xl[i]
        up = (i + 1) / n - xi
        dn = xi - i / n
        if up > best:
            best = up
        if dn > best:
            best = dn
    return best


def weyl_modulus(x, h):
    """Modulus of the normalized exponential sum (1/n)·sum exp(2*pi*i*h*x_r)."""
    xl = _as_list(x)
    w = 2.0 * math.pi * h
    cr = ci = 0.0
    cc = cs = 0.0
    cos = math.cos
    sin = math.sin
    for v in xl:
        a = w * v
        y = cos(a)
        t = cr + y
        if abs(cr) >= abs(y):
            cc += (cr - t) + y
        else:
            cc += (y - t) + cr
        cr = t
        y = sin(a)
        t = ci + y
        if abs(ci) >= abs(y):
            cs += (ci - t) + y
        else:
            cs += (y - t) + ci
        ci = t
    re = cr + cc
    im = ci + cs
    # sqrt(re^2+im^2) rather than math.hypot: CPython's hypot is not the
    # libm one, and the compiled backend must match bit for bit.
    return math.sqrt(re * re + im * im) / len(xl)


# riemann_sum test-function ids
FN_ONE = 0
FN_IDENTITY = 1
FN_SQUARE = 2
FN_ROOT = 3  # x ** aux
FN_COS = 4  # cos(2*pi*x)


def riemann_sum(x, fn_id, aux):
    """Compensated sum of f(x_r) over the array, f chosen by fn_id."""
    xl = _as_list(x)
    total = 0.0
    c = 0.0
    two_pi = 2.0 * math.pi
    cos = math.cos
    pw = math.pow
    for v in xl:
        if fn_id == FN_ONE:
            y = 1.0
        elif fn_id == FN_IDENTITY:
            y = v
        elif fn_id == FN_SQUARE:
            y = v * v
        elif fn_id == FN_ROOT:
            y = pw(v, aux)
        else:
            y = cos(two_pi * v)
        t = total + y
        if abs(total) >= abs(y):
            c += (total - t) + y
        else:
            c += (y - t) + total
        total = t
    return total + c


def inv_index_sum(n):
    """Compensated sum of 1/r for r = 1..n."""
    total = 0.0
    c = 0.0
    for r in range(1, n + 1):
        x = 1.0 / r
        t = total + x
        if abs(total) >= abs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def recip_sum(values, n):
    """Compensated sum of 1/values[i] for i = 0..n-1."""
    vl = _as_list(values)
    total = 0.0
    c = 0.0
    for i in range(n):
        x = 1.0 / float(vl[i])
        t = total + x
        if abs(total) >= abs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def power_index_sum(n, a):
    """Compensated sum of r^a for r = 1..n."""
    total = 0.0
    c = 0.0
    pw = math.pow
    for r in range(1, n + 1):
        x = pw(float(r), a)
        t = total + x
        if abs(total) >= abs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def power_sum(values, n, a):
    """Compensated sum of values[i]^a for i = 0..n-1."""
    vl = _as_list(values)
    total = 0.0
    c = 0.0
    pw = math.pow
    for i in range(n):
        x = pw(float(vl[i]), a)
        t = total + x
        if abs(total) >= abs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


# gap_scan inequality form ids
FORM_CRAMER_GRANVILLE = 0  # gap < param * ln^2 p
FORM_EQ10 = 1  # gap < ln^2 p - ln p + 1
FORM_EQ27 = 2  # gap < ln^2 p - 2 ln p + 1
FORM_EQ20 = 3  # gap < (2 + param) * p * ln p / n + 1
FORM_EQ28 = 4  # gap < p/n * (ln p - 1) + param * p * ln^2 p / n^2


def gap_scan(p, start, stop, form_id, param):
    """Scan gap(n) < rhs(form, n) for n = start..stop (1-based, inclusive).

    Returns (violations, worst_n, worst_lhs, worst_rhs) where the worst
    witness maximizes the margin lhs - rhs, i.e. the index at which the
    inequality came closest to failing or failed hardest.
    """
    pl = _as_list(p)
    log = math.log
    violations = []
    worst_n = start
    worst_margin = -math.inf
    worst_lhs = worst_rhs = 0.0
    for n in range(start, stop + 1):
        pn = float(pl[n - 1])
        gap = float(pl[n] - pl[n - 1])
        L = log(pn)
        if form_id == FORM_CRAMER_GRANVILLE:
            rhs = param * L * L
        elif form_id == FORM_EQ10:
            rhs = L * L - L + 1.0
        elif form_id == FORM_EQ27:
            rhs = L * L - 2.0 * L + 1.0
        elif form_id == FORM_EQ20:
            rhs = (2.0 + param) * pn * L / n + 1.0
        else:
            rhs = pn / n * (L - 1.0) + param * pn * L * L / (float(n) * float(n))
        if not gap < rhs:
            violations.append(n)
        margin = gap - rhs
        if margin > worst_margin:
            worst_margin = margin
            worst_n = n
            worst_lhs = gap
            worst_rhs = rhs
    return violations, worst_n, worst_lhs, worst_rhs


def cramer_max(p, start, stop):
    """Max of gap(n)/ln^2 p_n over n = start..stop (1-based, inclusive)."""
    pl = _as_list(p)
    log = math.log
    best = -math.inf
    best_n = start
    for n in range(start, stop + 1):
        L = log(float(pl[n - 1]))
        ratio = float(pl[n] - pl[n - 1]) / (L * L)
        if ratio > best:
            best = ratio
            best_n = n
    return best, best_n
