# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Bit-for-bit twin of _kernels_py: same libm calls in the same order, and
the build forbids FMA contraction, so either backend can serve any test
or report interchangeably.
"""

from libc.math cimport INFINITY, M_PI, NAN, cos, expm1, fabs, log, log1p, pow, sin, sqrt
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

BACKEND_NAME = "compiled"

cdef Py_ssize_t _SEGMENT_FLAGS = 1 << 18

# riemann_sum test-function ids (mirrors _kernels_py)
FN_ONE = 0
FN_IDENTITY = 1
FN_SQUARE = 2
FN_ROOT = 3
FN_COS = 4

# gap_scan inequality form ids (mirrors _kernels_py)
FORM_CRAMER_GRANVILLE = 0
FORM_EQ10 = 1
FORM_EQ27 = 2
FORM_EQ20 = 3
FORM_EQ28 = 4


cdef uint64_t _isqrt(uint64_t v):
    cdef uint64_t r = <uint64_t>sqrt(<double>v)
    while r > 0 and r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


def sieve_first(count, limit):
    """First `count` primes not exceeding `limit`, as a uint64 array."""
    cdef int64_t want = count
    cdef uint64_t lim = limit
    if want <= 0 or lim < 2:
        return np.empty(0, dtype=np.uint64)

    # never allocate more slots than [2, lim] can hold primes
    cdef int64_t cap = <int64_t>(lim // 2) + 2
    if want > cap:
        want = cap
    out = np.empty(want, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef int64_t found = 0
    ov[found] = 2
    found += 1
    if found >= want:
        return out

    # base odd primes up to sqrt(limit)
    cdef uint64_t root = _isqrt(lim)
    cdef Py_ssize_t m = 0
    cdef Py_ssize_t i, j, nbase = 0
    cdef uint64_t q, start
    cdef char* bflags = NULL
    cdef uint64_t* base = NULL
    if root >= 3:
        m = (root - 1) // 2  # flags for 3, 5, ..., <= root
        bflags = <char*>malloc(m)
        if bflags == NULL:
            raise MemoryError()
        memset(bflags, 1, m)
        i = 0
        while True:
            while i < m and not bflags[i]:
                i += 1
            if i >= m:
                break
            q = 2 * i + 3
            if q * q > root:
                break
            j = (q * q - 3) >> 1
            while j < m:
                bflags[j] = 0
                j += q
            i += 1
        base = <uint64_t*>malloc(m * sizeof(uint64_t))
        if base == NULL:
            free(bflags)
            raise MemoryError()
        for j in range(m):
            if bflags[j]:
                base[nbase] = 2 * j + 3
                nbase += 1
        free(bflags)

    cdef char* seg = <char*>malloc(_SEGMENT_FLAGS)
    if seg == NULL:
        free(base)
        raise MemoryError()

    cdef uint64_t low = 3
    cdef uint64_t last
    cdef Py_ssize_t seg_n, idx, b
    try:
        while low <= lim and found < want:
            last = low + 2 * (_SEGMENT_FLAGS - 1)
            if last > lim:
                last = lim if lim % 2 else lim - 1
            seg_n = <Py_ssize_t>((last - low) >> 1) + 1
            memset(seg, 1, seg_n)
            for b in range(nbase):
                q = base[b]
                start = q * q
                if start < low:
                    start = ((low + q - 1) // q) * q
                    if start % 2 == 0:
                        start += q
                if start > last:
                    continue
                idx = <Py_ssize_t>((start - low) >> 1)
                while idx < seg_n:
                    seg[idx] = 0
                    idx += q
            for idx in range(seg_n):
                if seg[idx]:
                    ov[found] = low + 2 * <uint64_t>idx
                    found += 1
                    if found >= want:
                        break
            low = last + 2
    finally:
        free(seg)
        free(base)

    return out if found == want else out[:found].copy()


def neumaier_sum(const double[::1] values):
    """Neumaier-compensated sequential sum of a float64 array."""
    cdef double s = 0.0, c = 0.0, x, t
    cdef Py_ssize_t i
    for i in range(values.shape[0]):
        x = values[i]
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def ratio_series(const double[::1] s, start):
    """Per-index root-ratio quantities for n = start .. len(s)-1."""
    cdef Py_ssize_t st = start
    cdef Py_ssize_t m = s.shape[0] - st
    frac = np.empty(m, dtype=np.float64)
    expn = np.empty(m, dtype=np.float64)
    cdef double[::1] fv = frac
    cdef double[::1] ev = expn
    cdef Py_ssize_t i
    cdef double nd, sn, snext, d, f
    for i in range(m):
        nd = <double>(st + i)
        sn = s[st + i - 1]
        snext = s[st + i]
        d = (log(sn) - nd * log1p((snext - sn) / sn)) / (nd * (nd + 1.0))
        f = expm1(d)
        fv[i] = f
        # exponent needs ln n > 0 and a positive ratio; NaN marks undefined
        ev[i] = -log(f) / log(nd) if (f > 0.0 and nd > 1.0) else NAN
    return frac, expn


def frac_root_sum(const double[::1] s, n, upto):
    """Compensated sum of (s_r^{1/n} - 1) for r = 1..upto, in frac form."""
    cdef double nd = <double>n
    cdef Py_ssize_t up = upto
    cdef double total = 0.0, c = 0.0, x, t
    cdef Py_ssize_t r
    for r in range(up):
        x = expm1(log(s[r]) / nd)
        t = total + x
        if fabs(total) >= fabs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def star_discrepancy_sorted(const double[::1] x):
    """Star discrepancy of sorted points in [0, 1] (sorted-sample formula)."""
    cdef Py_ssize_t n = x.shape[0]
    cdef double nd = <double>n
    cdef double best = 0.0, xi, up, dn
    cdef Py_ssize_t i
    for i in range(n):
        xi = x[i]
        up = (<double>(i + 1)) / nd - xi
        dn = xi - (<double>i) / nd
        if up > best:
            best = up
        if dn > best:
            best = dn
    return best


def weyl_modulus(const double[::1] x, h):
    """Modulus of the normalized exponential sum (1/n)·sum exp(2*pi*i*h*x_r)."""
    cdef double w = 2.0 * M_PI * <double>h
    cdef double cr = 0.0, ci = 0.0, cc = 0.0, cs = 0.0
    cdef double a, y, t, re, im
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        a = w * x[i]
        y = cos(a)
        t = cr + y
        if fabs(cr) >= fabs(y):
            cc += (cr - t) + y
        else:
            cc += (y - t) + cr
        cr = t
        y = sin(a)
        t = ci + y
        if fabs(ci) >= fabs(y):
            cs += (ci - t) + y
        else:
            cs += (y - t) + ci
        ci = t
    re = cr + cc
    im = ci + cs
    return sqrt(re * re + im * im) / <double>x.shape[0]


def riemann_sum(const double[::1] x, fn_id, aux):
    """Compensated sum of f(x_r) over the array, f chosen by fn_id."""
    cdef int fid = fn_id
    cdef double av = aux
    cdef double total = 0.0, c = 0.0, v, y, t
    cdef double two_pi = 2.0 * M_PI
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        v = x[i]
        if fid == 0:
            y = 1.0
        elif fid == 1:
            y = v
        elif fid == 2:
            y = v * v
        elif fid == 3:
            y = pow(v, av)
        else:
            y = cos(two_pi * v)
        t = total + y
        if fabs(total) >= fabs(y):
            c += (total - t) + y
        else:
            c += (y - t) + total
        total = t
    return total + c


def inv_index_sum(n):
    """Compensated sum of 1/r for r = 1..n."""
    cdef Py_ssize_t nn = n
    cdef double total = 0.0, c = 0.0, x, t
    cdef Py_ssize_t r
    for r in range(1, nn + 1):
        x = 1.0 / <double>r
        t = total + x
        if fabs(total) >= fabs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def recip_sum(const double[::1] values, n):
    """Compensated sum of 1/values[i] for i = 0..n-1."""
    cdef Py_ssize_t nn = n
    cdef double total = 0.0, c = 0.0, x, t
    cdef Py_ssize_t i
    for i in range(nn):
        x = 1.0 / values[i]
        t = total + x
        if fabs(total) >= fabs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def power_index_sum(n, a):
    """Compensated sum of r^a for r = 1..n."""
    cdef Py_ssize_t nn = n
    cdef double av = a
    cdef double total = 0.0, c = 0.0, x, t
    cdef Py_ssize_t r
    for r in range(1, nn + 1):
        x = pow(<double>r, av)
        t = total + x
        if fabs(total) >= fabs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def power_sum(const double[::1] values, n, a):
    """Compensated sum of values[i]^a for i = 0..n-1."""
    cdef Py_ssize_t nn = n
    cdef double av = a
    cdef double total = 0.0, c = 0.0, x, t
    cdef Py_ssize_t i
    for i in range(nn):
        x = pow(values[i], av)
        t = total + x
        if fabs(total) >= fabs(x):
            c += (total - t) + x
        else:
            c += (x - t) + total
        total = t
    return total + c


def gap_scan(const uint64_t[::1] p, start, stop, form_id, param):
    """Scan gap(n) < rhs(form, n) for n = start..stop (1-based, inclusive)."""
    cdef Py_ssize_t a = start, b = stop
    cdef int fid = form_id
    cdef double prm = param
    violations = []
    cdef Py_ssize_t worst_n = a
    cdef double worst_margin = -INFINITY
    cdef double worst_lhs = 0.0, worst_rhs = 0.0
    cdef Py_ssize_t n
    cdef double pn, gap, L, nd, rhs, margin
    for n in range(a, b + 1):
        pn = <double>p[n - 1]
        gap = <double>(p[n] - p[n - 1])
        L = log(pn)
        nd = <double>n
        if fid == 0:
            rhs = prm * L * L
        elif fid == 1:
            rhs = L * L - L + 1.0
        elif fid == 2:
            rhs = L * L - 2.0 * L + 1.0
        elif fid == 3:
            rhs = (2.0 + prm) * pn * L / nd + 1.0
        else:
            rhs = pn / nd * (L - 1.0) + prm * pn * L * L / (nd * nd)
        if not gap < rhs:
            violations.append(n)
        margin = gap - rhs
        if margin > worst_margin:
            worst_margin = margin
            worst_n = n
            worst_lhs = gap
            worst_rhs = rhs
    return violations, worst_n, worst_lhs, worst_rhs


def cramer_max(const uint64_t[::1] p, start, stop):
    """Max of gap(n)/ln^2 p_n over n = start..stop (1-based, inclusive)."""
    cdef Py_ssize_t a = start, b = stop
    cdef double best = -INFINITY
    cdef Py_ssize_t best_n = a
    cdef Py_ssize_t n
    cdef double L, ratio
    for n in range(a, b + 1):
        L = log(<double>p[n - 1])
        ratio = (<double>(p[n] - p[n - 1])) / (L * L)
        if ratio > best:
            best = ratio
            best_n = n
    return best, best_n
