"""Compiled inner loops for family sweeps.

These walk Δ incrementally: with t_i = (-n p_i') mod p_i, the ceiling
ceil(n p_i'/p_i) grows by one going to n + 1 exactly when t_i < p_i'.
All arithmetic is int64; callers guarantee the sizes fit (see
``fits_int64``).
"""

from __future__ import annotations

import numpy as np
from numba import njit

_LIMIT = 1 << 62


def fits_int64(p, pprime, e0abs: int, N0: int) -> bool:
    P = 1
    for x in p:
        P *= int(x)
    top = max(N0, 0) + 6 * P + 1
    return top * max(int(x) for x in p) < _LIMIT and top * e0abs < _LIMIT


@njit(cache=True, nogil=True)
def _tau_walk(p, a, e0abs, stop, T):
    """Fill T[0..stop] with T[n] = Σ_{m<n} Δ(m)."""
    l = p.shape[0]
    t = np.zeros(l, dtype=np.int64)
    d = 1
    T[0] = 0
    for n in range(stop):
        T[n + 1] = T[n] + d
        inc = 0
        for i in range(l):
            if t[i] < a[i]:
                t[i] += p[i] - a[i]
                inc += 1
            else:
                t[i] -= a[i]
        d += e0abs - inc


@njit(cache=True, nogil=True)
def _u_order_of(T):
    m = T.shape[0]
    left = np.empty(m, dtype=np.int64)
    lo = T[0]
    for i in range(m):
        if T[i] < lo:
            lo = T[i]
        left[i] = lo
    best = 0
    lo = T[m - 1]
    for i in range(m - 1, -1, -1):
        if T[i] < lo:
            lo = T[i]
        floor = left[i] if left[i] > lo else lo
        if T[i] - floor > best:
            best = T[i] - floor
    return best


@njit(cache=True, nogil=True)
def _u_order_half(p, a, e0abs, stop):
    """max over n <= stop of T(n) - min_{m<=n} T(m), walking Δ once."""
    l = p.shape[0]
    t = np.zeros(l, dtype=np.int64)
    d = 1
    T = 0
    lo = 0
    best = 0
    for n in range(stop):
        T += d
        lo = min(lo, T)
        best = max(best, T - lo)
        inc = 0
        for i in range(l):
            wrap = np.int64(t[i] < a[i])
            t[i] += wrap * p[i] - a[i]
            inc += wrap
        d += e0abs - inc
    return best


@njit(cache=True, nogil=True)
def u_order_scan(p, a, e0abs, N0, mirror):
    """u_order of the graded root of Σ(p) by walking Δ over [0, N0].

    T(n) = Σ_{m<n} Δ(m) is a palindrome, T(N0 + 1 - n) = T(n), because
    Δ(N0 - n) = -Δ(n).  Every index in the first half therefore sees the
    global minimum to its right, and u_order collapses to the largest rise
    of T above its running minimum over the first half.  ``mirror=False``
    walks the whole range and uses the two-sided formula instead.
    """
    if N0 <= 0:
        return 0
    if mirror:
        return _u_order_half(p, a, e0abs, (N0 + 1) // 2)
    T = np.empty(N0 + 2, dtype=np.int64)
    _tau_walk(p, a, e0abs, N0 + 1, T)
    return _u_order_of(T)


@njit(cache=True)
def antisymmetry_direct(p, a, e0abs, N0):
    """Count n in [0, N0] with Δ(n) + Δ(N0 - n) != 0, by enumeration."""
    if N0 < 0:
        return 0
    D = np.empty(N0 + 1, dtype=np.int64)
    l = p.shape[0]
    t = np.zeros(l, dtype=np.int64)
    d = 1
    for n in range(N0 + 1):
        D[n] = d
        inc = 0
        for i in range(l):
            if t[i] < a[i]:
                t[i] += p[i] - a[i]
                inc += 1
            else:
                t[i] -= a[i]
        d += e0abs - inc
    bad = 0
    for n in range(N0 + 1):
        if D[n] + D[N0 - n] != 0:
            bad += 1
    return bad


@njit(cache=True)
def _ceil_div_signed(x, y):
    return -((-x) // y)


@njit(cache=True)
def antisymmetry_certificate(p, a, e0abs, N0):
    """Exact check of Δ(n) + Δ(N0 - n) = 0 for every n, via residues.

    Writing n = q p_i + r, ceil(n a_i/p_i) + ceil((N0 - n) a_i/p_i) depends
    only on r, so the sum equals 2 + |e0| N0 - Σ_i g_i(n mod p_i).  It
    vanishes identically iff each g_i is constant and the constants cancel.
    Returns 1 when certified, 0 when refuted, -1 when the residues are not
    constant (undecided; callers fall back to enumeration).
    """
    total = 2 + e0abs * N0
    for i in range(p.shape[0]):
        g0 = _ceil_div_signed(0, p[i]) + _ceil_div_signed(N0 * a[i], p[i])
        for r in range(1, p[i]):
            g = _ceil_div_signed(r * a[i], p[i]) + _ceil_div_signed((N0 - r) * a[i], p[i])
            if g != g0:
                return -1
        total -= g0
    return 1 if total == 0 else 0


@njit(cache=True)
def delta_at_int64(p, a, e0abs, n):
    s = 1 + e0abs * n
    for i in range(p.shape[0]):
        s -= -((-n * a[i]) // p[i])
    return s
