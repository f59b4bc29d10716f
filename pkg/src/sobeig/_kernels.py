"""Compiled inner loops: derivative ladders and compensated accumulation.

These are the only O(nmax) sequential loops in the package; everything else
is vectorized or small.  No fastmath anywhere: the compensated sums rely on
IEEE evaluation order.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def deriv_and_kernel(c, a, b, p00, j, nmax, sgn):
    """Stream the j-ladder of the differentiated recurrence.

    Returns (vals, kern): vals[n] = p_n^(j)(c) and kern[n] = sum of
    vals[i]^2 for i <= n, accumulated with Neumaier compensation.
    Working set is two ladder rows; sgn = -1 selects the classical
    alternating-sign convention (Laguerre).
    """
    width = j + 1
    prev = np.zeros(width)
    cur = np.zeros(width)
    nxt = np.zeros(width)
    cur[0] = p00

    vals = np.empty(nmax + 1)
    kern = np.empty(nmax + 1)
    vals[0] = cur[j]
    s = vals[0] * vals[0]
    comp = 0.0
    kern[0] = s

    for n in range(nmax):
        an = a[n]
        an1 = a[n + 1]
        cb = c - b[n]
        for k in range(width):
            t = cb * cur[k]
            if k > 0:
                t += k * cur[k - 1]
            nxt[k] = (sgn * t - an * prev[k]) / an1
        prev, cur, nxt = cur, nxt, prev
        v = cur[j]
        vals[n + 1] = v
        term = v * v
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        kern[n + 1] = s + comp
    return vals, kern


@njit(cache=True)
def full_table(c, a, b, p00, jmax, nmax, sgn):
    """Materialized table out[n, k] = p_n^(k)(c) for n <= nmax, k <= jmax."""
    out = np.zeros((nmax + 1, jmax + 1))
    out[0, 0] = p00
    for n in range(nmax):
        an = a[n]
        an1 = a[n + 1]
        cb = c - b[n]
        kmax = min(n + 1, jmax)
        for k in range(kmax + 1):
            t = cb * out[n, k]
            if k > 0:
                t += k * out[n, k - 1]
            prev = out[n - 1, k] if n >= 1 else 0.0
            out[n + 1, k] = (sgn * t - an * prev) / an1
    return out


@njit(cache=True)
def comp_cumsum(terms):
    """Neumaier-compensated prefix sums of a term array."""
    out = np.empty(terms.shape[0])
    s = 0.0
    comp = 0.0
    for i in range(terms.shape[0]):
        v = terms[i]
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
        out[i] = s + comp
    return out
