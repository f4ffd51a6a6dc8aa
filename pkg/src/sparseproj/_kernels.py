"""Compiled single-pass scans: the only O(n) inner loops in the package.

Each kernel makes exactly one pass over the input and keeps a constant
number of scalar accumulators, so the projection machinery built on top
runs in linear time with constant additional space.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def aux_scan(x, alpha):
    """One pass over ``x`` for the auxiliary-function evaluation at ``alpha``.

    Returns ``(ell1, ell2_sq, d, lo_val, hi_val)``: the L1 mass, squared L2
    mass and count of entries strictly above ``alpha``, plus the nearest
    entry values at or below (``lo_val``, 0 if none) and strictly above
    (``hi_val``, +inf if none) the shift.  Entries equal to ``alpha`` count
    as below.
    """
    ell1 = 0.0
    ell2_sq = 0.0
    d = 0
    lo_val = 0.0
    lo_gap = -alpha
    hi_val = np.inf
    hi_gap = np.inf
    for i in range(x.shape[0]):
        xi = x[i]
        t = xi - alpha
        if t > 0.0:
            ell1 += xi
            ell2_sq += xi * xi
            d += 1
            if t < hi_gap:
                hi_val = xi
                hi_gap = t
        elif t > lo_gap:
            lo_val = xi
            lo_gap = t
    return ell1, ell2_sq, d, lo_val, hi_val


@njit(cache=True)
def max_and_runner_up(x):
    """Largest entry value and the largest distinct value strictly below it.

    The runner-up is -inf when all entries share a single value.
    """
    vmax = -np.inf
    second = -np.inf
    for i in range(x.shape[0]):
        xi = x[i]
        if xi > vmax:
            second = vmax
            vmax = xi
        elif xi < vmax and xi > second:
            second = xi
    return vmax, second


@njit(cache=True)
def centered_sq_sum(x, threshold, mu):
    """Sum of (x_i - mu)^2 over entries strictly above ``threshold``.

    Used to evaluate d*ell2_sq - ell1^2 in its cancellation-free variance
    form d * sum((x_i - mean)^2); to first order the result is insensitive
    to rounding in ``mu``.
    """
    acc = 0.0
    for i in range(x.shape[0]):
        if x[i] > threshold:
            t = x[i] - mu
            acc += t * t
    return acc


@njit(cache=True)
def shrink(x, alpha):
    """In-place soft shrink ``x := max(x - alpha, 0)``.

    Returns ``(rho, d, gap, vmax)``: the squared L2 norm and support size of
    the shrunk vector, the smallest distance ``|x_i - alpha|`` over the
    original entries, and the original maximum entry.
    """
    rho = 0.0
    d = 0
    gap = np.inf
    vmax = -np.inf
    for i in range(x.shape[0]):
        xi = x[i]
        if xi > vmax:
            vmax = xi
        t = xi - alpha
        a = -t if t < 0.0 else t
        if a < gap:
            gap = a
        if t > 0.0:
            x[i] = t
            rho += t * t
            d += 1
        else:
            x[i] = 0.0
    return rho, d, gap, vmax
