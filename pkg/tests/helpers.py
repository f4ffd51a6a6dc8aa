"""Shared test helpers: naive reference evaluations independent of the
accumulator-based production path."""

import numpy as np


def naive_shrunk_norms(x, alpha):
    """Two-pass L1/L2 norms of max(x - alpha, 0), no shared accumulators."""
    q = np.maximum(np.asarray(x, dtype=np.float64) - alpha, 0.0)
    return float(q.sum()), float(np.sqrt((q * q).sum()))


def naive_psi(x, lam1, lam2, alpha):
    """Direct evaluation of the auxiliary function."""
    l1, l2 = naive_shrunk_norms(x, alpha)
    return l1 / l2 - lam1 / lam2


def naive_projection_curve(x, lam2, alphas):
    """Normalized shrink p(alpha) for a grid of shifts; rows are candidates."""
    x = np.asarray(x, dtype=np.float64)
    out = []
    for a in alphas:
        q = np.maximum(x - a, 0.0)
        nrm = np.sqrt((q * q).sum())
        out.append(lam2 * q / nrm)
    return np.array(out)


def philox(seed):
    return np.random.Generator(np.random.Philox(key=seed))
