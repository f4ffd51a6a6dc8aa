"""Independent reference implementations used for verification only.

Three cross-checks for the linear-time projection, each deliberately
implemented without sharing code with the production path:

* ``project_sorted``: sorts the input descending so candidate survivor
  sets are prefixes, then finds the unique prefix length whose exact shift
  separates prefix from suffix.  Quasilinear time, linear space.
* ``project_bruteforce``: enumerates every support subset and projects
  onto the sphere/hyperplane intersection restricted to it by direct
  geometry (center ``lambda1/m`` on the diagonal, radius
  ``sqrt(lambda2^2 - lambda1^2/m)``), keeping the feasible candidate of
  minimal distance.  Exponential; intended for ``n <= 12``.  Detects and
  flags nonunique projections (mirror optima).
* ``jacobian_fd``: a central-difference Jacobian of the projection, with
  per-column reliability flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import SparsenessTarget, ValidationStatus, as_vector, validate_input
from .projection import project

__all__ = [
    "OracleReport",
    "FDJacobian",
    "project_sorted",
    "project_bruteforce",
    "jacobian_fd",
    "BRUTEFORCE_MAX_N",
]

BRUTEFORCE_MAX_N = 12

# Slack for boundary comparisons: absorbs rounding of a shift or candidate
# coordinate that lands exactly on a separating boundary.
_BOUNDARY_SLACK = 1e-12


@dataclass
class OracleReport:
    """A reference projection and its distance to the input."""

    p_oracle: np.ndarray
    alpha_oracle: float
    support_oracle: np.ndarray
    distance: float
    tie: bool = False


@dataclass
class FDJacobian:
    """Central-difference Jacobian with per-column reliability flags.

    A column is suspect when the two one-sided projections changed support
    or could not be computed; the difference quotient is meaningless there.
    """

    matrix: np.ndarray
    suspect: np.ndarray
    h: float


def _checked(x, target: SparsenessTarget) -> np.ndarray:
    v = as_vector(x)
    status = validate_input(v, target)
    if status in (
        ValidationStatus.REJECT_DIMENSION,
        ValidationStatus.REJECT_NEGATIVE,
        ValidationStatus.REJECT_ZERO,
    ):
        raise ValueError(f"invalid projection input: {status.value}")
    return v


def project_sorted(x, target: SparsenessTarget) -> OracleReport:
    """Sort-based reference projection.

    Sorts descending (ties broken by original index), evaluates the exact
    shift for every prefix length from the full vector downward, and
    accepts the first prefix whose shift separates it from the suffix.
    Order preservation of the projection guarantees the survivor set is
    such a prefix; uniqueness of the shift makes the accepted candidate
    independent of scan order.

    Raises
    ------
    RuntimeError
        If no prefix separates, which cannot happen for a valid input and
        therefore signals an implementation bug.
    """
    v = _checked(x, target)
    n = v.size
    lam1, lam2 = target.lambda1, target.lambda2

    order = np.argsort(-v, kind="stable")
    xs = v[order]
    cum1 = np.cumsum(xs)
    cum2 = np.cumsum(xs * xs)

    d = np.arange(2, n + 1, dtype=np.float64)
    ell1 = cum1[1:]
    ell2_sq = cum2[1:]
    b = d * lam2 * lam2 - lam1 * lam1
    a = d * ell2_sq - ell1 * ell1
    with np.errstate(invalid="ignore", divide="ignore"):
        beta = np.sqrt(a / b)
        alpha = (ell1 - lam1 * beta) / d

    prefix_min = xs[1:]  # smallest entry inside each candidate prefix
    suffix_max = np.concatenate([xs[2:], [-np.inf]])  # largest entry outside
    slack = _BOUNDARY_SLACK * max(float(xs[0]), lam2)
    valid = (b > 0.0) & (a > 0.0) & (prefix_min > alpha) & (alpha >= suffix_max - slack)
    if not valid.any():
        raise RuntimeError(
            "sorted-oracle inconsistency: no prefix separates; this is a bug"
        )
    k = int(np.flatnonzero(valid)[-1])  # largest prefix = first from the top
    # refine the accepted candidate with the cancellation-free variance
    # form of d*ell2_sq - ell1^2 (the cumulative form above is accurate
    # enough to pick the prefix, but not for the shift at high sparseness)
    d_acc = k + 2
    mu = float(ell1[k]) / d_acc
    a_acc = d_acc * float(((xs[:d_acc] - mu) ** 2).sum())
    beta_acc = math.sqrt(a_acc / float(b[k]))
    alpha_star = (float(ell1[k]) - lam1 * beta_acc) / d_acc

    q = np.maximum(xs - alpha_star, 0.0)
    p_sorted = (lam2 / math.sqrt(float(q @ q))) * q
    p = np.empty_like(v)
    p[order] = p_sorted
    return OracleReport(
        p_oracle=p,
        alpha_oracle=alpha_star,
        support_oracle=np.flatnonzero(p),
        distance=float(np.linalg.norm(p - v)),
        tie=False,
    )


@lru_cache(maxsize=None)
def _subset_table(n: int):
    """All index subsets of size >= 2 as a boolean mask matrix."""
    ids = np.arange(1 << n, dtype=np.uint32)
    bits = ((ids[:, None] >> np.arange(n, dtype=np.uint32)[None, :]) & 1).astype(bool)
    keep = bits.sum(axis=1) >= 2
    masks = bits[keep]
    sizes = masks.sum(axis=1).astype(np.float64)
    return masks, sizes


def project_bruteforce(x, target: SparsenessTarget) -> OracleReport:
    """Exhaustive-enumeration Euclidean projection for small ``n``.

    For every support subset the candidate is the nearest point of the
    sphere/hyperplane intersection restricted to that subset, computed from
    the intersection geometry rather than any shared closed form.  The
    feasible candidate of minimal distance is the projection.  ``tie`` is
    set when a materially different candidate attains the same distance,
    or when the winning subset is degenerate (all its input entries equal,
    so a whole orbit of optima exists).
    """
    v = _checked(x, target)
    n = v.size
    if n > BRUTEFORCE_MAX_N:
        raise ValueError(f"bruteforce oracle is limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    lam1, lam2 = target.lambda1, target.lambda2

    masks, m = _subset_table(n)
    b = m * lam2 * lam2 - lam1 * lam1
    exists = b > 0.0  # otherwise the intersection on this subset is empty
    masks = masks[exists]
    m = m[exists]
    radius = np.sqrt(b[exists] / m)
    center = lam1 / m

    scale = max(float(v.max()), lam2)
    subset_sum = masks @ v
    mean = subset_sum / m
    inplane = (v[None, :] - mean[:, None]) * masks
    inplane_norm = np.sqrt((inplane * inplane).sum(axis=1))
    degenerate = inplane_norm <= _BOUNDARY_SLACK * scale

    coord_tol = _BOUNDARY_SLACK * scale
    sq_total = float(v @ v)

    best_p = None
    best_d2 = np.inf
    best_alpha = math.nan
    tie = False

    nondeg = np.flatnonzero(~degenerate)
    if nondeg.size:
        stretch = radius[nondeg] / inplane_norm[nondeg]
        cand = center[nondeg, None] * masks[nondeg] + stretch[:, None] * inplane[nondeg]
        feasible = (cand >= -coord_tol).all(axis=1)
        if feasible.any():
            rows = nondeg[feasible]
            cand = np.clip(cand[feasible], 0.0, None)
            d2 = ((cand - v[None, :]) ** 2).sum(axis=1)
            order = np.argsort(d2, kind="stable")
            k = order[0]
            best_p = cand[k]
            best_d2 = float(d2[k])
            # alpha recovered from the affine form p~ = s*x~ + (c - s*mean)
            row = rows[k]
            s = float(radius[row] / inplane_norm[row])
            best_alpha = float(mean[row] - center[row] / s)
            # materially different candidate at the same distance
            d2_tol = 1e-11 * (1.0 + best_d2)
            for j in order[1:]:
                if d2[j] > best_d2 + d2_tol:
                    break
                if np.max(np.abs(cand[j] - best_p)) > 1e-9 * lam2:
                    tie = True
                    break

    # Degenerate subsets: every point of the intersection is equidistant
    # from the input, so any feasible one that beats the best candidate
    # makes the projection nonunique.
    deg = np.flatnonzero(degenerate)
    if deg.size:
        dist2_deg = (
            sq_total
            - 2.0 * center[deg] * subset_sum[deg]
            + m[deg] * center[deg] ** 2
            + radius[deg] ** 2
        )
        # A nonnegative point exists iff the best attainable minimum
        # coordinate, center - radius/sqrt(m*(m-1)), is nonnegative.
        attainable = center[deg] - radius[deg] / np.sqrt(m[deg] * (m[deg] - 1.0)) >= -coord_tol
        if attainable.any():
            pos = int(np.argsort(np.where(attainable, dist2_deg, np.inf), kind="stable")[0])
            row = deg[pos]
            d2 = float(dist2_deg[pos])
            if d2 <= best_d2 + 1e-11 * (1.0 + min(d2, best_d2)):
                if radius[row] > _BOUNDARY_SLACK * lam2:
                    tie = True
                if d2 < best_d2:
                    # canonical representative: largest coordinate on the
                    # smallest original index
                    mm = int(m[row])
                    idx = np.flatnonzero(masks[row])
                    direction = np.full(mm, -1.0)
                    direction[0] = mm - 1.0
                    direction /= math.sqrt(mm * (mm - 1.0))
                    p = np.zeros(n)
                    p[idx] = np.clip(center[row] + radius[row] * direction, 0.0, None)
                    best_p = p
                    best_d2 = d2
                    best_alpha = math.nan

    if best_p is None:
        raise RuntimeError(
            "bruteforce oracle found no feasible candidate; this is a bug"
        )

    return OracleReport(
        p_oracle=best_p,
        alpha_oracle=best_alpha,
        support_oracle=np.flatnonzero(best_p),
        distance=math.sqrt(best_d2),
        tie=tie,
    )


def jacobian_fd(x, target: SparsenessTarget, h: float = 1e-6) -> FDJacobian:
    """Central-difference Jacobian of the projection at ``x``.

    Column ``k`` is ``(project(x + h e_k) - project(x - h e_k)) / (2 h)``.
    Columns whose one-sided projections changed support (or failed, e.g.
    because the perturbation left the nonnegative domain) are flagged
    suspect and zeroed.
    """
    if not h > 0.0:
        raise ValueError(f"step size must be positive, got {h!r}")
    v = _checked(x, target)
    n = v.size
    matrix = np.zeros((n, n))
    suspect = np.zeros(n, dtype=bool)
    for k in range(n):
        bumped = v.copy()
        bumped[k] = v[k] + h
        try:
            plus = project(bumped, target)
            bumped = v.copy()
            bumped[k] = v[k] - h
            minus = project(bumped, target)
        except (ValueError, RuntimeError):
            suspect[k] = True
            continue
        if plus.d != minus.d or not np.array_equal(plus.support, minus.support):
            suspect[k] = True
            continue
        matrix[:, k] = (plus.p - minus.p) / (2.0 * h)
    return FDJacobian(matrix=matrix, suspect=suspect, h=h)
