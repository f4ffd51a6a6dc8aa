"""Gradient of the sparseness projection.

Off the tie set {x : some x_i equals the shift alpha} the projection is
differentiable, and on the support I of the projection its Jacobian is the
d-by-d block

    G = sqrt(b/a) * E_d
        - (lambda2^2 * e e^T + d * p~ p~^T - lambda1 * (e p~^T + p~ e^T))
          / sqrt(a*b)

embedded into n-by-n by zero rows/columns off the support.  Here ``p~`` is
the projection sliced to its support, ``e`` the all-ones vector of length
``d``, and ``a``, ``b`` the scalars captured by the projection.  G is
symmetric, annihilates both ``p~`` and ``e`` (tangency to the sphere and
the hyperplane), and acts as ``sqrt(b/a)`` times the identity on the
orthogonal complement of their span.

``grad_vec`` applies the Jacobian to a vector in O(n) time without forming
G; ``grad_matrix`` materializes the full matrix for small-scale checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SparsenessTarget
from .projection import ProjectionResult

__all__ = ["GradientFactors", "gradient_factors", "grad_vec", "grad_matrix"]


@dataclass(frozen=True)
class GradientFactors:
    """Everything the Jacobian of a projection depends on.

    ``boundary_unreliable`` is set when some input entry was within the
    requested tolerance of the shift: the formula still evaluates there,
    but the projection is not differentiable on the tie set itself, so the
    result should not be trusted.
    """

    n: int
    support: np.ndarray
    p_tilde: np.ndarray
    lambda1: float
    lambda2: float
    a: float
    b: float
    boundary_unreliable: bool = False

    @property
    def d(self) -> int:
        return self.support.size


def gradient_factors(
    result: ProjectionResult,
    target: SparsenessTarget,
    boundary_tol: float | None = None,
) -> GradientFactors:
    """Capture gradient factors from a projection result.

    ``boundary_tol`` defaults to ``1e-9 * x_max``; the factors are flagged
    unreliable when the smallest input-to-shift distance does not exceed it.
    """
    if boundary_tol is None:
        boundary_tol = 1e-9 * result.x_max
    support = result.support
    return GradientFactors(
        n=result.p.size,
        support=support,
        p_tilde=np.array(result.p[support], copy=True),
        lambda1=target.lambda1,
        lambda2=target.lambda2,
        a=result.a,
        b=result.b,
        boundary_unreliable=not result.boundary_gap > boundary_tol,
    )


def _check_factors(factors: GradientFactors) -> None:
    if not (factors.a > 0.0 and factors.b > 0.0):
        raise ValueError(
            f"degenerate gradient: a={factors.a!r}, b={factors.b!r} must both be positive"
        )


def grad_vec(factors: GradientFactors, y) -> np.ndarray:
    """Product of the projection Jacobian with ``y`` in O(n) operations.

    Coordinates of the result off the projection support are zero.
    """
    _check_factors(factors)
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (factors.n,):
        raise ValueError(f"expected a vector of length {factors.n}, got shape {y.shape}")
    idx = factors.support
    pt = factors.p_tilde
    yt = y[idx]
    sum_y = float(yt.sum())
    scp = float(pt @ yt)
    d = idx.size
    lam1, lam2 = factors.lambda1, factors.lambda2
    inv_sab = 1.0 / math.sqrt(factors.a * factors.b)

    zt = math.sqrt(factors.b / factors.a) * yt
    zt += (inv_sab * (lam1 * sum_y - d * scp)) * pt
    zt += inv_sab * (lam1 * scp - lam2 * lam2 * sum_y)

    z = np.zeros_like(y)
    z[idx] = zt
    return z


def grad_matrix(factors: GradientFactors, n: int) -> np.ndarray:
    """Dense n-by-n projection Jacobian; a test helper for moderate ``n``.

    Agrees with ``grad_vec`` on every input vector and is exactly symmetric
    by construction.
    """
    _check_factors(factors)
    if n != factors.n:
        raise ValueError(f"factors describe dimension {factors.n}, got n={n}")
    idx = factors.support
    pt = factors.p_tilde
    d = idx.size
    lam1, lam2 = factors.lambda1, factors.lambda2
    ones = np.ones(d)

    block = math.sqrt(factors.b / factors.a) * np.eye(d)
    block -= (
        lam2 * lam2 * np.outer(ones, ones)
        + d * np.outer(pt, pt)
        - lam1 * (np.outer(ones, pt) + np.outer(pt, ones))
    ) / math.sqrt(factors.a * factors.b)

    full = np.zeros((n, n))
    full[np.ix_(idx, idx)] = block
    return full
