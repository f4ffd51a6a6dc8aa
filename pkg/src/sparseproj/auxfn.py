"""Single-pass evaluation of the auxiliary function and its companions.

For a nonnegative vector ``x`` and target norms ``(lambda1, lambda2)``, the
auxiliary function of the shrink threshold ``alpha`` is

    psi(alpha) = l1(alpha) / l2(alpha) - lambda1 / lambda2,

where ``l1`` and ``l2`` are the norms of the soft-shrunk vector
``max(x - alpha, 0)``.  Its unique zero determines the sparseness
projection.  One scan of ``x`` yields, in constant additional space:

* ``psi`` and its first two one-sided derivatives,
* the squared-ratio variant ``psi_tilde = (l1/l2)^2 - (lambda1/lambda2)^2``
  (same sign and zero as ``psi``) and its derivative,
* the neighboring entry values bracketing ``alpha``, and
* a ``finished`` flag that certifies the zero lies between those neighbors.

The derivatives follow from ``l1(a) = ell1 - d*a`` and
``l2(a)^2 = ell2_sq - 2*a*ell1 + d*a^2`` on the interval between adjacent
entry values, where ``ell1``, ``ell2_sq`` and ``d`` accumulate the entries
strictly above ``alpha``:

    psi'  = (l1^2/l2^2 - d) / l2
    psi'' = 3 * psi' * l1 / l2^2
    psi_tilde' = 2 * (l1/l2) * psi'

The same two accumulators evaluated at the neighbor values decide
``finished`` without touching ``x`` again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._kernels import aux_scan
from .core import as_vector

__all__ = ["AuxEvaluation", "evaluate_aux"]


@dataclass(frozen=True)
class AuxEvaluation:
    """Result of one auxiliary-function evaluation at a shift ``alpha``.

    ``ell1`` and ``ell2_sq`` are the *unshifted* partial masses
    ``sum(x_i)`` and ``sum(x_i^2)`` over the ``d`` entries above ``alpha``;
    the shifted values ``l1(alpha)``, ``l2(alpha)^2`` used in ``psi`` are
    derived from them.  ``bracket_lo`` is the largest entry at or below
    ``alpha`` (0 if none) and ``bracket_hi`` the smallest entry above it.
    When ``finished`` is true the unique zero of ``psi`` lies in
    ``[bracket_lo, bracket_hi)`` and the closed form applies.
    """

    psi: float
    psi_prime: float
    psi_second: float
    psi_tilde: float
    psi_tilde_prime: float
    finished: bool
    ell1: float
    ell2_sq: float
    d: int
    bracket_lo: float
    bracket_hi: float


def _check_lambdas(n: int, lambda1: float, lambda2: float) -> None:
    if not 0.0 < lambda2 < lambda1 < math.sqrt(n) * lambda2:
        raise ValueError(
            "target norms must satisfy 0 < lambda2 < lambda1 < sqrt(n)*lambda2; "
            f"got lambda1={lambda1}, lambda2={lambda2}, n={n}"
        )


def evaluate_aux(x, lambda1: float, lambda2: float, alpha: float) -> AuxEvaluation:
    """Evaluate the auxiliary function at ``alpha`` in one pass over ``x``.

    Parameters
    ----------
    x : array_like
        Nonnegative vector; not validated entrywise here (the projection
        entry point validates once).
    lambda1, lambda2 : float
        Target norms with ``0 < lambda2 < lambda1 < sqrt(n) * lambda2``.
    alpha : float
        Shift, required to satisfy ``0 <= alpha < max(x)``; outside that
        range the shrunk vector vanishes and the function is undefined.

    Raises
    ------
    ValueError
        If ``alpha`` is negative, or at least ``max(x)`` (detected by an
        empty or numerically vanished survivor set).
    """
    v = as_vector(x)
    _check_lambdas(v.size, lambda1, lambda2)
    alpha = float(alpha)
    if not alpha >= 0.0:
        raise ValueError(f"shift must be nonnegative, got {alpha!r}")

    ell1, ell2_sq, d, lo_val, hi_val = aux_scan(v, alpha)
    if d == 0:
        raise ValueError(f"shift {alpha!r} is not below the maximum entry; nothing survives")

    l1a = ell1 - d * alpha
    l2a_sq = ell2_sq - 2.0 * alpha * ell1 + d * alpha * alpha
    if not l2a_sq > 0.0:
        # Cancellation floor: treat as the alpha >= max(x) domain error.
        raise ValueError(f"shrunk vector vanishes numerically at shift {alpha!r}")
    l2a = math.sqrt(l2a_sq)

    ratio = lambda1 / lambda2
    psi = l1a / l2a - ratio
    psi_tilde = l1a * l1a / l2a_sq - ratio * ratio
    if d == 1:
        # Single survivor: l1 == l2 exactly, so all derivatives vanish on
        # the plateau; the accumulator route would leave cancellation noise.
        psi_prime = 0.0
        psi_second = 0.0
        psi_tilde_prime = 0.0
    else:
        psi_prime = (l1a * l1a / l2a_sq - d) / l2a
        psi_second = 3.0 * psi_prime * l1a / l2a_sq
        psi_tilde_prime = 2.0 * (l1a / l2a) * psi_prime

    # Shift the same accumulators to the neighbor values: the sums over
    # entries strictly above alpha agree with direct recomputation there
    # because boundary ties contribute zero terms.
    l1_lo = ell1 - d * lo_val
    l2_lo = math.sqrt(max(ell2_sq - 2.0 * lo_val * ell1 + d * lo_val * lo_val, 0.0))
    l1_hi = ell1 - d * hi_val
    l2_hi = math.sqrt(max(ell2_sq - 2.0 * hi_val * ell1 + d * hi_val * hi_val, 0.0))
    finished = bool(
        lambda2 * l1_lo >= lambda1 * l2_lo and lambda2 * l1_hi < lambda1 * l2_hi
    )

    return AuxEvaluation(
        psi=psi,
        psi_prime=psi_prime,
        psi_second=psi_second,
        psi_tilde=psi_tilde,
        psi_tilde_prime=psi_tilde_prime,
        finished=finished,
        ell1=ell1,
        ell2_sq=ell2_sq,
        d=int(d),
        bracket_lo=float(lo_val),
        bracket_hi=float(hi_val),
    )
