"""Domain types, the normalized sparseness measure, and input validation.

The sparseness of a nonzero vector ``x`` in R^n is measured by the
normalized ratio of its L1 and L2 norms (Hoyer, 2004):

    sigma(x) = (sqrt(n) - ||x||_1 / ||x||_2) / (sqrt(n) - 1)

``sigma`` is 0 exactly when all entries are equal and nonzero, 1 exactly
when a single entry is nonzero, and is invariant under nonzero rescaling.
A target degree of sparseness ``sigma_star`` in (0, 1) is realized on the
non-convex set

    D = { s >= 0 : ||s||_1 = lambda1 and ||s||_2 = lambda2 }

once the two norm targets are chosen compatibly, which requires
``0 < lambda2 < lambda1 < sqrt(n) * lambda2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SparsenessTarget",
    "ValidationStatus",
    "DegenerateInputError",
    "SolverError",
    "sigma",
    "derive_norms",
    "validate_input",
    "as_vector",
]

# Smallest positive normal double; an L2 norm below this is treated as an
# underflow rather than used as a denominator.
_NORM_FLOOR = float(np.finfo(np.float64).tiny)

# Relative tolerance for deciding that a vector already satisfies both norm
# constraints (membership in D up to roundoff).
_MEMBERSHIP_RTOL = 1e-12


class DegenerateInputError(ValueError):
    """The projection of this input is not unique.

    Raised for inputs whose positive entries all share a single value: the
    target set is permutation invariant, so such inputs sit equidistant from
    several points of D whenever sparseness must be increased.
    """


class SolverError(RuntimeError):
    """Root finding exhausted its evaluation budget without certifying a
    bracketing interval.  This indicates pathological floating-point
    behavior or an input whose projection is not unique."""


class ValidationStatus(enum.Enum):
    """Outcome of a pre-projection diagnostic check."""

    OK_INCREASE = "ok-increase"
    OK_DECREASE = "ok-decrease"
    ALREADY_IN_D = "already-in-D"
    REJECT_NEGATIVE = "reject-negative"
    REJECT_ZERO = "reject-zero"
    REJECT_DIMENSION = "reject-dimension"


@dataclass(frozen=True)
class SparsenessTarget:
    """Target norms (lambda1, lambda2) for dimension ``n``.

    The constructor enforces ``0 < lambda2 < lambda1 < sqrt(n) * lambda2``,
    which is exactly the condition for the implied target sparseness to lie
    strictly between 0 and 1.
    """

    n: int
    lambda1: float
    lambda2: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n!r}")
        if not (self.lambda2 > 0.0 and math.isfinite(self.lambda2)):
            raise ValueError(f"lambda2 must be positive and finite, got {self.lambda2!r}")
        if not (self.lambda1 > 0.0 and math.isfinite(self.lambda1)):
            raise ValueError(f"lambda1 must be positive and finite, got {self.lambda1!r}")
        if not self.lambda2 < self.lambda1 < math.sqrt(self.n) * self.lambda2:
            raise ValueError(
                "target norms must satisfy lambda2 < lambda1 < sqrt(n)*lambda2; "
                f"got lambda1={self.lambda1}, lambda2={self.lambda2}, n={self.n}"
            )

    @property
    def sigma_star(self) -> float:
        """The sparseness value every point of D attains."""
        rn = math.sqrt(self.n)
        return (rn - self.lambda1 / self.lambda2) / (rn - 1.0)


def as_vector(x) -> np.ndarray:
    """Coerce ``x`` to a 1-D contiguous float64 array (copying if needed)."""
    v = np.ascontiguousarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    return v


def sigma(x) -> float:
    """Normalized L1/L2 sparseness of a nonzero vector, in [0, 1].

    Raises
    ------
    ValueError
        If the vector has fewer than 2 entries, is zero, contains
        non-finite values, or its L2 norm underflows.
    """
    v = as_vector(x)
    n = v.size
    if n < 2:
        raise ValueError("sparseness is undefined for vectors with fewer than 2 entries")
    l1 = float(np.abs(v).sum())
    l2 = float(np.linalg.norm(v))
    if not math.isfinite(l1):
        raise ValueError("vector entries must be finite")
    if l2 < _NORM_FLOOR:
        raise ValueError("sparseness is undefined for the zero vector (L2 norm underflow)")
    rn = math.sqrt(n)
    s = (rn - l1 / l2) / (rn - 1.0)
    # Roundoff can push the ratio a few ulp outside [0, 1].
    return min(1.0, max(0.0, s))


def derive_norms(sigma_star: float, n: int, lambda2: float = 1.0) -> SparsenessTarget:
    """Invert the sparseness measure: fix ``lambda2`` and solve for the L1
    target that realizes ``sigma_star`` in dimension ``n``.

    ``sigma_star`` must lie strictly in (0, 1); at the boundary values the
    target set degenerates to a single orbit of trivial vectors.
    """
    if not (0.0 < sigma_star < 1.0):
        raise ValueError(f"target sparseness must lie strictly in (0, 1), got {sigma_star!r}")
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n!r}")
    rn = math.sqrt(n)
    lambda1 = lambda2 * (rn - sigma_star * (rn - 1.0))
    return SparsenessTarget(n=int(n), lambda1=float(lambda1), lambda2=float(lambda2))


def validate_input(x, target: SparsenessTarget) -> ValidationStatus:
    """Diagnostic check of a projection input against a target.

    Never raises; returns one of the ``ValidationStatus`` values.  Entries
    that are not finite nonnegative reals (NaN, infinities, negatives) are
    reported as ``REJECT_NEGATIVE`` since they fall outside the nonnegative
    domain of the projection.
    """
    try:
        v = as_vector(x)
    except (ValueError, TypeError):
        return ValidationStatus.REJECT_DIMENSION
    if v.size != target.n:
        return ValidationStatus.REJECT_DIMENSION
    if not np.all(v >= 0.0) or not math.isfinite(float(v.max(initial=0.0))):
        return ValidationStatus.REJECT_NEGATIVE
    l2 = float(np.linalg.norm(v))
    if l2 < _NORM_FLOOR:
        return ValidationStatus.REJECT_ZERO
    l1 = float(v.sum())
    if (
        abs(l1 - target.lambda1) <= _MEMBERSHIP_RTOL * target.lambda1
        and abs(l2 - target.lambda2) <= _MEMBERSHIP_RTOL * target.lambda2
    ):
        return ValidationStatus.ALREADY_IN_D
    if sigma(v) < target.sigma_star:
        return ValidationStatus.OK_INCREASE
    return ValidationStatus.OK_DECREASE
