"""The sparseness-enforcing projection.

Given a nonnegative nonzero vector ``x`` and target norms
``(lambda1, lambda2)``, the Euclidean projection onto

    D = { s >= 0 : ||s||_1 = lambda1 and ||s||_2 = lambda2 }

is, wherever it is unique, a rescaled soft shrink of the input:

    p = lambda2 * max(x - alpha, 0) / ||max(x - alpha, 0)||_2 .

Whenever the surviving index set I = {i : x_i > alpha} is known, the shift
has the closed form

    alpha = (ell1 - lambda1 * sqrt(a / b)) / d,
    a = d * ell2_sq - ell1**2,    b = d * lambda2**2 - lambda1**2,

with ``ell1 = sum_I x_i``, ``ell2_sq = sum_I x_i**2`` and ``d = |I|``; the
scale is ``beta = sqrt(a / b)``.  Two cases arise:

* sparseness must decrease (the input is already at least as sparse as the
  target): every coordinate of the projection is positive, so the closed
  form applies directly with the full index set;
* sparseness must increase: safeguarded root finding locates the two
  adjacent entry values that bracket the zero of the auxiliary function,
  after which the closed form applies with that bracket's survivor set.

Both cases take time linear in ``len(x)`` and constant additional space,
and the shrink loop overwrites the input buffer in place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._kernels import centered_sq_sum, shrink
from .auxfn import evaluate_aux
from .core import SolverError, SparsenessTarget, as_vector
from .rootfind import SolverKind, find_bracket

__all__ = ["ProjectionResult", "closed_form_alpha", "project", "project_inplace"]


@dataclass
class ProjectionResult:
    """Projection ``p`` together with the factors that produced it.

    ``alpha`` and ``beta`` are the shift and scale of the representation
    ``p = max(x - alpha, 0) / beta``; ``a`` and ``b`` are the scalars
    ``d*||x_I||_2^2 - ||x_I||_1^2`` and ``d*lambda2^2 - lambda1^2`` reused
    by the projection gradient.  ``boundary_gap`` is the smallest distance
    between an input entry and ``alpha`` (zero means the projection sits on
    a nondifferentiable boundary), and ``x_max`` the largest input entry;
    both refer to the pre-projection input, which the in-place shrink has
    overwritten.
    """

    p: np.ndarray
    alpha: float
    beta: float
    d: int
    a: float
    b: float
    evals: int
    boundary_gap: float
    x_max: float

    @cached_property
    def support(self) -> np.ndarray:
        """Indices of the strictly positive coordinates, ascending."""
        return np.flatnonzero(self.p)


def _alpha_beta_from_factors(
    ell1: float, d: int, a: float, b: float, lambda1: float
) -> tuple[float, float]:
    """Shift and scale from validated survivor factors (minus-root branch)."""
    beta = math.sqrt(a / b)
    alpha = (ell1 - lambda1 * beta) / d
    return alpha, beta


def closed_form_alpha(
    ell1: float, ell2_sq: float, d: int, lambda1: float, lambda2: float
) -> tuple[float, float]:
    """Exact shift and scale for a known survivor set.

    ``ell1``, ``ell2_sq`` and ``d`` are the L1 mass, squared L2 mass and
    count of the surviving entries.  Of the two roots of the underlying
    quadratic the smaller one is returned; the larger root corresponds to a
    negative scale, which would reverse the order of the coordinates.

    Raises
    ------
    ValueError
        If ``d < 2``, if ``b = d*lambda2^2 - lambda1^2`` is not positive
        (the survivor count cannot carry the target norms), or if
        ``a = d*ell2_sq - ell1^2`` is not positive (all survivors equal, so
        the scale degenerates); for a certified survivor set neither happens.
    """
    if d < 2:
        raise ValueError(f"survivor count must be at least 2, got {d}")
    b = d * lambda2 * lambda2 - lambda1 * lambda1
    if not b > 0.0:
        raise ValueError(
            f"degenerate configuration: d*lambda2^2 - lambda1^2 = {b!r} is not positive"
        )
    a = d * ell2_sq - ell1 * ell1
    if not a > 0.0:
        raise ValueError(
            f"degenerate configuration: d*ell2_sq - ell1^2 = {a!r} is not positive "
            "(all surviving entries equal)"
        )
    return _alpha_beta_from_factors(ell1, d, a, b, lambda1)


def project_inplace(
    x: np.ndarray,
    target: SparsenessTarget,
    solver: SolverKind = SolverKind.NEWTONSQR,
) -> ProjectionResult:
    """Project ``x`` onto the target set, overwriting ``x`` with the result.

    ``x`` must be a writable, C-contiguous 1-D float64 array of length
    ``target.n`` with finite nonnegative entries, not all zero.  The
    returned ``ProjectionResult.p`` aliases ``x``.

    Raises
    ------
    ValueError
        On dtype/layout violations, dimension mismatch, negative or
        non-finite entries, or the zero vector.
    DegenerateInputError
        If sparseness must increase but all positive entries are equal.
    SolverError
        If root finding cannot certify a bracket (see ``find_bracket``).
    """
    if not isinstance(x, np.ndarray) or x.dtype != np.float64 or x.ndim != 1:
        raise ValueError("in-place projection requires a 1-D float64 ndarray")
    if not (x.flags.c_contiguous and x.flags.writeable):
        raise ValueError("in-place projection requires a writable contiguous buffer")
    if x.size != target.n:
        raise ValueError(f"vector has {x.size} entries but the target expects {target.n}")
    mn = float(x.min())
    mx = float(x.max())
    if math.isnan(mn) or math.isinf(mx):
        raise ValueError("entries must be finite")
    if mn < 0.0:
        raise ValueError("entries must be nonnegative")
    if mx == 0.0:
        raise ValueError("cannot project the zero vector")

    lam1, lam2 = target.lambda1, target.lambda2
    screening = evaluate_aux(x, lam1, lam2, 0.0)
    evals = 1
    if screening.psi <= 0.0:
        # Sparseness decreases: every projection coordinate is positive, so
        # the survivor set is the full index set.  Zero entries contribute
        # nothing to either accumulator, so the screening sums already equal
        # the full-vector norms.
        ell1, d = screening.ell1, target.n
        threshold = -math.inf
    else:
        bracket, spent = find_bracket(x, target, solver)
        evals += spent
        ell1, d = bracket.ell1, bracket.d
        # any threshold inside the certified interval selects the survivors
        threshold = bracket.bracket_lo

    # a = d*ell2_sq - ell1^2 evaluated in its variance form: the direct
    # difference cancels catastrophically when the survivors cluster (high
    # target sparseness), and the shift is exquisitely sensitive to a there.
    b = d * lam2 * lam2 - lam1 * lam1
    a = d * centered_sq_sum(x, threshold, ell1 / d)
    if d < 2 or not b > 0.0 or not a > 0.0:
        raise ValueError(
            f"degenerate survivor configuration: d={d}, a={a!r}, b={b!r}"
        )
    alpha, beta = _alpha_beta_from_factors(ell1, d, a, b, lam1)

    rho, d_support, gap, x_max = shrink(x, alpha)
    if not rho > 0.0:
        raise SolverError(
            f"shrink by alpha={alpha!r} annihilated the vector; inconsistent bracket"
        )
    x *= lam2 / math.sqrt(rho)

    return ProjectionResult(
        p=x,
        alpha=float(alpha),
        beta=float(beta),
        d=int(d_support),
        a=float(a),
        b=float(b),
        evals=evals,
        boundary_gap=float(gap),
        x_max=float(x_max),
    )


def project(
    x,
    target: SparsenessTarget,
    solver: SolverKind = SolverKind.NEWTONSQR,
) -> ProjectionResult:
    """Pure-function projection: copies the input, then projects in place."""
    buf = np.array(as_vector(x), dtype=np.float64, copy=True)
    return project_inplace(buf, target, solver)
