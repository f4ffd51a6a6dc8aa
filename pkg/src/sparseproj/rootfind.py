"""Safeguarded root finding for the auxiliary function.

The zero of the auxiliary function lies strictly between 0 and the
second-largest distinct entry value, where the function is continuous and
strictly decreasing.  Rather than polishing the root numerically, iteration
stops as soon as an evaluation reports ``finished``: the zero is then
pinned between two adjacent entry values and a closed form takes over.

Four iteration policies are provided: plain bisection, Newton on ``psi``,
Newton on the squared-ratio variant ``psi_tilde`` and a clamped Halley
step.  Every derivative-based candidate that leaves the current bracket
(or divides by a vanishing derivative on the terminal plateau) falls back
to the bisection midpoint, so the bracket invariants always hold.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from ._kernels import max_and_runner_up
from .auxfn import AuxEvaluation, evaluate_aux
from .core import DegenerateInputError, SolverError, SparsenessTarget, as_vector

__all__ = ["SolverKind", "SolverState", "init_state", "step", "find_bracket", "MAX_EVALS"]

# Evaluation budget before falling back to forced bisection; far above the
# ~60 steps a 64-bit bisection can usefully make.
MAX_EVALS = 200

# Additional forced-bisection evaluations granted after the budget is hit.
_FORCED_EXTRA = 80


class SolverKind(str, enum.Enum):
    """Iteration policy for locating the certified bracket."""

    BISECTION = "bisection"
    NEWTON = "newton"
    NEWTONSQR = "newtonsqr"
    HALLEY = "halley"


@dataclass(frozen=True)
class SolverState:
    """Bracket ``[lo, up]``, current iterate ``alpha`` and evaluation count.

    Invariants after initialization: ``0 <= lo <= alpha <= up`` with ``up``
    at most the second-largest distinct entry value; the function is
    nonnegative at ``lo`` and negative at ``up`` wherever it has been
    evaluated.
    """

    lo: float
    up: float
    alpha: float
    evals: int = 0


def init_state(x) -> SolverState:
    """Initial bracket ``[0, second-largest distinct value]``, midpoint start.

    Raises
    ------
    DegenerateInputError
        If all positive entries share one value, in which case no bracket
        exists and the projection is not unique.
    """
    v = as_vector(x)
    _, second = max_and_runner_up(v)
    if not second > 0.0:
        raise DegenerateInputError(
            "all positive entries are equal; the sparseness-increasing "
            "projection of such a vector is not unique"
        )
    return SolverState(lo=0.0, up=second, alpha=0.5 * second, evals=0)


def step(state: SolverState, aux: AuxEvaluation, solver: SolverKind) -> SolverState:
    """One safeguarded iteration from ``state.alpha``, where ``aux`` was
    evaluated.

    First shrinks the bracket using the sign of ``psi`` (an exact zero
    counts as positive, keeping the lower edge on the nonnegative side),
    then proposes the next iterate.  Derivative-based proposals outside
    ``[lo, up]`` are replaced by the midpoint.
    """
    if aux.psi >= 0.0:
        lo, up = state.alpha, state.up
    else:
        lo, up = state.lo, state.alpha
    mid = lo + 0.5 * (up - lo)

    if solver is SolverKind.BISECTION:
        new_alpha = mid
    else:
        if solver is SolverKind.NEWTON:
            num, den = aux.psi, aux.psi_prime
        elif solver is SolverKind.NEWTONSQR:
            num, den = aux.psi_tilde, aux.psi_tilde_prime
        elif solver is SolverKind.HALLEY:
            if aux.psi_prime == 0.0:
                num, den = aux.psi, 0.0
            else:
                h = 1.0 - aux.psi * aux.psi_second / (2.0 * aux.psi_prime * aux.psi_prime)
                h = min(1.5, max(0.5, h))
                num, den = aux.psi, h * aux.psi_prime
        else:  # pragma: no cover - closed enumeration
            raise ValueError(f"unknown solver {solver!r}")
        if den == 0.0:
            new_alpha = mid
        else:
            cand = state.alpha - num / den
            new_alpha = cand if lo <= cand <= up else mid

    return replace(state, lo=lo, up=up, alpha=new_alpha)


def find_bracket(
    x,
    target: SparsenessTarget,
    solver: SolverKind = SolverKind.NEWTONSQR,
    max_evals: int = MAX_EVALS,
) -> tuple[AuxEvaluation, int]:
    """Iterate until an evaluation certifies the bracketing interval.

    Requires a sparseness-increasing input (the function is positive at 0)
    with at least two distinct positive entry values.  Returns the finished
    evaluation, whose accumulators determine the exact zero in closed form,
    together with the number of auxiliary-function evaluations spent
    (including the one at the midpoint start).

    If the budget is exhausted the policy switches to plain bisection for a
    bounded number of extra evaluations; failing that, ``SolverError`` is
    raised.
    """
    v = as_vector(x)
    solver = SolverKind(solver)
    state = init_state(v)
    aux = evaluate_aux(v, target.lambda1, target.lambda2, state.alpha)
    evals = 1
    active = solver
    forced = False
    cap = max_evals
    while not aux.finished:
        if evals >= cap:
            if forced:
                raise SolverError(
                    f"no certified bracket after {evals} evaluations with "
                    f"{solver.value} plus forced bisection; the projection "
                    "of this input may not be unique"
                )
            active = SolverKind.BISECTION
            forced = True
            cap = evals + _FORCED_EXTRA
        state = step(state, aux, active)
        aux = evaluate_aux(v, target.lambda1, target.lambda2, state.alpha)
        evals += 1
    return aux, evals
