"""Benchmark harness: count auxiliary-function evaluations per solver.

For every grid cell ``(n, sigma_star)`` and trial index, a random vector
with i.i.d. uniform(0, 1) entries is drawn from a counter-based generator
keyed by ``(base seed, n, sigma_star, trial)``.  The key does not involve
the solver, so every solver projects the *same* vectors, making the
per-cell evaluation counts directly comparable.  Records stream out in
``(n, sigma_star, solver, trial)`` order regardless of how they were
produced, and everything except the measured wall time is a pure function
of the configuration.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import derive_norms
from .projection import project_inplace
from .rootfind import SolverKind

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "CSV_HEADER",
    "trial_seed",
    "trial_vector",
    "run_benchmark",
    "write_csv",
]

CSV_HEADER = "n,sigma_star,solver,evals,seed,wall_ns"

_ALL_SOLVERS = (
    SolverKind.BISECTION,
    SolverKind.NEWTON,
    SolverKind.NEWTONSQR,
    SolverKind.HALLEY,
)


@dataclass(frozen=True)
class BenchConfig:
    """Benchmark grid: dimensions, target sparseness values, trials per cell."""

    n_list: tuple[int, ...]
    sigma_list: tuple[float, ...]
    trials: int = 100
    solvers: tuple[SolverKind, ...] = _ALL_SOLVERS
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        object.__setattr__(self, "sigma_list", tuple(float(s) for s in self.sigma_list))
        object.__setattr__(self, "solvers", tuple(SolverKind(s) for s in self.solvers))
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if any(n < 4 for n in self.n_list):
            raise ValueError("benchmark dimensions must be at least 4")
        if any(not 0.0 < s < 1.0 for s in self.sigma_list):
            raise ValueError("target sparseness values must lie strictly in (0, 1)")


@dataclass(frozen=True)
class BenchRecord:
    """One projection trial: grid cell, solver, evaluation count, timing."""

    n: int
    sigma_star: float
    solver: SolverKind
    evals: int
    seed: int
    wall_ns: int


def trial_seed(base_seed: int, n: int, sigma_star: float, trial: int) -> int:
    """Deterministic 64-bit key for one (cell, trial); solver-independent."""
    sigma_bits = int(np.float64(sigma_star).view(np.uint64))
    ss = np.random.SeedSequence([int(base_seed), int(n), sigma_bits, int(trial)])
    return int(ss.generate_state(1, np.uint64)[0])


def trial_vector(seed: int, n: int) -> np.ndarray:
    """The uniform(0, 1) input vector identified by a trial seed."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    return rng.random(n)


def run_benchmark(config: BenchConfig):
    """Yield one ``BenchRecord`` per (n, sigma_star, solver, trial), in order."""
    for n in config.n_list:
        for sigma_star in config.sigma_list:
            target = derive_norms(sigma_star, n)
            for solver in config.solvers:
                for trial in range(config.trials):
                    seed = trial_seed(config.seed, n, sigma_star, trial)
                    x = trial_vector(seed, n)
                    t0 = time.perf_counter_ns()
                    result = project_inplace(x, target, solver)
                    wall_ns = time.perf_counter_ns() - t0
                    yield BenchRecord(
                        n=n,
                        sigma_star=sigma_star,
                        solver=solver,
                        evals=result.evals,
                        seed=seed,
                        wall_ns=max(int(wall_ns), 1),
                    )


def write_csv(config: BenchConfig, stream) -> int:
    """Stream benchmark records to ``stream`` as CSV; returns the row count.

    The leading comment line records the input distribution and base seed.
    If memory runs out at a large dimension, the rows produced so far
    remain valid and a trailing ``# truncated`` comment marks the cutoff.
    """
    stream.write(f"# input: iid uniform(0,1) entries, philox keyed on (seed,n,sigma,trial), base seed {config.seed}\n")
    stream.write(CSV_HEADER + "\n")
    rows = 0
    try:
        for rec in run_benchmark(config):
            stream.write(
                f"{rec.n},{rec.sigma_star!r},{rec.solver.value},{rec.evals},{rec.seed},{rec.wall_ns}\n"
            )
            rows += 1
    except MemoryError:
        stream.write("# truncated: allocation failure, remaining cells skipped\n")
    return rows
