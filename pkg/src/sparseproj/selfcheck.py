"""Desk-scale verification suites behind the ``selfcheck`` CLI command.

Each suite runs a seeded, fixed-size slice of the full property checks:
oracle equivalence, exact-minimizer agreement, feasibility/idempotence,
gradient verification against central differences, and the analytic
behavior of the auxiliary function.  Intended as a fast release gate, not
a replacement for the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gradient as _gradient
from . import oracle as _oracle
from . import projection as _projection
from .auxfn import evaluate_aux
from .core import derive_norms, sigma

__all__ = ["SuiteResult", "run_selfcheck"]


@dataclass
class SuiteResult:
    name: str
    checks: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def _suite_oracle_equivalence() -> SuiteResult:
    rng = _rng(101)
    checks = failures = 0
    for n in (4, 16, 64):
        for s in (0.2, 0.5, 0.8):
            target = derive_norms(s, n)
            for _ in range(25):
                x = rng.random(n)
                p = _projection.project(x, target).p
                q = _oracle.project_sorted(x, target).p_oracle
                checks += 1
                if np.max(np.abs(p - q)) > 1e-9 * target.lambda2:
                    failures += 1
    return SuiteResult("oracle-equivalence", checks, failures)


def _suite_exact_minimizer() -> SuiteResult:
    rng = _rng(202)
    checks = failures = 0
    for n in (4, 6, 8):
        for s in (0.3, 0.6):
            target = derive_norms(s, n)
            for _ in range(25):
                x = rng.random(n)
                report = _oracle.project_bruteforce(x, target)
                if report.tie:
                    continue
                p = _projection.project(x, target).p
                checks += 1
                if np.max(np.abs(p - report.p_oracle)) > 1e-9:
                    failures += 1
    return SuiteResult("exact-minimizer", checks, failures)


def _suite_feasibility_idempotence() -> SuiteResult:
    rng = _rng(303)
    checks = failures = 0
    for n in (4, 32, 256):
        for s in (0.25, 0.5, 0.75):
            target = derive_norms(s, n)
            for _ in range(10):
                x = rng.random(n)
                res = _projection.project(x, target)
                p = res.p
                ok = (
                    abs(p.sum() - target.lambda1) <= 1e-9 * target.lambda1
                    and abs(np.linalg.norm(p) - target.lambda2) <= 1e-9 * target.lambda2
                    and abs(sigma(p) - target.sigma_star) <= 1e-9
                )
                again = _projection.project(p, target).p
                ok = ok and np.max(np.abs(again - p)) <= 1e-9
                checks += 1
                if not ok:
                    failures += 1
    return SuiteResult("feasibility-idempotence", checks, failures)


def _suite_gradient() -> SuiteResult:
    rng = _rng(404)
    checks = failures = 0
    for n in (4, 16):
        # sigma* = 0.5 keeps the survivor count above 2: with d = 2 the
        # Jacobian vanishes identically and difference quotients carry
        # only amplified rounding noise.
        target = derive_norms(0.5, n)
        done = 0
        while done < 10:
            x = rng.random(n)
            res = _projection.project(x, target)
            if res.boundary_gap <= 1e-3:
                continue
            done += 1
            factors = _gradient.gradient_factors(res, target)
            analytic = _gradient.grad_matrix(factors, n)
            fd = _oracle.jacobian_fd(x, target, h=1e-6)
            cols = ~fd.suspect
            scale = float(np.abs(fd.matrix).max())
            agree = np.allclose(
                analytic[:, cols],
                fd.matrix[:, cols],
                rtol=1e-5,
                atol=max(1e-5 * scale, 1e-7),
            )
            null = (
                np.linalg.norm(_gradient.grad_vec(factors, res.p)) <= 1e-10 * target.lambda2
            )
            checks += 1
            if not (agree and null):
                failures += 1
    return SuiteResult("gradient", checks, failures)


def _suite_aux_analytics() -> SuiteResult:
    rng = _rng(505)
    checks = failures = 0
    n = 128
    target = derive_norms(0.6, n)
    lam1, lam2 = target.lambda1, target.lambda2
    for _ in range(10):
        x = rng.random(n)
        values = np.sort(np.unique(x))
        second, top = values[-2], values[-1]
        grid = np.linspace(0.0, second * 0.999, 24)
        psis = [evaluate_aux(x, lam1, lam2, a).psi for a in grid]
        monotone = all(p1 > p2 for p1, p2 in zip(psis, psis[1:]))
        plateau = [
            evaluate_aux(x, lam1, lam2, a).psi
            for a in np.linspace(second, second + 0.5 * (top - second), 5)
        ]
        flat = max(plateau) - min(plateau) <= 1e-9 * (1.0 + abs(plateau[0]))
        mids = (values[:-1] + values[1:]) / 2.0
        mids = mids[mids < second]
        h = 1e-6 * top
        fd_ok = True
        for a in mids[:: max(1, len(mids) // 8)]:
            lo = evaluate_aux(x, lam1, lam2, a - h)
            hi = evaluate_aux(x, lam1, lam2, a + h)
            mid = evaluate_aux(x, lam1, lam2, a)
            fd = (hi.psi - lo.psi) / (2.0 * h)
            if abs(fd - mid.psi_prime) > 1e-5 * max(1.0, abs(mid.psi_prime)):
                fd_ok = False
        checks += 1
        if not (monotone and flat and fd_ok):
            failures += 1
    return SuiteResult("aux-analytics", checks, failures)


_SUITES = (
    ("oracle-equivalence", _suite_oracle_equivalence),
    ("exact-minimizer", _suite_exact_minimizer),
    ("feasibility-idempotence", _suite_feasibility_idempotence),
    ("gradient", _suite_gradient),
    ("aux-analytics", _suite_aux_analytics),
)


def run_selfcheck(stream=None) -> list[SuiteResult]:
    """Run all suites, print a summary table, and return the results.

    A suite that raises counts as failed: a broken build must not be able
    to crash its way past the gate.
    """
    results = []
    for name, suite in _SUITES:
        try:
            results.append(suite())
        except Exception:
            results.append(SuiteResult(name, checks=1, failures=1))
    if stream is not None:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            stream.write(
                f"{r.name:<{width}}  checks={r.checks:<4d} failures={r.failures:<4d} {status}\n"
            )
        overall = "PASS" if all(r.passed for r in results) else "FAIL"
        stream.write(f"selfcheck: {overall}\n")
    return results
