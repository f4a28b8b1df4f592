from dataclasses import dataclass
from typing import Callable

import numpy as np

from app import constants
from app.errors import NumericFailure


@dataclass
class SolveResult:
    x: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool


def levenberg_marquardt(fun: Callable[[np.ndarray], np.ndarray],
                        jac: Callable[[np.ndarray], np.ndarray],
                        x0: np.ndarray,
                        max_iters: int = constants.SOLVER_MAX_ITERS,
                        residual_tol: float = constants.SOLVER_RESIDUAL_TOL,
                        damping_init: float = constants.SOLVER_DAMPING_INIT,
                        damping_factor: float = constants.SOLVER_DAMPING_FACTOR,
                        t: int = None) -> SolveResult:
    """Minimize ||fun(x)||^2 with damped Gauss-Newton steps.

    Each step solves the augmented least-squares system [J; sqrt(lam) S] dx = [-r; 0]
    with S the Marquardt column scaling, so the normal equations are never formed.
    Accepted steps divide the damping by `damping_factor`, rejected ones multiply it.
    Non-convergence is reported through the result, not raised.
    """
    x = np.array(x0, dtype=float)
    r = _finite(fun(x), 'residual', t)
    cost = float(r @ r)
    lam = damping_init
    iterations = 0

    while iterations < max_iters and np.sqrt(cost) >= residual_tol:
        iterations += 1
        J = _finite(jac(x), 'jacobian', t)
        col = np.sqrt(np.maximum(np.sum(J * J, axis=0), 1e-12))
        A = np.vstack([J, np.sqrt(lam) * np.diag(col)])
        rhs = np.concatenate([-r, np.zeros(x.size)])
        step = np.linalg.lstsq(A, rhs, rcond=None)[0]

        candidate = x + step
        r_new = fun(candidate)
        cost_new = float(r_new @ r_new) if np.all(np.isfinite(r_new)) else np.inf
        if cost_new < cost:
            x, r, cost = candidate, r_new, cost_new
            lam = max(lam / damping_factor, 1e-15)
            if np.linalg.norm(step) <= 1e-15 * (np.linalg.norm(x) + 1e-15):
                break
        else:
            lam *= damping_factor
            if lam > constants.SOLVER_DAMPING_MAX:
                break

    norm = float(np.sqrt(cost))
    return SolveResult(x=x, residual_norm=norm, iterations=iterations, converged=norm < residual_tol)


def _finite(values, what: str, t: int) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericFailure(f'non-finite {what} during least-squares iteration', t=t)
    return values
