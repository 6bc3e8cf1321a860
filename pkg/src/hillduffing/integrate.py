"""Thin wrapper around scipy's embedded Runge-Kutta steppers.

Adds the two behaviours the library contracts require and scipy's
``solve_ivp`` does not expose directly: a hard cap on the number of
accepted steps (so pathological coefficients cannot hang a scan cell) and
an ``IntegrationFailure`` raised on step-size underflow.  All integrations
in the library go through these two entry points, with rtol = atol = tol.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.integrate import DOP853

from .errors import IntegrationFailure

DEFAULT_MAX_STEPS = 10_000_000


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not 1e-12 <= tol <= 1e-6:
        raise ValueError(f"tolerance must lie in [1e-12, 1e-6], got {tol!r}")
    return tol


def solve_final(
    rhs: Callable[[float, np.ndarray], Sequence[float]],
    t0: float,
    t1: float,
    y0: Sequence[float],
    tol: float,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> np.ndarray:
    """Integrate y' = rhs(t, y) from t0 to t1 and return y(t1)."""
    tol = _check_tol(tol)
    y0 = np.asarray(y0, dtype=float)
    if t1 == t0:
        return y0.copy()
    solver = DOP853(rhs, t0, y0, t1, rtol=tol, atol=tol)
    steps = 0
    while solver.status == "running":
        solver.step()
        steps += 1
        if steps > max_steps:
            raise IntegrationFailure(f"step cap {max_steps} exceeded at t={solver.t}")
    if solver.status == "failed":
        raise IntegrationFailure(f"step size underflow at t={solver.t}")
    return solver.y


def solve_sampled(
    rhs: Callable[[float, np.ndarray], Sequence[float]],
    t0: float,
    t1: float,
    y0: Sequence[float],
    tol: float,
    t_samples: np.ndarray,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> np.ndarray:
    """Integrate and evaluate the dense output on ``t_samples``.

    ``t_samples`` must be increasing and contained in [t0, t1].  Returns an
    array of shape (len(t_samples), len(y0)).
    """
    tol = _check_tol(tol)
    y0 = np.asarray(y0, dtype=float)
    t_samples = np.asarray(t_samples, dtype=float)
    out = np.empty((t_samples.size, y0.size))
    filled = 0
    if t_samples.size and t_samples[0] == t0:
        out[0] = y0
        filled = 1
    solver = DOP853(rhs, t0, y0, t1, rtol=tol, atol=tol)
    steps = 0
    while solver.status == "running":
        solver.step()
        steps += 1
        if steps > max_steps:
            raise IntegrationFailure(f"step cap {max_steps} exceeded at t={solver.t}")
        if solver.status == "failed":
            raise IntegrationFailure(f"step size underflow at t={solver.t}")
        hi = np.searchsorted(t_samples, solver.t, side="right")
        if hi > filled:
            dense = solver.dense_output()
            out[filled:hi] = dense(t_samples[filled:hi]).T
            filled = hi
    if filled < t_samples.size:
        # trailing samples equal t1 up to rounding of the final step
        out[filled:] = solver.y
    return out
