"""Monodromy matrices and Floquet classification for Hill equations.

A Hill equation is xi'' + p(t) xi = 0 with p periodic of least period T.
The principal fundamental matrix at t = T (the monodromy matrix) decides
stability: both Floquet multipliers lie on the unit circle exactly when
|trace| <= 2.  This module builds the periodic coefficients used
throughout the library, integrates the monodromy matrix with an adaptive
embedded Runge-Kutta pair, and verifies the three closed-form resonant
solutions built from Jacobi functions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import elliptic
from .duffing import DuffingParams, period
from .errors import DomainError
from .integrate import DEFAULT_MAX_STEPS, solve_final

DEFAULT_TOL = 1e-10
DEFAULT_TOL_BOUNDARY = 1e-4


class Stability(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class PeriodicCoefficient:
    """A periodic coefficient p(t) with its least period and metadata.

    ``analytic_min``/``analytic_max`` are exact bounds when known (the
    stability criteria prefer them over sampling).  ``single_extremum_pair``
    records whether p attains a unique maximum and a unique minimum per
    period, a precondition of the phase-integral criterion.
    """

    func: Callable[[float], float]
    period: float
    analytic_min: float | None = None
    analytic_max: float | None = None
    single_extremum_pair: bool = False
    label: str = ""

    def __call__(self, t: float) -> float:
        return self.func(t)


@dataclass(frozen=True)
class MonodromyReport:
    """Monodromy matrix over one coefficient period and its classification.

    ``det_residual`` is |det M - 1|; the system is trace-free so the
    Wronskian is conserved and the residual doubles as an integration
    error estimate.  The multipliers are the eigenvalues of M, computed
    from the trace through the det = 1 constraint.
    """

    matrix: np.ndarray
    trace: float
    multipliers: tuple[complex, complex]
    classification: Stability
    det_residual: float
    tol: float = field(default=DEFAULT_TOL, compare=False)


def squared_duffing_coefficient(delta: float, gamma: float) -> PeriodicCoefficient:
    """Coefficient p(t) = gamma + y(t)^2 with y the unscaled Duffing solution.

    The square halves the period: p has least period T(delta)/2, minimum
    gamma (y vanishes at quarter period) and maximum gamma + delta^2, each
    attained once per period.  All criteria are applied with this halved
    period.
    """
    if delta == 0.0:
        raise DomainError("delta = 0 makes the coefficient constant")
    params = DuffingParams(delta)
    rate = params.argument_rate
    k = params.modulus
    d2 = float(delta) * float(delta)
    g = float(gamma)

    def p(t: float) -> float:
        cn = elliptic.jacobi(rate * t, k).cn
        return g + d2 * cn * cn

    return PeriodicCoefficient(
        func=p,
        period=period(params) / 2.0,
        analytic_min=g,
        analytic_max=g + d2,
        single_extremum_pair=True,
        label=f"squared_duffing(delta={delta}, gamma={gamma})",
    )


def omega_coefficient(delta: float, omega: float) -> PeriodicCoefficient:
    """Coefficient p(t) = omega + Theta(t)^2 for the omega-scaled solution.

    Reduces to ``squared_duffing_coefficient(delta, gamma=1)`` at
    omega = 1.  Period is T_omega(delta)/2, bounds are [omega,
    omega + delta^2].
    """
    if delta == 0.0:
        raise DomainError("delta = 0 makes the coefficient constant")
    params = DuffingParams(delta, omega)
    rate = params.argument_rate
    k = params.modulus
    d2 = float(delta) * float(delta)
    w = float(omega)

    def p(t: float) -> float:
        cn = elliptic.jacobi(rate * t, k).cn
        return w + d2 * cn * cn

    return PeriodicCoefficient(
        func=p,
        period=period(params) / 2.0,
        analytic_min=w,
        analytic_max=w + d2,
        single_extremum_pair=True,
        label=f"omega_coefficient(delta={delta}, omega={omega})",
    )


def mathieu_coefficient(a: float, q: float) -> PeriodicCoefficient:
    """Cross-validation fixture p(t) = a + 2 q cos(2 t) of period pi."""
    a = float(a)
    q = float(q)

    def p(t: float) -> float:
        return a + 2.0 * q * math.cos(2.0 * t)

    return PeriodicCoefficient(
        func=p,
        period=math.pi,
        analytic_min=a - 2.0 * abs(q),
        analytic_max=a + 2.0 * abs(q),
        single_extremum_pair=q != 0.0,
        label=f"mathieu(a={a}, q={q})",
    )


def classify_trace(trace: float, tol_boundary: float = DEFAULT_TOL_BOUNDARY) -> Stability:
    """Classify a monodromy trace against the |trace| = 2 resonance level."""
    if abs(trace) < 2.0 - tol_boundary:
        return Stability.STABLE
    if abs(trace) > 2.0 + tol_boundary:
        return Stability.UNSTABLE
    return Stability.BOUNDARY


def multipliers_from_trace(trace: float) -> tuple[complex, complex]:
    """Floquet multipliers (tr +- sqrt(tr^2 - 4)) / 2 using det = 1."""
    disc = complex(trace * trace - 4.0)
    root = disc**0.5
    return ((trace + root) / 2.0, (trace - root) / 2.0)


def monodromy(
    p: PeriodicCoefficient,
    tol: float = DEFAULT_TOL,
    tol_boundary: float = DEFAULT_TOL_BOUNDARY,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> MonodromyReport:
    """Integrate the principal fundamental matrix of xi'' + p(t) xi = 0.

    Both canonical columns, (1, 0) and (0, 1), are advanced together over
    one coefficient period with absolute and relative tolerance ``tol``.
    The coefficient is always evaluated analytically inside the integrator,
    never interpolated, so special-function error cannot compound with the
    stepping error.

    Raises
    ------
    IntegrationFailure
        If the step count exceeds ``max_steps`` or the step size
        underflows.
    """
    pf = p.func

    def rhs(t: float, y: np.ndarray):
        pt = pf(t)
        return (y[1], -pt * y[0], y[3], -pt * y[2])

    yT = solve_final(rhs, 0.0, p.period, (1.0, 0.0, 0.0, 1.0), tol, max_steps)
    matrix = np.array([[yT[0], yT[2]], [yT[1], yT[3]]])
    trace = float(yT[0] + yT[3])
    det = float(yT[0] * yT[3] - yT[2] * yT[1])
    return MonodromyReport(
        matrix=matrix,
        trace=trace,
        multipliers=multipliers_from_trace(trace),
        classification=classify_trace(trace, tol_boundary),
        det_residual=abs(det - 1.0),
        tol=tol,
    )


class ExactLine(enum.Enum):
    """The three resonant lines with closed-form solutions.

    CN_AT_GAMMA_ONE:        xi = cn(t sqrt(1+delta^2)) solves at gamma = 1
    SN_AT_PARABOLA:         xi = sn(...) solves at gamma = 1 + delta^2/2
    DN_AT_NEGATIVE_PARABOLA: xi = dn(...) solves at gamma = -delta^2/2
    """

    CN_AT_GAMMA_ONE = "cn_at_gamma_one"
    SN_AT_PARABOLA = "sn_at_parabola"
    DN_AT_NEGATIVE_PARABOLA = "dn_at_negative_parabola"


def exact_solution_residual(kind: ExactLine, delta: float, t_samples) -> float:
    """Max residual |xi'' + (gamma + y^2) xi| of a closed-form solution.

    The second derivative is evaluated analytically through the Jacobi
    derivative identities, so the residual isolates algebra and
    special-function errors; it vanishes identically in exact arithmetic.
    """
    if delta == 0.0:
        raise DomainError("delta must be nonzero")
    params = DuffingParams(delta)
    k = params.modulus
    k2 = k * k
    rate = params.argument_rate
    s2 = rate * rate
    d2 = float(delta) * float(delta)

    gamma = {
        ExactLine.CN_AT_GAMMA_ONE: 1.0,
        ExactLine.SN_AT_PARABOLA: 1.0 + d2 / 2.0,
        ExactLine.DN_AT_NEGATIVE_PARABOLA: -d2 / 2.0,
    }[kind]

    worst = 0.0
    for t in t_samples:
        sn, cn, dn = elliptic.jacobi(rate * float(t), k)
        if kind is ExactLine.CN_AT_GAMMA_ONE:
            xi = cn
            xi_dd = -s2 * cn * (dn * dn - k2 * sn * sn)
        elif kind is ExactLine.SN_AT_PARABOLA:
            xi = sn
            xi_dd = -s2 * sn * (dn * dn + k2 * cn * cn)
        else:
            xi = dn
            xi_dd = -s2 * k2 * dn * (cn * cn - sn * sn)
        p = gamma + d2 * cn * cn
        worst = max(worst, abs(xi_dd + p * xi))
    return worst
