"""Sufficient stability criteria for Hill equations and their reductions.

Three classical tests are implemented against the ``PeriodicCoefficient``
surface: an L^2 test comparing T^3 * int p^2 with (64/3) sigma^4, an
interval test trapping p between consecutive squared harmonics, and the
phase-integral test comparing int sqrt(p) +- (1/2) log(max p / min p)
with a window (l pi, (l+1) pi).  All are sufficient only: the outcome is
either a guarantee of stability or "inconclusive", never a claim of
instability.

For the squared-Duffing coefficients, the phase integral reduces to the
closed forms ``phi`` (gamma plane) and ``psi`` (omega plane), and the L^2
quantity at gamma = 0 reduces to ``g_function``; each reduction is an
integral over a quarter phase of the underlying oscillation and is
evaluated by adaptive quadrature, independent of any time stepping.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .elliptic import sigma_constant
from .errors import DomainError
from .hill import PeriodicCoefficient

# absolute target for the closed-form quadratures
_QUAD_EPS = 1e-12
# strict inequalities hold only with at least this margin, so round-off
# can never flip a sufficient condition
_MARGIN = 1e-10

_SAMPLE_COUNT = 10_000


class Criterion(enum.Enum):
    LI_ZHANG = "li_zhang"
    ZHUKOVSKII = "zhukovskii"
    BURDINA = "burdina"


class Outcome(enum.Enum):
    GUARANTEED_STABLE = "guaranteed_stable"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one sufficient stability test.

    ``witness_ell`` is the index of the harmonic window that certifies
    stability (present whenever the interval or phase-integral test
    succeeds).  ``quantities`` holds the evaluated numbers so callers can
    report margins; ``note`` explains inconclusive outcomes.
    """

    criterion: Criterion
    outcome: Outcome
    witness_ell: int | None = None
    quantities: dict[str, float] = field(default_factory=dict)
    note: str = ""

    @property
    def guaranteed_stable(self) -> bool:
        return self.outcome is Outcome.GUARANTEED_STABLE


def _sampled_bounds(p: PeriodicCoefficient) -> tuple[float, float]:
    """Conservative (min, max) of p from sampling, widened by the observed
    local Lipschitz bound times the sample spacing."""
    ts = np.linspace(0.0, p.period, _SAMPLE_COUNT, endpoint=False)
    vals = np.array([p(t) for t in ts])
    dt = p.period / _SAMPLE_COUNT
    lip = float(np.max(np.abs(np.diff(vals)))) / dt if vals.size > 1 else 0.0
    pad = lip * dt
    return float(vals.min()) - pad, float(vals.max()) + pad


def _bounds(p: PeriodicCoefficient) -> tuple[float, float, bool]:
    if p.analytic_min is not None and p.analytic_max is not None:
        return float(p.analytic_min), float(p.analytic_max), True
    lo, hi = _sampled_bounds(p)
    return lo, hi, False


def li_zhang(p: PeriodicCoefficient) -> CriterionVerdict:
    """L^2 mean test: stable if p >= 0 and T^3 int_0^T p^2 < (64/3) sigma^4."""
    pmin, pmax, _ = _bounds(p)
    if pmin < 0.0:
        return CriterionVerdict(
            Criterion.LI_ZHANG, Outcome.INCONCLUSIVE,
            quantities={"min_p": pmin}, note="requires p >= 0",
        )
    T = p.period
    integral, err = quad(lambda t: p(t) ** 2, 0.0, T, epsabs=_QUAD_EPS,
                         epsrel=1e-11, limit=400)
    lhs = T**3 * integral
    rhs = (64.0 / 3.0) * sigma_constant() ** 4
    margin = max(err * T**3, _MARGIN)
    q = {"lhs": lhs, "rhs": rhs, "margin": rhs - lhs}
    if lhs < rhs - margin:
        return CriterionVerdict(Criterion.LI_ZHANG, Outcome.GUARANTEED_STABLE, quantities=q)
    return CriterionVerdict(Criterion.LI_ZHANG, Outcome.INCONCLUSIVE, quantities=q,
                            note="L^2 bound not met")


def zhukovskii(p: PeriodicCoefficient) -> CriterionVerdict:
    """Harmonic interval test: stable if some l has
    l^2 pi^2 / T^2 <= p <= (l+1)^2 pi^2 / T^2 everywhere."""
    pmin, pmax, exact = _bounds(p)
    if pmin < 0.0:
        return CriterionVerdict(
            Criterion.ZHUKOVSKII, Outcome.INCONCLUSIVE,
            quantities={"min_p": pmin}, note="requires p >= 0",
        )
    T = p.period
    scale = math.pi / T
    ell = int(math.floor(math.sqrt(pmin) / scale))
    q = {"min_p": pmin, "max_p": pmax,
         "window_lo": (ell * scale) ** 2, "window_hi": ((ell + 1) * scale) ** 2}
    if pmax <= ((ell + 1) * scale) ** 2:
        return CriterionVerdict(Criterion.ZHUKOVSKII, Outcome.GUARANTEED_STABLE,
                                witness_ell=ell, quantities=q)
    return CriterionVerdict(Criterion.ZHUKOVSKII, Outcome.INCONCLUSIVE, quantities=q,
                            note="range straddles a squared harmonic")


def burdina(p: PeriodicCoefficient) -> CriterionVerdict:
    """Phase-integral test on A = int sqrt(p) and B = (1/2) log(max/min).

    Requires p > 0 with a unique maximum and minimum per period; stable if
    some l has l pi < A - B and A + B < (l+1) pi.  Only l = floor(A / pi)
    can work (the window containing A is unique), so only it is tried.
    """
    if not p.single_extremum_pair:
        return CriterionVerdict(Criterion.BURDINA, Outcome.INCONCLUSIVE,
                                note="requires a unique extremum pair per period")
    pmin, pmax, _ = _bounds(p)
    if pmin <= 0.0:
        return CriterionVerdict(Criterion.BURDINA, Outcome.INCONCLUSIVE,
                                quantities={"min_p": pmin}, note="requires p > 0")
    A, err = quad(lambda t: math.sqrt(p(t)), 0.0, p.period, epsabs=_QUAD_EPS,
                  epsrel=1e-11, limit=400)
    B = 0.5 * math.log(pmax / pmin)
    ell = int(math.floor(A / math.pi))
    margin = max(err, _MARGIN)
    q = {"phase_integral": A, "log_correction": B,
         "window_lo": ell * math.pi, "window_hi": (ell + 1) * math.pi}
    if ell >= 0 and A - B - ell * math.pi > margin and (ell + 1) * math.pi - (A + B) > margin:
        return CriterionVerdict(Criterion.BURDINA, Outcome.GUARANTEED_STABLE,
                                witness_ell=ell, quantities=q)
    return CriterionVerdict(Criterion.BURDINA, Outcome.INCONCLUSIVE, quantities=q,
                            note="corrected phase integral leaves its window")


def phi(delta: float, gamma: float) -> float:
    """Closed-form phase integral for the gamma-plane coefficient.

    phi(delta, gamma) = 2 sqrt(2) int_0^{pi/2}
    sqrt((gamma + delta^2 sin^2 t) / (2 + delta^2 + delta^2 sin^2 t)) dt,
    which equals the time-domain integral of sqrt(gamma + y^2) over half a
    Duffing period.  gamma = 0 is allowed (integrable endpoint).
    """
    if not (delta > 0.0) or not (gamma >= 0.0):
        raise DomainError(f"need delta > 0 and gamma >= 0, got ({delta!r}, {gamma!r})")
    d2 = delta * delta

    def integrand(t: float) -> float:
        s2 = math.sin(t) ** 2
        return math.sqrt((gamma + d2 * s2) / (2.0 + d2 + d2 * s2))

    val, _ = quad(integrand, 0.0, math.pi / 2.0, epsabs=_QUAD_EPS, epsrel=1e-12,
                  limit=400)
    return 2.0 * math.sqrt(2.0) * val


def psi(delta: float, omega: float) -> float:
    """Closed-form phase integral for the omega-plane coefficient.

    psi(delta, omega) = sqrt(omega) * phi(delta, omega); it decreases from
    pi * omega at delta = 0 to pi sqrt(omega / 2) as delta -> infinity
    (strictly, for omega >= 1).
    """
    if not (delta > 0.0) or not (omega > 0.0):
        raise DomainError(f"need delta > 0 and omega > 0, got ({delta!r}, {omega!r})")
    d2 = delta * delta

    def integrand(t: float) -> float:
        s2 = math.sin(t) ** 2
        return math.sqrt((omega + d2 * s2) / (2.0 + d2 + d2 * s2))

    val, _ = quad(integrand, 0.0, math.pi / 2.0, epsabs=_QUAD_EPS, epsrel=1e-12,
                  limit=400)
    return 2.0 * math.sqrt(2.0 * omega) * val


def _window_verdict(phase: float, log_ratio: float, extra: dict[str, float]) -> CriterionVerdict:
    ell = int(math.floor(phase / math.pi))
    window = 2.0 * min(phase - ell * math.pi, (ell + 1) * math.pi - phase)
    q = dict(extra)
    q.update({"phase_integral": phase, "log_ratio": log_ratio, "window": window})
    if ell >= 0 and log_ratio < window - _MARGIN:
        return CriterionVerdict(Criterion.BURDINA, Outcome.GUARANTEED_STABLE,
                                witness_ell=ell, quantities=q)
    return CriterionVerdict(Criterion.BURDINA, Outcome.INCONCLUSIVE,
                            quantities=q, note="log ratio exceeds the window")


def burdina_condition_gamma(delta: float, gamma: float) -> CriterionVerdict:
    """Phase-integral condition in closed form for the gamma plane.

    Stable if log(1 + delta^2/gamma) < 2 min(phi - l pi, (l+1) pi - phi)
    for l = floor(phi / pi); by the change of variables behind ``phi`` this
    is exactly the time-domain phase-integral test.
    """
    if not (delta > 0.0) or not (gamma > 0.0):
        raise DomainError(f"need delta > 0 and gamma > 0, got ({delta!r}, {gamma!r})")
    return _window_verdict(phi(delta, gamma), math.log1p(delta * delta / gamma),
                           {"delta": delta, "gamma": gamma})


def burdina_condition_omega(delta: float, omega: float) -> CriterionVerdict:
    """Phase-integral condition in closed form for the omega plane."""
    if not (delta > 0.0) or not (omega > 0.0):
        raise DomainError(f"need delta > 0 and omega > 0, got ({delta!r}, {omega!r})")
    return _window_verdict(psi(delta, omega), math.log1p(delta * delta / omega),
                           {"delta": delta, "omega": omega})


def g_function(delta: float) -> float:
    """L^2 quantity of the gamma = 0 coefficient in closed form.

    g(delta) = 64 * (int_0^{pi/2} sin^4 a / sqrt(2/delta^2 + 1 + sin^2 a) da)
    * (int_0^{pi/2} da / sqrt(2/delta^2 + 1 + sin^2 a))^3.  It increases
    strictly from 0 to (64/3) sigma^4 as delta runs over (0, infinity),
    which is what guarantees stability on the whole gamma = 0 axis.
    """
    if not (delta > 0.0):
        raise DomainError(f"need delta > 0, got {delta!r}")
    c = 2.0 / (delta * delta)

    def root(a: float) -> float:
        return math.sqrt(c + 1.0 + math.sin(a) ** 2)

    i1, _ = quad(lambda a: math.sin(a) ** 4 / root(a), 0.0, math.pi / 2.0,
                 epsabs=_QUAD_EPS, epsrel=1e-12, limit=400)
    i2, _ = quad(lambda a: 1.0 / root(a), 0.0, math.pi / 2.0,
                 epsabs=_QUAD_EPS, epsrel=1e-12, limit=400)
    return 64.0 * i1 * i2**3
