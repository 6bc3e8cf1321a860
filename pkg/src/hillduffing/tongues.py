"""Resonance-tongue structure in the (delta, gamma) and (delta, omega) planes.

The instability regions ("tongues") of the squared-Duffing Hill equation
emanate from gamma = l^2 (respectively omega = l) on the zero-amplitude
axis.  This module provides the numeric machinery around them: rectangular
trace scans, the exact first-tongue boundary, small-amplitude parabolic
bounds for the higher tongues, level-set bracketing of tongue boundaries
along one parameter line, the large-amplitude classification sets, and the
tabulated number of resonance-line crossings per frequency ratio.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import BracketNotFound, DomainError, IntegrationFailure
from .hill import (
    DEFAULT_TOL,
    DEFAULT_TOL_BOUNDARY,
    Stability,
    monodromy,
    omega_coefficient,
    squared_duffing_coefficient,
)

CLASS_NAMES = {0: "stable", 1: "unstable", 2: "boundary", 3: "nan"}
_CLASS_CODE = {Stability.STABLE: 0, Stability.UNSTABLE: 1, Stability.BOUNDARY: 2}
FAILED_CODE = 3


class Plane(enum.Enum):
    """Which second parameter spans the vertical axis of a stability chart."""

    GAMMA = "gamma"
    OMEGA = "omega"


class StripVerdict(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    OUTSIDE = "outside"


class AsymptoticClass(enum.Enum):
    STABLE_AT_INFINITY = "stable_at_infinity"
    UNSTABLE_AT_INFINITY = "unstable_at_infinity"
    BOUNDARY = "boundary"


def axis_values(lo: float, hi: float, count: int) -> np.ndarray:
    """Inclusive-endpoint axis lo + i (hi - lo) / (count - 1), reproducible
    without accumulation error."""
    if count < 2:
        raise DomainError(f"resolution must be >= 2 per axis, got {count}")
    if not hi > lo:
        raise DomainError(f"range must be ordered, got ({lo}, {hi})")
    i = np.arange(count, dtype=float)
    return lo + i * ((hi - lo) / (count - 1))


def trace_at(plane: Plane, delta: float, y: float, tol: float = DEFAULT_TOL) -> float:
    """Monodromy trace at one point of the chosen parameter plane."""
    if plane is Plane.GAMMA:
        p = squared_duffing_coefficient(delta, y)
    else:
        p = omega_coefficient(delta, y)
    return monodromy(p, tol=tol).trace


def _scan_cell(task: tuple[str, float, float, float, float]) -> tuple[float, int]:
    plane_name, x, y, tol, tol_boundary = task
    try:
        if plane_name == Plane.GAMMA.value:
            p = squared_duffing_coefficient(x, y)
        else:
            p = omega_coefficient(x, y)
        report = monodromy(p, tol=tol, tol_boundary=tol_boundary)
    except (DomainError, IntegrationFailure):
        return (math.nan, FAILED_CODE)
    return (report.trace, _CLASS_CODE[report.classification])


@dataclass
class StabilityGrid:
    """Rectangular scan of monodromy traces over a parameter plane.

    ``trace[i, j]`` and ``classification[i, j]`` correspond to
    (x_values[i], y_values[j]); failed cells carry NaN trace and the code
    3 ("nan").  ``meta`` echoes every parameter that influenced the data.
    """

    plane: Plane
    x_values: np.ndarray
    y_values: np.ndarray
    trace: np.ndarray
    classification: np.ndarray
    meta: dict = field(default_factory=dict)

    def class_name(self, i: int, j: int) -> str:
        return CLASS_NAMES[int(self.classification[i, j])]

    def csv_rows(self) -> Iterable[str]:
        """Data rows 'x,y,trace,class' with 17-significant-digit floats."""
        yield "x,y,trace,class"
        for i, x in enumerate(self.x_values):
            for j, y in enumerate(self.y_values):
                t = self.trace[i, j]
                t_str = "nan" if math.isnan(t) else f"{t:.17g}"
                yield f"{x:.17g},{y:.17g},{t_str},{self.class_name(i, j)}"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            for row in self.csv_rows():
                fh.write(row + "\n")


def scan(
    plane: Plane,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    resolution: tuple[int, int],
    integrator_tol: float = DEFAULT_TOL,
    tol_boundary: float = DEFAULT_TOL_BOUNDARY,
    workers: int = 1,
) -> StabilityGrid:
    """Fill a StabilityGrid by one monodromy computation per cell.

    Cells are independent; with ``workers > 1`` they are distributed over
    a process pool.  Results land in preallocated slots keyed by cell
    index, so the output is deterministic regardless of scheduling.  Cells
    whose coefficient is invalid (for example delta = 0) or whose
    integration fails are recorded as NaN; the scan itself never aborts.
    """
    xs = axis_values(*x_range, resolution[0])
    ys = axis_values(*y_range, resolution[1])
    tasks = [
        (plane.value, float(x), float(y), float(integrator_tol), float(tol_boundary))
        for x in xs
        for y in ys
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_cell, tasks, chunksize=32))
    else:
        results = [_scan_cell(t) for t in tasks]

    trace = np.empty((xs.size, ys.size))
    classification = np.empty((xs.size, ys.size), dtype=np.int8)
    for idx, (tr, code) in enumerate(results):
        i, j = divmod(idx, ys.size)
        trace[i, j] = tr
        classification[i, j] = code
    meta = {
        "plane": plane.value,
        "x_range": [float(x_range[0]), float(x_range[1])],
        "y_range": [float(y_range[0]), float(y_range[1])],
        "resolution": [int(resolution[0]), int(resolution[1])],
        "integrator_tol": float(integrator_tol),
        "tol_boundary": float(tol_boundary),
        "level_threshold": 2.0 - float(tol_boundary),
    }
    return StabilityGrid(plane, xs, ys, trace, classification, meta)


def first_tongue_gamma(delta: float) -> tuple[float, float]:
    """Exact boundary (1, 1 + delta^2/2) of the first gamma-plane tongue."""
    d2 = float(delta) * float(delta)
    return (1.0, 1.0 + d2 / 2.0)


def stability_strip_gamma(delta: float, gamma: float) -> StripVerdict:
    """Analytic strip verdict: stable for -delta^2/2 < gamma < 1, unstable
    below the parabola, no claim elsewhere."""
    d2 = float(delta) * float(delta)
    if -d2 / 2.0 < gamma < 1.0:
        return StripVerdict.STABLE
    if gamma < -d2 / 2.0:
        return StripVerdict.UNSTABLE
    return StripVerdict.OUTSIDE


def asymptotic_tongue_bounds(plane: Plane, ell: int, delta: float) -> tuple[float, float]:
    """Small-amplitude parabolic bounds of tongue ``ell`` (valid up to
    O(delta^4) as delta -> 0; no hard cutoff is enforced)."""
    if ell < 2:
        raise DomainError(f"parabolic bounds exist for ell >= 2 only, got {ell}")
    d2 = float(delta) * float(delta)
    if plane is Plane.GAMMA:
        center = ell * ell + (3.0 * ell * ell / 4.0 - 0.5) * d2
        half = d2 / (math.pi * ell)
    else:
        center = ell + (3.0 * ell / 8.0 - 0.25) * d2
        half = d2 / (2.0 * math.pi * ell)
    return (center - half, center + half)


@dataclass(frozen=True)
class TongueBoundarySample:
    """Located |trace| = threshold crossings around one tongue at fixed delta.

    ``lower`` and ``upper`` are the two crossing parameters (gamma or
    omega), each within the bisection tolerance; ``peak`` is the refined
    interior maximum of |trace| that seeded the bisection.
    """

    ell: int
    delta: float
    lower: float
    upper: float
    threshold: float
    peak: float
    peak_trace: float


def _seed_window(plane: Plane, ell: int, delta: float) -> tuple[float, float]:
    d2 = delta * delta
    if ell == 1:
        if plane is Plane.GAMMA:
            lo, hi = first_tongue_gamma(delta)
            pad = 0.15 * (hi - lo) + 0.02
            return (lo - pad, hi + pad)
        # upper boundary grows like (1/8 + 1/(2 pi)) delta^2 and tends to 3
        span = min((0.125 + 0.5 / math.pi) * d2, 2.1)
        return (1.0 - 0.05 * (1.0 + span), 1.0 + 1.15 * span + 0.05)
    lo, hi = asymptotic_tongue_bounds(plane, ell, delta)
    pad = max(3.0 * (hi - lo), 0.05)
    return (lo - pad, hi + pad)


def trace_level_bracket(
    plane: Plane,
    ell: int,
    delta: float,
    threshold: float | None = None,
    integrator_tol: float = DEFAULT_TOL,
    bisect_tol: float = 1e-6,
    samples: int = 257,
) -> TongueBoundarySample:
    """Bracket the two |trace| = threshold crossings around tongue ``ell``.

    The window is seeded from the exact first-tongue boundary (ell = 1) or
    the parabolic bounds (ell >= 2), generously padded because those are
    only small-amplitude asymptotics.  The window is sampled, local maxima
    of |trace| near the threshold are refined, and bisection runs from the
    refined interior point out to the stable side.

    Raises
    ------
    BracketNotFound
        If no interior point with |trace| above the threshold is detected;
        thin tongues can fall below any fixed sampling resolution.
    """
    if delta <= 0.0:
        raise DomainError(f"need delta > 0, got {delta!r}")
    if threshold is None:
        threshold = 2.0 - DEFAULT_TOL_BOUNDARY
    if not 0.0 < threshold <= 2.0:
        raise DomainError(f"threshold must lie in (0, 2], got {threshold!r}")

    y_floor = 1e-9 if plane is Plane.OMEGA else -math.inf

    def abs_trace(y: float) -> float:
        return abs(trace_at(plane, delta, y, tol=integrator_tol))

    lo, hi = _seed_window(plane, ell, delta)
    lo = max(lo, y_floor)
    peak_y = peak_val = None
    for _ in range(3):
        ys = np.linspace(lo, hi, samples)
        vals = np.array([abs_trace(y) for y in ys])
        order = np.argsort(vals)[::-1]
        for idx in order[:8]:
            if vals[idx] <= threshold - 0.6:
                break
            if vals[idx] > threshold:
                peak_y, peak_val = float(ys[idx]), float(vals[idx])
                break
            # near miss: refine the local maximum before giving up on it
            a = ys[max(idx - 1, 0)]
            b = ys[min(idx + 1, samples - 1)]
            res = minimize_scalar(lambda y: -abs_trace(y), bounds=(a, b),
                                  method="bounded", options={"xatol": 1e-9})
            if -res.fun > threshold:
                peak_y, peak_val = float(res.x), float(-res.fun)
                break
        if peak_y is not None:
            break
        width = hi - lo
        lo = max(lo - 0.5 * width, y_floor)
        hi = hi + 0.5 * width
    if peak_y is None:
        raise BracketNotFound(
            f"no |trace| > {threshold} point found for tongue {ell} at delta={delta}"
        )

    def crossing(direction: int) -> float:
        step = (hi - lo) / samples
        y_in, y_out = peak_y, peak_y + direction * step
        for _ in range(200):
            if plane is Plane.OMEGA and y_out <= y_floor:
                y_out = y_floor
                break
            if abs_trace(y_out) < threshold:
                break
            y_in = y_out
            y_out = y_out + direction * step
            step *= 1.3
        else:
            raise BracketNotFound("stable side not reached during outward walk")
        a, b = sorted((y_in, y_out))
        return float(brentq(lambda y: abs_trace(y) - threshold, a, b, xtol=bisect_tol))

    lower = crossing(-1)
    upper = crossing(+1)
    return TongueBoundarySample(ell, float(delta), lower, upper,
                                float(threshold), peak_y, peak_val)


def asymptotic_classification(omega: float) -> AsymptoticClass:
    """Large-amplitude verdict from the interval families
    I_U = U_k ((k+1)(2k+1), (k+1)(2k+3)) and
    I_S = U_k (k(2k+1), (k+1)(2k+1)); shared endpoints are Boundary."""
    if not (omega > 0.0):
        raise DomainError(f"need omega > 0, got {omega!r}")
    k = 0
    while True:
        s_lo, s_hi = k * (2 * k + 1), (k + 1) * (2 * k + 1)
        u_lo, u_hi = (k + 1) * (2 * k + 1), (k + 1) * (2 * k + 3)
        if omega == s_lo or omega == s_hi or omega == u_hi:
            return AsymptoticClass.BOUNDARY
        if s_lo < omega < s_hi:
            return AsymptoticClass.STABLE_AT_INFINITY
        if u_lo < omega < u_hi:
            return AsymptoticClass.UNSTABLE_AT_INFINITY
        k += 1


_CROSSING_TABLE: tuple[tuple[float, float, bool, bool, int], ...] = (
    # (lo, hi, lo_closed, hi_closed, crossings)
    (0.0, 1.0, False, False, 0),
    (1.0, 2.0, False, True, 1),
    (2.0, 3.0, False, False, 3),
    (3.0, 3.0, True, True, 2),
    (3.0, 4.0, False, True, 4),
    (4.0, 5.0, False, True, 6),
    (5.0, 6.0, False, False, 8),
    (6.0, 6.0, True, True, 7),
    (6.0, 7.0, False, True, 9),
)


def crossing_count(omega: float) -> int:
    """Tabulated minimum number of resonance-line crossings met along
    delta from 0 to infinity at fixed frequency ratio ``omega``.

    The parity determines the final regime: starting stable near delta=0,
    an even count ends stable at infinity, an odd count unstable.  Only
    the tabulated range 0 < omega <= 7 is covered; omega = 1 lies on a
    resonant line for every delta and has no count.
    """
    omega = float(omega)
    if not (0.0 < omega <= 7.0):
        raise DomainError(f"crossing table covers 0 < omega <= 7, got {omega!r}")
    for lo, hi, lo_closed, hi_closed, count in _CROSSING_TABLE:
        above = omega >= lo if lo_closed else omega > lo
        below = omega <= hi if hi_closed else omega < hi
        if above and below:
            return count
    raise DomainError(f"omega = {omega!r} lies on a resonant line; no tabulated count")


def recount_crossings(
    omega: float,
    delta_max: float = 6.0,
    coarse_step: float = 0.01,
    integrator_tol: float = 1e-12,
    near_band: float = 0.1,
) -> int:
    """Recount resonance-line crossings from a fine trace scan along delta.

    Grid cells with |trace| > 2 mark unstable runs directly.  Tongues
    thinner than the grid leave a near-miss signature (a local maximum of
    |trace| just under 2); each such maximum is refined by bounded
    maximisation and counts as a crossing pair when the refined trace
    genuinely exceeds 2.  Each unstable interval contributes two
    crossings, or one when it is still open at ``delta_max``.
    """
    deltas = np.arange(coarse_step, delta_max + 0.5 * coarse_step, coarse_step)
    traces = np.array([trace_at(Plane.OMEGA, d, omega, tol=integrator_tol)
                       for d in deltas])
    unstable = np.abs(traces) > 2.0

    intervals: list[tuple[int, int]] = []
    i = 0
    n = deltas.size
    while i < n:
        if unstable[i]:
            j = i
            while j + 1 < n and unstable[j + 1]:
                j += 1
            intervals.append((i, j))
            i = j + 1
        else:
            i += 1

    extra = 0
    abstr = np.abs(traces)
    for i in range(1, n - 1):
        if unstable[i - 1] or unstable[i] or unstable[i + 1]:
            continue
        if not (abstr[i] >= abstr[i - 1] and abstr[i] >= abstr[i + 1]):
            continue
        if abstr[i] <= 2.0 - near_band:
            continue
        res = minimize_scalar(
            lambda d: -abs(trace_at(Plane.OMEGA, d, omega, tol=integrator_tol)),
            bounds=(deltas[i - 1], deltas[i + 1]),
            method="bounded", options={"xatol": 1e-8},
        )
        if -res.fun > 2.0:
            extra += 1

    count = 0
    for i0, i1 in intervals:
        count += 1 if i1 == n - 1 else 2
    return count + 2 * extra
