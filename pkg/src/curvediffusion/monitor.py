"""Monitored quantities along trajectories and lifespan bounds.

The flow preserves signed enclosed area, decreases length with
dissipation rate integral(kappa_s^2) dl, and decreases the absolute
signed isoperimetric ratio I = L^2 / (4 pi A) like
I(t) = I(0) * exp(-integral_0^t (2/L) integral(kappa_s^2) dl dtau).
This module computes those series for a trajectory and evaluates three
a-priori lifespan bounds that depend only on the initial length:

    T_star = L0^4 / (64 pi^4)
    T_tilde = L0^4 / (768 pi^2)
    T_fig8 = L0^4 / (3 * 2^11 * K(-1)^4)

T_fig8 is the exact extinction time of the figure-eight shrinker at unit
length, so the ratios T_star/T_fig8 and T_tilde/T_fig8 measure how far
the generic bounds overshoot the known extremal example.

Zero-area curves (the figure eight) have an undefined isoperimetric
ratio; that is a first-class state recorded as NaN in the series, not an
error, since the zero-area shrinker is a primary test subject.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import elliptic_K
from .errors import DomainError, OpenCurve, Undefined
from .geometry import DiscreteCurve, curve_fields, length, signed_area

# |A| below this times L^2 counts as zero area (undefined ratio).
_ZERO_AREA_FACTOR = 1e-12


@dataclass(frozen=True)
class MonitorSeries:
    """Per-snapshot series: time, length, area, isoperimetric ratio,
    accumulated dissipation Q, and instantaneous dissipation.

    I is NaN where the ratio is undefined (zero enclosed area or an open
    curve). Q is the running trapezoidal time integral of diss.
    """

    t: np.ndarray
    L: np.ndarray
    A: np.ndarray
    I: np.ndarray
    Q: np.ndarray
    diss: np.ndarray


@dataclass(frozen=True)
class LifespanBounds:
    T_star: float
    T_tilde: float
    T_fig8: float
    ratio_star: float
    ratio_tilde: float

    def to_dict(self) -> dict:
        return {
            "T_star": self.T_star,
            "T_tilde": self.T_tilde,
            "T_fig8": self.T_fig8,
            "ratio_star": self.ratio_star,
            "ratio_tilde": self.ratio_tilde,
        }


def dissipation(curve: DiscreteCurve) -> float:
    """Length-decay rate integral(kappa_s^2) dl of the curve."""
    fields = curve_fields(curve)
    return float(np.sum(fields.kappa_s**2 * fields.dl))


def isoperimetric_ratio(curve: DiscreteCurve) -> float:
    """Signed isoperimetric ratio L^2 / (4 pi A); NaN when |A| is below
    1e-12 * L^2 (undefined, e.g. the figure eight)."""
    if not curve.closed:
        raise OpenCurve("isoperimetric_ratio requires a closed curve")
    total = length(curve)
    area = signed_area(curve)
    if abs(area) <= _ZERO_AREA_FACTOR * total**2:
        return float("nan")
    return float(total**2 / (4.0 * np.pi * area))


def monitor_curves(times, curves) -> MonitorSeries:
    """Build a MonitorSeries from parallel sequences of times and curves."""
    t = np.asarray(list(times), dtype=float)
    if len(curves) != t.size or t.size == 0:
        raise ValueError("need equal, nonzero numbers of times and curves")
    n = t.size
    lengths = np.empty(n)
    areas = np.empty(n)
    ratios = np.empty(n)
    diss = np.empty(n)
    for i, curve in enumerate(curves):
        lengths[i] = length(curve)
        diss[i] = dissipation(curve)
        if curve.closed:
            areas[i] = signed_area(curve)
            ratios[i] = isoperimetric_ratio(curve)
        else:
            areas[i] = np.nan
            ratios[i] = np.nan
    q = np.zeros(n)
    if n > 1:
        q[1:] = np.cumsum(0.5 * (diss[1:] + diss[:-1]) * np.diff(t))
    return MonitorSeries(t=t, L=lengths, A=areas, I=ratios, Q=q, diss=diss)


def monitor_trajectory(traj) -> MonitorSeries:
    """MonitorSeries of a Trajectory (anything with .times and .snapshots)."""
    return monitor_curves(traj.times, traj.snapshots)


def isoperimetric_decay_check(series: MonitorSeries) -> float:
    """Max relative deviation of I(t) from the predicted exponential decay.

    The prediction integrates 2 * diss / L by the trapezoidal rule from
    the same series, so this is a mutual-consistency check between the
    recorded ratio and the recorded dissipation.
    """
    if np.any(np.isnan(series.I)):
        raise Undefined("isoperimetric ratio is undefined at some samples")
    rate = 2.0 * series.diss / series.L
    exponent = np.zeros(series.t.size)
    if series.t.size > 1:
        exponent[1:] = np.cumsum(0.5 * (rate[1:] + rate[:-1]) * np.diff(series.t))
    predicted = series.I[0] * np.exp(-exponent)
    return float(np.max(np.abs(predicted / series.I - 1.0)))


def time_bounds(L0: float) -> LifespanBounds:
    """Lifespan bounds and their ratios for initial length L0.

    All three bounds are quartic in L0. The ordering
    T_fig8 < T_tilde < T_star holds for every positive length.
    """
    if L0 <= 0.0:
        raise DomainError(f"time_bounds requires L0 > 0, got {L0}")
    k = elliptic_K(-1.0)
    t_star = L0**4 / (64.0 * np.pi**4)
    t_tilde = L0**4 / (768.0 * np.pi**2)
    t_fig8 = L0**4 / (3.0 * 2.0**11 * k**4)
    return LifespanBounds(
        T_star=t_star,
        T_tilde=t_tilde,
        T_fig8=t_fig8,
        ratio_star=t_star / t_fig8,
        ratio_tilde=t_tilde / t_fig8,
    )
