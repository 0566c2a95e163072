"""Smooth compactly supported building blocks.

Everything here is built from the classic exponential glue
``t -> exp(-1/t)`` so that cutoffs, bumps and extension profiles are
genuinely C-infinity with closed-form first and second derivatives.
All functions are vectorized over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Func1D",
    "glue",
    "glue_d1",
    "smoothstep",
    "smoothstep_d1",
    "smoothstep_d2",
    "bump",
    "bump_d1",
    "bump_d2",
    "scaled_bump",
    "ramp_down_profile",
    "quintic_ramp_down_profile",
    "window_1d",
]


@dataclass(frozen=True)
class Func1D:
    """A scalar function of one variable with its first two derivatives."""

    f: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]

    def __call__(self, t):
        return self.f(t)

    def deriv(self, order: int) -> Callable[[np.ndarray], np.ndarray]:
        if order == 0:
            return self.f
        if order == 1:
            return self.d1
        if order == 2:
            return self.d2
        raise ValueError(f"derivative order {order} not available")


def glue(t):
    """exp(-1/t) for t > 0, identically 0 for t <= 0."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def glue_d1(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    tp = t[pos]
    out[pos] = np.exp(-1.0 / tp) / tp**2
    return out


def _glue_d2(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    tp = t[pos]
    out[pos] = np.exp(-1.0 / tp) * (1.0 - 2.0 * tp) / tp**4
    return out


def smoothstep(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, monotone in between."""
    t = np.asarray(t, dtype=float)
    a = glue(t)
    b = glue(1.0 - t)
    return a / (a + b + (a + b == 0))


def smoothstep_d1(t):
    t = np.asarray(t, dtype=float)
    a, b = glue(t), glue(1.0 - t)
    da, db = glue_d1(t), -glue_d1(1.0 - t)
    den = a + b
    den = den + (den == 0)
    return (da * b - a * db) / den**2


def smoothstep_d2(t):
    t = np.asarray(t, dtype=float)
    a, b = glue(t), glue(1.0 - t)
    da, db = glue_d1(t), -glue_d1(1.0 - t)
    d2a, d2b = _glue_d2(t), _glue_d2(1.0 - t)
    den = a + b
    den = den + (den == 0)
    num = da * b - a * db
    dnum = d2a * b - a * d2b
    dden = da + db
    return dnum / den**2 - 2.0 * num * dden / den**3


def bump(z):
    """Standard bump exp(1 - 1/(1-z^2)) on |z| < 1, 0 outside; peak value 1."""
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    inside = np.abs(z) < 1.0
    zi = z[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - zi**2))
    return out


def bump_d1(z):
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    inside = np.abs(z) < 1.0
    zi = z[inside]
    w = 1.0 - zi**2
    out[inside] = np.exp(1.0 - 1.0 / w) * (-2.0 * zi / w**2)
    return out


def bump_d2(z):
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    inside = np.abs(z) < 1.0
    zi = z[inside]
    w = 1.0 - zi**2
    out[inside] = np.exp(1.0 - 1.0 / w) * (4.0 * zi**2 / w**4 - 2.0 / w**2 - 8.0 * zi**2 / w**3)
    return out


def scaled_bump(center: float, halfwidth: float) -> Func1D:
    """Bump supported on (center - halfwidth, center + halfwidth), peak 1."""
    if halfwidth <= 0:
        raise ValueError("halfwidth must be positive")

    def z(t):
        return (np.asarray(t, dtype=float) - center) / halfwidth

    return Func1D(
        f=lambda t: bump(z(t)),
        d1=lambda t: bump_d1(z(t)) / halfwidth,
        d2=lambda t: bump_d2(z(t)) / halfwidth**2,
    )


def ramp_down_profile(flat_end: float = 0.25, zero_start: float = 0.75) -> Func1D:
    """Profile on [0,1]: identically 1 on [0, flat_end], 0 on [zero_start, 1].

    The transition uses the exponential glue, so the profile is C-infinity;
    this is the default auxiliary-axis extension factor.
    """
    if not 0.0 < flat_end < zero_start < 1.0:
        raise ValueError("need 0 < flat_end < zero_start < 1")
    width = zero_start - flat_end

    def z(t):
        return (np.asarray(t, dtype=float) - flat_end) / width

    return Func1D(
        f=lambda t: 1.0 - smoothstep(z(t)),
        d1=lambda t: -smoothstep_d1(z(t)) / width,
        d2=lambda t: -smoothstep_d2(z(t)) / width**2,
    )


def quintic_ramp_down_profile(flat_end: float = 0.25, zero_start: float = 0.75) -> Func1D:
    """Polynomial (quintic smoothstep) variant of :func:`ramp_down_profile`.

    Only C^2 at the junctions, which is all the extension identity needs;
    useful as an independent second profile.
    """
    if not 0.0 < flat_end < zero_start < 1.0:
        raise ValueError("need 0 < flat_end < zero_start < 1")
    width = zero_start - flat_end

    def parts(t):
        z = (np.asarray(t, dtype=float) - flat_end) / width
        return np.clip(z, 0.0, 1.0), (z > 0) & (z < 1)

    def f(t):
        z, _ = parts(t)
        return 1.0 - (10 * z**3 - 15 * z**4 + 6 * z**5)

    def d1(t):
        z, mid = parts(t)
        return np.where(mid, -(30 * z**2 - 60 * z**3 + 30 * z**4) / width, 0.0)

    def d2(t):
        z, mid = parts(t)
        return np.where(mid, -(60 * z - 180 * z**2 + 120 * z**3) / width**2, 0.0)

    return Func1D(f=f, d1=d1, d2=d2)


def window_1d(lo_outer, lo_inner, hi_inner, hi_outer) -> Func1D:
    """Smooth 1-d plateau: 0 outside (lo_outer, hi_outer), 1 on [lo_inner, hi_inner]."""
    if not (lo_outer < lo_inner <= hi_inner < hi_outer):
        raise ValueError("window bounds must satisfy lo_outer < lo_inner <= hi_inner < hi_outer")
    wl = lo_inner - lo_outer
    wr = hi_outer - hi_inner

    def zl(t):
        return (np.asarray(t, dtype=float) - lo_outer) / wl

    def zr(t):
        return (hi_outer - np.asarray(t, dtype=float)) / wr

    return Func1D(
        f=lambda t: smoothstep(zl(t)) * smoothstep(zr(t)),
        d1=lambda t: smoothstep_d1(zl(t)) / wl * smoothstep(zr(t))
        - smoothstep(zl(t)) * smoothstep_d1(zr(t)) / wr,
        d2=lambda t: smoothstep_d2(zl(t)) / wl**2 * smoothstep(zr(t))
        - 2.0 * smoothstep_d1(zl(t)) / wl * smoothstep_d1(zr(t)) / wr
        + smoothstep(zl(t)) * smoothstep_d2(zr(t)) / wr**2,
    )
