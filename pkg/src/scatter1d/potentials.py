"""Potential families for one-dimensional scattering.

Units: hbar^2 / (2 mu) = 1 throughout, so the stationary equation reads

    psi''(x) + (E - V(x)) psi(x) = 0,      k = sqrt(E).

Delta strengths therefore carry dimension 1/length, well depths and barrier
heights carry dimension energy = 1/length^2, and every family decays to zero
at large |x|.

Five families are supported:

* :class:`DeltaPair` -- an attractive delta of strength ``u1`` at x = 0 and a
  repulsive delta of strength ``u2`` at x = a.
* :class:`ScarfII` -- V(x) = (s^2 - q^2 - q) sech^2 x + s (2q+1) sech x tanh x,
  asymmetric for s != 0.
* :class:`SquareWellBarrier` -- flat well of depth ``u1`` on
  [-w - a/2, -a/2), zero gap on [-a/2, a/2], flat barrier of height ``u2`` on
  (a/2, a/2 + w].  The half-open edges make the u1 == u2 case exactly
  antisymmetric about the gap midpoint.
* :class:`SinSquaredWellBarrier` -- single sin^2 lobes in place of the flat
  regions, vanishing at the region edges.
* :class:`Sampled` -- tabulated values, linearly interpolated inside the
  abscissa range and zero outside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

#: Magnitude below which the potential tail is treated as zero.
SUPPORT_TOL = 1e-12


@dataclass(frozen=True)
class DeltaPair:
    """Attractive delta (strength u1) at x = 0, repulsive delta (u2) at x = a."""

    u1: float
    u2: float
    a: float

    def __post_init__(self) -> None:
        if self.u1 < 0 or self.u2 < 0:
            raise ValueError("delta strengths u1, u2 must be >= 0")
        if self.a <= 0:
            raise ValueError("delta separation a must be > 0")


@dataclass(frozen=True)
class ScarfII:
    """Exactly solvable sech^2 / sech*tanh well-barrier with shape parameters s, q."""

    s: float
    q: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.s) and math.isfinite(self.q)):
            raise ValueError("s and q must be finite")
        if self.s < 0:
            raise ValueError("shape parameter s must be >= 0")


@dataclass(frozen=True)
class SquareWellBarrier:
    """Flat well (depth u1) and flat barrier (height u2), each of width w, gap a."""

    u1: float
    u2: float
    w: float
    a: float = 0.0

    def __post_init__(self) -> None:
        if self.u1 < 0 or self.u2 < 0:
            raise ValueError("u1 and u2 must be >= 0 (signs are fixed by the geometry)")
        if self.w <= 0:
            raise ValueError("feature width w must be > 0")
        if self.a < 0:
            raise ValueError("gap a must be >= 0")


@dataclass(frozen=True)
class SinSquaredWellBarrier:
    """Single sin^2 well lobe (depth u1) and barrier lobe (height u2), width w, gap a."""

    u1: float
    u2: float
    w: float
    a: float = 0.0

    def __post_init__(self) -> None:
        if self.u1 < 0 or self.u2 < 0:
            raise ValueError("u1 and u2 must be >= 0 (signs are fixed by the geometry)")
        if self.w <= 0:
            raise ValueError("lobe width w must be > 0")
        if self.a < 0:
            raise ValueError("gap a must be >= 0")


@dataclass(frozen=True)
class Sampled:
    """Tabulated potential, linear interpolation inside, zero outside."""

    xs: tuple
    vs: tuple

    def __post_init__(self) -> None:
        xs = tuple(float(x) for x in self.xs)
        vs = tuple(float(v) for v in self.vs)
        if len(xs) < 2:
            raise ValueError("sampled potential needs at least 2 points")
        if len(xs) != len(vs):
            raise ValueError("xs and vs must have the same length")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("sampled abscissae must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "vs", vs)


PotentialSpec = Union[DeltaPair, ScarfII, SquareWellBarrier, SinSquaredWellBarrier, Sampled]


def evaluate(p: PotentialSpec, x):
    """Pointwise V(x) for any family except :class:`DeltaPair`.

    ``x`` may be a scalar or an ndarray; the result matches its shape.
    Delta pairs have no pointwise value and raise ``ValueError`` (use
    :func:`scatter1d.transfer.delta_transfer` for their kicks).
    """
    if isinstance(p, DeltaPair):
        raise ValueError("non-pointwise potential: a delta pair has no finite V(x)")
    arr = np.asarray(x, dtype=float)
    if isinstance(p, ScarfII):
        sech = 1.0 / np.cosh(arr)
        out = (p.s * p.s - p.q * p.q - p.q) * sech * sech \
            + p.s * (2.0 * p.q + 1.0) * sech * np.tanh(arr)
    elif isinstance(p, SquareWellBarrier):
        half = p.a / 2.0
        out = np.where((arr >= -p.w - half) & (arr < -half), -p.u1, 0.0)
        out = np.where((arr > half) & (arr <= half + p.w), p.u2, out)
    elif isinstance(p, SinSquaredWellBarrier):
        half = p.a / 2.0
        well = -p.u1 * np.sin(np.pi * (arr + half + p.w) / p.w) ** 2
        barrier = p.u2 * np.sin(np.pi * (arr - half) / p.w) ** 2
        out = np.where((arr >= -p.w - half) & (arr <= -half), well, 0.0)
        out = np.where((arr >= half) & (arr <= half + p.w), barrier, out)
    elif isinstance(p, Sampled):
        out = np.interp(arr, p.xs, p.vs, left=0.0, right=0.0)
    else:
        raise TypeError(f"unknown potential spec {type(p).__name__}")
    return out if arr.ndim else float(out)


def support_interval(p: PotentialSpec, tol: float = SUPPORT_TOL) -> tuple:
    """Interval (x_L, x_R) outside of which |V| < tol.

    Compact-support families return their geometric support.  Delta pairs get
    a one-length-unit margin on each side.  Scarf II uses the envelope bound
    |V(x)| <= (|s^2 - q^2 - q| + |s (2q+1)|) sech|x| to place a symmetric
    cutoff.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if isinstance(p, DeltaPair):
        return (-1.0, p.a + 1.0)
    if isinstance(p, (SquareWellBarrier, SinSquaredWellBarrier)):
        return (-p.w - p.a / 2.0, p.a / 2.0 + p.w)
    if isinstance(p, Sampled):
        return (p.xs[0], p.xs[-1])
    if isinstance(p, ScarfII):
        envelope = abs(p.s * p.s - p.q * p.q - p.q) + abs(p.s * (2.0 * p.q + 1.0))
        if envelope <= tol:
            return (-1.0, 1.0)
        xc = math.acosh(envelope / tol)
        return (-xc, xc)
    raise TypeError(f"unknown potential spec {type(p).__name__}")


def effective_q(p: PotentialSpec) -> float:
    """Dimensionless strength used as sweep abscissa.

    Square and sin^2 families use q = w * sqrt(u1); Scarf II returns its own
    q parameter.  Delta pairs have no such strength and raise ``ValueError``.
    """
    if isinstance(p, ScarfII):
        return p.q
    if isinstance(p, (SquareWellBarrier, SinSquaredWellBarrier)):
        return p.w * math.sqrt(p.u1)
    if isinstance(p, DeltaPair):
        raise ValueError("no dimensionless q is defined for a delta pair")
    if isinstance(p, Sampled):
        raise ValueError("no dimensionless q is defined for a sampled potential")
    raise TypeError(f"unknown potential spec {type(p).__name__}")
