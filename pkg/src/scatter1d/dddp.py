"""Closed-form scattering for the double Dirac delta well-barrier potential.

The potential is an attractive delta of strength u1 at x = 0 and a repulsive
delta of strength u2 at x = a (both strengths positive, units 1/length).
All results here are exact; the numeric engine in :mod:`scatter1d.transfer`
reproduces them through delta transfer matrices and serves as cross-check.

A half bound state (HBS) exists at E = 0 exactly when

    u2 * (1 - u1 * a) = u1,   with u1 * a < 1,

in which case the zero-energy reflection probability drops below 1 (the
threshold anomaly) instead of taking the ordinary value R(0) = 1.
"""
from __future__ import annotations

import cmath

import numpy as np

#: Relative tolerance for membership on the half-bound-state manifold.
HBS_RTOL = 1e-10


def _validate(u1: float, u2: float, a: float) -> None:
    if u1 <= 0:
        raise ValueError("u1 must be > 0")
    if u2 < 0:
        raise ValueError("u2 must be >= 0")
    if a <= 0:
        raise ValueError("a must be > 0")


def reflection_amplitude(u1: float, u2: float, a: float, energy: float) -> complex:
    """Complex reflection amplitude r(E) for a wave incident from the left.

    Valid for energy > 0; the E = 0 value is an indeterminate 0/0 and is
    exposed only through :func:`hbs_reflection_limit` and small-E evaluation.
    u2 = 0 is accepted as the degenerate single-delta-well case, which is
    handy for cross-checks against the textbook result r = -u1/(u1 + 2ik).
    """
    _validate(u1, u2, a)
    if energy <= 0:
        raise ValueError(
            "reflection amplitude needs energy > 0; use hbs_reflection_limit "
            "or small positive energies for the zero-energy limit"
        )
    k = cmath.sqrt(energy)
    ika = 1j * k * a
    num = 2j * k * (u1 * cmath.exp(-ika) - u2 * cmath.exp(ika)) \
        + 2j * u1 * u2 * cmath.sin(k * a)
    den = (2j * k + u1) * (2j * k - u2) * cmath.exp(-ika) + u1 * u2 * cmath.exp(ika)
    return -num / den


def reflection_probability(u1: float, u2: float, a: float, energy: float) -> float:
    """R(E) = |r(E)|^2 for energy > 0."""
    return abs(reflection_amplitude(u1, u2, a, energy)) ** 2


def hbs_barrier_strength(u1: float, a: float) -> float:
    """Barrier strength u2 that places (u1, u2, a) on the HBS manifold.

    Requires u1 * a < 1; beyond that the relation would demand u2 <= 0, so no
    well-barrier half bound state exists on that branch.
    """
    if u1 <= 0 or a <= 0:
        raise ValueError("u1 and a must be > 0")
    if u1 * a >= 1:
        raise ValueError("no half bound state in this branch: u1*a must be < 1")
    return u1 / (1.0 - u1 * a)


def hbs_reflection_limit(u1: float, a: float) -> float:
    """Zero-energy reflection probability on the HBS manifold.

    Depends on u1 and a only through the product u1*a and grows monotonically
    from 0 to 1 as u1*a runs over (0, 1).
    """
    if u1 <= 0 or a <= 0:
        raise ValueError("u1 and a must be > 0")
    if u1 * a >= 1:
        raise ValueError("no half bound state in this branch: u1*a must be < 1")
    x = u1 * a
    g = x * x - 2.0 * x
    return (g / (g + 2.0)) ** 2


def on_hbs_manifold(u1: float, u2: float, a: float, rtol: float = HBS_RTOL) -> bool:
    """True when u2 matches the HBS relation within relative tolerance rtol."""
    _validate(u1, u2, a)
    return abs(u2 * (1.0 - u1 * a) - u1) / u1 < rtol


def hbs_wavefunction(u1: float, u2: float, a: float, x):
    """Zero-energy half-bound-state wavefunction, normalized to psi = 1 on the left tail.

    Piecewise zero-curvature: constant 1 for x <= 0, linear 1 - u1*x across
    the gap, constant 1 - u1*a for x >= a.  The slope drops by u1 at x = 0 and
    rises by u2 * psi(a) at x = a, which is exactly the delta-kick rule.
    Raises if (u1, u2, a) is off the HBS manifold.
    """
    if not on_hbs_manifold(u1, u2, a):
        raise ValueError("parameters are off the half-bound-state manifold")
    arr = np.asarray(x, dtype=float)
    out = np.where(arr <= 0, 1.0, np.where(arr >= a, 1.0 - u1 * a, 1.0 - u1 * arr))
    return out if arr.ndim else float(out)
