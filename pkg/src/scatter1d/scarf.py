"""Closed-form results for the Scarf II well-barrier potential.

The potential (see :class:`scatter1d.potentials.ScarfII`) is

    V(x) = (s^2 - q^2 - q) sech^2 x + s (2q+1) sech x tanh x,

which is reflectionless-adjacent in a striking way: for integer q the
zero-energy reflection probability equals tanh^2(pi s) instead of the
ordinary threshold value 1, because the n = q member of the eigenfunction
ladder turns into a half bound state.  For non-integer q the ordinary
R(0) = 1 is recovered.

Transmission and reflection probabilities depend on q only through
sin^2(pi q), so they are exactly periodic in q -> q + 1 and even in
q -> -q even though the potential itself is neither.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .potentials import ScarfII, support_interval

#: |q - round(q)| below which q is treated as an integer.
INTEGER_Q_TOL = 1e-9

#: Relative ceiling on the residual imaginary part of an eigenfunction.
_IMAG_TOL = 1e-10


def _sin2_pi(q: float) -> float:
    # reduce by the nearest integer first: sin^2(pi q) is 1-periodic and this
    # keeps full precision for q near large integers
    return math.sin(math.pi * (q - round(q))) ** 2


def _probabilities(s: float, q: float, energy: float) -> tuple:
    if energy <= 0:
        raise ValueError(
            "closed-form probabilities need energy > 0; use the zero-energy "
            "limits for integer q"
        )
    k = math.sqrt(energy)
    sinh_k2 = math.sinh(math.pi * k) ** 2
    cosh_k2 = math.cosh(math.pi * k) ** 2
    sin_q2 = _sin2_pi(q)
    cosh_s2 = math.cosh(math.pi * s) ** 2
    sinh_s2 = math.sinh(math.pi * s) ** 2
    num_t = sinh_k2 * cosh_k2
    num_r = sin_q2 * (sinh_k2 + cosh_s2) + sinh_k2 * sinh_s2
    # num_t + num_r equals (sinh_k2 + sin_q2)(sinh_k2 + cosh_s2) identically;
    # dividing by the sum keeps T + R = 1 to a couple of ulps
    den = num_t + num_r
    return num_r / den, num_t / den


def reflection(s: float, q: float, energy: float) -> float:
    """Reflection probability R(E) for energy > 0."""
    return _probabilities(s, q, energy)[0]


def transmission(s: float, q: float, energy: float) -> float:
    """Transmission probability T(E) = 1 - R(E) for energy > 0."""
    return _probabilities(s, q, energy)[1]


def zero_energy_reflection(s: float) -> float:
    """R(0) = tanh^2(pi s), the integer-q threshold-anomaly value."""
    return math.tanh(math.pi * s) ** 2


def zero_energy_transmission(s: float) -> float:
    """T(0) = sech^2(pi s) at integer q."""
    return 1.0 / math.cosh(math.pi * s) ** 2


def nearest_integer_q(q: float, tol: float = INTEGER_Q_TOL):
    """round(q) when q is within tol of an integer, else None."""
    r = round(q)
    return r if abs(q - r) < tol else None


@dataclass(frozen=True)
class BoundSpectrum:
    """Negative bound energies E_n = -(n - q)^2, ordered by n (rising energy)."""

    energies: tuple
    count: int


def bound_energies(q: float) -> BoundSpectrum:
    """Bound spectrum for shape parameter q.

    Non-integer q > 0 supports floor(q) + 1 states (n = 0 .. floor(q)); at
    integer q the n = q member sits at E = 0 as the half bound state and is
    excluded, leaving q states.  q <= 0 binds nothing.
    """
    qi = nearest_integer_q(q)
    if qi is not None:
        n_states = max(qi, 0)
    elif q > 0:
        n_states = math.floor(q) + 1
    else:
        n_states = 0
    energies = tuple(-((n - q) ** 2) for n in range(n_states))
    return BoundSpectrum(energies=energies, count=n_states)


def jacobi_polynomial(n: int, alpha: complex, beta: complex, z):
    """Jacobi polynomial P_n^(alpha, beta)(z) for complex parameters and argument.

    Evaluated by the standard three-term recurrence; ``z`` may be a scalar or
    an ndarray.  Degenerate parameter combinations that zero the leading
    recurrence coefficient (e.g. alpha + beta = -n - m for small integers)
    are rejected rather than silently divided through.
    """
    if n < 0 or n != int(n):
        raise ValueError("degree n must be a non-negative integer")
    n = int(n)
    zz = np.asarray(z, dtype=complex)
    p_prev = np.ones_like(zz)
    if n == 0:
        return p_prev if zz.ndim else complex(p_prev)
    p_cur = (alpha + 1.0) + (alpha + beta + 2.0) * (zz - 1.0) / 2.0
    for m in range(2, n + 1):
        ab = alpha + beta
        c0 = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0)
        if abs(c0) < 1e-200:
            raise ValueError(
                f"degenerate Jacobi recurrence at degree {m}: "
                "2m(m+a+b)(2m+a+b-2) vanishes for these parameters"
            )
        c1 = (2.0 * m + ab - 1.0) * (alpha * alpha - beta * beta)
        c2 = (2.0 * m + ab - 1.0) * (2.0 * m + ab) * (2.0 * m + ab - 2.0)
        c3 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab)
        p_next = ((c1 + c2 * zz) * p_cur - c3 * p_prev) / c0
        p_prev, p_cur = p_cur, p_next
    return p_cur if zz.ndim else complex(p_cur)


def _max_index(q: float) -> int:
    """Largest allowed eigenfunction index; includes n = q at integer q (the HBS)."""
    qi = nearest_integer_q(q)
    return qi if qi is not None else math.floor(q)


def eigenfunction(s: float, q: float, n: int, x, normalize: bool = True):
    """Real eigenfunction psi_n(x), max-amplitude normalized.

    psi_n(x) = i^n (1 + y^2)^(-q/2) exp(-s arctan y) P_n^(a*, a)(i y) with
    y = sinh x and a = i s - q - 1/2: the conjugate parameter pairing makes
    the combination real (checked at runtime).  Bound states take
    0 <= n <= floor(q); at integer q the extra index n = q produces the half
    bound state, whose tails approach constants instead of decaying.

    Normalization scales the result so max |psi| = 1 on a dense reference
    grid over the support interval, with the left tail made positive.
    """
    if n != int(n) or n < 0:
        raise IndexError("eigenfunction index n must be a non-negative integer")
    n = int(n)
    if n > _max_index(q):
        raise IndexError(f"index n={n} out of range for q={q}")

    def _raw(xa: np.ndarray) -> np.ndarray:
        y = np.sinh(xa)
        pref = np.cosh(xa) ** (-q) * np.exp(-s * np.arctan(y))
        alpha = complex(-q - 0.5, -s)
        beta = complex(-q - 0.5, s)
        poly = (1j ** n) * jacobi_polynomial(n, alpha, beta, 1j * y)
        vals = pref * poly
        scale = np.max(np.abs(vals)) or 1.0
        if np.max(np.abs(vals.imag)) > _IMAG_TOL * scale:
            raise RuntimeError("eigenfunction came out non-real; parameter pairing broken")
        return vals.real

    arr = np.asarray(x, dtype=float)
    out = _raw(np.atleast_1d(arr))
    if normalize:
        xl, xr = support_interval(ScarfII(s=s, q=q))
        ref = _raw(np.linspace(xl, xr, 4001))
        peak = np.max(np.abs(ref))
        first = ref[np.nonzero(np.abs(ref) > 1e-300)[0][0]]
        out = out / (peak if first > 0 else -peak)
    return out if arr.ndim else float(out[0])
