"""Zero-energy analysis and bound-state search.

A half bound state (HBS) is a zero-energy solution with flat (Neumann) tails
on both sides.  Propagating (psi, psi') = (1, 0) from the left support edge
builds the left tail exactly; the potential supports an HBS exactly when the
right-edge derivative vanishes too.  The normalized right-edge derivative is
the "mismatch" used both as detector and as root-finding objective over a
family parameter.

Bound states are located by shooting at fixed E < 0 with the decaying left
seed (1, kappa), kappa = sqrt(-E); an eigenvalue is a zero of the growing
component psi'(x_R) + kappa psi(x_R).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .potentials import DeltaPair, PotentialSpec, evaluate, support_interval
from .transfer import DEFAULT_N_SLABS, _factor_arrays, _ordered_product, _total_matrix

#: Normalized-mismatch ceiling for the is_hbs verdict.  Discretization noise
#: for smooth families sits near 3e-5 * (4000 / n_slabs)^2, so judging an
#: externally supplied parameter point (rather than a refined root) against
#: this tolerance needs n_slabs of roughly 32000 or more.
TOL_HBS = 1e-6

_TRIVIAL_TOL = 1e-15


@dataclass(frozen=True)
class ZeroEnergyProfile:
    """Sampled zero-energy solution seeded with (psi, psi') = (1, 0) on the left."""

    xs: np.ndarray
    psi: np.ndarray
    mismatch: float
    nodes: int
    is_hbs: bool
    trivial: bool


@dataclass(frozen=True)
class HbsRoot:
    """One half-bound-state locus in a one-parameter family scan."""

    theta: float
    nodes: int
    mismatch: float


def _is_trivial(p: PotentialSpec) -> bool:
    """True when the potential is numerically zero on its support."""
    if isinstance(p, DeltaPair):
        return abs(p.u1) < _TRIVIAL_TOL and abs(p.u2) < _TRIVIAL_TOL
    xl, xr = support_interval(p)
    grid = np.linspace(xl, xr, 801)
    return float(np.max(np.abs(evaluate(p, grid)))) < _TRIVIAL_TOL


def zero_energy_profile(p: PotentialSpec, n_slabs: int = DEFAULT_N_SLABS) -> ZeroEnergyProfile:
    """Propagate the left-Neumann seed at E = 0 and classify the result.

    Nodes are counted as strict sign changes of the sampled solution inside
    the support; the flat tails outside contribute nothing by construction.
    """
    positions, mats = _factor_arrays(p, 0.0, n_slabs, dense=True)
    psi = np.empty(len(positions))
    psi[0] = 1.0
    u, v = 1.0, 0.0
    for i, m in enumerate(mats):
        u, v = m[0, 0] * u + m[0, 1] * v, m[1, 0] * u + m[1, 1] * v
        psi[i + 1] = u
    peak = float(np.max(np.abs(psi)))
    mismatch = v / peak
    signs = np.sign(psi)
    signs = signs[signs != 0]
    nodes = int(np.sum(signs[1:] * signs[:-1] < 0))
    return ZeroEnergyProfile(
        xs=positions,
        psi=psi,
        mismatch=mismatch,
        nodes=nodes,
        is_hbs=abs(mismatch) < TOL_HBS,
        trivial=_is_trivial(p),
    )


def find_hbs(
    make_spec: Callable[[float], PotentialSpec],
    theta_range: tuple,
    tol: float = 1e-8,
    scan_points: int = 200,
    n_slabs: int = DEFAULT_N_SLABS,
) -> list:
    """Half-bound-state loci of a one-parameter family.

    Scans theta over ``theta_range`` on a uniform grid, brackets sign changes
    of the zero-energy mismatch, refines each bracket by bisection to
    |dtheta| < tol, and reports ascending roots with their node counts.
    Parameter points where the potential is trivially zero (the free line is
    formally a nodeless HBS) are excluded from bracketing.
    """
    lo, hi = theta_range
    if not lo < hi:
        raise ValueError("theta_range must satisfy lo < hi")
    if scan_points < 2:
        raise ValueError("scan_points must be >= 2")

    def raw_mismatch(theta: float) -> float:
        m, _, _ = _total_matrix(make_spec(theta), 0.0, n_slabs)
        return m[1, 0]

    grid = np.linspace(lo, hi, scan_points)
    usable = [not _is_trivial(make_spec(t)) for t in grid]
    values = [raw_mismatch(t) if ok else math.nan for t, ok in zip(grid, usable)]

    roots = []
    for i in range(len(grid) - 1):
        a, b = values[i], values[i + 1]
        if math.isnan(a) or math.isnan(b):
            continue
        if a == 0.0:
            roots.append(grid[i])
        elif a * b < 0:
            roots.append(bisect(raw_mismatch, grid[i], grid[i + 1], xtol=tol))
    if not math.isnan(values[-1]) and values[-1] == 0.0:
        roots.append(grid[-1])

    out = []
    for theta in roots:
        profile = zero_energy_profile(make_spec(theta), n_slabs)
        out.append(HbsRoot(theta=float(theta), nodes=profile.nodes, mismatch=profile.mismatch))
    return out


def _default_e_min(p: PotentialSpec) -> float:
    if isinstance(p, DeltaPair):
        return -2.0 * p.u1 * p.u1
    xl, xr = support_interval(p)
    v_min = float(np.min(evaluate(p, np.linspace(xl, xr, 4001))))
    return 1.05 * v_min


#: Search ceiling: states closer to threshold than this are indistinguishable
#: from the half-bound-state boundary at the default grids.
_E_TOP = -1e-8


def bound_states(
    p: PotentialSpec,
    e_min: float | None = None,
    n_slabs: int = DEFAULT_N_SLABS,
    grid_points: int = 400,
    cross_check: bool = True,
) -> list:
    """Bound-state energies, ascending (deepest first).

    Shooting at fixed E < 0: the left seed (1, kappa) is propagated to the
    right support edge and eigenvalues are bracketed as sign changes of
    psi'(x_R) + kappa psi(x_R) on a uniform energy grid, then bisected to
    1e-10.  With ``cross_check`` each root is re-derived from a right-to-left
    pass (inverse factors composed in reverse); the two must agree within
    1e-8 or the root is dropped with a warning.
    """
    if e_min is None:
        e_min = _default_e_min(p)
    if e_min >= 0:
        return []

    def shoot(energy: float, reverse: bool = False) -> float:
        _, mats = _factor_arrays(p, energy, n_slabs)
        kappa = math.sqrt(-energy)
        if not reverse:
            m = _ordered_product(mats)
            u, v = m[0, 0] + m[0, 1] * kappa, m[1, 0] + m[1, 1] * kappa
            return v + kappa * u
        inv = np.empty_like(mats)
        inv[:, 0, 0] = mats[:, 1, 1]
        inv[:, 0, 1] = -mats[:, 0, 1]
        inv[:, 1, 0] = -mats[:, 1, 0]
        inv[:, 1, 1] = mats[:, 0, 0]
        m = _ordered_product(inv[::-1])
        u, v = m[0, 0] - m[0, 1] * kappa, m[1, 0] - m[1, 1] * kappa
        return v - kappa * u

    grid = np.linspace(e_min, _E_TOP, grid_points)
    vals = [shoot(e) for e in grid]
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(bisect(shoot, grid[i], grid[i + 1], xtol=1e-10))

    if cross_check:
        kept = []
        for root in roots:
            lo = max(e_min, root - 1e-3)
            hi = min(_E_TOP, root + 1e-3)
            try:
                other = bisect(lambda e: shoot(e, reverse=True), lo, hi, xtol=1e-10)
            except ValueError:
                other = math.inf
            if abs(other - root) < 1e-8:
                kept.append(root)
            else:
                warnings.warn(
                    f"dropping bound-state candidate E={root:.10g}: forward and "
                    "reverse shooting disagree",
                    stacklevel=2,
                )
        roots = kept
    return [float(r) for r in roots]
