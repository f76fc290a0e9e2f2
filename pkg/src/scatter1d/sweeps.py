"""Parameter sweeps, bundled figure presets, and flat-file export.

A sweep evaluates R(E) (and T = 1 - R) on a uniform grid of one family
parameter, through either the closed-form engine (delta pair and Scarf II
only) or the numeric transfer-matrix engine.  Requesting E = 0 routes through
the zero-energy limit machinery: the analytic engine uses the exact threshold
limits, the numeric engine uses the small-energy ladder and records its
convergence verdict per point.

The preset registry pins every grid the bundled figures use, so re-running a
preset is deterministic down to the exported bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import __version__
from . import dddp as _dddp
from . import scarf as _scarf
from .potentials import (
    DeltaPair,
    PotentialSpec,
    ScarfII,
    SinSquaredWellBarrier,
    SquareWellBarrier,
)
from .transfer import DEFAULT_N_SLABS, reflection_at_zero, scattering

FAMILIES = ("dddp", "scarf2", "square-wb", "sin2-wb")

_FAMILY_PARAMS = {
    "dddp": ("u1", "u2", "a"),
    "scarf2": ("s", "q"),
    "square-wb": ("u1", "u2", "w", "a", "eta"),
    "sin2-wb": ("u1", "u2", "w", "a", "eta"),
}


class NoClosedFormError(ValueError):
    """Raised when the analytic engine is asked for a family without one."""


@dataclass(frozen=True)
class SweepRecord:
    param: float
    energy: float
    R: float
    T: float
    converged: bool


@dataclass
class SweepTable:
    """Ordered sweep records plus metadata sufficient to re-run them."""

    param_name: str
    records: list
    metadata: dict = field(default_factory=dict)


@dataclass
class WavefunctionTable:
    """Sampled wavefunction (x, psi) plus metadata and node count."""

    xs: list
    psi: list
    nodes: int
    metadata: dict = field(default_factory=dict)


def make_spec(family: str, params: dict) -> PotentialSpec:
    """Build a potential spec from CLI-style family name and numeric keys."""
    if family == "dddp":
        return DeltaPair(
            u1=float(params.get("u1", 1.0)),
            u2=float(params.get("u2", 1.0)),
            a=float(params.get("a", 1.0)),
        )
    if family == "scarf2":
        return ScarfII(s=float(params.get("s", 0.2)), q=float(params.get("q", 1.0)))
    if family in ("square-wb", "sin2-wb"):
        cls = SquareWellBarrier if family == "square-wb" else SinSquaredWellBarrier
        return cls(
            u1=float(params.get("u1", 1.0)),
            u2=float(params.get("u2", 1.0)),
            w=float(params.get("w", 1.0)),
            a=float(params.get("a", 0.0)),
        )
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _spec_factory(family: str, vary: str, params: dict):
    """Callable mapping the swept value to a potential spec.

    Special cases: vary = "q" for the square and sin^2 families sets the
    well scale u0 = (q / w)^2 with u1 = u0 and u2 = eta * u0 (eta from params,
    default 1).  For a delta pair, the key u2 = "hbs" ties the barrier to the
    half-bound-state relation as u1 or a vary.
    """
    params = dict(params or {})
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    tie_u2 = family == "dddp" and str(params.get("u2", "")).lower() == "hbs"
    if tie_u2:
        params.pop("u2")
        if vary == "u2":
            raise ValueError("cannot both vary u2 and tie it to the half-bound-state relation")

    known = set(_FAMILY_PARAMS[family]) | {"q"} if family != "dddp" else set(_FAMILY_PARAMS[family])
    if vary not in known:
        if family == "dddp" and vary == "q":
            raise ValueError("no dimensionless q is defined for a delta pair; vary u1, u2 or a")
        raise ValueError(f"cannot vary {vary!r} for family {family!r}")
    for key in params:
        if key not in _FAMILY_PARAMS[family]:
            raise ValueError(f"unknown parameter {key!r} for family {family!r}")

    def build(value: float) -> PotentialSpec:
        p = dict(params)
        if vary == "q" and family in ("square-wb", "sin2-wb"):
            if "u1" in p or "u2" in p:
                raise ValueError("varying q sets u1 and u2; pass eta instead")
            w = float(p.get("w", 1.0))
            u0 = (value / w) ** 2
            p["u1"] = u0
            p["u2"] = float(p.get("eta", 1.0)) * u0
        else:
            p[vary] = value
        p.pop("eta", None)
        if tie_u2:
            p["u2"] = _dddp.hbs_barrier_strength(float(p.get("u1", 1.0)), float(p.get("a", 1.0)))
        return make_spec(family, p)

    return build


def _analytic_point(family: str, p: PotentialSpec, energy: float) -> tuple:
    """(R, T, converged) from the closed forms; energy 0 takes the exact limit."""
    if family == "dddp":
        assert isinstance(p, DeltaPair)
        if energy > 0:
            r = _dddp.reflection_probability(p.u1, p.u2, p.a, energy)
        elif _dddp.on_hbs_manifold(p.u1, p.u2, p.a):
            r = _dddp.hbs_reflection_limit(p.u1, p.a)
        else:
            r = 1.0
        return r, 1.0 - r, True
    if family == "scarf2":
        assert isinstance(p, ScarfII)
        if energy > 0:
            r = _scarf.reflection(p.s, p.q, energy)
        elif _scarf.nearest_integer_q(p.q) is not None:
            r = _scarf.zero_energy_reflection(p.s)
        else:
            r = 1.0
        return r, 1.0 - r, True
    raise NoClosedFormError(f"no closed form for family {family!r}; use the numeric engine")


def sweep(
    family: str,
    vary: str,
    lo: float,
    hi: float,
    steps: int,
    energy: float,
    engine: str = "numeric",
    params: dict | None = None,
    n_slabs: int = DEFAULT_N_SLABS,
) -> SweepTable:
    """Uniform sweep of one parameter, computing R and T at fixed energy."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not lo < hi:
        raise ValueError("sweep range must satisfy lo < hi")
    if energy < 0:
        raise ValueError("energy must be >= 0 (0 selects the zero-energy limit)")
    if engine not in ("analytic", "numeric"):
        raise ValueError(f"unknown engine {engine!r}")
    build = _spec_factory(family, vary, params or {})
    if engine == "analytic" and family not in ("dddp", "scarf2"):
        raise NoClosedFormError(f"no closed form for family {family!r}; use the numeric engine")

    records = []
    for value in np.linspace(lo, hi, steps):
        spec = build(float(value))
        if engine == "analytic":
            r, t, ok = _analytic_point(family, spec, energy)
        elif energy > 0:
            res = scattering(spec, energy, n_slabs)
            r, t, ok = res.R, res.T, True
        else:
            limit = reflection_at_zero(spec, n_slabs)
            r, t, ok = limit.value, 1.0 - limit.value, limit.converged
        records.append(SweepRecord(param=float(value), energy=energy, R=r, T=t, converged=ok))

    metadata = {
        "family": family,
        "vary": vary,
        "lo": lo,
        "hi": hi,
        "steps": steps,
        "energy": energy,
        "engine": engine,
        "params": {k: v for k, v in (params or {}).items()},
        "n_slabs": n_slabs,
        "version": __version__,
    }
    return SweepTable(param_name=vary, records=records, metadata=metadata)


def _wavefunction_table(s: float, q: float, n: int, lo: float, hi: float, points: int) -> WavefunctionTable:
    xs = np.linspace(lo, hi, points)
    psi = _scarf.eigenfunction(s, q, n, xs)
    signs = np.sign(psi)
    signs = signs[signs != 0]
    nodes = int(np.sum(signs[1:] * signs[:-1] < 0))
    return WavefunctionTable(
        xs=[float(v) for v in xs],
        psi=[float(v) for v in psi],
        nodes=nodes,
        metadata={
            "family": "scarf2",
            "s": s,
            "q": q,
            "n": n,
            "lo": lo,
            "hi": hi,
            "points": points,
            "version": __version__,
        },
    )


#: Registry of every bundled figure preset.  Grids are pinned here so that
#: exports are reproducible; see the README for the rationale behind each.
PRESETS = {
    "fig1b": {
        "description": "Delta-pair zero-energy reflection vs u1 on the HBS manifold, "
        "for separations a = 0.5, 1, 2 (u1 capped so u1*a < 1).",
        "curves": [
            ("a0.5", dict(family="dddp", vary="u1", lo=0.02, hi=1.98, steps=600,
                          energy=0.0, engine="analytic", params={"a": 0.5, "u2": "hbs"})),
            ("a1", dict(family="dddp", vary="u1", lo=0.01, hi=0.99, steps=600,
                        energy=0.0, engine="analytic", params={"a": 1.0, "u2": "hbs"})),
            ("a2", dict(family="dddp", vary="u1", lo=0.005, hi=0.495, steps=600,
                        energy=0.0, engine="analytic", params={"a": 2.0, "u2": "hbs"})),
        ],
    },
    "fig2a": {
        "description": "Scarf II R(0.01) vs q at s = 0.2; dips near integer q.",
        "curves": [
            ("", dict(family="scarf2", vary="q", lo=-0.5, hi=3.0, steps=600,
                      energy=0.01, engine="analytic", params={"s": 0.2})),
        ],
    },
    "fig2b": {
        "description": "Scarf II R(0.01) vs s for q near integers (1.01, 0.03, 1.97) "
        "plus the integer-q zero-energy reference tanh^2(pi s).",
        "curves": [
            ("q1.01", dict(family="scarf2", vary="s", lo=0.0, hi=1.0, steps=600,
                           energy=0.01, engine="analytic", params={"q": 1.01})),
            ("q0.03", dict(family="scarf2", vary="s", lo=0.0, hi=1.0, steps=600,
                           energy=0.01, engine="analytic", params={"q": 0.03})),
            ("q1.97", dict(family="scarf2", vary="s", lo=0.0, hi=1.0, steps=600,
                           energy=0.01, engine="analytic", params={"q": 1.97})),
            ("reference", dict(family="scarf2", vary="s", lo=0.0, hi=1.0, steps=600,
                               energy=0.0, engine="analytic", params={"q": 1.0})),
        ],
    },
    "fig3": {
        "description": "Scarf II half-bound-state wavefunctions at s = 0.2 for "
        "q = 0, 1, 2 (zero, one, two nodes).",
        "wavefunctions": [
            ("q0", dict(s=0.2, q=0.0, n=0, lo=-8.0, hi=8.0, points=801)),
            ("q1", dict(s=0.2, q=1.0, n=1, lo=-8.0, hi=8.0, points=801)),
            ("q2", dict(s=0.2, q=2.0, n=2, lo=-8.0, hi=8.0, points=801)),
        ],
    },
    "fig4": {
        "description": "Antisymmetric square well-barrier R(0.01) vs q = w sqrt(u0) "
        "(w = 1, u1 = u2 = u0) for gaps a = 2 and a = 0.",
        "curves": [
            ("a2", dict(family="square-wb", vary="q", lo=0.02, hi=3.0, steps=600,
                        energy=0.01, engine="numeric", params={"w": 1.0, "a": 2.0})),
            ("a0", dict(family="square-wb", vary="q", lo=0.02, hi=3.0, steps=600,
                        energy=0.01, engine="numeric", params={"w": 1.0, "a": 0.0})),
        ],
    },
    "fig5": {
        "description": "Sin^2 well-barrier R(0.01) vs q = w sqrt(u1) swept through the "
        "lobe width w at fixed u1 = 1, a = 1, barrier height u2 = eta "
        "(eta = 1.5 and 0.1).  The range extends to q = 8 to cover the "
        "low-reflection locus near q = 6.2 at eta = 0.1.",
        "curves": [
            ("eta1.5", dict(family="sin2-wb", vary="w", lo=0.05, hi=8.0, steps=600,
                            energy=0.01, engine="numeric",
                            params={"u1": 1.0, "u2": 1.5, "a": 1.0})),
            ("eta0.1", dict(family="sin2-wb", vary="w", lo=0.05, hi=8.0, steps=600,
                            energy=0.01, engine="numeric",
                            params={"u1": 1.0, "u2": 0.1, "a": 1.0})),
        ],
    },
}


def figure_preset(name: str, n_slabs: int = DEFAULT_N_SLABS) -> dict:
    """Tables for one bundled preset, keyed by curve label ('' for a single curve)."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(sorted(PRESETS))}")
    entry = PRESETS[name]
    out = {}
    for label, kwargs in entry.get("curves", []):
        out[label] = sweep(n_slabs=n_slabs, **kwargs)
    for label, kwargs in entry.get("wavefunctions", []):
        out[label] = _wavefunction_table(**kwargs)
    return out


def _fmt(value: float) -> str:
    return format(value, ".12g")


def export_csv(table: Union[SweepTable, WavefunctionTable], path) -> None:
    """Write a table as CSV (12 significant digits, '\\n' newlines, UTF-8)."""
    lines = []
    if isinstance(table, SweepTable):
        lines.append("param,E,R,T,converged")
        for rec in table.records:
            flag = "true" if rec.converged else "false"
            lines.append(
                f"{_fmt(rec.param)},{_fmt(rec.energy)},{_fmt(rec.R)},{_fmt(rec.T)},{flag}"
            )
    else:
        lines.append("x,psi")
        for x, v in zip(table.xs, table.psi):
            lines.append(f"{_fmt(x)},{_fmt(v)}")
    data = "\n".join(lines) + "\n"
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def export_json(table: Union[SweepTable, WavefunctionTable], path) -> None:
    """Write a table as JSON with full float precision (exact round-trip)."""
    if isinstance(table, SweepTable):
        payload = {
            "metadata": dict(table.metadata, param_name=table.param_name),
            "records": [
                [rec.param, rec.energy, rec.R, rec.T, rec.converged]
                for rec in table.records
            ],
        }
    else:
        payload = {
            "metadata": dict(table.metadata, nodes=table.nodes),
            "records": [[x, v] for x, v in zip(table.xs, table.psi)],
        }
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def export(table: Union[SweepTable, WavefunctionTable], path, fmt: str = "csv") -> None:
    """Write a table to ``path`` in the requested format ('csv' or 'json')."""
    if fmt == "csv":
        export_csv(table, path)
    elif fmt == "json":
        export_json(table, path)
    else:
        raise ValueError(f"unknown export format {fmt!r}")


def load_json(path) -> Union[SweepTable, WavefunctionTable]:
    """Re-read a JSON export, reconstructing the table exactly."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    metadata = payload["metadata"]
    if "param_name" in metadata:
        name = metadata.pop("param_name")
        records = [
            SweepRecord(param=p, energy=e, R=r, T=t, converged=c)
            for p, e, r, t, c in payload["records"]
        ]
        return SweepTable(param_name=name, records=records, metadata=metadata)
    nodes = metadata.pop("nodes")
    xs = [row[0] for row in payload["records"]]
    psi = [row[1] for row in payload["records"]]
    return WavefunctionTable(xs=xs, psi=psi, nodes=nodes, metadata=metadata)
