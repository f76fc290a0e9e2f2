"""Command-line interface.

Subcommands: sweep, figure, hbs, boundstates, wavefunction.  Exit codes:
0 on success, 1 on usage errors, 2 when a numeric zero-energy sweep fails
to converge.  An optional config file of plain ``key = value`` lines can
supply any option or potential parameter; explicit flags win over the file.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .spectral import bound_states, find_hbs
from .sweeps import (
    FAMILIES,
    PRESETS,
    _spec_factory,
    export,
    figure_preset,
    make_spec,
    sweep,
)
from .scarf import eigenfunction
from .transfer import DEFAULT_N_SLABS

_USAGE_EXIT = 1
_NONCONVERGED_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(_USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _parse_range(text: str) -> tuple:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected lo:hi") from None
    if not lo < hi:
        raise ValueError(f"bad range {text!r}; need lo < hi")
    return lo, hi


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"bad --param {item!r}; expected key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        value = value.strip()
        if value.lower() == "hbs":
            out[key] = "hbs"
        else:
            try:
                out[key] = float(value)
            except ValueError:
                raise ValueError(f"bad --param value {item!r}; expected a number or 'hbs'") from None
    return out


def _read_config(path) -> dict:
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """Fill unset options from config, collect leftover keys as potential params.

    Config keys that match an option of the active subcommand fill that
    option when no flag set it; any other key is a potential parameter.
    Explicit --param entries win over config parameters.
    """
    config = _read_config(args.config) if getattr(args, "config", None) else {}
    params = _parse_params(getattr(args, "param", None) or [])
    for key, value in config.items():
        if key in vars(args):
            if getattr(args, key) is None:
                setattr(args, key, value)
        elif key not in params:
            params[key] = "hbs" if value.lower() == "hbs" else float(value)
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    return params


def _cmd_sweep(args) -> int:
    params = _merge_config(args, {
        "steps": 600, "energy": 0.01, "engine": "numeric",
        "format": "csv", "n_slabs": DEFAULT_N_SLABS,
    })
    if args.family is None or args.vary is None or args.range is None or args.out is None:
        raise ValueError("sweep needs --family, --vary, --range and --out")
    lo, hi = _parse_range(args.range)
    table = sweep(
        family=args.family,
        vary=args.vary,
        lo=lo,
        hi=hi,
        steps=int(args.steps),
        energy=float(args.energy),
        engine=args.engine,
        params=params,
        n_slabs=int(args.n_slabs),
    )
    export(table, args.out, fmt=args.format)
    if not all(rec.converged for rec in table.records):
        print(
            "warning: zero-energy limit did not converge at every point",
            file=sys.stderr,
        )
        return _NONCONVERGED_EXIT
    return 0


def _cmd_figure(args) -> int:
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = figure_preset(args.preset, n_slabs=int(args.n_slabs or DEFAULT_N_SLABS))
    for label, table in tables.items():
        stem = args.preset if not label else f"{args.preset}_{label}"
        export(table, out_dir / f"{stem}.csv", fmt="csv")
    return 0


def _cmd_hbs(args) -> int:
    params = _merge_config(args, {"n_slabs": DEFAULT_N_SLABS})
    if args.family is None or args.vary is None or args.range is None:
        raise ValueError("hbs needs --family, --vary and --range")
    lo, hi = _parse_range(args.range)
    build = _spec_factory(args.family, args.vary, params)
    roots = find_hbs(build, (lo, hi), n_slabs=int(args.n_slabs))
    for root in roots:
        print(f"{args.vary}={root.theta:.12g} nodes={root.nodes}")
    if not roots:
        print("no half-bound-state roots in range", file=sys.stderr)
    return 0


def _cmd_boundstates(args) -> int:
    params = _merge_config(args, {"n_slabs": DEFAULT_N_SLABS})
    if args.family is None:
        raise ValueError("boundstates needs --family")
    spec = make_spec(args.family, params)
    for energy in bound_states(spec, n_slabs=int(args.n_slabs)):
        print(f"E={energy:.12g}")
    return 0


def _cmd_wavefunction(args) -> int:
    _merge_config(args, {"points": 801, "x_range": "-8:8", "n": 0})
    if args.family != "scarf2":
        raise ValueError("wavefunction is available for --family scarf2 only")
    if args.s is None or args.q is None:
        raise ValueError("wavefunction needs --s and --q")
    lo, hi = _parse_range(args.x_range)
    import numpy as np

    xs = np.linspace(lo, hi, int(args.points))
    psi = eigenfunction(float(args.s), float(args.q), int(args.n), xs)
    print("x,psi")
    for x, v in zip(xs, psi):
        print(f"{x:.12g},{v:.12g}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="scatter1d", description=__doc__)
    parser.add_argument("--version", action="version", version=f"scatter1d {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: _Parser) -> None:
        p.add_argument("--config", help="key = value file; flags override it")
        p.add_argument("--n-slabs", dest="n_slabs", type=int, default=None)
        p.add_argument("--param", action="append", metavar="K=V",
                       help="potential parameter, repeatable (u2=hbs ties the delta barrier)")

    p = sub.add_parser("sweep", help="sweep one parameter and export R, T")
    common(p)
    p.add_argument("--family", choices=FAMILIES, default=None)
    p.add_argument("--vary", default=None, metavar="NAME")
    p.add_argument("--range", default=None, metavar="LO:HI")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--energy", type=float, default=None, help="incident energy; 0 takes the limit")
    p.add_argument("--engine", choices=("analytic", "numeric"), default=None)
    p.add_argument("--out", default=None, metavar="PATH")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", help="write a bundled preset's tables as CSV")
    common(p)
    p.add_argument("preset", choices=sorted(PRESETS))
    p.add_argument("--out-dir", dest="out_dir", default=None)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("hbs", help="find half-bound-state roots of a family parameter")
    common(p)
    p.add_argument("--family", choices=FAMILIES, default=None)
    p.add_argument("--vary", default=None, metavar="NAME")
    p.add_argument("--range", default=None, metavar="LO:HI")
    p.set_defaults(func=_cmd_hbs)

    p = sub.add_parser("boundstates", help="list bound-state energies")
    common(p)
    p.add_argument("--family", choices=FAMILIES, default=None)
    p.set_defaults(func=_cmd_boundstates)

    p = sub.add_parser("wavefunction", help="print a Scarf II eigenfunction as CSV")
    common(p)
    p.add_argument("--family", default="scarf2")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--x-range", dest="x_range", default=None, metavar="LO:HI")
    p.add_argument("--points", type=int, default=None)
    p.set_defaults(func=_cmd_wavefunction)

    return parser


def _join_range_flags(argv) -> list:
    """Glue '--range -0.5:3' into '--range=-0.5:3' so argparse accepts negatives."""
    out = []
    it = iter(argv)
    for token in it:
        if token in ("--range", "--x-range"):
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_range_flags(argv))
    try:
        return args.func(args)
    except (ValueError, OSError, IndexError) as exc:
        print(f"scatter1d: error: {exc}", file=sys.stderr)
        return _USAGE_EXIT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
