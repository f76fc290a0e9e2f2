"""Reflection and transmission of 1D well-barrier potentials.

Closed-form results for the double Dirac delta and Scarf II families, a
family-agnostic transfer-matrix engine, half-bound-state detection, and
reproducible parameter sweeps with CSV/JSON export.
"""

__version__ = "0.1.0"

from .potentials import (  # noqa: E402
    DeltaPair,
    PotentialSpec,
    Sampled,
    ScarfII,
    SinSquaredWellBarrier,
    SquareWellBarrier,
    effective_q,
    evaluate,
    support_interval,
)
from .transfer import (  # noqa: E402
    ScatteringResult,
    TransferMatrix,
    ZeroEnergyReflection,
    delta_transfer,
    reflection_at_zero,
    scattering,
    slab_transfer,
    total_transfer,
)
from .spectral import (  # noqa: E402
    HbsRoot,
    ZeroEnergyProfile,
    bound_states,
    find_hbs,
    zero_energy_profile,
)
from .sweeps import (  # noqa: E402
    SweepTable,
    WavefunctionTable,
    export,
    figure_preset,
    load_json,
    make_spec,
    sweep,
)

__all__ = [
    "__version__",
    "DeltaPair",
    "ScarfII",
    "SquareWellBarrier",
    "SinSquaredWellBarrier",
    "Sampled",
    "PotentialSpec",
    "evaluate",
    "support_interval",
    "effective_q",
    "TransferMatrix",
    "ScatteringResult",
    "ZeroEnergyReflection",
    "slab_transfer",
    "delta_transfer",
    "total_transfer",
    "scattering",
    "reflection_at_zero",
    "ZeroEnergyProfile",
    "HbsRoot",
    "zero_energy_profile",
    "find_hbs",
    "bound_states",
    "SweepTable",
    "WavefunctionTable",
    "sweep",
    "figure_preset",
    "export",
    "load_json",
    "make_spec",
]
