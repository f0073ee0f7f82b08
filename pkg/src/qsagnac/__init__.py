"""Exact Gaussian-state simulation of quantum-entangled Sagnac interferometers."""
from ._backend import BACKEND
from .components import (
    Circuit,
    GainPair,
    PropagationPhases,
    PumpPhase,
    beam_splitter,
    dpa,
    npa,
    phase_shift,
)
from .dsl import CircuitDoc, CircuitParseError, parse_circuit, serialize
from .gaussian import (
    BogoliubovTransform,
    GaussianState,
    ModeLabel,
    ModeRegister,
    apply,
    coherent_state,
    compose,
    to_symplectic,
    vacuum,
)
from .measurement import HomodyneSetting, SnrReport, homodyne, slope_check, snr_exact
from .presets import builtin_presets
from .scenarios import (
    InjectionScheme,
    PhaseBudget,
    RotationScenario,
    build_classical_sagnac,
    build_naive_sui_sagnac,
    build_nested_sagnac_sui,
    matched_baseline,
    phase_budget,
    sagnac_phase,
)
from .sweep import SweepConfig, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Circuit",
    "GainPair",
    "PropagationPhases",
    "PumpPhase",
    "beam_splitter",
    "dpa",
    "npa",
    "phase_shift",
    "CircuitDoc",
    "CircuitParseError",
    "parse_circuit",
    "serialize",
    "BogoliubovTransform",
    "GaussianState",
    "ModeLabel",
    "ModeRegister",
    "apply",
    "coherent_state",
    "compose",
    "to_symplectic",
    "vacuum",
    "HomodyneSetting",
    "SnrReport",
    "homodyne",
    "slope_check",
    "snr_exact",
    "builtin_presets",
    "InjectionScheme",
    "PhaseBudget",
    "RotationScenario",
    "build_classical_sagnac",
    "build_naive_sui_sagnac",
    "build_nested_sagnac_sui",
    "matched_baseline",
    "phase_budget",
    "sagnac_phase",
    "SweepConfig",
    "run_sweep",
]
