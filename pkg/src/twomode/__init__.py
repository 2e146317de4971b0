"""Entanglement and squeezing analysis for two-mode Gaussian optical states."""

__version__ = "0.1.0"

from .basis import (
    PolarizationRotation,
    beamsplitter_equivalence,
    circular_rotation,
    homodyne_splitting,
    waveplate,
)
from .entanglement import (
    EntanglementReport,
    UncorrelatedBasis,
    best_single_mode_squeezing,
    equatorial_entanglement,
    find_uncorrelated_basis,
    inseparability_at,
    inseparability_min,
    maximal_entanglement,
    poincare_sweep,
    sigma,
    sigma_extrema,
)
from .gaussian import (
    TwoModeState,
    ValidationResult,
    from_quadrature_covariance,
    load_state,
    min_max_variance,
    quadrature_variance,
    save_state,
    to_quadrature_covariance,
    vacuum,
    validate,
)
from .homodyne import MeasurementRun, RunConfig, estimate_inseparability_trace, simulate
from .model import (
    KerrSpectrumParams,
    circular_case_state,
    frequency_sweep,
    linear_case_state,
    load_params,
    phi_c,
)
from .stokes import lock_phase, polarization_inseparability, stokes_means

__all__ = [
    "EntanglementReport",
    "KerrSpectrumParams",
    "MeasurementRun",
    "PolarizationRotation",
    "RunConfig",
    "TwoModeState",
    "UncorrelatedBasis",
    "ValidationResult",
    "beamsplitter_equivalence",
    "best_single_mode_squeezing",
    "circular_case_state",
    "circular_rotation",
    "equatorial_entanglement",
    "estimate_inseparability_trace",
    "find_uncorrelated_basis",
    "frequency_sweep",
    "from_quadrature_covariance",
    "homodyne_splitting",
    "inseparability_at",
    "inseparability_min",
    "linear_case_state",
    "load_params",
    "load_state",
    "lock_phase",
    "maximal_entanglement",
    "min_max_variance",
    "phi_c",
    "poincare_sweep",
    "polarization_inseparability",
    "quadrature_variance",
    "save_state",
    "sigma",
    "sigma_extrema",
    "simulate",
    "stokes_means",
    "to_quadrature_covariance",
    "vacuum",
    "validate",
    "waveplate",
]
