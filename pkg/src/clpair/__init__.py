"""Electron-photon pair entanglement diagnostics for coherent
cathodoluminescence (transition-radiation) emission.

The package models the post-emission scattered state of a free electron
and the photon it radiated, and quantifies their entanglement through
subsystem purity, the Schmidt number, and an EPR-type uncertainty
product for the (relative position, total transverse wavevector) pair.
"""

from .constants import ELECTRON_REST_KEV, HBARC_KEV_UM
from .errors import (
    ConfigError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    EmptyFilterError,
    ResolutionError,
    SingularPointError,
)
from .model import (
    BeamParams,
    PhaseModel,
    PolarLinearPhase,
    QuadratureSpec,
    RadialDkPhase,
    RadialKcPhase,
    ScatteredState,
    SpectrumFilter,
    SpectrumModel,
    ZeroPhase,
    apply_filter,
    derive_kinematics,
    eval_gamma,
    eval_psi_ini,
    eval_psi_sc,
    spectrum_normalization,
    wavelength_to_wavenumbers,
)
from .measures import (
    MeasureResult,
    Regime,
    RegimeThresholds,
    classify_regime,
    evaluate_point,
    purity_sc,
    purity_z,
    rel_pos_variance_closed,
    rel_pos_variance_quadrature,
    total_wavevector_variance,
    uncertainty_product,
)

__version__ = "0.1.0"
