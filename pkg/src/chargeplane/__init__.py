"""Resonance location for potential scattering via eigenvalue trajectories
of the complex-rotated charge operator in a Laguerre basis."""

from .basis import ChannelConfig, QuadratureRule, build_j_matrix, gauss_rule
from .eigensolver import EigenSet, eigen_decompose, eigenvalue_derivative
from .errors import (
    AmbiguousSelectionError,
    ChargePlaneError,
    ConfigError,
    DegenerateEigenvectorError,
    EigensolverError,
)
from .hamiltonian import (
    RotatedHamiltonian,
    energy_derivative_matrix,
    full_matrix,
    potential_matrix,
    reference_matrix,
)
from .potential import (
    GAUSSIAN_WELL_POTENTIAL,
    R2_EXP_POTENTIAL,
    PotentialModel,
    PotentialTerm,
    eval_potential,
    parse_potential,
)
from .resonance import (
    CrossingCandidate,
    Resonance,
    StabilityReport,
    auto_search,
    detect_crossings,
    refine_resonance,
    stability_scan,
)
from .trajectory import EnergyGrid, Trajectory, match_step, sweep

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSelectionError",
    "ChannelConfig",
    "ChargePlaneError",
    "ConfigError",
    "CrossingCandidate",
    "DegenerateEigenvectorError",
    "EigenSet",
    "EigensolverError",
    "EnergyGrid",
    "GAUSSIAN_WELL_POTENTIAL",
    "PotentialModel",
    "PotentialTerm",
    "QuadratureRule",
    "R2_EXP_POTENTIAL",
    "Resonance",
    "RotatedHamiltonian",
    "StabilityReport",
    "Trajectory",
    "auto_search",
    "build_j_matrix",
    "detect_crossings",
    "eigen_decompose",
    "eigenvalue_derivative",
    "energy_derivative_matrix",
    "eval_potential",
    "full_matrix",
    "gauss_rule",
    "match_step",
    "parse_potential",
    "potential_matrix",
    "reference_matrix",
    "refine_resonance",
    "stability_scan",
    "sweep",
]
