"""Coevolutionary dynamics of migrant assimilation and native skill formation.

A numerical toolkit around a two-population replicator system: utilities
and replicator rates, closed-form steady states with stability
classification, assimilation-allowance thresholds, trajectory and basin
simulation, and utilitarian welfare verdicts for the assimilation
policy.
"""

__version__ = "0.1.0"

from .dynamics import (
    BasinGrid,
    Trajectory,
    VectorFieldGrid,
    backend,
    basins,
    integrate,
    integrate_closed,
    vector_field,
)
from .equilibria import (
    SteadyState,
    SweepRow,
    Thresholds,
    case_i_coefficients,
    classify,
    jacobian,
    stability_sweep,
    steady_states_closed,
    steady_states_open,
    thresholds,
)
from .errors import (
    AssimdynError,
    AssumptionError,
    BudgetError,
    ConfigError,
    DomainError,
    InvalidParamsError,
)
from .model import State, UtilityProfile, rhs_closed, rhs_open, utilities_closed, utilities_open
from .params import ModelParams, ValidationReport, load_params, sample_params, validate
from .welfare import WelfareReport, policy_condition_rhs, policy_verdict, sw_migrants, sw_natives

__all__ = [
    "AssimdynError",
    "AssumptionError",
    "BasinGrid",
    "BudgetError",
    "ConfigError",
    "DomainError",
    "InvalidParamsError",
    "ModelParams",
    "State",
    "SteadyState",
    "SweepRow",
    "Thresholds",
    "Trajectory",
    "UtilityProfile",
    "ValidationReport",
    "VectorFieldGrid",
    "WelfareReport",
    "backend",
    "basins",
    "case_i_coefficients",
    "classify",
    "integrate",
    "integrate_closed",
    "jacobian",
    "load_params",
    "policy_condition_rhs",
    "policy_verdict",
    "rhs_closed",
    "rhs_open",
    "sample_params",
    "stability_sweep",
    "steady_states_closed",
    "steady_states_open",
    "sw_migrants",
    "sw_natives",
    "thresholds",
    "utilities_closed",
    "utilities_open",
    "validate",
    "vector_field",
]
