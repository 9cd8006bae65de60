"""Growth accounting, steady-state calibration, and transition simulation
for annual macro panels."""

from .accounting import (
    AccountingRow,
    AlphaSpec,
    accounting_table,
    decompose_growth,
    log_growth,
    tfp_residual,
)
from .calibrate import (
    CalibrationResult,
    GridSpec,
    MomentTargets,
    ScenarioRow,
    grid_search,
    implied_moments,
    moments,
    scenario_table,
)
from .errors import (
    AccountingError,
    CalibrationError,
    DomainError,
    ModelError,
    PanelError,
    ServiceError,
    SimulationError,
)
from .model import (
    EffectivePanel,
    ModelParams,
    SteadyState,
    bgp_growth,
    capital_output_ratio,
    euler_residual,
    investment_output_ratio,
    steady_state_consumption,
    steady_state_k,
    to_effective,
    transformed_discount,
)
from .panel import (
    MacroPanel,
    WindowStats,
    YearRange,
    mean_growth_gap,
    parse_panel,
    select_steady_window,
    serialize_panel,
    window_stats,
)
from .simulate import (
    FixedPointReport,
    TransitionPath,
    saddle_roots,
    simulate_transition,
    utility,
    verify_fixed_point,
)

__version__ = "0.1.0"

__all__ = [
    "AccountingError",
    "AccountingRow",
    "AlphaSpec",
    "CalibrationError",
    "CalibrationResult",
    "DomainError",
    "EffectivePanel",
    "FixedPointReport",
    "GridSpec",
    "MacroPanel",
    "ModelError",
    "ModelParams",
    "MomentTargets",
    "PanelError",
    "ScenarioRow",
    "ServiceError",
    "SimulationError",
    "SteadyState",
    "TransitionPath",
    "WindowStats",
    "YearRange",
    "accounting_table",
    "bgp_growth",
    "capital_output_ratio",
    "decompose_growth",
    "euler_residual",
    "grid_search",
    "implied_moments",
    "investment_output_ratio",
    "log_growth",
    "mean_growth_gap",
    "moments",
    "parse_panel",
    "saddle_roots",
    "scenario_table",
    "select_steady_window",
    "serialize_panel",
    "simulate_transition",
    "steady_state_consumption",
    "steady_state_k",
    "tfp_residual",
    "to_effective",
    "transformed_discount",
    "utility",
    "verify_fixed_point",
    "window_stats",
]
