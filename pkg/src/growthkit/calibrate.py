"""Moment-matching calibration of (beta, gamma) on a parameter grid.

Data moments are window means of I/Y and K/Y. Each grid point maps to the
model-implied steady-state ratios via the closed forms in the model module,
and the search minimizes a weighted sum of squared relative moment errors.
Relative (not absolute) errors, because K/Y is an order of magnitude larger
than I/Y. The search is exhaustive: the objective is cheap, and
exhaustiveness makes determinism and tie-breaking trivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import model
from .errors import CalibrationError, ModelError
from .panel import MacroPanel, YearRange

DEFAULT_BETA_GRID = (0.80, 0.999, 0.001)
DEFAULT_GAMMA_GRID = (0.05, 5.00, 0.05)
GAMMA_SKIP_BAND = (0.999, 1.001)
DEFAULT_WEIGHTS = (1.0, 1.0)


@dataclass(frozen=True)
class MomentTargets:
    """Window means of I/Y and K/Y that the model should reproduce."""

    iy_target: float
    ky_target: float
    window: YearRange | None = None

    def __post_init__(self):
        if self.iy_target <= 0 or self.ky_target <= 0:
            raise CalibrationError(
                "bad_targets",
                f"targets must be positive, got iy={self.iy_target}, ky={self.ky_target}",
            )
        if self.iy_target >= 1:
            raise CalibrationError(
                "bad_targets", f"iy target must be below 1, got {self.iy_target}"
            )


def moments(panel: MacroPanel, window: YearRange) -> MomentTargets:
    """Arithmetic means of I_t/Y_t and K_t/Y_t over the window."""
    sl = panel.locate(window)
    return MomentTargets(
        iy_target=float((panel.investment[sl] / panel.output[sl]).mean()),
        ky_target=float((panel.capital[sl] / panel.output[sl]).mean()),
        window=window,
    )


@dataclass(frozen=True)
class GridSpec:
    """Rectangular (beta, gamma) search grid.

    Axis values are min, min+step, ... up to max inclusive (within float
    slack). Gamma points in the open log-utility band (0.999, 1.001) are
    dropped, since the CRRA form excludes gamma = 1.
    """

    beta_min: float = DEFAULT_BETA_GRID[0]
    beta_max: float = DEFAULT_BETA_GRID[1]
    beta_step: float = DEFAULT_BETA_GRID[2]
    gamma_min: float = DEFAULT_GAMMA_GRID[0]
    gamma_max: float = DEFAULT_GAMMA_GRID[1]
    gamma_step: float = DEFAULT_GAMMA_GRID[2]

    def __post_init__(self):
        for lo, hi, step, name in (
            (self.beta_min, self.beta_max, self.beta_step, "beta"),
            (self.gamma_min, self.gamma_max, self.gamma_step, "gamma"),
        ):
            if not lo < hi:
                raise CalibrationError("bad_grid", f"{name}_min must be below {name}_max")
            if step <= 0:
                raise CalibrationError("bad_grid", f"{name}_step must be positive, got {step}")
        if not 0 < self.beta_min or not self.beta_max < 1:
            raise CalibrationError("bad_grid", "beta grid must stay inside (0, 1)")
        if self.gamma_min <= 0:
            raise CalibrationError("bad_grid", "gamma grid must stay positive")

    @staticmethod
    def _axis(lo: float, hi: float, step: float) -> list[float]:
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [lo + i * step for i in range(count)]

    def beta_values(self) -> list[float]:
        return self._axis(self.beta_min, self.beta_max, self.beta_step)

    def gamma_values(self) -> list[float]:
        lo, hi = GAMMA_SKIP_BAND
        return [
            gamma
            for gamma in self._axis(self.gamma_min, self.gamma_max, self.gamma_step)
            if not lo < gamma < hi
        ]


def implied_moments(
    beta: float, gamma: float, alpha: float, delta: float, g: float
) -> tuple[float, float]:
    """Model-implied (I/Y, K/Y) at one parameter point with g held fixed.

    Fixing g directly (rather than through a and n separately) realizes the
    balanced-path rate as a = 0, n = g, which reproduces g exactly.
    """
    params = model.ModelParams(alpha=alpha, beta=beta, gamma=gamma, delta=delta, a=0.0, n=g)
    return model.investment_output_ratio(params), model.capital_output_ratio(params)


@dataclass(frozen=True)
class CalibrationResult:
    """Best grid point, its objective value, the implied moments, the full
    steady state there, and how many grid points were infeasible."""

    beta: float
    gamma: float
    objective: float
    implied_iy: float
    implied_ky: float
    steady_state: model.SteadyState
    infeasible_count: int


def _objective(
    iy: float, ky: float, targets: MomentTargets, weights: tuple[float, float]
) -> float:
    w_iy, w_ky = weights
    return (
        w_iy * ((iy - targets.iy_target) / targets.iy_target) ** 2
        + w_ky * ((ky - targets.ky_target) / targets.ky_target) ** 2
    )


def grid_search(
    targets: MomentTargets,
    grid: GridSpec,
    alpha: float,
    delta: float,
    g: float,
    weights: tuple[float, float] = DEFAULT_WEIGHTS,
) -> CalibrationResult:
    """Exhaustive search for the grid point whose implied moments best match
    the targets.

    Minimizes w_iy*((iy-iy_t)/iy_t)^2 + w_ky*((ky-ky_t)/ky_t)^2 over feasible
    grid points. Deterministic tie-break: smaller beta, then smaller gamma.
    Infeasible points (no finite steady state) are skipped and counted.
    """
    w_iy, w_ky = weights
    if w_iy < 0 or w_ky < 0 or (w_iy == 0 and w_ky == 0):
        raise CalibrationError(
            "bad_weights", f"weights must be non-negative and not both zero, got {weights}"
        )
    best: tuple[float, float, float, float, float] | None = None
    infeasible = 0
    for beta in grid.beta_values():
        for gamma in grid.gamma_values():
            try:
                iy, ky = implied_moments(beta, gamma, alpha, delta, g)
            except ModelError as err:
                if err.code != "infeasible":
                    raise
                infeasible += 1
                continue
            value = _objective(iy, ky, targets, weights)
            # Strict improvement only: ascending loop order then makes ties
            # resolve to the smallest beta, then the smallest gamma.
            if best is None or value < best[0]:
                best = (value, beta, gamma, iy, ky)
    if best is None:
        raise CalibrationError(
            "all_infeasible",
            f"every grid point violates feasibility: {model.FEASIBILITY_CONDITION}",
        )
    value, beta, gamma, iy, ky = best
    params = model.ModelParams(alpha=alpha, beta=beta, gamma=gamma, delta=delta, a=0.0, n=g)
    return CalibrationResult(
        beta=beta,
        gamma=gamma,
        objective=value,
        implied_iy=iy,
        implied_ky=ky,
        steady_state=model.steady_state_k(params),
        infeasible_count=infeasible,
    )


@dataclass(frozen=True)
class ScenarioRow:
    """Closed-form evaluation of one (beta, gamma) scenario; ``error`` holds
    the failure message for infeasible rows, with the ratios left unset."""

    beta: float
    gamma: float
    ky: float | None = None
    iy: float | None = None
    k_bar: float | None = None
    error: str | None = None


def scenario_table(
    scenarios: list[tuple[float, float]], alpha: float, delta: float, g: float
) -> list[ScenarioRow]:
    """Evaluate (K/Y, I/Y, k_bar) for each (beta, gamma) scenario.

    Row order follows input order; infeasible or invalid scenarios produce a
    row-level error entry instead of failing the whole table.
    """
    rows = []
    for beta, gamma in scenarios:
        try:
            params = model.ModelParams(
                alpha=alpha, beta=beta, gamma=gamma, delta=delta, a=0.0, n=g
            )
            ss = model.steady_state_k(params)
        except ModelError as err:
            rows.append(ScenarioRow(beta=beta, gamma=gamma, error=err.message))
            continue
        rows.append(ScenarioRow(beta=beta, gamma=gamma, ky=ss.ky, iy=ss.iy, k_bar=ss.k_bar))
    return rows
