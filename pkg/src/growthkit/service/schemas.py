"""Request and response bodies for the HTTP service.

Requests carry panels as raw CSV text (csv_text) so clients never reimplement
panel validation. Parameter blocks accept either the trend rates (a, n) or
the balanced-path rate g directly; supplying g means a = 0, n = g, which
reproduces g exactly. Response field names match the CLI report keys
one for one, because the CLI prints these bodies verbatim.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, model_validator


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class YearRangeModel(StrictModel):
    start: int
    end: int


class GrowthInputs(StrictModel):
    """Mixin handling the (a, n) versus g choice of trend inputs."""

    a: float | None = None
    n: float | None = None
    g: float | None = None

    @model_validator(mode="after")
    def _exclusive_trend(self):
        if self.g is not None and (self.a is not None or self.n is not None):
            raise ValueError("supply either g or the pair (a, n), not both")
        return self

    def trend_rates(self) -> tuple[float, float]:
        """(a, n) to build ModelParams from; g maps to (0, g)."""
        if self.g is not None:
            return 0.0, self.g
        return self.a or 0.0, self.n or 0.0


# ---------------------------------------------------------------- account


class AccountRequest(StrictModel):
    csv_text: str
    windows: list[YearRangeModel] | None = None
    alpha: float | None = None
    alpha_from_labor_share: bool = False
    alpha_window: YearRangeModel | None = None
    percent: bool = False

    @model_validator(mode="after")
    def _exclusive_alpha(self):
        if self.alpha is not None and self.alpha_from_labor_share:
            raise ValueError("supply either a fixed alpha or alpha_from_labor_share, not both")
        if self.alpha_window is not None and not self.alpha_from_labor_share:
            raise ValueError("alpha_window only applies with alpha_from_labor_share")
        return self


class AccountRow(StrictModel):
    start: int
    end: int
    growth: float
    capital: float
    labor: float
    tfp: float
    growth_pct: float | None = None


# ---------------------------------------------------------------- stats


class StatsRequest(StrictModel):
    csv_text: str
    series: str
    windows: list[YearRangeModel]


class WindowStatsRow(StrictModel):
    start: int
    end: int
    mean: float
    std: float


# ---------------------------------------------------------------- window


class WindowRequest(StrictModel):
    csv_text: str
    min_len: int = 8
    tol: float = 0.01


class SteadyWindowRow(StrictModel):
    start: int
    end: int
    length: int
    mean_gap: float


# ---------------------------------------------------------------- steady state


class SteadyStateRequest(GrowthInputs):
    alpha: float
    beta: float
    gamma: float
    delta: float


class SteadyStateResponse(StrictModel):
    g: float
    k_bar: float
    ky: float
    iy: float


# ---------------------------------------------------------------- calibrate


class CalibrateRequest(GrowthInputs):
    alpha: float
    delta: float
    iy: float | None = None
    ky: float | None = None
    csv_text: str | None = None
    window: YearRangeModel | None = None
    beta_min: float = 0.80
    beta_max: float = 0.999
    beta_step: float = 0.001
    gamma_min: float = 0.05
    gamma_max: float = 5.00
    gamma_step: float = 0.05
    w_iy: float = 1.0
    w_ky: float = 1.0

    @model_validator(mode="after")
    def _exclusive_targets(self):
        direct = self.iy is not None or self.ky is not None
        derived = self.csv_text is not None or self.window is not None
        if direct and derived:
            raise ValueError("supply either (iy, ky) targets or (csv_text, window), not both")
        if direct and (self.iy is None or self.ky is None):
            raise ValueError("direct targets need both iy and ky")
        if derived and (self.csv_text is None or self.window is None):
            raise ValueError("derived targets need both csv_text and window")
        if not direct and not derived:
            raise ValueError("no moment targets: supply (iy, ky) or (csv_text, window)")
        return self


class CalibrateResponse(StrictModel):
    beta: float
    gamma: float
    objective: float
    implied_iy: float
    implied_ky: float
    g: float
    k_bar: float
    ky: float
    iy: float
    infeasible_count: int


# ---------------------------------------------------------------- scenarios


class ScenariosRequest(GrowthInputs):
    alpha: float
    delta: float
    scenarios_csv: str


class ScenarioRowModel(StrictModel):
    beta: float
    gamma: float
    ky: float | None = None
    iy: float | None = None
    k_bar: float | None = None
    error: str | None = None


# ---------------------------------------------------------------- simulate


class SimulateRequest(GrowthInputs):
    alpha: float
    beta: float
    gamma: float
    delta: float
    k0: float | None = None
    k0_mult: float | None = None
    horizon: int = 200
    tol: float = 1e-9

    @model_validator(mode="after")
    def _exclusive_k0(self):
        if (self.k0 is None) == (self.k0_mult is None):
            raise ValueError("supply exactly one of k0 (absolute) or k0_mult (multiple of k_bar)")
        return self


class PathRow(StrictModel):
    t: int
    k: float
    c: float | None = None
    y: float | None = None
    i: float | None = None
    euler_gap: float | None = None


class SimulateResponse(StrictModel):
    converged: bool
    terminal_error: float
    k_bar: float
    horizon: int
    rows: list[PathRow]


# ---------------------------------------------------------------- errors


class ErrorObject(StrictModel):
    code: str
    module: str
    message: str
    location: dict | None = None
