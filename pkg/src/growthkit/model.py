"""Closed-form mathematics of the CRRA planner model in effective units.

The planner discounts CRRA utility (curvature gamma, factor beta) over
consumption; technology is Cobb-Douglas with capital share alpha and
depreciation delta; TFP grows at rate a and labor at rate n. Dividing
levels by effective labor A^(1/(1-alpha)) L makes per-unit quantities
stationary on the balanced path, whose growth rate g solves
1+g = (1+a)^(1/(1-alpha)) (1+n).

In effective units the accumulation identity carries a (1+g) on
next-period capital, (1+g) k_{t+1} = (1-delta) k_t + i_t, so the detrended
model is exactly equivalent to the level model. The Euler condition then
picks up a (1+g)^(-gamma), and the steady state of effective capital
satisfies beta (alpha k^(alpha-1) + 1 - delta) = (1+g)^gamma, giving the
capital-output ratio in closed form:

    K/Y = alpha beta / ((1+g)^gamma - beta (1 - delta)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .accounting import tfp_residual
from .errors import ModelError
from .panel import MacroPanel

GAMMA_LOG_UTILITY_EPS = 1e-3

FEASIBILITY_CONDITION = "(1+g)^gamma - beta*(1-delta) must be positive"


@dataclass(frozen=True)
class ModelParams:
    """Preference and technology parameters, validated on construction.

    Requires 0 < alpha < 1, 0 < beta < 1, gamma > 0 with gamma != 1 (log
    utility is outside this CRRA form; use gamma = 1 +/- epsilon, at least
    0.001 away), 0 < delta < 1, and a, n > -1. Construction also rejects
    parameter sets with no finite steady state: (1+g)^gamma - beta*(1-delta)
    must be positive.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    a: float = 0.0
    n: float = 0.0

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ModelError("bad_param", f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0 < self.beta < 1:
            raise ModelError("bad_param", f"beta must lie in (0, 1), got {self.beta}")
        if self.gamma <= 0:
            raise ModelError("bad_param", f"gamma must be positive, got {self.gamma}")
        if abs(self.gamma - 1.0) < GAMMA_LOG_UTILITY_EPS:
            raise ModelError(
                "bad_param",
                "gamma = 1 is log utility, which this CRRA form does not cover; "
                "use a value outside 1 +/- 0.001",
            )
        if not 0 < self.delta < 1:
            raise ModelError("bad_param", f"delta must lie in (0, 1), got {self.delta}")
        if self.a <= -1 or self.n <= -1:
            raise ModelError("bad_param", "growth rates a and n must exceed -1")
        if (1.0 + self.g) ** self.gamma - self.beta * (1.0 - self.delta) <= 0:
            raise ModelError("infeasible", f"no finite steady state: {FEASIBILITY_CONDITION}")

    @property
    def g(self) -> float:
        """Balanced-path growth rate implied by (a, n, alpha)."""
        return bgp_growth(self.a, self.n, self.alpha)


def bgp_growth(a: float, n: float, alpha: float) -> float:
    """Balanced-path output growth: 1+g = (1+a)^(1/(1-alpha)) * (1+n)."""
    if not 0 < alpha < 1:
        raise ModelError("bad_param", f"alpha must lie in (0, 1), got {alpha}")
    if a <= -1 or n <= -1:
        raise ModelError("bad_param", "growth rates a and n must exceed -1")
    return (1.0 + a) ** (1.0 / (1.0 - alpha)) * (1.0 + n) - 1.0


def transformed_discount(params: ModelParams) -> float:
    """Effective discount factor of the detrended problem, beta*(1+g)^(1-gamma)."""
    return params.beta * (1.0 + params.g) ** (1.0 - params.gamma)


def capital_output_ratio(params: ModelParams) -> float:
    """Steady-state K/Y = alpha*beta / ((1+g)^gamma - beta*(1-delta))."""
    g = params.g
    denom = (1.0 + g) ** params.gamma - params.beta * (1.0 - params.delta)
    return params.alpha * params.beta / denom


def investment_output_ratio(params: ModelParams) -> float:
    """Steady-state I/Y = (g + delta) * K/Y."""
    return (params.g + params.delta) * capital_output_ratio(params)


@dataclass(frozen=True)
class SteadyState:
    """Balanced-path summary: trend growth rate, steady-state effective
    capital, and the model capital-output and investment-output ratios."""

    g: float
    k_bar: float
    ky: float
    iy: float


def steady_state_k(params: ModelParams) -> SteadyState:
    """Steady state of effective capital, k_bar = (K/Y)^(1/(1-alpha)),
    together with g and the great ratios."""
    g = params.g
    ky = capital_output_ratio(params)
    return SteadyState(
        g=g,
        k_bar=ky ** (1.0 / (1.0 - params.alpha)),
        ky=ky,
        iy=(g + params.delta) * ky,
    )


def steady_state_consumption(params: ModelParams) -> float:
    """Effective consumption at the steady state, k_bar^alpha - (g+delta)*k_bar."""
    k_bar = steady_state_k(params).k_bar
    return k_bar**params.alpha - (params.g + params.delta) * k_bar


def euler_residual(k_t: float, k_t1: float, k_t2: float, params: ModelParams) -> float:
    """Deviation from the detrended Euler equation along a capital triple.

    Consumption is read off the resource constraint
    c_t = k_t^alpha - (1+g) k_{t+1} + (1-delta) k_t; the residual is
    beta (c_{t+1}/c_t)^(-gamma) (alpha k_{t+1}^(alpha-1) + 1 - delta)
    (1+g)^(-gamma) - 1, zero on an optimal path.
    """
    g = params.g
    c_t = k_t**params.alpha + (1.0 - params.delta) * k_t - (1.0 + g) * k_t1
    c_t1 = k_t1**params.alpha + (1.0 - params.delta) * k_t1 - (1.0 + g) * k_t2
    if c_t <= 0 or c_t1 <= 0:
        raise ModelError(
            "negative_consumption",
            "capital triple implies non-positive consumption",
            location={"c_t": c_t, "c_t1": c_t1},
        )
    gross_return = params.alpha * k_t1 ** (params.alpha - 1.0) + 1.0 - params.delta
    return (
        params.beta * (c_t1 / c_t) ** (-params.gamma) * gross_return * (1.0 + g) ** -params.gamma
        - 1.0
    )


@dataclass(frozen=True)
class EffectivePanel:
    """Panel series per unit of effective labor A^(1/(1-alpha)) L."""

    years: np.ndarray
    y: np.ndarray
    k: np.ndarray
    c: np.ndarray
    i: np.ndarray


def to_effective(panel: MacroPanel, alpha: float) -> EffectivePanel:
    """Deflate output, capital, consumption, and investment by effective labor.

    The deflator is A_t^(1/(1-alpha)) L_t, with A_t taken from the panel's
    tfp column when present and otherwise measured as the production-function
    residual under the same alpha. With the residual A, y_t = k_t^alpha holds
    by construction.
    """
    if not 0 < alpha < 1:
        raise ModelError("bad_param", f"alpha must lie in (0, 1), got {alpha}")
    tfp = panel.tfp if panel.tfp is not None else tfp_residual(panel, alpha)
    deflator = tfp ** (1.0 / (1.0 - alpha)) * panel.labor
    if np.any(deflator <= 0) or not np.all(np.isfinite(deflator)):
        raise ModelError("bad_deflator", "effective-labor deflator must be positive and finite")
    return EffectivePanel(
        years=panel.years,
        y=panel.output / deflator,
        k=panel.capital / deflator,
        c=panel.consumption / deflator,
        i=panel.investment / deflator,
    )
