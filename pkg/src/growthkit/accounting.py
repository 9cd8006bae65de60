"""Growth accounting under Cobb-Douglas technology.

With Y = A K^alpha L^(1-alpha), log output growth splits exactly into an
alpha-weighted capital contribution, a (1-alpha)-weighted labor
contribution, and the TFP residual. All growth figures are natural-log
differences, ln(x_end / x_start), not percent changes; that convention
makes the decomposition additive without approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AccountingError
from .panel import MacroPanel, YearRange


@dataclass(frozen=True)
class AlphaSpec:
    """Capital share: either a fixed value or one minus the mean labor share.

    Exactly one of ``value`` and ``from_labor_share`` must be active. When
    estimating from the labor share, ``window`` restricts the averaging span
    (default: the whole panel).
    """

    value: float | None = None
    from_labor_share: bool = False
    window: YearRange | None = None

    def __post_init__(self):
        if (self.value is None) == (not self.from_labor_share):
            raise AccountingError(
                "bad_alpha_spec", "provide either a fixed alpha or from_labor_share, not both"
            )
        if self.window is not None and not self.from_labor_share:
            raise AccountingError(
                "bad_alpha_spec", "an averaging window only applies with from_labor_share"
            )
        if self.value is not None and not 0 < self.value < 1:
            raise AccountingError(
                "alpha_out_of_range", f"alpha must lie strictly in (0, 1), got {self.value}"
            )

    def resolve(self, panel: MacroPanel | None = None) -> float:
        """Concrete capital share for a given panel."""
        if self.value is not None:
            return self.value
        if panel is None:
            raise AccountingError("missing_panel", "labor-share alpha needs a panel")
        share = panel.series("labor_share")
        if self.window is not None:
            share = share[panel.locate(self.window)]
        alpha = 1.0 - float(share.mean())
        if not 0 < alpha < 1:
            raise AccountingError(
                "alpha_out_of_range", f"labor share implies alpha {alpha}, outside (0, 1)"
            )
        return alpha


def _resolve_alpha(alpha: AlphaSpec | float, panel: MacroPanel | None) -> float:
    if isinstance(alpha, AlphaSpec):
        return alpha.resolve(panel)
    if not 0 < alpha < 1:
        raise AccountingError("alpha_out_of_range", f"alpha must lie in (0, 1), got {alpha}")
    return float(alpha)


def log_growth(values) -> np.ndarray:
    """Annual log growth, ln(x[t+1] / x[t]); one entry shorter than input."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise AccountingError("too_short", "need at least 2 observations for growth")
    if np.any(values <= 0):
        raise AccountingError("non_positive", "log growth requires positive values")
    return np.diff(np.log(values))


def tfp_residual(panel: MacroPanel, alpha: AlphaSpec | float) -> np.ndarray:
    """Solow residual A_t = Y_t / (K_t^alpha L_t^(1-alpha)), one value per year."""
    a = _resolve_alpha(alpha, panel)
    return panel.output / (panel.capital**a * panel.labor ** (1.0 - a))


@dataclass(frozen=True)
class AccountingRow:
    """One window's growth decomposition, all in cumulative log-growth units.

    TFP is the residual by construction, so
    growth = contrib_capital + contrib_labor + contrib_tfp exactly.
    """

    range: YearRange
    growth: float
    contrib_capital: float
    contrib_labor: float
    contrib_tfp: float


def decompose_growth(
    panel: MacroPanel, alpha: AlphaSpec | float, window: YearRange
) -> AccountingRow:
    """Split log output growth over ``window`` into factor and TFP terms."""
    a = _resolve_alpha(alpha, panel)
    sl = panel.locate(window)
    if window.length < 2:
        raise AccountingError("bad_range", f"window {window} too short to measure growth")
    s, e = sl.start, sl.stop - 1

    def total(series: np.ndarray) -> float:
        return float(np.log(series[e]) - np.log(series[s]))

    growth = total(panel.output)
    capital = a * total(panel.capital)
    labor = (1.0 - a) * total(panel.labor)
    return AccountingRow(
        range=window,
        growth=growth,
        contrib_capital=capital,
        contrib_labor=labor,
        contrib_tfp=growth - capital - labor,
    )


def accounting_table(
    panel: MacroPanel, alpha: AlphaSpec | float, windows: Sequence[YearRange]
) -> list[AccountingRow]:
    """Growth decomposition for several windows under one shared alpha.

    Alpha is resolved once against the panel, so rows stay comparable even
    when it comes from the labor share.
    """
    a = _resolve_alpha(alpha, panel)
    return [decompose_growth(panel, a, window) for window in windows]
