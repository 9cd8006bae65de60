import math

import numpy as np
import pytest

import growthkit as gk
from conftest import draw_params

# Closed-form values computed independently from
#   K/Y = alpha*beta / ((1+g)^gamma - beta*(1-delta)),  I/Y = (g+delta)*K/Y,
#   k_bar = (K/Y)^(1/(1-alpha))
# with alpha=0.33, delta=0.05, g=0.02 and the (beta, gamma) pairs below.
SCENARIOS = {
    (0.97, 1.8): (2.7886282927153445, 0.19520398049007417, 4.6212784078530955),
    (0.94, 0.2): (2.795390935883058, 0.1956773655118141, 4.638015205281983),
    (0.93, 0.4): (2.46600097699042, 0.17262006838932945, 3.846489433633413),
}

# alpha=0.34, beta=0.93, gamma=0.4, delta=0.05, a=0.0004, n=0.02
CALIBRATED = dict(
    g=0.020618245505525046,
    ky=2.5357499378414174,
    iy=0.1790702116511051,
    k_bar=4.095269244799876,
    transformed=0.9414579894029698,
)


def scenario_params(beta, gamma):
    return gk.ModelParams(alpha=0.33, beta=beta, gamma=gamma, delta=0.05, a=0.0, n=0.02)


def calibrated_params():
    return gk.ModelParams(alpha=0.34, beta=0.93, gamma=0.4, delta=0.05, a=0.0004, n=0.02)


class TestModelParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(alpha=0.0), dict(alpha=1.0), dict(alpha=-0.1),
            dict(beta=0.0), dict(beta=1.0), dict(beta=1.7),
            dict(gamma=0.0), dict(gamma=-2.0),
            dict(delta=0.0), dict(delta=1.0), dict(delta=1.2),
            dict(a=-1.0), dict(n=-1.5),
        ],
    )
    def test_range_validation(self, kwargs):
        base = dict(alpha=0.33, beta=0.97, gamma=1.8, delta=0.05, a=0.0, n=0.02)
        base.update(kwargs)
        with pytest.raises(gk.ModelError) as exc:
            gk.ModelParams(**base)
        assert exc.value.code == "bad_param"

    @pytest.mark.parametrize("gamma", [1.0, 0.9995, 1.0005])
    def test_log_utility_band(self, gamma):
        with pytest.raises(gk.ModelError) as exc:
            gk.ModelParams(alpha=0.33, beta=0.97, gamma=gamma, delta=0.05, a=0.0, n=0.02)
        assert "1 +/- 0.001" in exc.value.message

    def test_gamma_just_outside_band(self):
        for gamma in (0.998, 1.002):
            gk.ModelParams(alpha=0.33, beta=0.97, gamma=gamma, delta=0.05, a=0.0, n=0.02)

    def test_infeasible_rejected_eagerly(self):
        # shrinking economy with almost no depreciation: (1+g)^gamma < beta*(1-delta)
        with pytest.raises(gk.ModelError) as exc:
            gk.ModelParams(alpha=0.3, beta=0.99, gamma=2.0, delta=0.001, a=0.0, n=-0.05)
        assert exc.value.code == "infeasible"
        assert "(1+g)^gamma - beta*(1-delta)" in exc.value.message

    def test_g_property(self):
        p = calibrated_params()
        assert p.g == gk.bgp_growth(0.0004, 0.02, 0.34)

    def test_frozen(self):
        p = scenario_params(0.97, 1.8)
        with pytest.raises(AttributeError):
            p.beta = 0.9


class TestBgpGrowth:
    def test_no_growth(self):
        assert gk.bgp_growth(0.0, 0.0, 0.34) == 0.0

    def test_labor_only(self):
        # a=0 collapses to g=n
        assert abs(gk.bgp_growth(0.0, 0.02, 0.34) - 0.02) < 1e-15

    def test_tfp_amplification(self):
        # alpha=0.5: 1+g = (1+a)^2 (1+n)
        got = gk.bgp_growth(0.01, 0.01, 0.5)
        assert abs(got - (1.01**3 - 1.0)) < 1e-12

    def test_reference_magnitudes(self):
        got = gk.bgp_growth(0.0004, 0.02, 0.34)
        assert abs(got - 0.020618245505525046) < 1e-15

    def test_defining_identity(self):
        rng = np.random.default_rng(101)
        for _ in range(300):
            a = rng.uniform(0.0, 0.02)
            n = rng.uniform(0.0, 0.03)
            alpha = rng.uniform(0.2, 0.6)
            g = gk.bgp_growth(a, n, alpha)
            assert abs((1 + g) ** (1 - alpha) - (1 + a) * (1 + n) ** (1 - alpha)) < 1e-12

    def test_bad_alpha(self):
        with pytest.raises(gk.ModelError):
            gk.bgp_growth(0.01, 0.01, 1.0)


class TestSteadyState:
    @pytest.mark.parametrize("bg,expected", sorted(SCENARIOS.items()))
    def test_frozen_scenarios(self, bg, expected):
        ky_e, iy_e, kbar_e = expected
        p = scenario_params(*bg)
        ss = gk.steady_state_k(p)
        assert abs(ss.ky - ky_e) < 1e-13 * ky_e
        assert abs(ss.iy - iy_e) < 1e-13 * iy_e
        assert abs(ss.k_bar - kbar_e) < 1e-13 * kbar_e
        assert ss.ky == gk.capital_output_ratio(p)
        assert ss.iy == gk.investment_output_ratio(p)

    def test_calibrated_block(self):
        p = calibrated_params()
        ss = gk.steady_state_k(p)
        assert abs(ss.g - CALIBRATED["g"]) < 1e-15
        assert abs(ss.ky - CALIBRATED["ky"]) < 1e-13 * ss.ky
        assert abs(ss.iy - CALIBRATED["iy"]) < 1e-13 * ss.iy
        assert abs(ss.k_bar - CALIBRATED["k_bar"]) < 1e-13 * ss.k_bar
        assert abs(gk.transformed_discount(p) - CALIBRATED["transformed"]) < 1e-15

    def test_great_ratio_identity(self):
        rng = np.random.default_rng(103)
        for _ in range(300):
            p = draw_params(rng)
            ss = gk.steady_state_k(p)
            assert abs(ss.iy - (ss.g + p.delta) * ss.ky) < 1e-12

    def test_capital_ratio_identity(self):
        rng = np.random.default_rng(107)
        for _ in range(300):
            p = draw_params(rng)
            ss = gk.steady_state_k(p)
            assert abs(ss.k_bar ** (1 - p.alpha) - ss.ky) < 1e-12

    def test_independent_reimplementation(self):
        # same closed form written via exp/log instead of ** as a cross-check
        rng = np.random.default_rng(109)
        for _ in range(300):
            p = draw_params(rng)
            g = math.expm1(math.log1p(p.a) / (1 - p.alpha) + math.log1p(p.n))
            denom = math.exp(p.gamma * math.log1p(g)) - p.beta * (1 - p.delta)
            ky = p.alpha * p.beta / denom
            ss = gk.steady_state_k(p)
            assert abs(ss.ky - ky) < 5e-13 * ky
            assert abs(ss.k_bar - math.exp(math.log(ky) / (1 - p.alpha))) < 5e-13 * ss.k_bar

    def test_monotone_in_beta(self):
        k_bars = [
            gk.steady_state_k(scenario_params(b, 1.8)).k_bar
            for b in np.linspace(0.90, 0.99, 10)
        ]
        assert all(x < y for x, y in zip(k_bars, k_bars[1:]))

    def test_monotone_in_delta(self):
        k_bars = [
            gk.steady_state_k(
                gk.ModelParams(alpha=0.33, beta=0.97, gamma=1.8, delta=d, a=0.0, n=0.02)
            ).k_bar
            for d in np.linspace(0.02, 0.12, 10)
        ]
        assert all(x > y for x, y in zip(k_bars, k_bars[1:]))

    def test_consumption_positive_and_trend_correction(self):
        rng = np.random.default_rng(113)
        for _ in range(100):
            p = draw_params(rng)
            k_bar = gk.steady_state_k(p).k_bar
            c = gk.steady_state_consumption(p)
            assert c > 0
            # dropping the trend correction overstates consumption by exactly g*k_bar
            simplified = k_bar**p.alpha - p.delta * k_bar
            assert abs((simplified - c) - p.g * k_bar) < 1e-12 * max(1.0, k_bar)


class TestEulerResidual:
    def test_zero_at_steady_state(self):
        rng = np.random.default_rng(127)
        for _ in range(300):
            p = draw_params(rng)
            k_bar = gk.steady_state_k(p).k_bar
            assert abs(gk.euler_residual(k_bar, k_bar, k_bar, p)) < 1e-10

    def test_perturbation_sign(self):
        # saving more than the steady state calls for lowers the return and
        # raises future consumption: the residual must go negative
        p = scenario_params(0.93, 0.4)
        k_bar = gk.steady_state_k(p).k_bar
        assert gk.euler_residual(k_bar, 1.01 * k_bar, k_bar, p) < 0
        assert gk.euler_residual(k_bar, 0.99 * k_bar, k_bar, p) > 0

    def test_matches_independent_form(self):
        rng = np.random.default_rng(131)
        for _ in range(100):
            p = draw_params(rng)
            k_bar = gk.steady_state_k(p).k_bar
            kt = k_bar * rng.uniform(0.8, 1.2)
            kt1 = kt * rng.uniform(0.98, 1.02)
            kt2 = kt1 * rng.uniform(0.98, 1.02)
            g = p.g
            c0 = kt**p.alpha + (1 - p.delta) * kt - (1 + g) * kt1
            c1 = kt1**p.alpha + (1 - p.delta) * kt1 - (1 + g) * kt2
            if c0 <= 0 or c1 <= 0:
                continue
            r = p.alpha * kt1 ** (p.alpha - 1) + 1 - p.delta
            expected = p.beta * math.exp(
                -p.gamma * (math.log(c1) - math.log(c0) + math.log1p(g))
            ) * r - 1.0
            assert abs(gk.euler_residual(kt, kt1, kt2, p) - expected) < 1e-12

    def test_negative_consumption(self):
        p = scenario_params(0.97, 1.8)
        k_bar = gk.steady_state_k(p).k_bar
        with pytest.raises(gk.ModelError) as exc:
            gk.euler_residual(0.01 * k_bar, 2.0 * k_bar, k_bar, p)
        assert exc.value.code == "negative_consumption"
        assert "c_t" in exc.value.location


class TestToEffective:
    def test_unit_deflator_is_identity(self):
        years = np.array([2000, 2001, 2002])
        Y = np.array([1.3, 1.4, 1.5])
        panel = gk.MacroPanel(
            years=years, output=Y, capital=2 * Y, labor=np.ones(3),
            consumption=0.7 * Y, investment=0.3 * Y, tfp=np.ones(3),
        )
        eff = gk.to_effective(panel, 0.34)
        assert eff.y.tolist() == Y.tolist()
        assert eff.k.tolist() == (2 * Y).tolist()

    def test_hand_example(self):
        # A=2, L=2, alpha=0.5: deflator = 2^2 * 2 = 8
        n = 2
        panel = gk.MacroPanel(
            years=np.array([2000, 2001]),
            output=np.full(n, 8.0), capital=np.full(n, 8.0), labor=np.full(n, 2.0),
            consumption=np.full(n, 4.0), investment=np.full(n, 2.0), tfp=np.full(n, 2.0),
        )
        eff = gk.to_effective(panel, 0.5)
        assert np.allclose(eff.y, 1.0, atol=1e-14)
        assert np.allclose(eff.k, 1.0, atol=1e-14)
        assert np.allclose(eff.c, 0.5, atol=1e-14)
        assert np.allclose(eff.i, 0.25, atol=1e-14)

    def test_residual_tfp_closes_production_function(self):
        from conftest import random_panel

        rng = np.random.default_rng(137)
        for _ in range(10):
            panel = random_panel(rng, n=25)
            alpha = rng.uniform(0.25, 0.45)
            eff = gk.to_effective(panel, alpha)
            assert np.max(np.abs(eff.y / eff.k**alpha - 1.0)) < 1e-10

    def test_tfp_column_takes_precedence(self):
        years = np.array([2000, 2001])
        two = np.full(2, 2.0)
        panel = gk.MacroPanel(
            years=years, output=two, capital=two, labor=np.ones(2),
            consumption=np.ones(2), investment=np.ones(2), tfp=np.full(2, 4.0),
        )
        eff = gk.to_effective(panel, 0.5)
        # deflator = 4^2 * 1 = 16, so y = 2/16
        assert np.allclose(eff.y, 0.125, atol=1e-14)

    def test_balanced_path_is_constant(self):
        alpha, a, n_rate, k_eff = 0.3, 0.01, 0.02, 3.0
        t = np.arange(25, dtype=float)
        A = 1.01**t
        L = 5.0 * 1.02**t
        deflator = A ** (1.0 / (1.0 - alpha)) * L
        K = k_eff * deflator
        Y = A * K**alpha * L ** (1 - alpha)
        panel = gk.MacroPanel(
            years=np.arange(1990, 2015), output=Y, capital=K, labor=L,
            consumption=0.7 * Y, investment=0.3 * Y, tfp=A,
        )
        eff = gk.to_effective(panel, alpha)
        assert np.max(np.abs(eff.k / k_eff - 1.0)) < 1e-10
        assert np.max(np.abs(eff.y / eff.y[0] - 1.0)) < 1e-10
        assert abs(gk.bgp_growth(a, n_rate, alpha) - (Y[1] / Y[0] - 1.0)) < 1e-10

    def test_bad_alpha(self):
        from conftest import constant_panel

        with pytest.raises(gk.ModelError):
            gk.to_effective(constant_panel(), 1.0)
