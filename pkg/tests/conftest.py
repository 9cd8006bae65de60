import numpy as np
import pytest

import growthkit as gk
import growthkit.cli


def synth_panel(
    years: np.ndarray,
    A: np.ndarray,
    K: np.ndarray,
    L: np.ndarray,
    alpha: float,
    c_share: float = 0.7,
    include_tfp: bool = False,
) -> gk.MacroPanel:
    """Panel whose output is generated from the production function, so the
    TFP residual under the same alpha recovers A exactly."""
    Y = A * K**alpha * L ** (1.0 - alpha)
    return gk.MacroPanel(
        years=years,
        output=Y,
        capital=K,
        labor=L,
        consumption=c_share * Y,
        investment=(1.0 - c_share) * Y,
        tfp=A if include_tfp else None,
    )


def random_panel(rng: np.random.Generator, n: int = 30, start: int = 1970) -> gk.MacroPanel:
    """Smooth random panel with positive series, mild noise, and a
    consumption share that wanders (so growth-gap windows are non-trivial)."""
    years = np.arange(start, start + n)
    t = np.arange(n)
    A = 2.0 * 1.01**t * np.exp(rng.normal(0, 0.005, n))
    K = 25.0 * 1.03**t * np.exp(rng.normal(0, 0.01, n))
    L = 4.0 * 1.02**t * np.exp(rng.normal(0, 0.004, n))
    Y = A * K**0.34 * L**0.66
    share = 0.65 * np.exp(np.cumsum(rng.normal(0, 0.006, n)))
    share = np.clip(share, 0.3, 0.9)
    return gk.MacroPanel(
        years=years,
        output=Y,
        capital=K,
        labor=L,
        consumption=share * Y,
        investment=(1.0 - share) * Y,
    )


def constant_panel(n: int = 10, start: int = 2000, value: float = 1.0) -> gk.MacroPanel:
    years = np.arange(start, start + n)
    ones = np.full(n, value)
    return gk.MacroPanel(
        years=years,
        output=ones,
        capital=ones,
        labor=ones,
        consumption=ones,
        investment=ones,
    )


def draw_params(rng: np.random.Generator, require_transform: bool = False) -> gk.ModelParams:
    """Random feasible parameter block; optionally also requires the
    transformed discount factor beta*(1+g)^(1-gamma) < 1."""
    while True:
        gamma = rng.uniform(0.2, 3.0)
        if abs(gamma - 1.0) < 2e-3:
            continue
        try:
            params = gk.ModelParams(
                alpha=rng.uniform(0.25, 0.45),
                beta=rng.uniform(0.90, 0.99),
                gamma=gamma,
                delta=rng.uniform(0.02, 0.12),
                a=rng.uniform(0.0, 0.012),
                n=rng.uniform(0.0, 0.025),
            )
        except gk.ModelError:
            continue
        if require_transform and gk.transformed_discount(params) >= 1:
            continue
        return params


class AsgiClient:
    """Tiny sync facade over httpx's ASGI transport, mirroring how the CLI
    talks to the service in-process."""

    def __init__(self, app):
        self._app = app

    def _request(self, method: str, url: str, **kwargs):
        import asyncio

        import httpx

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://growthkit.test"
            ) as client:
                return await client.request(method, url, **kwargs)

        return asyncio.run(go())

    def get(self, url: str, **kwargs):
        return self._request("GET", url, **kwargs)

    def post(self, url: str, **kwargs):
        return self._request("POST", url, **kwargs)


@pytest.fixture
def client():
    from growthkit.service.app import app

    return AsgiClient(app)


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""

    def run(*argv: str):
        try:
            code = growthkit.cli.main(list(argv))
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else 2
        out, err = capsys.readouterr()
        return code, out, err

    return run
