"""Command-line client for the toolkit's HTTP service.

Each subcommand builds one JSON request, posts it to the service (in-process
by default, or a remote base URL via --server), and prints the response. The
CLI itself computes nothing, so a report number always equals the module
output byte for byte. Exit codes: 0 success, 1 domain error (machine-readable
error object on stderr), 2 usage error.

Conventions surfaced here: growth figures are natural-log differences
(--percent on `account` adds exp(growth)-1 alongside); window statistics use
the population standard deviation; panel units are never interpreted beyond
positivity, since every derived quantity is a ratio or log difference.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

DEFAULT_TIMEOUT = 300.0

_CSV_COLUMNS = {
    "account": ("start", "end", "growth", "capital", "labor", "tfp", "growth_pct"),
    "stats": ("start", "end", "mean", "std"),
    "window": ("start", "end", "length", "mean_gap"),
    "steady-state": ("g", "k_bar", "ky", "iy"),
    "calibrate": (
        "beta",
        "gamma",
        "objective",
        "implied_iy",
        "implied_ky",
        "g",
        "k_bar",
        "ky",
        "iy",
        "infeasible_count",
    ),
    "scenarios": ("beta", "gamma", "ky", "iy", "k_bar", "error"),
    "simulate": ("t", "k", "c", "y", "i", "euler_gap"),
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format (default json)"
    )
    sub.add_argument("--output", help="write the report to this file instead of stdout")
    sub.add_argument(
        "--server",
        help="base URL of a running service; default runs the service in-process",
    )


def _add_trend_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", type=float, help="annual TFP growth rate (default 0)")
    sub.add_argument("--n", type=float, help="annual labor growth rate (default 0)")
    sub.add_argument(
        "--g", type=float, help="balanced-path growth rate directly (conflicts with --a/--n)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthkit",
        description="Growth accounting, steady-state calibration, and transition simulation "
        "for annual macro panels.",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    account = commands.add_parser(
        "account",
        help="decompose output growth into capital, labor, and TFP contributions",
        description="Decompose log output growth over one or more year windows into the "
        "alpha-weighted capital contribution, the (1-alpha)-weighted labor contribution, "
        "and the TFP residual. Growth figures are natural-log differences.",
    )
    account.add_argument("--input", required=True, help="panel CSV file")
    account.add_argument(
        "--windows", help="comma-separated year ranges START:END (default: full span)"
    )
    account.add_argument("--alpha", type=float, help="capital share in (0,1)")
    account.add_argument(
        "--alpha-from-labor-share",
        action="store_true",
        help="set alpha = 1 - mean labor_share (default when the column is present)",
    )
    account.add_argument(
        "--alpha-window", help="restrict the labor-share average to this START:END range"
    )
    account.add_argument(
        "--percent",
        action="store_true",
        help="also report exp(growth)-1 per window as growth_pct",
    )
    _add_common(account)

    stats = commands.add_parser(
        "stats",
        help="windowed mean and population standard deviation of one series",
        description="Mean and population (not sample) standard deviation of a panel series "
        "over each requested year window.",
    )
    stats.add_argument("--input", required=True, help="panel CSV file")
    stats.add_argument(
        "--series",
        required=True,
        help="column to summarize (output, capital, labor, consumption, investment, "
        "tfp, labor_share)",
    )
    stats.add_argument(
        "--windows", required=True, help="comma-separated year ranges START:END"
    )
    _add_common(stats)

    window = commands.add_parser(
        "window",
        help="find steady-state candidate windows",
        description="List maximal windows in which consumption and output grow at nearly "
        "the same rate: mean |dlnC - dlnY| at most --tol, length at least --min-len. "
        "Sorted by gap ascending, then length descending.",
    )
    window.add_argument("--input", required=True, help="panel CSV file")
    window.add_argument(
        "--min-len", type=int, default=8, help="minimum window length in years (default 8)"
    )
    window.add_argument(
        "--tol",
        type=float,
        default=0.01,
        help="largest admissible mean log-growth gap (default 0.01)",
    )
    _add_common(window)

    steady = commands.add_parser(
        "steady-state",
        help="closed-form steady state for one parameter set",
        description="Evaluate the balanced-path growth rate g, steady-state effective "
        "capital k_bar, and the model K/Y and I/Y ratios in closed form.",
    )
    for name in ("alpha", "beta", "gamma", "delta"):
        steady.add_argument(f"--{name}", type=float, required=True)
    _add_trend_flags(steady)
    _add_common(steady)

    calibrate = commands.add_parser(
        "calibrate",
        help="grid-search (beta, gamma) to match I/Y and K/Y moments",
        description="Exhaustive grid search for the (beta, gamma) whose steady-state ratios "
        "best match target moments under a weighted squared relative error. Targets come "
        "either from --iy/--ky directly or from a panel via --input/--window.",
    )
    calibrate.add_argument("--iy", type=float, help="target I/Y moment")
    calibrate.add_argument("--ky", type=float, help="target K/Y moment")
    calibrate.add_argument("--input", help="panel CSV file to derive targets from")
    calibrate.add_argument("--window", help="YearRange START:END for the moment window")
    calibrate.add_argument("--alpha", type=float, required=True)
    calibrate.add_argument("--delta", type=float, required=True)
    _add_trend_flags(calibrate)
    calibrate.add_argument("--beta-min", type=float, default=0.80)
    calibrate.add_argument("--beta-max", type=float, default=0.999)
    calibrate.add_argument("--beta-step", type=float, default=0.001)
    calibrate.add_argument("--gamma-min", type=float, default=0.05)
    calibrate.add_argument("--gamma-max", type=float, default=5.00)
    calibrate.add_argument("--gamma-step", type=float, default=0.05)
    calibrate.add_argument("--w-iy", type=float, default=1.0, help="I/Y weight (default 1)")
    calibrate.add_argument("--w-ky", type=float, default=1.0, help="K/Y weight (default 1)")
    _add_common(calibrate)

    scenarios = commands.add_parser(
        "scenarios",
        help="evaluate a CSV of (beta, gamma) scenarios in closed form",
        description="Read a small CSV with beta and gamma columns and report the implied "
        "K/Y, I/Y, and k_bar per row; infeasible rows carry an error instead of values.",
    )
    scenarios.add_argument("--input", required=True, help="CSV with beta,gamma columns")
    scenarios.add_argument("--alpha", type=float, required=True)
    scenarios.add_argument("--delta", type=float, required=True)
    _add_trend_flags(scenarios)
    _add_common(scenarios)

    simulate = commands.add_parser(
        "simulate",
        help="solve the transition path to the steady state by shooting",
        description="Bisection shooting on initial consumption from k0 toward the "
        "closed-form steady state. The path satisfies the effective-unit resource "
        "constraint each period; euler_gap is the per-date Euler-condition residual. "
        "CSV format emits plot-ready columns t,k,c,y,i,euler_gap.",
    )
    for name in ("alpha", "beta", "gamma", "delta"):
        simulate.add_argument(f"--{name}", type=float, required=True)
    _add_trend_flags(simulate)
    simulate.add_argument("--k0", type=float, help="initial effective capital (absolute)")
    simulate.add_argument(
        "--k0-mult", type=float, help="initial capital as a multiple of k_bar"
    )
    simulate.add_argument(
        "--horizon", type=int, default=200, help="number of transition periods (default 200)"
    )
    simulate.add_argument(
        "--tol",
        type=float,
        default=1e-9,
        help="solver tolerance on the Euler gap; converged means terminal error < 10*tol "
        "(default 1e-9)",
    )
    _add_common(simulate)

    serve = commands.add_parser(
        "serve",
        help="run the HTTP service",
        description="Start the service with uvicorn. All other subcommands can then "
        "target it via --server.",
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _parse_ranges(text: str, parser: argparse.ArgumentParser) -> list[dict]:
    ranges = []
    for chunk in text.split(","):
        parts = chunk.strip().split(":")
        try:
            if len(parts) != 2:
                raise ValueError
            ranges.append({"start": int(parts[0]), "end": int(parts[1])})
        except ValueError:
            parser.error(f"argument --windows: {chunk.strip()!r} is not START:END")
    return ranges


def _parse_range(text: str, parser: argparse.ArgumentParser, flag: str) -> dict:
    parts = text.strip().split(":")
    try:
        if len(parts) != 2:
            raise ValueError
        return {"start": int(parts[0]), "end": int(parts[1])}
    except ValueError:
        parser.error(f"argument {flag}: {text.strip()!r} is not START:END")


def _read_file(path: str, parser: argparse.ArgumentParser) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        parser.error(f"cannot read {path}: {err.strerror or err}")


def _check_trend(args, parser: argparse.ArgumentParser) -> None:
    if args.g is not None and (args.a is not None or args.n is not None):
        parser.error("--g conflicts with --a/--n; supply one parameterization")


def _trend_payload(args) -> dict:
    out = {}
    for name in ("a", "n", "g"):
        value = getattr(args, name)
        if value is not None:
            out[name] = value
    return out


def _build_request(args, parser: argparse.ArgumentParser) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "account":
        if args.alpha is not None and args.alpha_from_labor_share:
            parser.error("--alpha conflicts with --alpha-from-labor-share")
        if args.alpha_window and not args.alpha_from_labor_share:
            parser.error("--alpha-window requires --alpha-from-labor-share")
        payload = {"csv_text": _read_file(args.input, parser), "percent": args.percent}
        if args.windows:
            payload["windows"] = _parse_ranges(args.windows, parser)
        if args.alpha is not None:
            payload["alpha"] = args.alpha
        if args.alpha_from_labor_share:
            payload["alpha_from_labor_share"] = True
        if args.alpha_window:
            payload["alpha_window"] = _parse_range(args.alpha_window, parser, "--alpha-window")
        return "/v1/account", payload
    if cmd == "stats":
        return "/v1/stats", {
            "csv_text": _read_file(args.input, parser),
            "series": args.series,
            "windows": _parse_ranges(args.windows, parser),
        }
    if cmd == "window":
        return "/v1/window", {
            "csv_text": _read_file(args.input, parser),
            "min_len": args.min_len,
            "tol": args.tol,
        }
    if cmd == "steady-state":
        _check_trend(args, parser)
        return "/v1/steady-state", {
            "alpha": args.alpha,
            "beta": args.beta,
            "gamma": args.gamma,
            "delta": args.delta,
            **_trend_payload(args),
        }
    if cmd == "calibrate":
        _check_trend(args, parser)
        direct = args.iy is not None or args.ky is not None
        derived = args.input is not None or args.window is not None
        if direct == derived:
            parser.error("supply targets as --iy/--ky or as --input/--window, exactly one way")
        if direct and (args.iy is None or args.ky is None):
            parser.error("--iy and --ky go together")
        if derived and (args.input is None or args.window is None):
            parser.error("--input and --window go together")
        payload = {
            "alpha": args.alpha,
            "delta": args.delta,
            "beta_min": args.beta_min,
            "beta_max": args.beta_max,
            "beta_step": args.beta_step,
            "gamma_min": args.gamma_min,
            "gamma_max": args.gamma_max,
            "gamma_step": args.gamma_step,
            "w_iy": args.w_iy,
            "w_ky": args.w_ky,
            **_trend_payload(args),
        }
        if direct:
            payload["iy"], payload["ky"] = args.iy, args.ky
        else:
            payload["csv_text"] = _read_file(args.input, parser)
            payload["window"] = _parse_range(args.window, parser, "--window")
        return "/v1/calibrate", payload
    if cmd == "scenarios":
        _check_trend(args, parser)
        return "/v1/scenarios", {
            "scenarios_csv": _read_file(args.input, parser),
            "alpha": args.alpha,
            "delta": args.delta,
            **_trend_payload(args),
        }
    if cmd == "simulate":
        _check_trend(args, parser)
        if (args.k0 is None) == (args.k0_mult is None):
            parser.error("supply exactly one of --k0 or --k0-mult")
        payload = {
            "alpha": args.alpha,
            "beta": args.beta,
            "gamma": args.gamma,
            "delta": args.delta,
            "horizon": args.horizon,
            "tol": args.tol,
            **_trend_payload(args),
        }
        if args.k0 is not None:
            payload["k0"] = args.k0
        else:
            payload["k0_mult"] = args.k0_mult
        return "/v1/simulate", payload
    raise AssertionError(f"unhandled command {cmd}")


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=DEFAULT_TIMEOUT) as client:
            return client.post(path, json=payload)

    from .service.app import app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://growthkit.internal", timeout=DEFAULT_TIMEOUT
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_csv(command: str, body) -> str:
    columns = _CSV_COLUMNS[command]
    if command in ("steady-state", "calibrate"):
        rows = [body]
    elif command == "simulate":
        rows = body["rows"]
    else:
        rows = body
    if command == "account" and not any("growth_pct" in row for row in rows):
        columns = columns[:-1]
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row.get(name)) for name in columns))
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> int:
    if output is None:
        sys.stdout.write(text)
        return 0
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as err:
        sys.stderr.write(f"cannot write {output}: {err.strerror or err}\n")
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    path, payload = _build_request(args, parser)
    try:
        response = _post(args.server, path, payload)
    except httpx.HTTPError as err:
        error = {"code": "transport_error", "module": "cli", "message": str(err)}
        sys.stderr.write(json.dumps(error, indent=2) + "\n")
        return 1

    try:
        body = response.json()
    except ValueError:
        body = {"code": "bad_response", "module": "cli", "message": response.text}
    if response.status_code != 200:
        sys.stderr.write(json.dumps(body, indent=2) + "\n")
        return 1

    if args.format == "csv":
        text = _render_csv(args.command, body)
    else:
        text = json.dumps(body, indent=2) + "\n"
    return _emit(text, args.output)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
