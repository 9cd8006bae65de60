#!/usr/bin/env python3
"""Regenerate docs/cli.md from the argparse definitions.

Run from the repository root after changing the CLI:

    python3 scripts/gen_cli_reference.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from growthkit.cli import build_parser  # noqa: E402


def main() -> None:
    parser = build_parser()
    subparsers = next(
        action.choices for action in parser._actions if action.choices is not None
    )
    lines = [
        "# Command-line reference",
        "",
        "Generated by `scripts/gen_cli_reference.py`; edit the CLI, not this file.",
        "",
        "```",
        parser.format_help().rstrip(),
        "```",
        "",
    ]
    for name, sub in subparsers.items():
        lines += [f"## growthkit {name}", "", "```", sub.format_help().rstrip(), "```", ""]
    out = ROOT / "docs" / "cli.md"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines), encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
