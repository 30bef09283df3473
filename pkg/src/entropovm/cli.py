"""Command-line front end.

`entropovm run <scenario>` executes a scenario and writes the report as JSON
or CSV; the exit code is 0 iff every instance passed. With --url the command
becomes a thin client of a running service (see `entropovm serve`), posting
the same configuration to POST /run; without it the engine runs in-process.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .report import Report, ScenarioRecord
from .scenarios import ScenarioConfig, run_scenario, scenario_names


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropovm",
        description="Entropic uncertainty verification scenarios for POVM pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario and emit its report")
    run_p.add_argument("scenario", choices=scenario_names())
    run_p.add_argument("--dim", type=int, default=None, help="Hilbert space dimension")
    run_p.add_argument("--trials", type=int, default=None, help="number of random instances")
    run_p.add_argument("--seed", type=int, default=0, help="master seed (64-bit)")
    run_p.add_argument(
        "--tolerance",
        type=float,
        default=1e-8,
        help="pass/fail tolerance; never touches computed values",
    )
    run_p.add_argument("--B", type=float, default=None, dest="b_field", help="magnetic field strength")
    run_p.add_argument("--t", type=float, default=None, dest="t_param", help="inverse-temperature parameter")
    run_p.add_argument(
        "--nbar-grid",
        default=None,
        help='mean-level grid, "lo:hi", "lo:hi:count" or "lo:hi:count:log"',
    )
    run_p.add_argument("--out", default=None, help="output path (stdout when omitted)")
    run_p.add_argument("--format", choices=("json", "csv"), default="json")
    run_p.add_argument("--url", default=None, help="base URL of a running service; run remotely")

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)

    sub.add_parser("scenarios", help="list the available scenarios")
    return parser


def _report_from_payload(payload: dict[str, Any]) -> Report:
    records = [
        ScenarioRecord(
            index=r["index"],
            label=r["label"],
            inputs=r["inputs"],
            lhs=r["lhs"],
            rhs=r["rhs"],
            deficit=r["deficit"],
            passed=r["pass"],
        )
        for r in payload["records"]
    ]
    return Report(
        scenario=payload["scenario"],
        config=payload["config"],
        records=records,
        aggregate=payload["aggregate"],
        timing_ms=payload["timing_ms"],
    )


def _run_remote(url: str, args: argparse.Namespace) -> Report:
    import httpx

    body = {
        "scenario": args.scenario,
        "dim": args.dim,
        "trials": args.trials,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "B": args.b_field,
        "t": args.t_param,
        "nbar_grid": args.nbar_grid,
    }
    response = httpx.post(url.rstrip("/") + "/run", json=body, timeout=600.0)
    if response.status_code != 200:
        raise RuntimeError(f"service returned {response.status_code}: {response.text}")
    return _report_from_payload(response.json())


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        if args.url:
            report = _run_remote(args.url, args)
        else:
            cfg = ScenarioConfig(
                dim=args.dim,
                trials=args.trials,
                seed=args.seed,
                tolerance=args.tolerance,
                b_field=args.b_field,
                t_param=args.t_param,
                nbar_grid=args.nbar_grid,
            )
            report = run_scenario(args.scenario, cfg)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    agg = report.aggregate
    print(
        f"{report.scenario}: {agg['passed']}/{agg['count']} passed, "
        f"min deficit {agg['min_deficit']:.3e}",
        file=sys.stderr,
    )
    return 0 if report.all_passed else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("entropovm.service:app", host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "serve":
        return _cmd_serve(args)
    print(json.dumps({"scenarios": scenario_names()}, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
