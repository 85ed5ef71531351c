"""Command-line client.

The CLI validates the scenario file locally, then talks to the service
API: by default an in-process instance of the app (no daemon needed),
or a remote server via --server. Results come back as JSON and are
written as CSV files, so identical inputs always produce byte-identical
outputs regardless of where the run executed.

Exit codes: 0 success, 2 scenario/argument parse error, 3 configuration
or I/O failure.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path

import httpx
from pydantic import ValidationError

from .metrics import PER_NODE_HEADER, SUMMARY_HEADER, render_csv
from .scenario import ScenarioFormatError, load_scenario_spec
from .schemas import RunRequest, SweepRequest

_EXIT_OK = 0
_EXIT_PARSE = 2
_EXIT_CONFIG = 3


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)

    from .service import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://pas-sim", timeout=600.0) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _request(server: str | None, path: str, payload: dict) -> tuple[dict | None, int]:
    try:
        response = _post(server, path, payload)
    except httpx.HTTPError as exc:
        return None, _fail(f"service request failed: {exc}", _EXIT_CONFIG)
    if response.status_code == 200:
        return response.json(), _EXIT_OK
    detail = response.json().get("detail", response.text)
    if response.status_code == 422:
        return None, _fail(f"invalid request: {detail}", _EXIT_PARSE)
    return None, _fail(f"simulation configuration error: {detail}", _EXIT_CONFIG)


def _write_outputs(out_dir: Path, files: dict[str, str]) -> int:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, content in files.items():
            (out_dir / name).write_text(content)
    except OSError as exc:
        return _fail(f"cannot write outputs to {out_dir}: {exc}", _EXIT_CONFIG)
    for name in files:
        print(f"wrote {out_dir / name}")
    return _EXIT_OK


def _summary_csv(rows: list[dict]) -> str:
    return render_csv(SUMMARY_HEADER, [[row[k] for k in SUMMARY_HEADER] for row in rows])


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        spec = load_scenario_spec(args.scenario)
        request = RunRequest(scenario=spec, trace=args.trace)
    except (ScenarioFormatError, ValidationError) as exc:
        return _fail(str(exc), _EXIT_PARSE)
    data, code = _request(args.server, "/run", request.model_dump(mode="json"))
    if data is None:
        return code
    files = {
        "per_node.csv": render_csv(
            PER_NODE_HEADER, [[row[k] for k in PER_NODE_HEADER] for row in data["nodes"]]
        ),
        "summary.csv": _summary_csv([data["summary"]]),
    }
    if args.trace:
        files["trace.tsv"] = "\n".join(data["trace"]) + "\n"
    return _write_outputs(Path(args.output), files)


def _cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        spec = load_scenario_spec(args.scenario)
    except ScenarioFormatError as exc:
        return _fail(str(exc), _EXIT_PARSE)

    # Flags override the file's optional sweep section.
    param = args.param or (spec.sweep.param if spec.sweep else None)
    values = args.values if args.values is not None else (spec.sweep.values if spec.sweep else None)
    reps = args.reps if args.reps is not None else (spec.sweep.reps if spec.sweep else 5)
    if param is None or values is None:
        parser.error("sweep requires --param and --values (or a sweep section in the scenario file)")
    try:
        request = SweepRequest(scenario=spec, param=param, values=values, reps=reps)
    except ValidationError as exc:
        return _fail(str(exc), _EXIT_PARSE)
    data, code = _request(args.server, "/sweep", request.model_dump(mode="json"))
    if data is None:
        return code
    files = {
        "summary.csv": _summary_csv(data["rows"]),
        "aggregate.csv": _summary_csv(data["aggregates"]),
    }
    return _write_outputs(Path(args.output), files)


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return _EXIT_OK


def _parse_values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pas-sim", description="Adaptive-sleeping sensor network simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute one scenario and write CSV results")
    run_p.add_argument("scenario", help="path to a YAML scenario file")
    run_p.add_argument("-o", "--output", required=True, help="output directory")
    run_p.add_argument("--trace", action="store_true", help="also write the event trace")
    run_p.add_argument("--server", default=None, help="remote service URL (default: run in-process)")

    sweep_p = sub.add_parser("sweep", help="replicate a scenario across a parameter range")
    sweep_p.add_argument("scenario", help="path to a YAML scenario file")
    sweep_p.add_argument("--param", choices=["max_sleep", "alert_threshold"], default=None)
    sweep_p.add_argument("--values", type=_parse_values, default=None, help="comma-separated values, ascending")
    sweep_p.add_argument("--reps", type=int, default=None, help="replications per value (default 5)")
    sweep_p.add_argument("-o", "--output", required=True, help="output directory")
    sweep_p.add_argument("--server", default=None, help="remote service URL (default: run in-process)")

    serve_p = sub.add_parser("serve", help="run the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "sweep":
        return _cmd_sweep(args, parser)
    return _cmd_serve(args)


if __name__ == "__main__":
    raise SystemExit(main())
