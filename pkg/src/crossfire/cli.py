"""Command-line front end.

A thin HTTP client over the evaluation service: every subcommand posts a
request and writes the response's CSV (plus a manifest sidecar). By default
the service runs in-process; pass --server to talk to a running instance.

Exit codes: 0 success, 2 validation error, 3 infeasible design,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

import httpx

SEED_ENV_VAR = "CROSSFIRE_SEED"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_ORACLE_MISMATCH = 4


def _client(server: str | None) -> httpx.Client:
    if server is not None:
        return httpx.Client(base_url=server, timeout=3600.0)
    # in-process fallback: the service app mounted behind a test transport
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service.app import create_app

    return TestClient(create_app())


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SystemExit(_fail(f"config file not found: {path}", EXIT_VALIDATION))
    except json.JSONDecodeError as e:
        raise SystemExit(_fail(f"config file {path} is not valid JSON: {e}", EXIT_VALIDATION))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(
                _fail(f"{SEED_ENV_VAR} must be an integer, got {env!r}", EXIT_VALIDATION)
            )
    return 0


def _parse_position(spec: str) -> dict:
    kind, sep, value = spec.partition(":")
    if not sep:
        raise SystemExit(
            _fail(
                f"position spec {spec!r} must look like horizontal:-30, "
                "vertical:70, or manhattan:40",
                EXIT_VALIDATION,
            )
        )
    try:
        offset = float(value)
    except ValueError:
        raise SystemExit(_fail(f"position offset {value!r} is not a number", EXIT_VALIDATION))
    if kind not in ("horizontal", "vertical", "manhattan"):
        raise SystemExit(
            _fail(f"position road {kind!r} must be horizontal, vertical, or manhattan",
                  EXIT_VALIDATION)
        )
    return {"kind": kind, "offset": offset}


def _write_outputs(csv_text: str, manifest: dict, out: str | None) -> None:
    if out is None:
        sys.stdout.write(csv_text)
        print(json.dumps(manifest, sort_keys=True), file=sys.stderr)
        return
    out_path = Path(out)
    out_path.write_text(csv_text, encoding="utf-8")
    sidecar = out_path.with_suffix(".manifest.json")
    sidecar.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out_path} and {sidecar}", file=sys.stderr)


def _post(client: httpx.Client, endpoint: str, body: dict) -> tuple[int, dict | None]:
    try:
        response = client.post(endpoint, json=body)
    except httpx.HTTPError as e:
        return EXIT_ERROR, {"detail": f"request to {endpoint} failed: {e}"}
    if response.status_code in (400, 422):
        return EXIT_VALIDATION, response.json()
    if response.status_code == 409:
        return EXIT_INFEASIBLE, response.json()
    if response.status_code != 200:
        return EXIT_ERROR, {"detail": f"{endpoint} returned HTTP {response.status_code}"}
    return EXIT_OK, response.json()


def _detail(payload: dict | None) -> str:
    if not payload:
        return "unknown error"
    detail = payload.get("detail", payload)
    if isinstance(detail, list):  # pydantic error list
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            parts.append(f"{loc}: {item.get('msg', '')}")
        return "; ".join(parts)
    return str(detail)


def cmd_eval(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    body: dict = {"config": config}
    tx = _parse_position(args.tx)
    if tx["kind"] == "manhattan":
        body["tx_manhattan"] = tx["offset"]
    else:
        body["tx"] = {"road": tx["kind"], "offset": tx["offset"]}
    if args.rx is not None:
        rx = _parse_position(args.rx)
        if rx["kind"] == "manhattan":
            raise SystemExit(_fail("rx must be a road position, not a distance", EXIT_VALIDATION))
        body["rx"] = {"road": rx["kind"], "offset": rx["offset"]}
    with _client(args.server) as client:
        code, payload = _post(client, "/eval", body)
        if code != EXIT_OK:
            return _fail(_detail(payload), code)
        print(
            f"tx={payload['tx']['road']}:{payload['tx']['offset']:g} "
            f"rx={payload['rx']['road']}:{payload['rx']['offset']:g} "
            f"manhattan={payload['manhattan']:g} m class={payload['link_class']}"
        )
        print(
            f"p_noint={payload['p_noint']:.9g} p_x={payload['p_x']:.9g} "
            f"p_y={payload['p_y']:.9g} p_c={payload['p_c']:.9g}"
        )
        print(f"zeta={payload['zeta']:.9g} m kappa={payload['kappa']:.9g}")
        _write_outputs(payload["csv"], payload["manifest"], args.out)
    return EXIT_OK


def _run_sweep(args: argparse.Namespace, endpoint: str) -> int:
    config = _load_config(args.config)
    body = {"config": config, "workers": args.workers}
    with _client(args.server) as client:
        code, payload = _post(client, endpoint, body)
        if code != EXIT_OK:
            return _fail(_detail(payload), code)
        _write_outputs(payload["csv"], payload["manifest"], args.out)
    return EXIT_OK


def cmd_fig3(args: argparse.Namespace) -> int:
    return _run_sweep(args, "/fig3")


def cmd_fig4(args: argparse.Namespace) -> int:
    return _run_sweep(args, "/fig4")


def cmd_mc_validate(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    body = {
        "config": config,
        "trials": args.trials,
        "seed": _resolve_seed(args.seed),
    }
    with _client(args.server) as client:
        code, payload = _post(client, "/mc-validate", body)
        if code != EXIT_OK:
            return _fail(_detail(payload), code)
        for row in payload["rows"]:
            verdict = "pass" if row["passed"] else "FAIL"
            print(
                f"{row['scenario']:<28} mc={row['mc_mean']:.5f} "
                f"analytic={row['analytic_p_c']:.5f} diff={row['abs_diff']:.2e} "
                f"3sigma={row['three_sigma']:.2e} {verdict}"
            )
        print(
            f"passed {payload['n_pass']}/{payload['n_total']} "
            f"(required {payload['required_passes']})"
        )
        _write_outputs(payload["csv"], payload["manifest"], args.out)
        if not payload["passed"]:
            return _fail("Monte Carlo and closed form disagree", EXIT_ORACLE_MISMATCH)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("crossfire.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossfire",
        description="Success probability and Aloha design for V2V links at an intersection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="path to the JSON configuration")
        p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
        p.add_argument("--server", default=None, help="service URL (default: in-process)")

    p_eval = sub.add_parser("eval", help="evaluate one TX/RX link")
    common(p_eval)
    p_eval.add_argument("--tx", required=True,
                        help="horizontal:X | vertical:Y | manhattan:D")
    p_eval.add_argument("--rx", default=None, help="horizontal:X (default: from config)")
    p_eval.set_defaults(func=cmd_eval)

    p_fig3 = sub.add_parser("fig3", help="designed Aloha probability vs interference radius")
    common(p_fig3)
    p_fig3.add_argument("--workers", type=int, default=os.cpu_count())
    p_fig3.set_defaults(func=cmd_fig3)

    p_fig4 = sub.add_parser("fig4", help="outage vs TX/RX separation for fixed designs")
    common(p_fig4)
    p_fig4.add_argument("--workers", type=int, default=os.cpu_count())
    p_fig4.set_defaults(func=cmd_fig4)

    p_mc = sub.add_parser("mc-validate", help="Monte Carlo check of the closed form")
    common(p_mc)
    p_mc.add_argument("--trials", type=int, default=100_000)
    p_mc.add_argument("--seed", type=int, default=None,
                      help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)")
    p_mc.set_defaults(func=cmd_mc_validate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
