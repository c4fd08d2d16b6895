"""Command-line client for the hyperspecies service.

By default the CLI talks to the FastAPI app in-process (no server needed);
`--server URL` points it at a running instance instead, and `serve` starts
one.  Exit codes: 0 success/verified, 1 verification mismatch, 2 usage or
parse error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

import httpx

from . import groupoid

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

ENV_MAX_OBJECTS = "GPD_MAX_OBJECTS"
ENV_MAX_MORPHISMS = "GPD_MAX_MORPHISMS"
ENV_MAX_COMPOSE = "GPD_MAX_COMPOSE"


def render_json(payload) -> str:
    """Canonical JSON: sorted keys, no whitespace; round-trips byte-identically."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class _InProcessTransport(httpx.BaseTransport):
    """Drive the ASGI app directly, so the CLI needs no running server."""

    def __init__(self, app):
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        import asyncio

        request.read()

        async def call():
            response = await self._asgi.handle_async_request(request)
            body = await response.aread()
            await response.aclose()
            return httpx.Response(
                response.status_code, headers=response.headers, content=body
            )

        return asyncio.run(call())


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    from .service import app

    return httpx.Client(
        transport=_InProcessTransport(app), base_url="http://hyperspecies"
    )


def _split_params(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    return [part.strip() for part in text.split(",")]


def _cap(value: Optional[int], env_name: str, default: int) -> int:
    if value is not None:
        return value
    from_env = os.environ.get(env_name)
    if from_env is not None:
        return int(from_env)
    return default


def _error_exit(response: httpx.Response) -> int:
    try:
        detail = response.json().get("detail", {})
    except ValueError:
        detail = {}
    if isinstance(detail, dict):
        code = detail.get("code", "usage")
        message = detail.get("message", response.text)
    else:
        code = "usage"
        message = str(detail)
    print(f"error: {message}", file=sys.stderr)
    return EXIT_RESOURCE if code == "resource_limit" else EXIT_USAGE


def _schema_payload(
    command: str,
    upper: list[str],
    lower: list[str],
    order: int,
    basis: str,
    coefficients,
    verified=None,
    per_n=None,
) -> dict:
    return {
        "command": command,
        "params": {"upper": upper, "lower": lower},
        "order": order,
        "basis": basis,
        "coefficients": coefficients,
        "verified": verified,
        "per_n": per_n,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspecies",
        description="Exact hypergeometric coefficients and their groupoid interpretations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default: int = 16):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--server", default=None, help="base URL of a running service")
        p.add_argument("--order", type=int, default=order_default)

    p = sub.add_parser("coeffs", help="hypergeometric series coefficients")
    p.add_argument("--upper", default="", help="comma-separated p/q list")
    p.add_argument("--lower", default="", help="comma-separated p/q list")
    p.add_argument("--basis", choices=("egf", "ordinary"), default="egf")
    common(p)

    p = sub.add_parser("verify", help="check |H(params)| against the coefficients")
    p.add_argument("--upper", default="")
    p.add_argument("--lower", default="")
    p.add_argument(
        "--interpretation", choices=("product", "alt"), default="product"
    )
    p.add_argument("--max-objects", type=int, default=None)
    p.add_argument("--max-morphisms", type=int, default=None)
    p.add_argument("--max-compose", type=int, default=None)
    common(p)

    p = sub.add_parser("card", help="cardinality of a groupoid expression")
    p.add_argument("expression")
    p.add_argument("--mode", choices=("symbolic", "explicit"), default="symbolic")
    p.add_argument("--max-objects", type=int, default=None)
    p.add_argument("--max-morphisms", type=int, default=None)
    p.add_argument("--max-compose", type=int, default=None)
    common(p)

    p = sub.add_parser("species", help="valuation of a species expression")
    p.add_argument("expression")
    p.add_argument("--basis", choices=("egf", "ordinary"), default="egf")
    common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _run_coeffs(args) -> int:
    payload = {
        "upper": _split_params(args.upper),
        "lower": _split_params(args.lower),
        "order": args.order,
        "basis": args.basis,
    }
    with _client(args.server) as client:
        response = client.post("/coeffs", json=payload)
    if response.status_code != 200:
        return _error_exit(response)
    body = response.json()
    out = _schema_payload(
        "coeffs",
        body["upper"],
        body["lower"],
        body["order"],
        body["basis"],
        body["coefficients"],
    )
    if args.format == "json":
        print(render_json(out))
    else:
        print(", ".join(body["coefficients"]))
    return EXIT_OK


def _run_verify(args) -> int:
    payload = {
        "upper": _split_params(args.upper),
        "lower": _split_params(args.lower),
        "order": args.order,
        "interpretation": args.interpretation,
        "max_objects": _cap(
            args.max_objects, ENV_MAX_OBJECTS, groupoid.DEFAULT_MAX_OBJECTS
        ),
        "max_morphisms": _cap(
            args.max_morphisms, ENV_MAX_MORPHISMS, groupoid.DEFAULT_MAX_MORPHISMS
        ),
        "max_compose": _cap(
            args.max_compose, ENV_MAX_COMPOSE, groupoid.DEFAULT_MAX_COMPOSE
        ),
    }
    with _client(args.server) as client:
        response = client.post("/verify", json=payload)
    if response.status_code != 200:
        return _error_exit(response)
    body = response.json()
    if body["resource_limited"]:
        first = body["resource_limited"][0]
        note = next(
            (e["note"] for e in body["per_n"] if e["n"] == first), ""
        )
        print(
            f"error: resource limit at n={first}: {note}", file=sys.stderr
        )
        return EXIT_RESOURCE
    per_n = [
        {
            "n": e["n"],
            "explicit": e["explicit"],
            "symbolic": e["symbolic"],
            "analytic": e["analytic"],
            "pass": e["ok"],
        }
        for e in body["per_n"]
    ]
    out = _schema_payload(
        "verify",
        body["upper"],
        body["lower"],
        body["order"],
        "egf",
        [e["analytic"] for e in body["per_n"]],
        verified=body["verified"],
        per_n=per_n,
    )
    if args.format == "json":
        print(render_json(out))
    else:
        print("  n  explicit  symbolic  analytic  ok")
        for e in per_n:
            flag = "ok" if e["pass"] else "MISMATCH"
            print(
                f"{e['n']:>3}  {e['explicit']:>8}  {e['symbolic']:>8}  "
                f"{e['analytic']:>8}  {flag}"
            )
        print("verified" if body["verified"] else "NOT verified")
    if not body["verified"]:
        bad = next(e for e in per_n if not e["pass"])
        print(
            f"mismatch at n={bad['n']}: explicit={bad['explicit']} "
            f"symbolic={bad['symbolic']} analytic={bad['analytic']}",
            file=sys.stderr,
        )
        return EXIT_MISMATCH
    return EXIT_OK


def _run_card(args) -> int:
    payload = {
        "expression": args.expression,
        "mode": args.mode,
        "max_objects": _cap(
            args.max_objects, ENV_MAX_OBJECTS, groupoid.DEFAULT_MAX_OBJECTS
        ),
        "max_morphisms": _cap(
            args.max_morphisms, ENV_MAX_MORPHISMS, groupoid.DEFAULT_MAX_MORPHISMS
        ),
        "max_compose": _cap(
            args.max_compose, ENV_MAX_COMPOSE, groupoid.DEFAULT_MAX_COMPOSE
        ),
    }
    with _client(args.server) as client:
        response = client.post("/card", json=payload)
    if response.status_code != 200:
        return _error_exit(response)
    body = response.json()
    out = _schema_payload(
        "card", [], [], 0, "egf", [body["cardinality"]]
    )
    if args.format == "json":
        print(render_json(out))
    else:
        print(body["cardinality"])
        if body.get("classes") is not None:
            print(f"iso classes: {body['iso_class_count']}")
            for entry in body["classes"]:
                print(
                    f"  rep={entry['representative']} "
                    f"|Aut|={entry['automorphism_order']}"
                )
    return EXIT_OK


def _run_species(args) -> int:
    payload = {
        "expression": args.expression,
        "order": args.order,
        "basis": args.basis,
    }
    with _client(args.server) as client:
        response = client.post("/species", json=payload)
    if response.status_code != 200:
        return _error_exit(response)
    body = response.json()
    out = _schema_payload(
        "species", [], [], body["order"], body["basis"], body["coefficients"]
    )
    if args.format == "json":
        print(render_json(out))
    else:
        print(", ".join(body["coefficients"]))
    return EXIT_OK


def _run_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {
        "coeffs": _run_coeffs,
        "verify": _run_verify,
        "card": _run_card,
        "species": _run_species,
        "serve": _run_serve,
    }
    try:
        return handlers[args.command](args)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
