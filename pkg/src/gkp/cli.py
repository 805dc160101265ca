"""Command-line front end; a thin client of the HTTP service layer.

Every subcommand serializes its arguments into a service request and
formats the response, so CLI results are identical to endpoint results
by construction.  By default the app is served in-process; pass
--server URL to talk to a running instance instead.

Exit codes: 0 success (and verification match), 1 verification mismatch,
2 usage or request error.
"""
from __future__ import annotations

import argparse
import json
import sys

import httpx

from .oeis import CACHE_ENV_VAR
from .params import InvolutionKind

_EXIT_MISMATCH = 1
_EXIT_USAGE = 2


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=120.0)
    # In-process mode: drive the ASGI app through a synchronous client, so the
    # CLI exercises exactly the request/response path a server would.
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service.app import app  # deferred: keeps --help fast

    return TestClient(app, raise_server_exceptions=False)


def _params_arg(value: str) -> list:
    parts = [s.strip() for s in value.split(",")]
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("expected 6 comma-separated rationals a,b,g,a',b',g'")
    return parts


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gkp",
        description="Exact engine for the six-parameter GKP recurrence (triangles, "
        "EGFs, residue row polynomials, degeneracies, OEIS checks).",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", help="base URL of a running service; default runs in-process")
    common.add_argument("--format", choices=("json", "table"), default="table", dest="fmt")
    sub = top.add_subparsers(dest="command", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    def with_params(p):
        p.add_argument("--params", type=_params_arg, required=True, metavar="a,b,g,a',b',g'",
                       help="six exact rationals, e.g. 0,1,1,1,-1,0 or 1/2,...")
        return p

    with_params(sub.add_parser("classify", help="PDE type (and Type-I derived parameters)"))

    p = with_params(sub.add_parser("triangle", help="exact triangle rows"))
    p.add_argument("--rows", type=int, default=10)

    p = with_params(sub.add_parser("rowpoly", help="row generating polynomial P_n"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("recurrence", "product"), default="recurrence",
                   help="'product' uses the Type-IV factorized form")

    p = with_params(sub.add_parser("egf-check", help="closed-form EGF vs triangle series"))
    p.add_argument("--x", default="1/2", help="rational evaluation point")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--field", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=1e-30)

    p = with_params(sub.add_parser("residue", help="P_n(x) via the residue-limit formula"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", default="1/2")
    p.add_argument("--precision", type=int, default=60, help="working decimal digits (>= 50)")
    p.add_argument("--tol", type=float, default=1e-30)
    p.add_argument("--alt", action="store_true", help="integer-r alternative form")

    with_params(sub.add_parser("degeneracy", help="degenerate-family classification"))

    p = sub.add_parser("identify", help="fit recurrence parameters to a triangle prefix")
    p.add_argument("--triangle-json", type=argparse.FileType("r"), default="-",
                   help="JSON {'rows': [[...], ...]} or a /triangle response (default: stdin)")

    p = with_params(sub.add_parser("oeis-verify", help="compare the triangle against an OEIS b-file"))
    p.add_argument("--anum", required=True, help="A-number, e.g. A007318")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--offline", action="store_true", help="never touch the network")
    p.add_argument("--cache-dir", default=None, help=f"b-file cache (default ${CACHE_ENV_VAR} or ./.oeis-cache)")

    p = with_params(sub.add_parser("involute", help="apply a parameter involution"))
    p.add_argument("--kind", choices=[k.value for k in InvolutionKind], required=True)
    return top


def _post(client: httpx.Client, path: str, payload: dict):
    resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(_EXIT_USAGE)
    return resp.json()


def _poly_str(coeffs: list) -> str:
    if not coeffs:
        return "0"
    parts = []
    for deg, c in enumerate(coeffs):
        if c == "0":
            continue
        if deg == 0:
            parts.append(c)
        elif deg == 1:
            parts.append(f"{c}*x" if c != "1" else "x")
        else:
            parts.append(f"{c}*x^{deg}" if c != "1" else f"x^{deg}")
    return " + ".join(parts) if parts else "0"


def _render(command: str, data: dict, fmt: str) -> int:
    """Print the response; return the exit code."""
    if fmt == "json":
        print(json.dumps(data, indent=2))
    if command == "classify":
        if fmt == "table":
            line = f"Type {data['rec_type']}"
            if data.get("derived"):
                d = data["derived"]
                line += f"  (r={d['r']}, r'={d['rp']}, s={d['s']}, s'={d['sp']}, sigma={d['sigma']:+d})"
            print(line)
        return 0
    if command == "triangle":
        if fmt == "table":
            for n, row in enumerate(data["rows"]):
                print(f"{n}: " + " ".join(row))
        return 0
    if command == "rowpoly":
        if fmt == "table":
            print(f"P_{data['n']}(x) = {_poly_str(data['coeffs'])}")
        return 0
    if command == "egf-check":
        if fmt == "table":
            verdict = "MATCH" if data["matched"] else "MISMATCH"
            print(f"{verdict} (case {data['case']}) through order {data['order']} at x={data['x']}; "
                  f"max rel err {data['max_rel_err']}")
        return 0 if data["matched"] else _EXIT_MISMATCH
    if command == "residue":
        if fmt == "table":
            verdict = "MATCH" if data["within_tol"] else "MISMATCH"
            print(f"{verdict}: P_{data['n']}({data['x']}) = {data['value']}")
            print(f"  exact = {data['exact']}   rel err = {data['rel_err']}   est = {data['error_estimate']}")
        return 0 if data["within_tol"] else _EXIT_MISMATCH
    if command == "degeneracy":
        if fmt == "table":
            inv = ", ".join(f"{k}={v}" for k, v in data["invariants"].items())
            print(data["tag"] + (f" ({inv})" if inv else ""))
        return 0
    if command == "identify":
        if fmt == "table":
            print(f"particular: ({','.join(data['particular'])})")
            print(f"dim: {data['dim']}")
            for vec in data["nullspace"]:
                print(f"  basis: ({','.join(vec)})")
        return 0
    if command == "oeis-verify":
        if fmt == "table":
            if data["matched"]:
                print(f"MATCH {data['anum']} through row {data['rows_checked']} "
                      f"({data['entries_checked']} entries, source={data['source']})")
            elif data["first_mismatch"]:
                m = data["first_mismatch"]
                print(f"MISMATCH {data['anum']} at (n={m['n']}, k={m['k']}): "
                      f"expected {m['expected']}, got {m['got']}")
            else:
                print(f"SKIPPED {data['anum']}: {data['note']}")
        return 0 if data["matched"] else _EXIT_MISMATCH
    if command == "involute":
        if fmt == "table":
            print(",".join(data["params"]))
        return 0
    return 0


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    payload: dict
    path = f"/{args.command}"
    if args.command == "classify" or args.command == "degeneracy":
        payload = {"params": args.params}
    elif args.command == "triangle":
        payload = {"params": args.params, "rows": args.rows}
    elif args.command == "rowpoly":
        payload = {"params": args.params, "n": args.n, "method": args.method}
    elif args.command == "egf-check":
        payload = {"params": args.params, "x": args.x, "order": args.order,
                   "field": args.field, "tol": args.tol}
    elif args.command == "residue":
        if args.precision < 50:
            print("error: --precision must be >= 50", file=sys.stderr)
            return _EXIT_USAGE
        payload = {"params": args.params, "n": args.n, "x": args.x,
                   "precision": args.precision, "tol": args.tol, "alternative": args.alt}
    elif args.command == "identify":
        try:
            doc = json.load(args.triangle_json)
        except json.JSONDecodeError as exc:
            print(f"error: bad triangle JSON: {exc}", file=sys.stderr)
            return _EXIT_USAGE
        payload = {"rows": doc["rows"] if isinstance(doc, dict) else doc}
    elif args.command == "oeis-verify":
        payload = {"params": args.params, "anum": args.anum, "rows": args.rows,
                   "offline": args.offline, "cache_dir": args.cache_dir}
    elif args.command == "involute":
        payload = {"params": args.params, "kind": args.kind}
    else:  # pragma: no cover
        return _EXIT_USAGE
    with _client(args.server) as client:
        data = _post(client, path, payload)
    return _render(args.command, data, args.fmt)


if __name__ == "__main__":
    raise SystemExit(main())
