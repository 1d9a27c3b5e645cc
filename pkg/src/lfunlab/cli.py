"""Command-line client for the laboratory service.

By default the FastAPI app is driven in-process (no sockets); --server URL
points the same client at a remote instance.  Exit codes: 0 success,
1 a verification target ran and failed, 2 usage/domain/budget errors.
Output is deterministic for a fixed configuration: keys are sorted and
timing metadata is only included under --timings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .moments import default_workers
from .serialize import strip_timings

USAGE_EXIT = 2
VERIFY_FAIL_EXIT = 1


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _emit(args, payload, csv_rows=None) -> None:
    payload = payload if getattr(args, "timings", False) else strip_timings(payload)
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        for row in csv_rows(payload):
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _post(args, path: str, body: dict):
    with _client(args.server) as client:
        resp = client.post(path, json=body)
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail", resp.text)
        print(f"error: {detail}", file=sys.stderr)
        return None
    resp.raise_for_status()
    return resp.json()


MOMENT_CSV_HEADER = [
    "g", "ensemble_size", "exact_a", "exact_b", "exact_float",
    "T1", "T2", "T3", "T4", "after_T1", "after_T1T2", "after_all",
    "winning_toggle",
]


def _moment_csv_row(rep: dict) -> list:
    bd = rep["breakdown"]
    res = rep["winning_residuals"]
    return [
        rep["g"], rep["ensemble_size"], rep["exact"]["a"], rep["exact"]["b"],
        rep["exact_float"], bd["T1"], bd["T2"], bd["T3"], bd["T4"],
        res["after_T1"], res["after_T1T2"], res["after_all"],
        rep["sign_resolution"],
    ]


def cmd_lvalue(args) -> int:
    payload = _post(args, "/lvalue", {"q": args.q, "d": args.d})
    if payload is None:
        return USAGE_EXIT
    _emit(args, payload)
    return 0


def cmd_predict(args) -> int:
    payload = _post(
        args,
        "/predict",
        {"q": args.q, "g": args.g, "cutoff_degree": args.cutoff_degree,
         "sign_toggle": args.sign_toggle},
    )
    if payload is None:
        return USAGE_EXIT
    _emit(args, payload)
    return 0


def cmd_constants(args) -> int:
    payload = _post(args, "/constants", {"q": args.q, "cutoff_degree": args.cutoff_degree})
    if payload is None:
        return USAGE_EXIT
    _emit(args, payload)
    return 0


def cmd_moment(args) -> int:
    payload = _post(
        args,
        "/moment",
        {
            "q": args.q,
            "g": args.g,
            "method": args.method,
            "workers": args.workers,
            "cutoff_degree": args.cutoff_degree,
            "max_cost_seconds": args.max_cost,
        },
    )
    if payload is None:
        return USAGE_EXIT
    _emit(args, payload, lambda rep: [MOMENT_CSV_HEADER, _moment_csv_row(rep)])
    return 0


def cmd_verify(args) -> int:
    body = {"q": args.q, "target": args.target}
    for key in ("max_fdeg", "nz", "nw", "t_max", "g_max", "tol"):
        value = getattr(args, key, None)
        if value is not None:
            body[key] = value
    if args.genus:
        body["genera"] = args.genus
    if args.cutoff_degree is not None:
        body["cutoff_degree"] = args.cutoff_degree
    payload = _post(args, "/verify", body)
    if payload is None:
        return USAGE_EXIT
    _emit(args, payload)
    return 0 if payload.get("passed") else VERIFY_FAIL_EXIT


def cmd_report(args) -> int:
    payload = _post(
        args,
        "/report",
        {
            "q": args.q,
            "g_max": args.g_max,
            "workers": args.workers,
            "cutoff_degree": args.cutoff_degree,
            "max_cost_seconds": args.max_cost,
        },
    )
    if payload is None:
        return USAGE_EXIT

    def rows(p):
        yield MOMENT_CSV_HEADER
        for rep in p["reports"]:
            yield _moment_csv_row(rep)

    _emit(args, payload, rows)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("lfunlab.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfunlab",
        description="quadratic Dirichlet L-functions over F_q[x]: exact moments, "
        "identity verification and asymptotic predictions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=False):
        p.add_argument("--q", type=int, default=5, help="field size, prime = 1 mod 4")
        p.add_argument("--server", default=None, help="remote service URL (default: in-process)")
        p.add_argument("--out", default=None, help="write output to this path")
        p.add_argument("--timings", action="store_true", help="include timing metadata")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("lvalue", help="coefficients and central value for one D")
    common(p)
    p.add_argument("--d", required=True, help="polynomial, e.g. '2,0,1' for x^2+2")
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("predict", help="four-term asymptotic prediction for genus g")
    common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--cutoff-degree", type=int, default=64, dest="cutoff_degree")
    p.add_argument("--sign-toggle", type=int, default=1, choices=(1, -1), dest="sign_toggle")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("constants", help="all prediction constants with cutoff metadata")
    common(p)
    p.add_argument("--cutoff-degree", type=int, default=64, dest="cutoff_degree")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("moment", help="exact ensemble moment plus residual ladder")
    common(p, fmt=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--method", choices=("charsum", "pointcount", "afe"), default=None)
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--cutoff-degree", type=int, default=64, dest="cutoff_degree")
    p.add_argument("--max-cost", type=float, default=900.0, dest="max_cost",
                   help="refuse runs estimated above this many seconds")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("verify", help="run one structural-identity suite")
    common(p)
    p.add_argument("--target", required=True,
                   choices=("poisson", "afe", "fe", "rh", "lemma25", "lemma52",
                            "lemma53", "eq517", "appendix", "parity"))
    p.add_argument("--max-fdeg", type=int, default=None, dest="max_fdeg")
    p.add_argument("--genus", type=int, action="append", default=None,
                   help="restrict ensemble targets to these genera (repeatable)")
    p.add_argument("--nz", type=int, default=None)
    p.add_argument("--nw", type=int, default=None)
    p.add_argument("--t-max", type=int, default=None, dest="t_max")
    p.add_argument("--g-max", type=int, default=None, dest="g_max")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--cutoff-degree", type=int, default=None, dest="cutoff_degree")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="moment reports for g = 0..g_max")
    common(p, fmt=True)
    p.add_argument("--g-max", type=int, default=2, dest="g_max")
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--cutoff-degree", type=int, default=64, dest="cutoff_degree")
    p.add_argument("--max-cost", type=float, default=900.0, dest="max_cost")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
