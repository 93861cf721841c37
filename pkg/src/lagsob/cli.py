"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 a Sobolev polynomial of a requested degree does not exist.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from typing import Any

from .connect import (
    FormulaViolationError,
    build_zeta,
    connect_shifted,
    connect_zeta,
)
from .kernels import kernel_partial, kernel_partial_cd_poly
from .laguerre import DegenerateParameterError, LaguerreFamily
from .scalar import BACKENDS, EXACT, FLOAT, format_scalar, parse_rational
from .sobolev import MassPoint, SobolevExistenceError, SobolevFamily, SobolevSpec
from .verify import run_checks

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_EXISTENCE = 0, 1, 2, 3


class SpecFileError(ValueError):
    pass


def load_spec(data: dict[str, Any], backend: str | None = None) -> SobolevSpec:
    """Build a spec from the decoded JSON spec-file object."""
    if not isinstance(data, dict) or "alpha" not in data:
        raise SpecFileError("spec file must be an object with an 'alpha' field")
    backend = backend or data.get("backend", EXACT)
    if backend not in BACKENDS:
        raise SpecFileError(f"unknown backend {backend!r}")
    try:
        alpha = parse_rational(data["alpha"])
        masses = []
        for entry in data.get("masses", []):
            nu = entry["nu"]
            if isinstance(nu, bool) or not isinstance(nu, int) or nu < 0:
                raise SpecFileError(f"nu must be a nonnegative integer, got {nu!r}")
            masses.append(MassPoint(parse_rational(entry["c"]), nu,
                                    parse_rational(entry["mu"])))
        spec = SobolevSpec.build(alpha, masses)
    except DegenerateParameterError as exc:
        raise SpecFileError(str(exc)) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFileError(f"invalid spec file: {exc}") from None
    return spec.to_backend(FLOAT) if backend == FLOAT else spec


def read_spec_file(path: str, backend: str | None) -> SobolevSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path} is not valid JSON: {exc}") from None
    return load_spec(data, backend)


def _render(value) -> str:
    return format_scalar(value)


def _emit(args, kind: str, rows: list[dict], header: list[str] | None = None,
          extra: dict | None = None) -> None:
    if args.format == "json":
        doc = {"kind": kind, "rows": rows}
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(header)
        for row in rows:
            flat = []
            for v in row.values():
                flat.extend(v if isinstance(v, list) else [v])
            writer.writerow(flat)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_poly(args, spec: SobolevSpec) -> int:
    if args.eval:
        try:
            xs = [float(parse_rational(t)) for t in args.eval.split(",")]
        except ValueError as exc:
            print(f"error: bad --eval grid: {exc}", file=sys.stderr)
            return EXIT_USAGE
        fspec = spec if spec.backend == FLOAT else spec.to_backend(FLOAT)
        fam = SobolevFamily(fspec)
        rows = []
        try:
            for x in xs:
                vals = [fam.laguerre.values(args.n, x)[k] if args.classical
                        else fam.evaluate(k, x) for k in range(args.n + 1)]
                rows.append({"x": repr(x), "values": [repr(v) for v in vals]})
        except SobolevExistenceError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_EXISTENCE
        name = "L" if args.classical else "S"
        header = ["x"] + [f"{name}_{k}" for k in range(args.n + 1)]
        _emit(args, "grid", rows, header)
        return EXIT_OK

    fam = SobolevFamily(spec)
    rows = []
    status = EXIT_OK
    for k in range(args.n + 1):
        if args.classical:
            p = fam.laguerre.poly(k)
        else:
            try:
                p = fam.poly(k)
            except SobolevExistenceError as exc:
                print(f"error: degree {exc.n}: determinant {_render(exc.determinant)}",
                      file=sys.stderr)
                rows.append({"n": k, "coefficients": [], "exists": False,
                             "determinant": _render(exc.determinant)})
                status = EXIT_EXISTENCE
                continue
        rows.append({"n": k, "coefficients": [_render(c) for c in p.coeffs]})
    if args.format == "csv":
        rows = [{"n": r["n"], "coefficients": r["coefficients"]} for r in rows]
    _emit(args, "poly", rows, extra={"backend": spec.backend,
                                     "family": "laguerre" if args.classical else "sobolev"})
    return status


def cmd_connect(args, spec: SobolevSpec) -> int:
    nu = build_zeta(spec).nu
    if args.n < nu:
        print(f"error: n={args.n} must be at least deg(zeta)={nu}", file=sys.stderr)
        return EXIT_USAGE
    fam = SobolevFamily(spec)
    fn = connect_zeta if args.basis == "zeta" else connect_shifted
    status = EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            result = fn(fam, args.n)
    except SobolevExistenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXISTENCE
    except FormulaViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        result = exc.result
        status = EXIT_VERIFY
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    rows = [{"index": i, "coefficient": _render(c)}
            for i, c in enumerate(result.coefficients)]
    _emit(args, "connection", rows, ["index", "coefficient"],
          extra={"basis": args.basis, "n": args.n,
                 "residual_norm": _render(result.residual_norm),
                 "residual": [_render(c) for c in result.residual.coeffs],
                 "warnings": result.warnings})
    return status


def cmd_kernel(args, spec: SobolevSpec) -> int:
    fam = LaguerreFamily(spec.alpha)
    b = spec.backend
    try:
        x = parse_rational(args.x)
        y = parse_rational(args.y)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if b == FLOAT:
        x, y = float(x), float(y)
    oracle = kernel_partial(fam, args.n, args.j, args.k, x, y)
    cd = kernel_partial_cd_poly(fam, args.n, args.k, y).derivative(args.j)(x)
    agree = oracle == cd if b == EXACT else abs(oracle - cd) <= 1e-9 * max(1.0, abs(oracle))
    rows = [{"n": args.n, "j": args.j, "k": args.k, "x": _render(x), "y": _render(y),
             "oracle": _render(oracle), "christoffel_darboux": _render(cd),
             "agree": agree}]
    _emit(args, "kernel", rows,
          ["n", "j", "k", "x", "y", "oracle", "christoffel_darboux", "agree"])
    return EXIT_OK if agree else EXIT_VERIFY


def cmd_verify(args, spec: SobolevSpec) -> int:
    if spec.backend != EXACT:
        print("error: verify requires the exact backend", file=sys.stderr)
        return EXIT_USAGE
    report = run_checks(spec, args.n_max)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report["passed"]:
        return EXIT_VERIFY
    if report["existence_failures"]:
        return EXIT_EXISTENCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec_path", nargs="?", metavar="SPEC",
                        help="JSON spec file")
    common.add_argument("--spec", dest="spec_opt", metavar="PATH",
                        help="JSON spec file (alternative to the positional)")
    common.add_argument("--backend", choices=BACKENDS, default=None)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--out", metavar="PATH", default=None)

    parser = argparse.ArgumentParser(
        prog="lagsob",
        description="Discrete Laguerre-Sobolev orthogonal polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="print S_0..S_n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--classical", action="store_true",
                   help="print L_n^alpha instead of S_n")
    p.add_argument("--eval", metavar="X0,X1,...",
                   help="print values on a grid (float backend)")
    p.set_defaults(func=cmd_poly)

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("--n-max", type=int, default=10)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("connect", parents=[common], help="connection coefficients")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--basis", choices=("zeta", "shifted"), required=True)
    c.set_defaults(func=cmd_connect)

    k = sub.add_parser("kernel", parents=[common], help="kernel derivative value")
    k.add_argument("-n", type=int, required=True)
    k.add_argument("-j", type=int, default=0)
    k.add_argument("-k", type=int, default=0)
    k.add_argument("-x", required=True)
    k.add_argument("-y", required=True)
    k.set_defaults(func=cmd_kernel)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    path = args.spec_opt or args.spec_path
    if path is None:
        parser.error("a spec file is required")
    for name in ("n", "n_max", "j", "k"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            parser.error(f"{name} must be nonnegative")
    try:
        spec = read_spec_file(path, args.backend)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args, spec)


if __name__ == "__main__":
    sys.exit(main())
