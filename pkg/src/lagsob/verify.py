"""Identity checks behind ``lagsob verify``.

Every check runs on the exact backend and records the first counterexample
it meets.  Degrees at which the Sobolev polynomial does not exist are
reported separately and skipped by the checks that need S_n.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import product

from .connect import (
    FormulaViolationError,
    ModifiedFunctionalError,
    annihilates,
    build_zeta,
    connect_shifted,
    connect_zeta,
    zeta_adjoint_check,
)
from .kernels import (
    kernel_cd,
    kernel_matrix,
    kernel_partial,
    kernel_partial_cd,
    kernel_sum,
    telescoping_identity_check,
)
from .poly import monomial
from .scalar import format_scalar
from .sobolev import SobolevExistenceError, SobolevFamily, SobolevSpec, gram_schmidt_oracle

SAMPLE_POINTS = (Fraction(0), Fraction(1, 3), Fraction(-2), Fraction(5, 2), Fraction(7))
MAX_KERNEL_ORDER = 3


class _Check:
    def __init__(self, name: str):
        self.name = name
        self.count = 0
        self.failure: dict | None = None

    def record(self, ok: bool, **where):
        self.count += 1
        if not ok and self.failure is None:
            self.failure = {k: _jsonable(v) for k, v in where.items()}

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.failure is None,
                "cases": self.count, "first_counterexample": self.failure}


def _jsonable(v):
    if isinstance(v, (Fraction, float)):
        return format_scalar(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def run_checks(spec: SobolevSpec, n_max: int) -> dict:
    """Run every identity check through degree ``n_max``; return a JSON-ready report."""
    fam = SobolevFamily(spec)
    lag = fam.laguerre
    u = fam.functional
    checks: dict[str, _Check] = {}

    def check(name):
        return checks.setdefault(name, _Check(name))

    for n in range(n_max + 1):
        for key, ok in lag.structure_checks(n).items():
            check(f"laguerre_{key}").record(ok, n=n)

    L = lag.polys(n_max)
    for n, m in product(range(n_max + 1), repeat=2):
        expected = lag.squared_norm(n) if n == m else 0
        check("laguerre_norms").record(u.apply(L[n] * L[m]) == expected, n=n, m=m)

    points = sorted(set(SAMPLE_POINTS) | {m.c for m in spec.masses})
    for n in range(n_max + 1):
        for x, y in product(points, repeat=2):
            check("kernel_christoffel_darboux").record(
                kernel_cd(lag, n, x, y) == kernel_sum(lag, n, x, y), n=n, x=x, y=y)
            for j in range(MAX_KERNEL_ORDER + 1):
                check("kernel_derivative_closed_form").record(
                    kernel_partial_cd(lag, n, j, x, y) == kernel_partial(lag, n, 0, j, x, y),
                    n=n, j=j, x=x, y=y)
        km = kernel_matrix(lag, spec.masses, n)
        check("kernel_matrix_symmetry").record(km.is_symmetric(), n=n)
    for n in range(1, n_max + 1):
        for j, c in product(range(MAX_KERNEL_ORDER + 1), points):
            check("kernel_telescoping").record(
                telescoping_identity_check(lag, n, j, c), n=n, j=j, c=c)

    regularity = fam.regularity_report(n_max)
    missing = []
    S = {}
    for rec in regularity:
        try:
            S[rec.n] = fam.poly(rec.n)
        except SobolevExistenceError:
            missing.append({"n": rec.n, "determinant": format_scalar(rec.determinant)})
        check("regularity_consistency").record(
            (rec.n in S) == rec.invertible, n=rec.n)

    for n in S:
        check("sobolev_leading_coefficient").record(
            S[n].degree == n and S[n].leading == lag.leading(n), n=n)
        for m in range(n):
            check("sobolev_orthogonality").record(
                fam.inner(S[n], monomial(m)) == 0, n=n, m=m)
            if m in S:
                check("sobolev_orthogonality").record(fam.inner(S[n], S[m]) == 0, n=n, m=m)
        try:
            gs = gram_schmidt_oracle(spec, n)
        except SobolevExistenceError:
            gs = None
        check("sobolev_path_equivalence").record(
            S[n] == fam.poly_via_fourier(n) == gs, n=n)

    ladder = build_zeta(spec)
    zeta = ladder.zeta
    for k in range(n_max + 1):
        check("zeta_annihilates").record(annihilates(spec, zeta, monomial(k)), k=k)
    for a, b in product(range(min(n_max, 4) + 1), repeat=2):
        check("zeta_adjoint").record(zeta_adjoint_check(spec, zeta, L[a], L[b]), f=a, g=b)

    for n in range(ladder.nu, n_max + 1):
        if n not in S:
            continue
        for name, fn in (("connection_zeta", connect_zeta),
                         ("connection_shifted", connect_shifted)):
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    res = fn(fam, n)
                ok = res.reconstruct() == S[n]
                check(name).record(ok, n=n)
            except FormulaViolationError as exc:
                check(name).record(False, n=n, coefficients=exc.result.coefficients,
                                   residual=list(exc.result.residual.coeffs))
            except ModifiedFunctionalError as exc:
                check(name).record(False, n=n, error=str(exc))

    results = [c.as_dict() for c in checks.values()]
    return {
        "alpha": format_scalar(spec.alpha),
        "masses": [{"c": format_scalar(m.c), "nu": m.nu, "mu": format_scalar(m.mu)}
                   for m in spec.masses],
        "n_max": n_max,
        "zeta_degree": ladder.nu,
        "checks": results,
        "regularity": [{"n": r.n, "invertible": r.invertible,
                        "determinant": format_scalar(r.determinant)} for r in regularity],
        "existence_failures": missing,
        "passed": all(r["passed"] for r in results),
    }
