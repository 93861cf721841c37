"""Connection formulas for the Laguerre-Sobolev polynomials.

Three expansions of S_n are provided:

* ``laguerre``: Fourier coefficients in L_0^alpha, ..., L_n^alpha;
* ``zeta``: ``S_n = sum_j lambda_j zeta_j(x) P_{n-j}^{[zeta_j^2]}(x)``, where
  zeta is the annihilator of the derivative-evaluation operator and
  zeta_0 | zeta_1 | ... | zeta_nu = zeta is a fixed ladder of its divisors;
* ``shifted``: ``S_n = sum_k xi_k L_{n-k}^{alpha+k}(x)``.

The coefficients are found by solving the coefficient-matching system and
every result carries the residual ``S_n - sum(coeff * basis)``.  A nonzero
residual raises :class:`FormulaViolationError`.
"""

from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass, field
from itertools import groupby

from . import linalg
from .laguerre import LaguerreFamily, MomentFunctional, recurrence_polys
from .poly import Poly, dot
from .scalar import EXACT, Scalar, one
from .sobolev import SobolevFamily, SobolevSpec, dvec, sobolev_inner


class FormulaViolationError(ArithmeticError):
    """A connection expansion left a nonzero residual."""

    def __init__(self, message: str, result: "ConnectionResult"):
        super().__init__(message)
        self.result = result


class ModifiedFunctionalError(ArithmeticError):
    """The functional zeta^2 u_alpha is not quasi-definite at some degree."""


class NonvanishingConditionWarning(UserWarning):
    """A product P_n(c) P_{n-1}^{[zeta_1^2]}(c) ... vanishes at a mass point."""


@dataclass(frozen=True)
class ZetaLadder:
    """zeta_0 = 1, zeta_1, ..., zeta_nu = zeta with deg zeta_k = k."""

    factors: tuple[Poly, ...]
    roots: tuple[Scalar, ...]

    @property
    def nu(self) -> int:
        return len(self.factors) - 1

    @property
    def zeta(self) -> Poly:
        return self.factors[-1]


def build_zeta(spec: SobolevSpec) -> ZetaLadder:
    """Minimal annihilator of the derivative-evaluation operator, as a ladder.

    Each distinct location c contributes ``(x - c)^(nu_max(c) + 1)``.  The
    ladder multiplies in one linear factor at a time, locations ascending,
    repeated roots consecutive.
    """
    b = spec.backend
    by_loc = sorted(spec.masses, key=lambda m: m.c)
    roots = []
    for c, group in groupby(by_loc, key=lambda m: m.c):
        roots.extend([c] * (max(m.nu for m in group) + 1))
    factors = [Poly.constant(1, b)]
    for c in roots:
        factors.append(factors[-1] * Poly.linear_root(c, b))
    return ZetaLadder(tuple(factors), tuple(roots))


def zeta_adjoint_check(spec: SobolevSpec, zeta: Poly, f: Poly, g: Poly) -> bool:
    """<zeta f, g> == <u, zeta f g> == <f, zeta g> under the Sobolev product."""
    u = MomentFunctional(spec.alpha)
    left = sobolev_inner(spec, zeta * f, g, u)
    middle = u.apply(zeta * f * g)
    right = sobolev_inner(spec, f, zeta * g, u)
    return left == middle == right


class ModifiedFamily:
    """Polynomials orthogonal with respect to ``modifier * u_alpha``.

    Normalized to the Laguerre leading coefficient (-1)^n / n!.
    """

    def __init__(self, alpha, modifier: Poly):
        self.laguerre = LaguerreFamily(alpha)
        self.alpha = self.laguerre.alpha
        self.modifier = modifier
        self.backend = modifier.backend
        self._u = MomentFunctional(self.alpha)
        self._moments: list[Scalar] = []
        self._cache: dict[int, Poly] = {}
        self._lock = threading.Lock()

    def moment(self, k: int) -> Scalar:
        while len(self._moments) <= k:
            j = len(self._moments)
            self._moments.append(self._u.apply(self.modifier * Poly([0] * j + [1], self.backend)))
        return self._moments[k]

    def poly(self, n: int) -> Poly:
        if n in self._cache:
            return self._cache[n]
        H = [[self.moment(i + k) for k in range(n)] for i in range(n)]
        rhs = [-self.moment(i + n) for i in range(n)]
        try:
            a = linalg.solve(H, rhs)
        except linalg.SingularMatrixError:
            raise ModifiedFunctionalError(
                f"modified functional not quasi-definite at degree {n}") from None
        p = Poly(list(a) + [one(self.backend)], self.backend) * self.laguerre.leading(n)
        with self._lock:
            self._cache[n] = p
        return p


def modified_family(alpha, zeta_j: Poly, n: int) -> Poly:
    """P_n orthogonal with respect to zeta_j^2 u_alpha."""
    return ModifiedFamily(alpha, zeta_j * zeta_j).poly(n)


@dataclass
class ConnectionResult:
    basis_tag: str
    n: int
    coefficients: list
    basis: list[Poly]
    residual: Poly
    target: Poly
    warnings: list[str] = field(default_factory=list)

    def reconstruct(self) -> Poly:
        return dot(self.coefficients, self.basis, self.target.backend)

    @property
    def residual_norm(self) -> Scalar:
        """Largest absolute residual coefficient (zero when the expansion holds)."""
        return max((abs(c) for c in self.residual.coeffs),
                   default=self.residual[0])


def _expand(target: Poly, basis: list[Poly], tag: str, n: int,
            rtol: float = 1e-9) -> ConnectionResult:
    b = target.backend
    rows = [[p[i] for p in basis] for i in range(n + 1)]
    rhs = [target[i] for i in range(n + 1)]
    coeffs = linalg.solve_consistent(rows, rhs)
    result = ConnectionResult(tag, n, coeffs, basis, Poly((), b), target)
    result.residual = target - result.reconstruct()
    if b == EXACT:
        failed = not result.residual.is_zero()
    else:
        scale = max((abs(c) for c in target.coeffs), default=1.0)
        failed = result.residual_norm > rtol * max(scale, 1.0)
    if failed:
        raise FormulaViolationError(
            f"{tag} expansion of S_{n} leaves residual {result.residual!r}", result)
    return result


def connect_laguerre(fam: SobolevFamily, n: int) -> ConnectionResult:
    """Fourier coefficients <u, S_n L_k> / d_k^2 of S_n in the Laguerre basis."""
    S = fam.poly(n)
    lag = fam.laguerre.polys(n)
    coeffs = [fam.functional.apply(S * lag[k]) / fam.laguerre.squared_norm(k)
              for k in range(n + 1)]
    result = ConnectionResult("laguerre", n, coeffs, list(lag), Poly((), fam.backend), S)
    result.residual = S - result.reconstruct()
    if not result.residual.is_zero() and fam.backend == EXACT:
        raise FormulaViolationError(f"Laguerre expansion of S_{n} failed", result)
    return result


def _require_degree(n: int, nu: int):
    if n < nu:
        raise ValueError(f"degree n={n} is below deg(zeta)={nu}")


def connect_zeta(fam: SobolevFamily, n: int) -> ConnectionResult:
    """lambda coefficients of S_n in the basis zeta_j P_{n-j}^{[zeta_j^2]}.

    The nonvanishing condition at the mass points is checked and any failure
    is attached to ``result.warnings`` (and emitted as a warning); the
    residual check alone decides whether the expansion holds.
    """
    ladder = build_zeta(fam.spec)
    _require_degree(n, ladder.nu)
    mods = [ModifiedFamily(fam.spec.alpha, z * z) for z in ladder.factors]
    polys = [mods[j].poly(n - j) for j in range(ladder.nu + 1)]
    basis = [ladder.factors[j] * polys[j] for j in range(ladder.nu + 1)]
    notes = []
    for c in sorted({m.c for m in fam.masses}):
        prod = one(fam.backend)
        for p in polys:
            prod *= p(c)
        if prod == 0:
            notes.append(f"nonvanishing condition fails at c={c} for n={n}")
    for msg in notes:
        warnings.warn(msg, NonvanishingConditionWarning, stacklevel=2)
    result = _expand(fam.poly(n), basis, "zeta", n)
    result.warnings.extend(notes)
    return result


def connect_shifted(fam: SobolevFamily, n: int) -> ConnectionResult:
    """xi coefficients of S_n in the basis L_{n-k}^{alpha+k}, k = 0..nu."""
    nu = build_zeta(fam.spec).nu
    _require_degree(n, nu)
    a = fam.spec.alpha
    basis = [recurrence_polys(a + k, n - k)[n - k] for k in range(nu + 1)]
    return _expand(fam.poly(n), basis, "shifted", n)


def annihilates(spec: SobolevSpec, zeta: Poly, q: Poly) -> bool:
    """True when every component of dvec(zeta * q) vanishes."""
    return all(v == 0 for v in dvec(spec, zeta * q))
