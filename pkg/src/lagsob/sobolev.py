"""Discrete Laguerre-Sobolev inner products and their orthogonal polynomials.

The inner product is

    <f, g> = <u_alpha, f g> + sum_j mu_j f^{(nu_j)}(c_j) g^{(nu_j)}(c_j),

and S_n denotes the degree-n orthogonal polynomial normalized to share its
leading coefficient (-1)^n / n! with L_n^alpha.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable

from . import linalg
from .kernels import kernel_matrix, kernel_vector
from .laguerre import LaguerreFamily, MomentFunctional
from .poly import Poly, dot, monomial
from .scalar import EXACT, Scalar, coerce, common_backend, convert, one, zero


class SobolevExistenceError(ArithmeticError):
    """The Sobolev polynomial of a given degree does not exist."""

    def __init__(self, n: int, determinant, matrix=None):
        super().__init__(
            f"Sobolev polynomial of degree {n} does not exist "
            f"(det(I + D K_{n - 1}) = {determinant})")
        self.n = n
        self.determinant = determinant
        self.matrix = matrix


@dataclass(frozen=True)
class MassPoint:
    """One point-mass term ``mu * f^(nu)(c) g^(nu)(c)``."""

    c: Scalar
    nu: int
    mu: Scalar

    def __post_init__(self):
        if not isinstance(self.nu, int) or self.nu < 0:
            raise ValueError(f"derivative order must be a nonnegative int, got {self.nu!r}")


@dataclass(frozen=True)
class SobolevSpec:
    """alpha plus mass points, kept sequentially ordered by derivative order.

    Masses are sorted by ``(nu, c)``; ``permutation[i]`` is the input index of
    the i-th sorted entry.  Entries sharing both ``c`` and ``nu`` are merged by
    adding their masses (the inner product is unchanged).
    """

    alpha: Scalar
    masses: tuple[MassPoint, ...] = ()
    permutation: tuple[int, ...] = field(default=(), compare=False)
    backend: str = field(default=EXACT, compare=False)

    @classmethod
    def build(cls, alpha, masses: Iterable = (), backend: str | None = None) -> "SobolevSpec":
        raw = [m if isinstance(m, MassPoint) else MassPoint(*m) for m in masses]
        if backend is None:
            backend = common_backend(
                [alpha] + [m.c for m in raw] + [m.mu for m in raw], default=EXACT)
        a = coerce(alpha, backend)
        pts = [MassPoint(coerce(m.c, backend), m.nu, coerce(m.mu, backend)) for m in raw]
        order = sorted(range(len(pts)), key=lambda i: (pts[i].nu, pts[i].c))
        merged: list[MassPoint] = []
        for i in order:
            p = pts[i]
            if merged and merged[-1].c == p.c and merged[-1].nu == p.nu:
                merged[-1] = MassPoint(p.c, p.nu, merged[-1].mu + p.mu)
            else:
                merged.append(p)
        LaguerreFamily(a)  # rejects degenerate alpha
        return cls(a, tuple(merged), tuple(order), backend)

    @property
    def nu_min(self) -> int:
        return min((m.nu for m in self.masses), default=0)

    def to_backend(self, backend: str) -> "SobolevSpec":
        return SobolevSpec.build(
            convert(self.alpha, backend),
            [MassPoint(convert(m.c, backend), m.nu, convert(m.mu, backend))
             for m in self.masses],
            backend)

    def without(self, index: int) -> "SobolevSpec":
        """The spec with mass ``index`` (in sorted order) removed."""
        return SobolevSpec.build(
            self.alpha, [m for i, m in enumerate(self.masses) if i != index], self.backend)


def dvec(spec: SobolevSpec, p: Poly) -> list[Scalar]:
    """(p^{(nu_1)}(c_1), ..., p^{(nu_M)}(c_M))."""
    return [p.derivative(m.nu)(m.c) for m in spec.masses]


def sobolev_inner(spec: SobolevSpec, f: Poly, g: Poly,
                  functional: MomentFunctional | None = None) -> Scalar:
    u = functional or MomentFunctional(spec.alpha)
    value = u.apply(f * g)
    for m, a, b in zip(spec.masses, dvec(spec, f), dvec(spec, g)):
        value += m.mu * a * b
    return value


def gram_schmidt_oracle(spec: SobolevSpec, n: int) -> Poly:
    """S_n from the Gram system of the monomials under the Sobolev product.

    Independent of every kernel formula: solves ``G a = -r`` where
    ``G[i][k] = <x^i, x^k>`` and ``r[i] = <x^n, x^i>`` for ``i, k < n``.
    """
    b = spec.backend
    u = MomentFunctional(spec.alpha)
    monos = [monomial(k, b) for k in range(n + 1)]
    G = [[sobolev_inner(spec, monos[i], monos[k], u) for k in range(n)] for i in range(n)]
    rhs = [-sobolev_inner(spec, monos[n], monos[i], u) for i in range(n)]
    try:
        a = linalg.solve(G, rhs)
    except linalg.SingularMatrixError:
        raise SobolevExistenceError(n, linalg.det(G), G) from None
    monic = Poly(list(a) + [one(b)], b)
    return monic * LaguerreFamily(spec.alpha).leading(n)


@dataclass(frozen=True)
class RegularityRecord:
    n: int
    invertible: bool
    determinant: Scalar


class SobolevFamily:
    """Lazily computed S_0, S_1, ... for one spec.

    Failures at one degree are recorded and re-raised on request but never
    block other degrees.
    """

    def __init__(self, spec: SobolevSpec):
        self.spec = spec
        self.backend = spec.backend
        self.laguerre = LaguerreFamily(spec.alpha)
        self.functional = MomentFunctional(spec.alpha)
        self._cache: dict[int, Poly] = {}
        self._failures: dict[int, SobolevExistenceError] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"SobolevFamily({self.spec!r})"

    @property
    def masses(self) -> tuple[MassPoint, ...]:
        return self.spec.masses

    def system_matrix(self, n: int) -> list[list[Scalar]]:
        """I + D K_{n-1}."""
        K = kernel_matrix(self.laguerre, self.masses, n - 1)
        b = self.backend
        return [[(one(b) if i == j else zero(b)) + mi.mu * K.entries[i][j]
                 for j in range(len(self.masses))]
                for i, mi in enumerate(self.masses)]

    def determinant(self, n: int) -> Scalar:
        return linalg.det(self.system_matrix(n))

    def poly(self, n: int) -> Poly:
        """S_n via the compact matrix connection formula.

        ``S_n = L_n - L_vec^T (I + D K_{n-1})^{-1} D K_{n-1}(x)`` where
        ``L_vec`` is the derivative-evaluation vector of L_n and
        ``K_{n-1}(x)`` the vector of kernel polynomials
        ``x -> K_{n-1}^{(0, nu_j)}(x, c_j)``.

        Raises
        ------
        SobolevExistenceError
            If ``I + D K_{n-1}`` is singular.
        """
        if n in self._cache:
            return self._cache[n]
        if n in self._failures:
            raise self._failures[n]
        try:
            result = self._compact(n)
        except SobolevExistenceError as exc:
            with self._lock:
                self._failures[n] = exc
            raise
        with self._lock:
            self._cache[n] = result
        return result

    def _compact(self, n: int) -> Poly:
        L = self.laguerre.poly(n)
        if n < self.spec.nu_min or not self.masses:
            return L
        A = self.system_matrix(n)
        m = len(A)
        Lvec = dvec(self.spec, L)
        mus = [mp.mu for mp in self.masses]
        # rows of (I + D K)^{-1} D, one column solve at a time
        try:
            cols = [linalg.solve(A, [mus[i] if i == j else zero(self.backend)
                                     for i in range(m)])
                    for j in range(m)]
        except linalg.SingularMatrixError:
            raise SobolevExistenceError(n, linalg.det(A), A) from None
        weights = [sum((Lvec[i] * cols[j][i] for i in range(m)), zero(self.backend))
                   for j in range(m)]
        kvec = kernel_vector(self.laguerre, self.masses, n - 1)
        return L - dot(weights, kvec, self.backend)

    def poly_via_fourier(self, n: int) -> Poly:
        """S_n from its Laguerre-Fourier expansion.

        Solves ``S_vec = L_vec - K_{n-1}^T D S_vec`` for the derivative values
        of S_n at the mass points, then forms
        ``L_n - sum_j mu_j S_n^{(nu_j)}(c_j) K_{n-1}^{(0, nu_j)}(x, c_j)``.
        Kernels here come from the defining sum, not the closed form.
        """
        b = self.backend
        L = self.laguerre.poly(n)
        if n < self.spec.nu_min or not self.masses:
            return L
        lag = self.laguerre.polys(n)
        norms = [self.laguerre.squared_norm(r) for r in range(n)]
        # sum-based kernel polynomials x -> K_{n-1}^{(0, nu)}(x, c)
        kpolys = []
        for mp in self.masses:
            ders = [lag[r].derivative(mp.nu)(mp.c) / norms[r] for r in range(n)]
            kpolys.append(dot(ders, lag[:n], b))
        m = len(self.masses)
        K = [[kpolys[j].derivative(self.masses[i].nu)(self.masses[i].c)
              for j in range(m)] for i in range(m)]
        A = [[(one(b) if i == j else zero(b)) + K[j][i] * self.masses[j].mu
              for j in range(m)] for i in range(m)]
        try:
            svals = linalg.solve(A, dvec(self.spec, L))
        except linalg.SingularMatrixError:
            raise SobolevExistenceError(n, linalg.det(A), A) from None
        return L - dot([mp.mu * s for mp, s in zip(self.masses, svals)], kpolys, b)

    def evaluate(self, n: int, x) -> Scalar:
        """S_n(x) computed pointwise from recurrence values.

        Avoids the monomial basis entirely, which is what keeps the float
        backend accurate for moderate n.
        """
        b = self.backend
        x = coerce(x, b)
        lag = self.laguerre
        Lx = lag.values(n, x)
        if n < self.spec.nu_min or not self.masses:
            return Lx[n]
        norms = [lag.squared_norm(r) for r in range(n)]
        ders = [lag.derivative_values(n, mp.nu, mp.c) for mp in self.masses]
        m = len(self.masses)
        A = [[(one(b) if i == j else zero(b)) + self.masses[j].mu * sum(
                 (ders[i][r] * ders[j][r] / norms[r] for r in range(n)), zero(b))
              for j in range(m)] for i in range(m)]
        try:
            svals = linalg.solve(A, [d[n] for d in ders])
        except linalg.SingularMatrixError:
            raise SobolevExistenceError(n, linalg.det(A), A) from None
        value = Lx[n]
        for j, mp in enumerate(self.masses):
            kx = sum((Lx[r] * ders[j][r] / norms[r] for r in range(n)), zero(b))
            value -= mp.mu * svals[j] * kx
        return value

    def inner(self, f: Poly, g: Poly) -> Scalar:
        return sobolev_inner(self.spec, f, g, self.functional)

    def regularity_report(self, up_to_n: int) -> list[RegularityRecord]:
        """det(I + D K_{n-1}) for n = 0..up_to_n."""
        out = []
        for n in range(up_to_n + 1):
            d = self.determinant(n)
            out.append(RegularityRecord(n, d != 0, d))
        return out
