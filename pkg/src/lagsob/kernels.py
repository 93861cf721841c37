"""Reproducing kernels of the Laguerre family and their partial derivatives.

``K_n(x, y) = sum_{r<=n} L_r(x) L_r(y) / d_r^2``.  The literal sum (and its
term-by-term derivatives) is the reference; the Christoffel-Darboux closed
forms are the fast paths and are expected to agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .laguerre import LaguerreFamily
from .poly import Poly, taylor_truncate
from .scalar import Scalar, coerce, zero


def kernel_sum(fam: LaguerreFamily, n: int, x, y) -> Scalar:
    """K_n(x, y) from its defining sum."""
    return kernel_partial(fam, n, 0, 0, x, y)


def kernel_partial(fam: LaguerreFamily, n: int, j: int, k: int, x, y) -> Scalar:
    """d^{j+k} K_n / dx^j dy^k at (x, y), differentiating the sum term by term."""
    b = fam.backend
    x, y = coerce(x, b), coerce(y, b)
    total = zero(b)
    for r in range(max(j, k), n + 1):
        P = fam.poly(r)
        total += P.derivative(j)(x) * P.derivative(k)(y) / fam.squared_norm(r)
    return total


def _cd_constant(fam: LaguerreFamily, n: int) -> Scalar:
    # k_n / (k_{n+1} d_n^2) with k_m = (-1)^m / m!
    return fam.leading(n) / (fam.leading(n + 1) * fam.squared_norm(n))


def kernel_cd(fam: LaguerreFamily, n: int, x, y) -> Scalar:
    """K_n(x, y) by the Christoffel-Darboux formula.

    For ``x == y`` the confluent form
    ``C (P_{n+1}'(x) P_n(x) - P_n'(x) P_{n+1}(x))`` is used.
    """
    b = fam.backend
    x, y = coerce(x, b), coerce(y, b)
    if n < 0:
        return zero(b)
    P0, P1 = fam.poly(n), fam.poly(n + 1)
    C = _cd_constant(fam, n)
    if x == y:
        return C * (P1.derivative()(x) * P0(x) - P0.derivative()(x) * P1(x))
    return C * (P1(x) * P0(y) - P0(x) * P1(y)) / (x - y)


def kernel_partial_cd_poly(fam: LaguerreFamily, n: int, j: int, y) -> Poly:
    """x -> d^j K_n(x, y) / dy^j as a polynomial in x.

    Built from the closed form

        j! C (P_{n+1}(x) [P_n(x; y)]_j - P_n(x) [P_{n+1}(x; y)]_j) / (x - y)^{j+1}

    where ``[p(x; y)]_j`` is the degree-j Taylor polynomial of p about y.  The
    division by ``(x - y)^{j+1}`` is carried out explicitly and must leave no
    remainder (:class:`~lagsob.poly.DivisionRemainderError` otherwise).
    """
    b = fam.backend
    y = coerce(y, b)
    if n < 0 or j > n:
        return Poly((), b)
    P0, P1 = fam.poly(n), fam.poly(n + 1)
    numer = P1 * taylor_truncate(P0, y, j) - P0 * taylor_truncate(P1, y, j)
    quot = numer.exact_div(Poly.linear_root(y, b) ** (j + 1))
    return quot * (_cd_constant(fam, n) * factorial(j))


def kernel_partial_cd(fam: LaguerreFamily, n: int, j: int, x, y) -> Scalar:
    """d^j K_n(x, y) / dy^j via the Christoffel-Darboux quotient.

    The quotient is a polynomial, so the coincident case ``x == y`` is covered
    by evaluating it at ``y``.
    """
    return kernel_partial_cd_poly(fam, n, j, y)(coerce(x, fam.backend))


def telescoping_identity_check(fam: LaguerreFamily, n: int, j: int, c) -> bool:
    """(P_n^{(j)}(c))^2 / d_n^2 == K_n^{(j,j)}(c, c) - K_{n-1}^{(j,j)}(c, c)."""
    c = coerce(c, fam.backend)
    lhs = fam.poly(n).derivative(j)(c) ** 2 / fam.squared_norm(n)
    rhs = kernel_partial(fam, n, j, j, c, c) - kernel_partial(fam, n - 1, j, j, c, c)
    return lhs == rhs


@dataclass(frozen=True)
class KernelMatrix:
    """entries[i][j] = K_n^{(nu_i, nu_j)}(c_i, c_j) for the masses of a spec."""

    n: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __len__(self):
        return len(self.entries)

    def rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def is_symmetric(self) -> bool:
        m = len(self.entries)
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(m) for j in range(i))


def kernel_vector(fam: LaguerreFamily, masses, n: int) -> list[Poly]:
    """[x -> K_n^{(0, nu_i)}(x, c_i)] for each mass point."""
    return [kernel_partial_cd_poly(fam, n, m.nu, m.c) for m in masses]


def kernel_matrix(fam: LaguerreFamily, masses, n: int) -> KernelMatrix:
    """The matrix of bi-derivative kernel values at the mass points.

    ``masses`` is any sequence of objects with ``c`` and ``nu`` attributes,
    typically ``SobolevSpec.masses``.
    """
    vec = kernel_vector(fam, masses, n)
    entries = tuple(
        tuple(vec[j].derivative(mi.nu)(coerce(mi.c, fam.backend))
              for j in range(len(masses)))
        for mi in masses)
    return KernelMatrix(n, entries)
