"""Classical Laguerre polynomials and the Laguerre moment functional.

The functional is normalized to unit mass, so that

    <u_alpha, x^n> = (alpha + 1)_n      and      <u_alpha, L_n^2> = (alpha + 1)_n / n!.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial

import numpy as np

from .poly import Poly, hyp1f1_truncated, pochhammer
from .scalar import (
    EXACT,
    FLOAT,
    BackendMismatchError,
    Scalar,
    backend_of,
    coerce,
    convert,
    one,
    zero,
)


class DegenerateParameterError(ValueError):
    """alpha is a negative integer; the Laguerre functional is not quasi-definite."""


def is_degenerate(alpha) -> bool:
    return alpha <= -1 and alpha == int(alpha)


def _backend_for(alpha) -> str:
    return backend_of(alpha) or EXACT


def recurrence_polys(alpha, n: int) -> list[Poly]:
    """L_0^alpha, ..., L_n^alpha from the three-term recurrence.

    No quasi-definiteness check: the recurrence yields well-defined
    polynomials for every alpha, which the structure relations need when they
    step alpha down to a negative integer.
    """
    backend = _backend_for(alpha)
    a = coerce(alpha, backend)
    x = Poly.x(backend)
    polys = [Poly.constant(1, backend)]
    if n >= 1:
        polys.append(Poly([a + 1, -1], backend))
    for k in range(1, n):
        nxt = (polys[k] * (Poly.constant(2 * k + 1 + a, backend) - x)
               - polys[k - 1] * (k + a)) / (k + 1)
        polys.append(nxt)
    return polys[: n + 1]


class LaguerreFamily:
    """The sequence L_n^alpha with a lazily grown cache.

    Parameters
    ----------
    alpha : Fraction, int or float
        Laguerre parameter.  A float selects the float backend.
    """

    def __init__(self, alpha):
        if is_degenerate(alpha):
            raise DegenerateParameterError(
                f"alpha={alpha} is a negative integer; u_alpha is not quasi-definite")
        self.backend = _backend_for(alpha)
        self.alpha = coerce(alpha, self.backend)
        self._cache: list[Poly] = []
        self._lock = threading.Lock()

    def __repr__(self):
        return f"LaguerreFamily(alpha={self.alpha!r})"

    def poly(self, n: int) -> Poly:
        """L_n^alpha in the monomial basis."""
        if n < 0:
            raise ValueError("degree must be nonnegative")
        if n < len(self._cache):
            return self._cache[n]
        with self._lock:
            if n >= len(self._cache):
                self._cache = recurrence_polys(self.alpha, max(n, 2 * len(self._cache)))
        return self._cache[n]

    def polys(self, n: int) -> list[Poly]:
        self.poly(n)
        return self._cache[: n + 1]

    def hypergeometric(self, n: int) -> Poly:
        """L_n^alpha as ``(alpha+1)_n / n! * 1F1(-n; alpha+1; x)``."""
        a = self.alpha
        return hyp1f1_truncated(coerce(-n, self.backend), a + 1, n) \
            * (pochhammer(a + 1, n) / factorial(n))

    def leading(self, n: int) -> Scalar:
        """Leading coefficient ``(-1)^n / n!``."""
        lc = Fraction((-1) ** n, factorial(n))
        return lc if self.backend == EXACT else float(lc)

    def squared_norm(self, n: int) -> Scalar:
        return pochhammer(self.alpha + 1, n) / factorial(n)

    def values(self, n: int, x) -> list:
        """[L_0(x), ..., L_n(x)] by running the recurrence on numbers.

        This is the numerically stable evaluation path for the float backend.
        """
        x = coerce(x, self.backend)
        return _recurrence_values(self.alpha, n, x, self.backend)

    def derivative_values(self, n: int, order: int, x) -> list:
        """[L_0^(order)(x), ..., L_n^(order)(x)] via L_k^(v) = (-1)^v L_{k-v}^{alpha+v}."""
        x = coerce(x, self.backend)
        head = [zero(self.backend)] * min(order, n + 1)
        if n < order:
            return head
        shifted = _recurrence_values(self.alpha + order, n - order, x, self.backend)
        sign = -1 if order % 2 else 1
        return head + [sign * v for v in shifted]

    def structure_checks(self, n: int) -> dict[str, bool]:
        """Check the classical Laguerre identities at degree ``n`` exactly.

        Keys: ``recurrence`` (three-term recurrence applied to the
        hypergeometric form), ``hypergeometric``, ``first_structure``,
        ``second_structure``, ``lowering`` and ``raising``.
        """
        a = self.alpha
        b = self.backend
        x = Poly.x(b)
        hyp = [self.hypergeometric(k) for k in range(n + 2)]
        L = self.polys(n + 1)
        down = recurrence_polys(a + 1, n)
        up = recurrence_polys(a - 1, n + 1)
        out = {"hypergeometric": hyp[n] == L[n]}
        if n >= 1:
            rec = (hyp[n + 1] * (n + 1) + hyp[n] * (x - (2 * n + 1 + a))
                   + hyp[n - 1] * (n + a))
            out["recurrence"] = rec.is_zero()
            out["first_structure"] = (
                x * L[n].derivative() == L[n] * n - L[n - 1] * (n + a))
            out["lowering"] = L[n].derivative() == -down[n - 1]
        else:
            out["recurrence"] = hyp[0] == Poly.constant(1, b) \
                and hyp[1] == Poly([a + 1, -1], b)
            out["first_structure"] = L[0].derivative().is_zero()
            out["lowering"] = L[0].derivative().is_zero()
        out["second_structure"] = (
            L[n] == L[n].derivative() - L[n + 1].derivative())
        out["raising"] = (
            x * L[n].derivative() + L[n] * (Poly.constant(a, b) - x)
            == up[n + 1] * (n + 1))
        return out


def _recurrence_values(alpha, n: int, x, backend: str) -> list:
    vals = [one(backend)]
    if n >= 1:
        vals.append(alpha + 1 - x)
    for k in range(1, n):
        vals.append(((2 * k + 1 + alpha - x) * vals[k] - (k + alpha) * vals[k - 1])
                    / (k + 1))
    return vals[: n + 1]


class MomentFunctional:
    """u_alpha normalized to unit mass: moment(n) = (alpha + 1)_n."""

    def __init__(self, alpha):
        self.backend = _backend_for(alpha)
        self.alpha = coerce(alpha, self.backend)
        self._moments: list = [one(self.backend)]

    def moment(self, n: int) -> Scalar:
        while len(self._moments) <= n:
            k = len(self._moments)
            self._moments.append(self._moments[-1] * (self.alpha + k))
        return self._moments[n]

    def apply(self, p: Poly) -> Scalar:
        """<u_alpha, p>."""
        if p.backend != self.backend:
            raise BackendMismatchError(
                f"{p.backend} polynomial under a {self.backend} functional")
        self.moment(p.degree)
        return sum((c * self._moments[k] for k, c in enumerate(p.coeffs)),
                   zero(self.backend))


def gauss_laguerre(alpha: float, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule for the weight ``x^alpha e^{-x} / Gamma(alpha + 1)``.

    Nodes are the eigenvalues of the symmetric Jacobi matrix with diagonal
    ``2k + alpha + 1`` and off-diagonal ``sqrt(k (k + alpha))``, polished by a
    Newton step on L_n.  Weights use the Christoffel-number form
    ``1 / sum_k L_k(x_i)^2 / d_k^2``; unlike squared eigenvector components
    this keeps full relative accuracy for the tiny weights at large nodes.

    Returns
    -------
    nodes, weights : ndarray
        Weights sum to one.
    """
    alpha = float(alpha)
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    if n_nodes < 1:
        raise ValueError("n_nodes must be positive")
    k = np.arange(n_nodes)
    diag = 2.0 * k + alpha + 1.0
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    try:
        from scipy.linalg import eigh_tridiagonal
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"eigen-solver failed: {exc}") from None
    nodes = np.sort(nodes)

    norms = np.ones(n_nodes + 1)
    for j in range(1, n_nodes + 1):
        norms[j] = norms[j - 1] * (alpha + j) / j
    for _ in range(2):
        vals = _value_table(alpha, n_nodes, nodes)
        # x L_n' = n L_n - (n + alpha) L_{n-1}
        dvals = (n_nodes * vals[n_nodes] - (n_nodes + alpha) * vals[n_nodes - 1]) / nodes
        nodes = nodes - vals[n_nodes] / dvals
    vals = _value_table(alpha, n_nodes - 1, nodes)
    weights = 1.0 / np.sum(vals ** 2 / norms[:n_nodes, None], axis=0)
    return nodes, weights


def _value_table(alpha: float, n: int, x: np.ndarray) -> np.ndarray:
    out = np.empty((n + 1, x.size))
    out[0] = 1.0
    if n >= 1:
        out[1] = alpha + 1.0 - x
    for k in range(1, n):
        out[k + 1] = ((2 * k + 1 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1)
    return out


def as_float_family(fam: LaguerreFamily) -> LaguerreFamily:
    return LaguerreFamily(convert(fam.alpha, FLOAT))
