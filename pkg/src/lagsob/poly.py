"""Dense univariate polynomials in the monomial basis.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial has an empty coefficient tuple.  Every polynomial carries the
backend of its coefficients (see :mod:`lagsob.scalar`).
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Sequence

from .scalar import (
    EXACT,
    FLOAT,
    BackendMismatchError,
    Scalar,
    backend_of,
    coerce,
    common_backend,
    convert,
    one,
    zero,
)


class DivisionRemainderError(ArithmeticError):
    """An exact division that the mathematics guarantees left a remainder."""


class Poly:
    """Immutable polynomial ``sum(coeffs[k] * x**k)``."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable = (), backend: str | None = None):
        raw = list(coeffs)
        if backend is None:
            backend = common_backend(raw, default=EXACT)
        if backend not in (EXACT, FLOAT):
            raise ValueError(f"unknown backend {backend!r}")
        cs = [coerce(c, backend) for c in raw]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers

    @classmethod
    def constant(cls, c, backend: str | None = None) -> "Poly":
        return cls([c], backend)

    @classmethod
    def x(cls, backend: str = EXACT) -> "Poly":
        return cls([0, 1], backend)

    @classmethod
    def linear_root(cls, c, backend: str | None = None) -> "Poly":
        """The monic factor ``x - c``."""
        return cls([-c, 1], backend)

    def to_backend(self, backend: str) -> "Poly":
        return Poly([convert(c, backend) for c in self.coeffs], backend)

    # basic queries

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else zero(self.backend)

    def __getitem__(self, k: int) -> Scalar:
        if k < 0:
            raise IndexError(k)
        return self.coeffs[k] if k < len(self.coeffs) else zero(self.backend)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.backend == other.backend and self.coeffs == other.coeffs
        if backend_of_safe(other) or isinstance(other, int):
            return self.coeffs == ((other,) if other != 0 else ())
        return NotImplemented

    def __hash__(self):
        return hash((self.backend, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, backend={self.backend!r})"

    # arithmetic

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.backend != self.backend:
                raise BackendMismatchError(
                    f"cannot combine {self.backend} and {other.backend} polynomials")
            return other
        return Poly([coerce(other, self.backend)], self.backend)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)], self.backend)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.backend)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = coerce(other, self.backend)
            return Poly([s * c for c in self.coeffs], self.backend)
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return Poly((), self.backend)
        out = [zero(self.backend)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.backend)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(1, self.backend)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            return self.exact_div(scalar)
        s = coerce(scalar, self.backend)
        return Poly([c / s for c in self.coeffs], self.backend)

    def __divmod__(self, other: "Poly"):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.leading
        if len(rem) - 1 < dd:
            return Poly((), self.backend), self
        quot = [zero(self.backend)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q == 0:
                continue
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= q * b
        # the eliminated top entries are exactly zero on the exact backend
        rem = rem[:dd]
        return Poly(quot, self.backend), Poly(rem, self.backend)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly", rtol: float = 1e-9) -> "Poly":
        """Quotient of a division expected to be exact.

        On the exact backend any nonzero remainder raises
        :class:`DivisionRemainderError`.  On the float backend the remainder
        must be small relative to the dividend's largest coefficient.
        """
        q, r = divmod(self, other)
        if self.backend == EXACT:
            if not r.is_zero():
                raise DivisionRemainderError(f"nonzero remainder {r!r}")
        elif not r.is_zero():
            scale = max((abs(c) for c in self.coeffs), default=0.0)
            if max(abs(c) for c in r.coeffs) > rtol * max(scale, 1.0):
                raise DivisionRemainderError(f"remainder too large: {r!r}")
        return q

    # calculus and evaluation

    def __call__(self, x):
        x = coerce(x, self.backend)
        acc = zero(self.backend)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("negative derivative order")
        if order == 0:
            return self
        cs = self.coeffs
        return Poly(
            [cs[k] * (factorial(k) // factorial(k - order))
             for k in range(order, len(cs))],
            self.backend)

    def shift(self, c) -> "Poly":
        """Return ``p(x + c)``; coefficient ``k`` equals ``p^(k)(c) / k!``."""
        c = coerce(c, self.backend)
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division (Horner's Taylor shift)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                cs[k] += c * cs[k + 1]
        return Poly(cs, self.backend)


def backend_of_safe(value) -> bool:
    try:
        return backend_of(value) is not None
    except TypeError:
        return False


def monomial(k: int, backend: str = EXACT) -> Poly:
    return Poly([0] * k + [1], backend)


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; ``1`` for ``n == 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = backend_of(a) or EXACT
    result = one(b)
    for k in range(n):
        result *= a + k
    return result


def taylor_truncate(p: Poly, c, order: int) -> Poly:
    """Degree-``order`` Taylor polynomial of ``p`` about ``c``, in the monomial basis."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = coerce(c, p.backend)
    taylor = p.shift(c).coeffs[: order + 1]
    # evaluate sum t_k (x - c)^k by Horner in the variable (x - c)
    base = Poly.linear_root(c, p.backend)
    out = Poly((), p.backend)
    for t in reversed(taylor):
        out = out * base + t
    return out


def hyp1f1_truncated(a, b, terms: int) -> Poly:
    """Partial sum ``sum_{k<=terms} (a)_k / ((b)_k k!) x^k`` of 1F1(a; b; x).

    Raises
    ------
    ZeroDivisionError
        If ``(b)_k`` vanishes for some ``k <= terms``.
    """
    if terms < 0:
        raise ValueError("terms must be nonnegative")
    backend = common_backend([a, b], default=EXACT)
    a, b = coerce(a, backend), coerce(b, backend)
    coeffs = []
    term = one(backend)
    for k in range(terms + 1):
        coeffs.append(term)
        if b + k == 0:
            if k < terms:
                raise ZeroDivisionError(
                    f"(b)_{k + 1} vanishes for b={b}; series undefined")
            break
        term = term * (a + k) / ((b + k) * (k + 1))
    return Poly(coeffs, backend)


def dot(values: Sequence, polys: Sequence[Poly], backend: str) -> Poly:
    """Linear combination ``sum(values[i] * polys[i])``."""
    out = Poly((), backend)
    for v, p in zip(values, polys):
        if v != 0:
            out = out + p * v
    return out
