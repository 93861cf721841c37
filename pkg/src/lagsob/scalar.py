"""Scalar backends.

Two fields are supported: exact rationals (:class:`fractions.Fraction`) and
IEEE doubles (:class:`float`).  Python ints are exact and may be combined with
either backend.  Combining a ``Fraction`` with a ``float`` is rejected instead
of silently degrading to floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

Scalar = Union[Fraction, float]


class BackendMismatchError(TypeError):
    """Raised when exact and floating scalars meet in one computation."""


def backend_of(value) -> str | None:
    """Return the backend tag of ``value``; ``None`` for plain ints."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return None
    if isinstance(value, Fraction):
        return EXACT
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, Rational):
        return EXACT
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def common_backend(values: Iterable, default: str | None = None) -> str | None:
    """Backend shared by ``values``.

    Raises
    ------
    BackendMismatchError
        If both exact and floating values are present.
    """
    found = None
    for v in values:
        b = backend_of(v)
        if b is None:
            continue
        if found is None:
            found = b
        elif b != found:
            raise BackendMismatchError(
                f"cannot mix {found} and {b} scalars")
    return found if found is not None else default


def coerce(value, backend: str) -> Scalar:
    """Convert ``value`` into ``backend`` without crossing backends.

    Ints become ``Fraction`` or ``float``; a ``float`` is never accepted into
    the exact backend and a ``Fraction`` never into the float one.  Use
    :func:`convert` for deliberate conversions.
    """
    b = backend_of(value)
    if b is not None and b != backend:
        raise BackendMismatchError(f"{b} scalar used with {backend} backend")
    if backend == EXACT:
        return Fraction(value)
    if backend == FLOAT:
        return float(value)
    raise ValueError(f"unknown backend {backend!r}")


def convert(value, backend: str) -> Scalar:
    """Explicit cross-backend conversion."""
    if backend == EXACT:
        if isinstance(value, float):
            return Fraction(value)
        return Fraction(value)
    if backend == FLOAT:
        return float(value)
    raise ValueError(f"unknown backend {backend!r}")


def zero(backend: str) -> Scalar:
    return Fraction(0) if backend == EXACT else 0.0


def one(backend: str) -> Scalar:
    return Fraction(1) if backend == EXACT else 1.0


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"``, an integer, or a finite decimal string exactly.

    >>> parse_rational("3/6")
    Fraction(1, 2)
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be given as a string, got {text!r}")
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            p, q = int(num), int(den)
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(p, q)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {text!r}") from None


def format_scalar(value) -> str:
    """Lossless text form: ``"p/q"`` (or ``"p"``) for exact, ``repr`` for float."""
    if isinstance(value, float):
        return repr(value)
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
