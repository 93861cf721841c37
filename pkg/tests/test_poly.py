from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagsob.poly import (
    DivisionRemainderError,
    Poly,
    hyp1f1_truncated,
    monomial,
    pochhammer,
    taylor_truncate,
)
from lagsob.scalar import (
    EXACT,
    FLOAT,
    BackendMismatchError,
    format_scalar,
    parse_rational,
)

rationals = st.builds(F, st.integers(-50, 50), st.integers(1, 30))
polys = st.lists(rationals, max_size=11).map(Poly)


def P(*cs):
    return Poly([F(c) for c in cs])


@pytest.mark.parametrize("a, n, expected", [
    (F(7, 3), 0, 1),
    (2, 3, 24),
    (-1, 3, 0),
    (F(1, 2), 2, F(3, 4)),
])
def test_pochhammer(a, n, expected):
    assert pochhammer(a, n) == expected


@given(rationals, st.integers(0, 30))
def test_pochhammer_step(a, n):
    assert pochhammer(a, n + 1) == pochhammer(a, n) * (a + n)


def test_taylor_truncate_examples():
    assert taylor_truncate(P(0, 0, 1), 1, 1) == P(-1, 2)
    p = P(3, -1, 4, 1)
    assert taylor_truncate(p, F(5, 2), 0) == Poly.constant(p(F(5, 2)))
    assert taylor_truncate(p, 7, 3) == p


@settings(max_examples=60)
@given(polys, rationals, st.integers(0, 4))
def test_taylor_truncate_full_order_is_identity(p, c, extra):
    assert taylor_truncate(p, c, max(p.degree, 0) + extra) == p


@given(polys, rationals, st.integers(0, 5))
def test_taylor_truncate_matches_derivative_sum(p, c, order):
    # oracle: sum_k p^(k)(c)/k! (x - c)^k built from derivatives directly
    from math import factorial
    expected = Poly(())
    for k in range(order + 1):
        expected = expected + Poly.linear_root(c) ** k * (p.derivative(k)(c) / factorial(k))
    assert taylor_truncate(p, c, order) == expected


def test_hyp1f1_truncated_examples():
    assert hyp1f1_truncated(0, F(3, 7), 5) == P(1)
    assert hyp1f1_truncated(-1, 2, 1) == P(1, F(-1, 2))
    assert hyp1f1_truncated(-2, 1, 2) == P(1, -2, F(1, 2))
    # terminating series: extra terms vanish
    assert hyp1f1_truncated(-2, 1, 6) == P(1, -2, F(1, 2))


def test_hyp1f1_rejects_vanishing_denominator():
    with pytest.raises(ZeroDivisionError):
        hyp1f1_truncated(1, -1, 3)
    # (b)_k with k <= terms is fine when the zero only appears beyond
    assert hyp1f1_truncated(1, -1, 1) == P(1, -1)


def test_poly_basics():
    x3 = monomial(3)
    assert x3.derivative() == P(0, 0, 3)
    assert x3.derivative(0) is x3
    assert P(-1, 0, 1)(2) == 3
    q, r = divmod(P(-1, 0, 1), P(-1, 1))
    assert q == P(1, 1) and r.is_zero()
    assert P(-1, 0, 1).exact_div(P(-1, 1)) == P(1, 1)
    with pytest.raises(DivisionRemainderError):
        P(1, 0, 1).exact_div(P(-1, 1))


def test_canonical_form():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).coeffs == ()
    assert Poly(()).degree == -1
    assert all(type(c) is F for c in Poly([1, 2]).coeffs)


def test_backend_mixing_rejected():
    with pytest.raises(BackendMismatchError):
        Poly([F(1, 2), 0.5])
    with pytest.raises(BackendMismatchError):
        Poly([F(1, 2)]) + Poly([0.5])
    with pytest.raises(BackendMismatchError):
        Poly([F(1, 2)]) * 0.5
    with pytest.raises(BackendMismatchError):
        Poly([1.0, 2.0])(F(1, 3))


@given(polys, polys, rationals)
def test_eval_is_multiplicative(p, q, x):
    assert (p * q)(x) == p(x) * q(x)


@given(polys, polys)
def test_degree_of_product(p, q):
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree == p.degree + q.degree


@given(polys, polys)
def test_divmod_reconstructs(p, q):
    if q.is_zero():
        return
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


big = st.builds(F, st.integers(-10**6, 10**6), st.integers(1, 40))


@settings(max_examples=80)
@given(st.lists(big, min_size=1, max_size=8), st.lists(big, min_size=1, max_size=8))
def test_float_backend_matches_exact(a, b):
    pe, qe = Poly(a), Poly(b)
    pf, qf = pe.to_backend(FLOAT), qe.to_backend(FLOAT)
    exact, approx = pe * qe, pf * qf
    assert approx.backend == FLOAT
    for k in range(len(a) + len(b) - 1):
        # relative to the magnitude of the summands, so cancellation is not penalized
        scale = sum(abs(float(pe[i] * qe[k - i])) for i in range(k + 1))
        assert abs(float(exact[k]) - approx[k]) <= 1e-12 * scale


def test_pochhammer_float():
    assert pochhammer(2.0, 3) == 24.0


@pytest.mark.parametrize("text, value", [
    ("3/6", F(1, 2)), ("-4", F(-4)), (" 7/1 ", F(7)), ("0.25", F(1, 4)), (5, F(5)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "", "a/b", "1/2/3", "x"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(rationals)
def test_format_roundtrip(q):
    assert parse_rational(format_scalar(q)) == q
    assert format_scalar(parse_rational(format_scalar(q))) == format_scalar(q)


def test_backend_tags():
    assert Poly([1]).backend == EXACT
    assert Poly([1.0]).backend == FLOAT
    assert Poly((), FLOAT).backend == FLOAT
