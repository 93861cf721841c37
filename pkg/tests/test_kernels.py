import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagsob import (
    LaguerreFamily,
    MassPoint,
    MomentFunctional,
    Poly,
    kernel_cd,
    kernel_matrix,
    kernel_partial,
    kernel_partial_cd,
    kernel_partial_cd_poly,
    kernel_sum,
    kernel_vector,
    telescoping_identity_check,
)
from lagsob.poly import monomial, taylor_truncate

points = st.builds(F, st.integers(-30, 30), st.integers(1, 7))


def rand_point(rng):
    return F(rng.randint(-40, 40), rng.randint(1, 9))


def test_kernel_sum_examples():
    fam = LaguerreFamily(0)
    assert kernel_sum(fam, 0, F(3), F(-2)) == 1
    assert kernel_sum(fam, 1, 0, 0) == 2


def test_kernel_partial_examples():
    fam = LaguerreFamily(0)
    assert kernel_partial(fam, 1, 1, 0, F(5), 0) == -1
    assert kernel_partial(fam, 4, 0, 0, F(1, 2), 3) == kernel_sum(fam, 4, F(1, 2), 3)
    assert kernel_partial(fam, 2, 3, 1, F(1), F(2)) == 0


@pytest.mark.parametrize("alpha", [F(0), F(1), F(1, 2)])
def test_christoffel_darboux_matches_sum(alpha):
    fam = LaguerreFamily(alpha)
    rng = random.Random(11)
    for n in range(13):
        for _ in range(10):
            x, y = rand_point(rng), rand_point(rng)
            assert kernel_cd(fam, n, x, y) == kernel_sum(fam, n, x, y)
            assert kernel_cd(fam, n, x, x) == kernel_sum(fam, n, x, x)


def test_christoffel_darboux_degree_zero():
    fam = LaguerreFamily(F(5, 2))
    assert kernel_cd(fam, 0, F(1), F(9)) == 1


@settings(max_examples=40, deadline=None)
@given(points, points, st.integers(0, 10), st.integers(0, 3))
def test_closed_form_derivative_matches_oracle(x, y, n, j):
    fam = LaguerreFamily(F(1, 2))
    assert kernel_partial_cd(fam, n, j, x, y) == kernel_partial(fam, n, 0, j, x, y)


def test_closed_form_zero_order_is_christoffel_darboux():
    fam = LaguerreFamily(1)
    assert kernel_partial_cd(fam, 6, 0, F(2), F(-3, 4)) == kernel_cd(fam, 6, F(2), F(-3, 4))


def test_closed_form_division_is_exact():
    # numerator must be divisible by (x - y)^(j + 1)
    fam = LaguerreFamily(F(1, 2))
    y = F(3, 7)
    for n in range(8):
        P0, P1 = fam.poly(n), fam.poly(n + 1)
        for j in range(4):
            numer = P1 * taylor_truncate(P0, y, j) - P0 * taylor_truncate(P1, y, j)
            _, rem = divmod(numer, Poly.linear_root(y) ** (j + 1))
            assert rem.is_zero()


def test_closed_form_polynomial_oracle():
    fam = LaguerreFamily(F(3, 4))
    c = F(-1, 2)
    for n in range(7):
        for j in range(4):
            # oracle polynomial: sum_r L_r(x) L_r^(j)(c) / d_r^2
            expected = Poly(())
            for r in range(n + 1):
                expected = expected + fam.poly(r) * (
                    fam.poly(r).derivative(j)(c) / fam.squared_norm(r))
            assert kernel_partial_cd_poly(fam, n, j, c) == expected


def test_reproducing_property():
    fam = LaguerreFamily(F(1, 3))
    u = MomentFunctional(F(1, 3))
    y = F(5, 4)
    for n in range(11):
        K = kernel_partial_cd_poly(fam, n, 0, y)
        for m in range(n + 1):
            assert u.apply(K * monomial(m)) == y ** m


def test_telescoping_examples():
    fam = LaguerreFamily(0)
    assert telescoping_identity_check(fam, 1, 0, 0)
    assert telescoping_identity_check(fam, 2, 5, F(1, 3))


def test_telescoping_sweep():
    for alpha in (F(0), F(1, 2)):
        fam = LaguerreFamily(alpha)
        for n in range(1, 16):
            for j in range(4):
                for c in (0, 1, -2):
                    assert telescoping_identity_check(fam, n, j, c)


def test_kernel_matrix():
    fam = LaguerreFamily(0)
    km = kernel_matrix(fam, [MassPoint(F(0), 0, F(1))], 0)
    assert km.rows() == [[1]]
    masses = [MassPoint(F(0), 0, F(1)), MassPoint(F(2), 1, F(1, 3)), MassPoint(F(-1), 2, F(1))]
    for n in range(6):
        km = kernel_matrix(fam, masses, n)
        assert km.is_symmetric()
        for i, mi in enumerate(masses):
            for j, mj in enumerate(masses):
                assert km.entries[i][j] == kernel_partial(fam, n, mi.nu, mj.nu, mi.c, mj.c)


def test_kernel_vector_entries():
    fam = LaguerreFamily(1)
    masses = [MassPoint(F(1), 1, F(2))]
    (k,) = kernel_vector(fam, masses, 4)
    for x in (F(0), F(3, 2), F(-5)):
        assert k(x) == kernel_partial(fam, 4, 0, 1, x, F(1))


def test_negative_index_is_zero():
    fam = LaguerreFamily(0)
    assert kernel_partial_cd_poly(fam, -1, 0, F(1)).is_zero()
    assert kernel_cd(fam, -1, F(1), F(2)) == 0


def test_float_kernels():
    fam = LaguerreFamily(0.5)
    assert kernel_cd(fam, 6, 0.3, 2.5) == pytest.approx(kernel_sum(fam, 6, 0.3, 2.5), rel=1e-12)
    assert kernel_partial_cd(fam, 6, 2, 0.3, 2.5) == pytest.approx(
        kernel_partial(fam, 6, 0, 2, 0.3, 2.5), rel=1e-9)
