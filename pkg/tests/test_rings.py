from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermiwig.rings import (FLOAT, HALF, I, LAURENT_EPS, RATIONAL, RATIONAL_SQRT2, SQRT2, Exact,
                            Laurent, RingMismatchError, get_ring, sqrt2_power)

small = st.integers(-6, 6)
exacts = st.builds(Exact, small, small, small, small, st.integers(1, 5))


@given(exacts, exacts, exacts)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(exacts)
def test_inverse_and_conjugate(x):
    if not x.is_zero():
        assert x * x.inverse() == 1
    assert x.conj().conj() == x
    assert abs(complex(x * x.conj()).imag) < 1e-12


@given(exacts)
def test_text_roundtrip(x):
    assert Exact.from_text(x.to_text()) == x


def test_sqrt2_and_i():
    assert SQRT2 * SQRT2 == 2
    assert I * I == -1
    assert sqrt2_power(-4) == Exact(1, 0, 0, 0, 4)
    assert sqrt2_power(3) == SQRT2 * 2
    assert HALF * 2 == 1


def test_rational_ring_refuses_sqrt2():
    with pytest.raises(RingMismatchError):
        RATIONAL.coerce(SQRT2)
    assert RATIONAL_SQRT2.coerce(SQRT2) == SQRT2


def test_laurent_arithmetic():
    eps = LAURENT_EPS.symbol
    x = (1 - eps) * (1 + eps)
    assert x == 1 - eps * eps
    assert (eps ** -2) * (eps ** 2) == 1
    assert x.min_order() == 0 and x.max_order() == 2
    assert Laurent.from_text(x.to_text()) == x
    with pytest.raises(RingMismatchError):
        RATIONAL_SQRT2.coerce(eps)


def test_float_ring_tolerance():
    assert FLOAT.is_zero(1e-14)
    assert not FLOAT.is_zero(1e-6)
    assert FLOAT.from_text(FLOAT.to_text(0.1 + 2j)) == 0.1 + 2j


def test_ring_lookup():
    assert get_ring("laurent-eps") is LAURENT_EPS
    with pytest.raises(ValueError):
        get_ring("p-adic")


def test_coerce_fraction():
    assert Exact.coerce(Fraction(-3, 4)) == Exact(-3, 0, 0, 0, 4)
