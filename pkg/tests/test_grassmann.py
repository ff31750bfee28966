import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermiwig.grassmann import (REGISTRY, GrassmannElement, ParameterFunction, ParityError,
                                berezin_integrate, conjugate, contract, grassmann_delta,
                                grassmann_exp, left_derivative, substitute)
from fermiwig.modes import ModeSet
from fermiwig.overlaps import sifting_sign, verify_sifting
from fermiwig.rings import FLOAT, RATIONAL, RATIONAL_SQRT2, Exact

R = RATIONAL_SQRT2
GENS = REGISTRY.fresh("θ", 5, "auxiliary")
THETA = [GrassmannElement.gen(g, R) for g in GENS]


@st.composite
def elements(draw, max_terms=6):
    out = GrassmannElement.zero(R)
    for _ in range(draw(st.integers(0, max_terms))):
        subset = draw(st.lists(st.sampled_from(range(5)), unique=True, max_size=4))
        c = Exact(draw(st.integers(-4, 4)), draw(st.integers(-2, 2)))
        out = out + GrassmannElement.monomial([GENS[i] for i in subset], R, c)
    return out


@given(elements(), elements(), elements())
@settings(max_examples=60)
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements(), elements())
@settings(max_examples=60)
def test_graded_commutativity(a, b):
    for x in (a.even_part(), a.odd_part()):
        for y in (b.even_part(), b.odd_part()):
            sign = -1 if (x.is_odd() and y.is_odd()) else 1
            if x.is_zero() or y.is_zero():
                continue
            assert x * y == (y * x) * sign


@given(elements(), elements())
@settings(max_examples=60)
def test_conjugate_reverses_products(a, b):
    assert conjugate(a * b) == conjugate(b) * conjugate(a)
    assert conjugate(conjugate(a)) == a


def test_generators_square_to_zero_and_anticommute():
    t1, t2 = THETA[0], THETA[1]
    assert (t1 * t1).is_zero()
    assert t1 * t2 == -(t2 * t1)


def test_exp_of_even_elements_multiplies():
    a = THETA[0] * THETA[1]
    b = THETA[2] * THETA[3] * 3
    assert grassmann_exp(a) * grassmann_exp(b) == grassmann_exp(a + b)
    assert grassmann_exp(a) * grassmann_exp(-a) == GrassmannElement.one(R)


def test_exp_refuses_inexact_scalar_part():
    with pytest.raises(ValueError):
        grassmann_exp(GrassmannElement.one(R) + THETA[0] * THETA[1])
    one = GrassmannElement.one(FLOAT)
    assert abs(grassmann_exp(one).scalar_part() - 2.718281828459045) < 1e-12


def test_berezin_orientation():
    # the last listed variable is integrated first
    t1, t2 = THETA[0], THETA[1]
    assert berezin_integrate(t1 * t2, GENS[:2]) == GrassmannElement.scalar(-1, R)
    assert berezin_integrate(t2 * t1, GENS[:2]) == GrassmannElement.scalar(1, R)
    assert berezin_integrate(THETA[2], GENS[:2]).is_zero()
    assert left_derivative(t1 * t2, GENS[0]) == t2


@pytest.mark.parametrize("M", [1, 2, 3, 4])
def test_top_monomial_integral_sign(M):
    top = grassmann_delta(ParameterFunction(ModeSet(M, 1), THETA[:M]))
    assert berezin_integrate(top, GENS[:M]).scalar_part() == sifting_sign(M)


@pytest.mark.parametrize("M", [1, 2, 3, 4])
def test_delta_sifting(M):
    assert verify_sifting(ModeSet(M, 1, ring=RATIONAL), seed=M).passed


def test_substitution_is_a_morphism():
    a = THETA[0] * THETA[1] + THETA[2]
    b = THETA[0] + THETA[1] * THETA[2] * THETA[3]
    img = {GENS[0]: THETA[3] + THETA[4], GENS[1]: THETA[4] * 2}
    assert substitute(a * b, img) == substitute(a, img) * substitute(b, img)
    with pytest.raises(ParityError):
        substitute(a, {GENS[0]: THETA[1] * THETA[2]})


def test_contractions():
    m = ModeSet(1, 2)
    A = ParameterFunction.fresh(m, "cA")
    B = ParameterFunction.fresh(m, "cB")
    assert contract(A, B) == A[0] * B[0] + A[1] * B[1]
    # eps is the Pauli y matrix: eps_{01} = -i, eps_{10} = i
    assert contract(A, B, "eps") == A[0] * B[1] * Exact(0, -1) + A[1] * B[0] * Exact(0, 1)
    assert contract(A, A, "eps") == A[0] * A[1] * Exact(0, -2)
