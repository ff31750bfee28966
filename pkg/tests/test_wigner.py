import pytest

from fermiwig.bogoliubov import ladder
from fermiwig.fock import FockOperator, operators_equal, trace
from fermiwig.grassmann import GrassmannElement, berezin_integrate, contract, grassmann_exp
from fermiwig.modes import ModeSet
from fermiwig.rings import I, Exact
from fermiwig.samples import random_operator
from fermiwig.wigner import (completeness_constant, measure, operator_trace, phase_space,
                            phase_space_trace, star2, star3, star_prefactor, supertrace,
                            verify_completeness, verify_fourier, verify_quadratures, verify_star,
                            verify_wigner, weyl_transform, wigner_transform)


def test_quadrature_bases(m2, m4):
    for m in (m2, m4):
        rep = verify_quadratures(m)
        assert rep.passed, rep.failures()


def test_completeness_constant(m2, m4):
    assert completeness_constant(m2) == I
    assert completeness_constant(m4) == -1
    for m in (m2, m4):
        assert verify_completeness(m).passed


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fourier_pairs(k):
    rep = verify_fourier(ModeSet(k, 2), seed=k)
    assert rep.passed, rep.failures()


def test_minus_kernel_delta_is_symmetric_for_even_modes(m2):
    q, p = phase_space(m2, "mk")
    plus = berezin_integrate(grassmann_exp(contract(q, p)), q.generators())
    minus = berezin_integrate(grassmann_exp(-contract(q, p)), q.generators())
    assert plus == minus


def test_wigner_of_basic_operators(m2):
    rep = verify_wigner(m2, seed=3)
    assert rep.passed, rep.failures()


def test_ladder_functionals_at_four_modes(m4):
    rep = verify_wigner(m4, seed=1, roundtrip_units=False)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("seed", range(3))
def test_weyl_roundtrip_random(m2, seed):
    X = random_operator(m2, 50 + seed, terms=6)
    assert operators_equal(weyl_transform(wigner_transform(X)), X)


def test_phase_space_integral_is_supertrace(m2):
    X = random_operator(m2, 7, terms=5)
    val = phase_space_trace(wigner_transform(X))
    assert val == GrassmannElement.scalar(supertrace(X).scalar_part(), m2.ring)
    assert operator_trace(X) == trace(X)
    one = FockOperator.identity(m2, m2.ring)
    assert phase_space_trace(wigner_transform(one)).is_zero()
    assert operator_trace(one).scalar_part() == 4


def test_star_products(m2):
    rep = verify_star(m2, seed=2)
    assert rep.passed, rep.failures()


def test_star_prefactors(m2):
    assert star_prefactor(m2, 2) == Exact(1, 0, 0, 0, 16)
    assert star_prefactor(m2, 3) == 1
    with pytest.raises(ValueError):
        star_prefactor(m2, 4)


def test_star_of_ladder_pair(m2):
    a, ad = ladder(m2)
    Wa, Wad = wigner_transform(a[1]), wigner_transform(ad[1])
    assert star2(Wad, Wa).same_as(wigner_transform(ad[1] * a[1]))
    W1 = wigner_transform(FockOperator.identity(m2, m2.ring))
    assert star3(Wa, W1, Wad).same_as(wigner_transform(a[1] * ad[1]))


def test_measure_is_inverse_constant(m2):
    assert measure(m2) * completeness_constant(m2) == 1
