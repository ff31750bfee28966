import pytest

from fermiwig.bogoliubov import (BosonizedFamily, majorana_anticommutator, verify_bogoliubov_table,
                                 verify_car, verify_commutator_table, verify_exp_conjugations,
                                 verify_fermionic_adjoint)
from fermiwig.fock import FockOperator, commutator, operators_equal
from fermiwig.grassmann import ParameterFunction
from fermiwig.modes import ModeSet
from fermiwig.rings import Exact
from fermiwig.samples import random_parameter


@pytest.mark.parametrize("k", [1, 2])
def test_car_and_bogoliubov_tables(k):
    m = ModeSet(k, 2)
    assert verify_car(m).passed
    assert verify_bogoliubov_table(m).passed
    assert verify_fermionic_adjoint(m).passed


def test_table_detects_a_wrong_right_hand_side(m2):
    from fermiwig.bogoliubov import build_bogoliubov
    from fermiwig.fock import anticommutator
    b = build_bogoliubov(m2)
    one = FockOperator.identity(m2, m2.ring)
    # {g_0, h_1} is i eps_01 = 1, not -1
    assert operators_equal(anticommutator(b.g[0], b.h[1]), one)
    assert not operators_equal(anticommutator(b.g[0], b.h[1]), -one)


def test_commutator_table_on_random_parameters(m2):
    for seed in range(3):
        A = random_parameter(m2, "tA", 10 + seed)
        B = random_parameter(m2, "tB", 20 + seed)
        assert verify_commutator_table(m2, A, B).passed


def test_bosonized_operators_commute_but_majoranas_do_not(m2):
    A = ParameterFunction.fresh(m2, "bA")
    B = ParameterFunction.fresh(m2, "bB")
    FA, FB = BosonizedFamily(m2, A), BosonizedFamily(m2, B)
    zero = FockOperator.zero(m2, m2.ring)
    assert operators_equal(commutator(FA.Ahat, FB.Ahat), zero)
    one = FockOperator.identity(m2, m2.ring)
    assert operators_equal(majorana_anticommutator(m2, 0), one)


@pytest.mark.parametrize("c", [Exact(1), Exact(1, 0, 0, 0, 2), Exact(-2)])
def test_exponential_conjugations(m2, c):
    rep = verify_exp_conjugations(m2, c)
    assert len(rep) == 15
    assert rep.passed, rep.failures()


def test_fock_builders_reject_weights():
    from fermiwig.bogoliubov import build_bogoliubov
    m = ModeSet(2, 2, weights=(1, 2))
    with pytest.raises(ValueError):
        build_bogoliubov(m)
