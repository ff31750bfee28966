import pytest

import fermiwig.eigenstates as eig
from fermiwig.bogoliubov import build_bogoliubov
from fermiwig.eigenstates import (KINDS, EigenstateSpec, eigen_residual, majorana_demo,
                                  normalization, render_eigenstate, spin_transform_relations,
                                  verify_adjoint_relations, verify_eigen_equations,
                                  verify_generic_solution, verify_wrong_sign)
from fermiwig.fock import FockState
from fermiwig.grassmann import ParameterFunction
from fermiwig.modes import ModeSet
from fermiwig.overlaps import named_overlaps
from fermiwig.rings import HALF, sqrt2_power


@pytest.mark.parametrize("k", [1, 2])
def test_all_eight_eigen_equations(k):
    rep = verify_eigen_equations(ModeSet(k, 2))
    assert len(rep) == 8 and rep.passed, rep.failures()


def test_flipped_rendering_sign_fails(m2):
    assert verify_wrong_sign(m2).passed


def test_ungraded_right_multiplication_breaks_eigen_equations(m2):
    g = ParameterFunction.fresh(m2, "γu")
    state = render_eigenstate(EigenstateSpec("g", "right", g), m2)
    b = build_bogoliubov(m2)
    for s in range(m2.size):
        assert eigen_residual(b.g[s], state, g[s]).is_zero()
        naive = b.g[s].apply(state) - FockState(
            m2, {n: d * g[s] for n, d in state.amps.items()}, m2.ring)
        assert not naive.is_zero()


def test_adjoint_and_spin_relations(m2):
    assert verify_adjoint_relations(m2).passed
    assert spin_transform_relations(m2).passed


@pytest.mark.parametrize("params", [(1, -1, 1, -1, 1), (1, 1, 2, 2, 1), (1, 2, 3, -3, -1),
                                    (2, -2, 1, -1, 1)])
def test_sign_conditions_are_necessary_and_sufficient(m2, params):
    rep = verify_generic_solution(*params, m2)
    assert rep.passed, rep.failures()
    # at least one condition is violated in every case but the last, so both branches are hit
    assert {c.detail for c in rep.checks} <= {"condition met", "condition violated"}


def test_normalization_choice_is_forced(m2, monkeypatch):
    assert normalization(m2) == sqrt2_power(-1)
    assert named_overlaps(m2).passed
    monkeypatch.setattr(eig, "normalization", lambda modes: sqrt2_power(modes.omega // 2))
    rep = named_overlaps(m2)
    common = [c for c in rep.checks if "common-sign" in c.anchor]
    assert common and not any(c.passed for c in common)


def test_majorana_pairs_and_obstruction():
    res = majorana_demo(2)
    assert res.passed
    assert set(res.obstruction_residual) == {1, -1}
    assert all(v == HALF for v in res.unbiasedness.values())


def test_unknown_kind_rejected(m2):
    with pytest.raises(ValueError):
        EigenstateSpec("x", "right", ParameterFunction.fresh(m2, "bad"))
    assert KINDS == ("g", "gbar", "h", "hbar")
