"""The twelve acceptance criteria, each at its stated scale and tolerance.

Every test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import pytest

from fermiwig.bogoliubov import (verify_bogoliubov_table, verify_car, verify_commutator_table,
                                 verify_exp_conjugations, verify_fermionic_adjoint)
from fermiwig.eigenstates import (majorana_demo, verify_eigen_equations, verify_generic_solution,
                                  verify_wrong_sign)
from fermiwig.modes import ModeSet
from fermiwig.overlaps import (finite_lambda, fourier_delta, h_ode_check, named_overlaps,
                               verify_delta_overlaps, verify_disentanglement,
                               verify_overlap_formula, verify_sifting)
from fermiwig.rings import HALF, Exact
from fermiwig.samples import random_parameter
from fermiwig.wigner import (completeness_constant, verify_completeness, verify_fourier,
                             verify_quadratures, verify_star, verify_wigner)

M2, M4, M6 = ModeSet(1, 2), ModeSet(2, 2), ModeSet(3, 2)
SIGNS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def _ok(report):
    assert report.passed, [(c.id, c.residual, c.detail) for c in report.failures()]
    return report


@pytest.mark.criterion(1, "CAR and Bogoliubov tables at M = 2, 4, 6")
@pytest.mark.parametrize("modes", [M2, M4, M6], ids=["M2", "M4", "M6"])
def test_car_and_bogoliubov_tables(modes):
    for rep in (verify_car(modes), verify_bogoliubov_table(modes)):
        _ok(rep)
        assert all(c.residual == "0" for c in rep.checks)


@pytest.mark.criterion(2, "fermionic adjoint fixes g and h")
@pytest.mark.parametrize("modes", [M2, M4], ids=["M2", "M4"])
def test_fermionic_adjoint(modes):
    _ok(verify_fermionic_adjoint(modes))


@pytest.mark.criterion(3, "fifteen commutator relations, 20 seeds, M = 2, 4")
@pytest.mark.parametrize("modes", [M2, M4], ids=["M2", "M4"])
def test_commutator_relations(modes):
    for seed in range(20):
        A = random_parameter(modes, "Ac", 2 * seed + 1)
        B = random_parameter(modes, "Bc", 2 * seed + 2)
        rep = _ok(verify_commutator_table(modes, A, B))
        assert sum(c.anchor == "bosonized commutator algebra" for c in rep.checks) == 15


@pytest.mark.criterion(4, "exponential conjugations at M = 2")
@pytest.mark.parametrize("c", [Exact(1), HALF, Exact(-2)], ids=["1", "1/2", "-2"])
def test_exp_conjugations(c):
    assert len(_ok(verify_exp_conjugations(M2, c))) == 15


@pytest.mark.criterion(5, "eight eigen-equations and the sign conditions")
@pytest.mark.parametrize("modes", [M2, M4], ids=["M2", "M4"])
def test_eigen_equations(modes):
    assert len(_ok(verify_eigen_equations(modes))) == 8
    _ok(verify_wrong_sign(modes))


@pytest.mark.criterion(5, "eight eigen-equations and the sign conditions")
@pytest.mark.parametrize("params", [(1, -1, 1, -1, 1), (1, 1, 2, 2, 1), (1, 2, 3, -3, -1)])
def test_sign_conditions(params):
    # each check asserts: residual is zero exactly when its condition holds
    _ok(verify_generic_solution(*params, M2))


@pytest.mark.criterion(6, "disentanglement at t = 1/3, 1/2 for all sign pairs")
def test_disentanglement():
    rep = _ok(verify_disentanglement(M2))
    assert len(rep) >= 8


@pytest.mark.criterion(7, "ODE residual below 1e-10 and RK4 gap below 1e-8")
@pytest.mark.parametrize("c1,c2", SIGNS)
def test_ode_suite(c1, c2):
    out = h_ode_check(c1, c2)
    assert out["residual"] < 1e-10
    assert out["rk4_gap"] < 1e-8


@pytest.mark.criterion(8, "overlap formula on 20 seeds and the named overlaps")
def test_overlaps():
    rep = _ok(verify_overlap_formula(M2, seeds=range(20)))
    assert len(rep) >= 20 * len(SIGNS)
    _ok(named_overlaps(M2))
    _ok(named_overlaps(M4))


@pytest.mark.criterion(9, "delta overlaps share one constant and sifting at four modes")
def test_delta_overlaps_and_sifting():
    rep = _ok(verify_delta_overlaps(M2))
    assert rep.notes["lambda_fin"] == finite_lambda(M2).to_text()
    for seed in range(3):
        _ok(verify_sifting(M4, seed=seed))


@pytest.mark.criterion(10, "completeness and Fourier closure up to six modes")
@pytest.mark.parametrize("modes", [M2, M4], ids=["M2", "M4"])
def test_completeness(modes):
    _ok(verify_completeness(modes))
    _ok(fourier_delta(modes))
    assert not completeness_constant(modes).is_zero()


@pytest.mark.criterion(10, "completeness and Fourier closure up to six modes")
@pytest.mark.parametrize("modes", [M2, M4, M6], ids=["M2", "M4", "M6"])
def test_double_fourier(modes):
    _ok(verify_fourier(modes, seed=modes.size))


@pytest.mark.criterion(11, "Wigner layer at M = 2")
def test_wigner_layer():
    _ok(verify_quadratures(M2))
    _ok(verify_wigner(M2, seed=0))
    _ok(verify_star(M2, seed=0))


@pytest.mark.criterion(12, "Majorana pairs, unbiasedness and the obstruction")
def test_majorana():
    res = majorana_demo(2)
    assert all(r == 0 for r in res.eigen_residuals.values())
    assert set(res.unbiasedness.values()) == {HALF}
    assert all(r > 0 for r in res.obstruction_residual.values())
    assert res.passed
