import math

import pytest

from fermiwig.grassmann import (GrassmannElement, ParameterFunction, berezin_integrate, contract,
                                grassmann_delta, grassmann_exp)
from fermiwig.overlaps import (SingularityError, discarded_phase, finite_lambda, fourier_delta,
                               h_closed_form, h_ode_check, named_overlaps, overlap_analytic,
                               overlap_direct, regularized_delta, laurent_table,
                               verify_delta_overlaps, verify_disentanglement,
                               verify_overlap_formula, verify_sifting)
from fermiwig.rings import HALF, I, Exact, sqrt2_power

QUARTER = Exact(1, 0, 0, 0, 4)


def test_h_values_at_unit_time():
    h = h_closed_form(1, 1, 1)
    for name in ("h1", "h2", "h3", "h5", "h6", "h7"):
        assert getattr(h, name) == HALF
    assert h.h0 == (HALF, QUARTER, QUARTER)
    assert math.isclose(h.h4, -math.log(2))


def test_h_values_vanish_at_zero():
    for c1 in (1, -1):
        for c2 in (1, -1):
            h = h_closed_form(c1, c2, 0)
            assert all(getattr(h, n) == 0 for n in ("h1", "h2", "h3", "h5", "h6", "h7"))
            assert h.h4_base == 1


def test_h_values_opposite_signs():
    h = h_closed_form(1, -1, Exact(1, 0, 0, 0, 2))
    assert h.h1 == Exact(2, 0, 0, 0, 3)
    assert math.isclose(h.h4, -math.log(0.75))
    with pytest.raises(SingularityError):
        h_closed_form(1, -1, 1)


@pytest.mark.parametrize("c1,c2", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_ode_residual_and_rk4(c1, c2):
    out = h_ode_check(c1, c2)
    assert out["residual"] < 1e-10
    assert out["rk4_gap"] < 1e-8


def test_ode_check_detects_a_perturbation():
    assert h_ode_check(1, 1, perturb={"h1": 0.01})["residual"] > 1e-3


def test_zero_parameter_overlaps(m2, m4):
    for m in (m2, m4):
        zero = ParameterFunction(m, [GrassmannElement.zero(m.ring)] * m.size)
        # the vacuum factor is (1 + c1 c2 t^2)^(+Omega/2)
        expect = sqrt2_power(m.omega)
        assert overlap_direct(1, 1, zero, zero, 1, m).scalar_part() == expect
        assert overlap_analytic(1, 1, zero, zero, 1).scalar_part() == expect
        assert overlap_direct(1, -1, zero, zero, 1, m).is_zero()
        assert overlap_direct(1, 1, zero, zero, 0, m) == GrassmannElement.one(m.ring)


def test_unit_time_exponent(m2):
    A = ParameterFunction.fresh(m2, "uA")
    B = ParameterFunction.fresh(m2, "uB")
    As = A.conj()
    expo = contract(As, B) * HALF + (contract(B, B, "eps") + contract(As, As, "eps")) * QUARTER
    val = overlap_analytic(1, 1, A, B, 1)
    assert val == grassmann_exp(expo) * 2
    assert val == overlap_direct(1, 1, A, B, 1, m2)


def test_disentanglement_identity(m2):
    rep = verify_disentanglement(m2)
    assert len(rep) == 9 and rep.passed, rep.failures()


def test_overlap_formula_random_seeds(m2):
    rep = verify_overlap_formula(m2, seeds=range(3))
    assert rep.passed


def test_named_overlaps(m2, m4):
    for m in (m2, m4):
        rep = named_overlaps(m)
        assert rep.passed, rep.failures()
    assert named_overlaps(m2).notes["lambda_fin"] == (-I).to_text()


def test_finite_lambda_values(m2, m4):
    assert finite_lambda(m2) == -I
    assert finite_lambda(m4) == -1
    assert discarded_phase(2) == -I and discarded_phase(4) == -1


def test_regularized_delta_leading_order(m2):
    f = ParameterFunction.fresh(m2, "rf")
    table = laurent_table(regularized_delta(f))
    assert min(table) == -m2.omega
    assert table[-m2.omega] == grassmann_delta(f) * discarded_phase(2)


def test_delta_overlaps_in_laurent_ring(m2):
    rep = verify_delta_overlaps(m2)
    assert len(rep) == 24 and rep.passed, rep.failures()


def test_delta_of_zero_argument_vanishes(m2):
    zero = ParameterFunction(m2, [GrassmannElement.zero(m2.ring)] * m2.size)
    assert grassmann_delta(zero).is_zero()


def test_sifting_on_four_modes(m4):
    for seed in range(3):
        assert verify_sifting(m4, seed=seed).passed


def test_fourier_delta_constant(m2, m4):
    for m in (m2, m4):
        rep = fourier_delta(m)
        assert rep.passed and rep.notes["fourier_constant"] == Exact(1).to_text()
    q = ParameterFunction.fresh(m2, "fq", kind="phase-q")
    p = ParameterFunction.fresh(m2, "fp", kind="phase-p")
    val = berezin_integrate(grassmann_exp(contract(q, p)), q.generators())
    assert val == grassmann_delta(p)
