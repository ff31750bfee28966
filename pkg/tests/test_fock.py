import pytest

from fermiwig.fock import (CREATE, FockBra, FockOperator, FockState, fermionic_adjoint,
                           matrix_elements, matrix_unit, operators_equal, to_matrix, trace)
from fermiwig.grassmann import GrassmannElement, ParameterFunction
from fermiwig.modes import ModeSet, ModeSetError
from fermiwig.rings import Exact
from fermiwig.samples import random_operator


def test_basis_kets_follow_ascending_creation_order(m4):
    ring = m4.ring
    vac = FockState.vacuum(m4, ring)
    op = FockOperator(m4, [(1, ((2, CREATE), (0, CREATE)))], ring)
    # a+2 a+0 |vac> = -a+0 a+2 |vac>
    assert op.apply(vac) == FockState.basis(m4, 0b0101, ring).lmul(-1)


def test_bra_ket_pairing(m4):
    ring = m4.ring
    for n in range(16):
        for k in range(16):
            v = FockBra.basis(m4, n, ring).inner(FockState.basis(m4, k, ring))
            assert v.scalar_part() == (1 if n == k else 0)


def test_matrix_units_and_trace(m2):
    ring = m2.ring
    u = matrix_unit(m2, 1, 2, ring)
    assert matrix_elements(u) == {(1, 2): GrassmannElement.one(ring)}
    assert trace(matrix_unit(m2, 3, 3, ring) * 5).scalar_part() == 5
    assert trace(u).is_zero()


def test_dense_matrix_of_number_operator(m2):
    ring = m2.ring
    n0 = FockOperator(m2, [(1, ((0, CREATE), (0, 0)))], ring)
    mat = to_matrix(n0)
    assert [mat[i, i].real for i in range(4)] == [0, 1, 0, 1]


@pytest.mark.parametrize("seed", range(5))
def test_fermionic_adjoint_is_involutive(m2, seed):
    X = random_operator(m2, seed)
    assert operators_equal(fermionic_adjoint(fermionic_adjoint(X)), X)


def test_hermitian_adjoint_of_states(m2):
    ring = m2.ring
    x = ParameterFunction.fresh(m2, "hx")
    psi = FockState(m2, {0: GrassmannElement.one(ring), 1: x[0], 3: x[0] * x[1] * Exact(0, 2)}, ring)
    assert psi.dagger().dagger() == psi
    norm = psi.dagger().inner(psi)
    assert norm.conjugate() == norm


def test_mode_guards():
    with pytest.raises(ModeSetError):
        ModeSet(7, 2)
    with pytest.raises(ModeSetError):
        ModeSet(1, 3)
    with pytest.raises(ModeSetError):
        ModeSet(2, 2, weights=(1,))
    m = ModeSet(2, 1)
    assert not m.has_pairing
    with pytest.raises(ModeSetError):
        m.eps(0, 1)


def test_custom_epsilon_for_four_spins():
    i = Exact(0, 1)
    z = Exact(0)
    eps = ((z, -i, z, z), (i, z, z, z), (z, z, z, -i), (z, z, i, z))
    m = ModeSet(1, 4, epsilon=eps)
    assert m.eps(0, 1) == -i and m.eps(2, 3) == -i and m.eps(0, 2) == 0
    with pytest.raises(ModeSetError):
        ModeSet(1, 2, epsilon=((z, i), (i, z)))
