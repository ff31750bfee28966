"""Independent dense oracle for the graded Fock-space rules.

Grassmann generators are modeled as creation operators of extra fermion
modes: they square to zero and anticommute with every ladder operator, so
"coefficient on the left", "parameter moved past a ket" and operator products
all become plain matrix products.  Nothing here uses the engine's sign rules.
"""

from functools import reduce

import numpy as np
import pytest

from fermiwig.bogoliubov import build_bogoliubov
from fermiwig.eigenstates import ket
from fermiwig.fock import CREATE, FockOperator, FockState
from fermiwig.grassmann import REGISTRY, GrassmannElement, ParameterFunction
from fermiwig.modes import ModeSet
from fermiwig.rings import Exact

SIGMA_Z = np.diag([1.0, -1.0])
LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])  # basis (empty, full)


def jordan_wigner(total: int):
    """Annihilators of ``total`` fermion modes as dense matrices."""
    eye = np.eye(2)
    out = []
    for j in range(total):
        factors = [SIGMA_Z] * j + [LOWER] + [eye] * (total - j - 1)
        out.append(reduce(np.kron, factors))
    return out


class Oracle:
    def __init__(self, modes: ModeSet, gens):
        self.modes = modes
        self.gens = list(gens)
        total = modes.size + len(self.gens)
        self.ann = jordan_wigner(total)
        self.dim = 1 << total
        self.vac = np.zeros(self.dim, dtype=complex)
        self.vac[0] = 1.0
        self.slot = {g.id: modes.size + k for k, g in enumerate(self.gens)}

    def cre(self, j):
        return self.ann[j].conj().T

    def element(self, e: GrassmannElement):
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for m, c in e.terms.items():
            mat = np.eye(self.dim, dtype=complex)
            gid = 0
            while m:
                if m & 1:
                    mat = mat @ self.cre(self.slot[gid])
                m >>= 1
                gid += 1
            out += complex(c) * mat
        return out

    def word(self, w):
        mat = np.eye(self.dim, dtype=complex)
        for mode, kind in w:
            mat = mat @ (self.cre(mode) if kind == CREATE else self.ann[mode])
        return mat

    def operator(self, op: FockOperator):
        return sum((self.element(c) @ self.word(w) for c, w in op.terms),
                   np.zeros((self.dim, self.dim), dtype=complex))

    def basis_ket(self, n: int):
        mat = np.eye(self.dim, dtype=complex)
        for i in range(self.modes.size):
            if n >> i & 1:
                mat = mat @ self.cre(i)
        return mat

    def state(self, psi: FockState, right=None):
        """``sum d_n |n> right`` as a vector."""
        tail = np.eye(self.dim) if right is None else self.element(right)
        out = np.zeros(self.dim, dtype=complex)
        for n, d in psi.amps.items():
            out += self.element(d) @ self.basis_ket(n) @ tail @ self.vac
        return out


def _random_element(rng, gens, ring):
    out = GrassmannElement.zero(ring)
    for _ in range(4):
        k = int(rng.integers(0, len(gens) + 1))
        pick = sorted(rng.choice(len(gens), size=k, replace=False)) if k else []
        c = Exact(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
        out = out + GrassmannElement.monomial([gens[i] for i in pick], ring, c)
    return out


@pytest.fixture(scope="module")
def setting():
    modes = ModeSet(1, 2)
    gens = REGISTRY.fresh("ξ", 4, "auxiliary")
    return modes, gens, Oracle(modes, gens)


@pytest.mark.parametrize("seed", range(6))
def test_operator_action_and_right_multiplication(setting, seed):
    modes, gens, oracle = setting
    rng = np.random.default_rng(seed)
    ring = modes.ring
    psi = FockState(modes, {n: _random_element(rng, gens, ring) for n in range(4)}, ring)
    words = [((0, CREATE),), ((1, 0),), ((0, CREATE), (1, CREATE)), ((1, 0), (0, CREATE), (0, 0))]
    op = FockOperator(modes, [(_random_element(rng, gens, ring), w) for w in words], ring)
    lam = _random_element(rng, gens, ring)
    assert np.allclose(oracle.state(op.apply(psi)), oracle.operator(op) @ oracle.state(psi))
    assert np.allclose(oracle.state(psi.rmul(lam)), oracle.state(psi, right=lam))
    assert np.allclose(oracle.state(psi.lmul(lam)), oracle.element(lam) @ oracle.state(psi))


@pytest.mark.parametrize("seed", range(4))
def test_operator_product(setting, seed):
    modes, gens, oracle = setting
    rng = np.random.default_rng(100 + seed)
    ring = modes.ring
    words = [((0, CREATE),), ((1, 0),), ((1, CREATE), (0, 0)), ()]
    X = FockOperator(modes, [(_random_element(rng, gens, ring), w) for w in words], ring)
    Y = FockOperator(modes, [(_random_element(rng, gens, ring), w) for w in words[::-1]], ring)
    assert np.allclose(oracle.operator(X * Y), oracle.operator(X) @ oracle.operator(Y))


def test_eigen_equation_needs_the_graded_sign(setting):
    """g|g_R> = |g_R> g holds in the oracle; sum d_n g |n> without the sign does not."""
    modes, _, _ = setting
    g = ParameterFunction.fresh(modes, "γo")
    oracle = Oracle(modes, g.generators())
    state = ket("g", g, modes)
    b = build_bogoliubov(modes)
    for s in range(modes.size):
        lhs = oracle.operator(b.g[s]) @ oracle.state(state)
        assert np.allclose(lhs, oracle.state(state, right=g[s]))
        ungraded = FockState(modes, {n: d * g[s] for n, d in state.amps.items()}, modes.ring)
        assert not np.allclose(lhs, oracle.state(ungraded))
