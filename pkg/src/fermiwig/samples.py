"""Reproducible random Grassmann inputs for the verification suites."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .grassmann import GrassmannElement, ParameterFunction
from .modes import ModeSet
from .rings import Exact, Ring


def _coeff(rng: np.random.Generator) -> Exact:
    re, im = rng.integers(-3, 4, size=2)
    return Exact(int(re), int(im), 0, 0, int(rng.integers(1, 4)))


def random_parameter(modes: ModeSet, name: str, seed: int, ring: Ring = None) -> ParameterFunction:
    """One fresh generator per mode, scaled by a random nonzero Gaussian rational."""
    ring = ring or modes.ring
    rng = np.random.default_rng(seed)
    coeffs = []
    for _ in range(modes.size):
        c = _coeff(rng)
        while c.is_zero():
            c = _coeff(rng)
        coeffs.append(c)
    return ParameterFunction.fresh(modes, name, ring, coeffs=coeffs)


def random_functional(gens, seed: int, ring: Ring, max_grade: int = None) -> GrassmannElement:
    """Random element spanned by all monomials in ``gens`` up to ``max_grade``."""
    rng = np.random.default_rng(seed)
    top = len(gens) if max_grade is None else max_grade
    out = GrassmannElement.zero(ring)
    for k in range(top + 1):
        for combo in combinations(gens, k):
            out = out + GrassmannElement.monomial(combo, ring, _coeff(rng))
    return out


def random_operator(modes: ModeSet, seed: int, ring: Ring = None, terms: int = 4,
                    parity: int = None):
    """Sum of a few matrix units with Gaussian-rational coefficients.

    ``parity`` 0 or 1 restricts to fermion-parity even or odd units.
    """
    from .fock import FockOperator, matrix_unit

    ring = ring or modes.ring
    rng = np.random.default_rng(seed)
    dim = 1 << modes.size
    out = FockOperator.zero(modes, ring)
    placed = 0
    while placed < terms:
        m, n = (int(v) for v in rng.integers(0, dim, size=2))
        if parity is not None and (m.bit_count() + n.bit_count()) % 2 != parity:
            continue
        c = _coeff(rng)
        if c.is_zero():
            continue
        out = out + matrix_unit(modes, m, n, ring) * c
        placed += 1
    return out
