"""Finite mode sets: k-points times spin, with the spin pairing matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import Exact, RATIONAL_SQRT2, Ring

MAX_MODES = 12


class ModeSetError(ValueError):
    pass


def pauli_y() -> tuple[tuple[Exact, ...], ...]:
    z, i = Exact(0), Exact(0, 1)
    return ((z, -i), (i, z))


def check_epsilon(eps) -> None:
    """Antisymmetric, purely imaginary (eps* = -eps) and squaring to the identity."""
    n = len(eps)
    for r in range(n):
        if len(eps[r]) != n:
            raise ModeSetError("spin matrix is not square")
    for r in range(n):
        for s in range(n):
            if eps[r][s] != -eps[s][r]:
                raise ModeSetError("spin matrix is not antisymmetric")
            if eps[r][s].conj() != -eps[r][s]:
                raise ModeSetError("spin matrix does not satisfy eps* = -eps")
            sq = sum((eps[r][t] * eps[t][s] for t in range(n)), Exact(0))
            if sq != (1 if r == s else 0):
                raise ModeSetError("spin matrix does not square to the identity")


@dataclass(frozen=True)
class ModeSet:
    """``k_points`` x ``spins`` fermion modes; mode index is ``k * spins + s``.

    ``weights`` are the per-k measure cells.  ``epsilon`` defaults to the
    Pauli y matrix for two spins; a single spin carries no pairing.
    """

    k_points: int
    spins: int = 2
    weights: tuple = None
    epsilon: tuple = None
    ring: Ring = field(default=RATIONAL_SQRT2, compare=False)

    def __post_init__(self):
        if self.k_points < 1 or self.spins < 1:
            raise ModeSetError("need at least one k-point and one spin")
        if self.k_points * self.spins > MAX_MODES:
            raise ModeSetError(f"k_points*spins exceeds the memory guard of {MAX_MODES} modes")
        if self.weights is None:
            object.__setattr__(self, "weights", tuple(Exact(1) for _ in range(self.k_points)))
        else:
            w = tuple(Exact.coerce(x) for x in self.weights)
            if len(w) != self.k_points:
                raise ModeSetError("one weight per k-point is required")
            for x in w:
                if x.has_sqrt2() or x.b != 0 or x.a <= 0:
                    raise ModeSetError("weights must be positive rationals")
            object.__setattr__(self, "weights", w)
        eps = self.epsilon
        if eps is None and self.spins == 2:
            eps = pauli_y()
        if eps is not None:
            eps = tuple(tuple(Exact.coerce(x) for x in row) for row in eps)
            if len(eps) != self.spins:
                raise ModeSetError("spin matrix size differs from the spin count")
            check_epsilon(eps)
        elif self.spins != 1:
            raise ModeSetError(f"no valid spin pairing known for {self.spins} spins; "
                               "supply a custom epsilon")
        object.__setattr__(self, "epsilon", eps)

    @property
    def size(self) -> int:
        return self.k_points * self.spins

    M = size

    @property
    def omega(self) -> int:
        return self.size

    @property
    def has_pairing(self) -> bool:
        return self.epsilon is not None

    def index(self, k: int, s: int) -> int:
        return k * self.spins + s

    def split(self, i: int) -> tuple[int, int]:
        return divmod(i, self.spins)

    def weight(self, i: int) -> Exact:
        return self.weights[i // self.spins]

    def unit_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    def eps(self, i: int, j: int) -> Exact:
        """Pairing between modes ``i`` and ``j``: eps_{s,r} if they share a k-point."""
        if self.epsilon is None:
            raise ModeSetError("this mode set has no spin pairing")
        ki, si = self.split(i)
        kj, sj = self.split(j)
        if ki != kj:
            return Exact(0)
        return self.epsilon[si][sj]

    def partners(self, i: int):
        """Modes j at the same k-point with nonzero eps(i, j)."""
        k, _ = self.split(i)
        for r in range(self.spins):
            j = self.index(k, r)
            e = self.eps(i, j)
            if not e.is_zero():
                yield j, e

    def label(self, i: int) -> str:
        k, s = self.split(i)
        if self.spins == 2:
            return f"{k + 1},{'↑↓'[s]}"
        if self.spins == 1:
            return f"{k + 1}"
        return f"{k + 1},{s + 1}"

    def with_ring(self, ring: Ring) -> "ModeSet":
        return ModeSet(self.k_points, self.spins, self.weights, self.epsilon, ring)
