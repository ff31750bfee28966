"""Finite-mode fermionic Fock space with Grassmann-valued amplitudes.

Basis kets are ``|n> = a+_{i1} ... a+_{ik} |vac>`` with ``i1 < ... < ik``;
basis bras are their Hermitian adjoints ``<n| = <vac| a_{ik} ... a_{i1}``.
Coefficients always sit to the left.  Grassmann parameters anticommute with
odd ladder words, so a term ``c L`` acting on ``d |n>`` gives
``(-1)^{|L||d|} c d L|n>``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable

from .grassmann import REGISTRY, GrassmannElement, SeriesError
from .modes import ModeSet
from .rings import Ring, RingMismatchError

CREATE, ANNIHILATE = 1, 0


def involute(d: GrassmannElement) -> GrassmannElement:
    """Grade involution: even part minus odd part."""
    if not d.terms:
        return d
    return GrassmannElement({m: (-c if m.bit_count() & 1 else c) for m, c in d.terms.items()},
                            d.ring, _trusted=True)


def _graded(d: GrassmannElement, odd: bool) -> GrassmannElement:
    return involute(d) if odd else d


@lru_cache(maxsize=1 << 16)
def _jw(n: int, i: int) -> int:
    return -1 if (n & ((1 << i) - 1)).bit_count() & 1 else 1


@lru_cache(maxsize=1 << 18)
def word_on_ket(word: tuple, n: int):
    """``(sign, n')`` with ``word |n> = sign |n'>``, or ``None`` for zero."""
    sign = 1
    for mode, kind in reversed(word):
        bit = 1 << mode
        if kind == CREATE:
            if n & bit:
                return None
        elif not n & bit:
            return None
        sign *= _jw(n, mode)
        n ^= bit
    return sign, n


@lru_cache(maxsize=1 << 18)
def word_on_bra(word: tuple, n: int):
    """``(sign, n')`` with ``<n| word = sign <n'|``, or ``None``.

    ``<n| a_j = (a+_j |n>)^+`` and ``<n| a+_j = (a_j |n>)^+``; the Jordan-Wigner
    signs are real, so they carry over unchanged.
    """
    sign = 1
    for mode, kind in word:
        bit = 1 << mode
        if kind == ANNIHILATE:
            if n & bit:
                return None
        elif not n & bit:
            return None
        sign *= _jw(n, mode)
        n ^= bit
    return sign, n


def _word_text(word: tuple, modes: ModeSet = None) -> str:
    parts = []
    for mode, kind in word:
        parts.append(f"a{'+' if kind == CREATE else ''}{mode}")
    return " ".join(parts) if parts else "1"


def ladder_word(*factors) -> tuple:
    """Build a word from ``('c', i)`` / ``('a', i)`` pairs or ``(i, kind)`` tuples."""
    out = []
    for f in factors:
        k, i = f
        if k in ("c", "+", "create", CREATE) and not isinstance(k, bool):
            out.append((int(i), CREATE))
        elif k in ("a", "-", "annihilate", ANNIHILATE):
            out.append((int(i), ANNIHILATE))
        else:
            raise ValueError(f"bad ladder factor {f!r}")
    return tuple(out)


# ------------------------------------------------------------------ states ---

class _Vector:
    __slots__ = ("modes", "amps", "ring")

    def __init__(self, modes: ModeSet, amps: dict = None, ring: Ring = None):
        self.modes = modes
        self.ring = ring or modes.ring
        clean = {}
        for n, d in (amps or {}).items():
            if not isinstance(d, GrassmannElement):
                d = GrassmannElement.scalar(d, self.ring)
            elif d.ring is not self.ring:
                raise RingMismatchError("amplitude ring differs from the state ring")
            if not d.is_zero():
                clean[n] = d
        self.amps = clean

    def _make(self, amps):
        return type(self)(self.modes, amps, self.ring)

    @classmethod
    def vacuum(cls, modes: ModeSet, ring: Ring = None):
        ring = ring or modes.ring
        return cls(modes, {0: GrassmannElement.one(ring)}, ring)

    @classmethod
    def basis(cls, modes: ModeSet, n: int, ring: Ring = None, coeff=None):
        ring = ring or modes.ring
        c = coeff if coeff is not None else GrassmannElement.one(ring)
        return cls(modes, {n: c}, ring)

    @classmethod
    def zero(cls, modes: ModeSet, ring: Ring = None):
        return cls(modes, {}, ring or modes.ring)

    def is_zero(self) -> bool:
        return not self.amps

    def amplitude(self, n: int) -> GrassmannElement:
        return self.amps.get(n, GrassmannElement.zero(self.ring))

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ring is not self.ring:
            raise RingMismatchError("states live in different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.amps)
        for n, d in other.amps.items():
            out[n] = out[n] + d if n in out else d
        return self._make(out)

    def __neg__(self):
        return self._make({n: -d for n, d in self.amps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((n, hash(d)) for n, d in self.amps.items())))

    def max_residual(self) -> float:
        return max((d.max_abs() for d in self.amps.values()), default=0.0)

    def substitute(self, assignment):
        return self._make({n: d.substitute(assignment) for n, d in self.amps.items()})

    def occupation(self, n: int) -> str:
        return "".join("1" if n >> i & 1 else "0" for i in range(self.modes.size))


class FockState(_Vector):
    """Ket ``sum_n d_n |n>``."""

    __slots__ = ()

    def lmul(self, c) -> "FockState":
        """``c |psi>``"""
        c = self._lift(c)
        return self._make({n: c * d for n, d in self.amps.items()})

    def rmul(self, lam) -> "FockState":
        """``|psi> lam``: moving ``lam`` past ``|n>`` costs ``(-1)^{|n||lam|}``."""
        lam = self._lift(lam)
        out = {}
        for n, d in self.amps.items():
            out[n] = d * _graded(lam, n.bit_count() & 1)
        return self._make(out)

    def _lift(self, c):
        if isinstance(c, GrassmannElement):
            return c
        return GrassmannElement.scalar(c, self.ring)

    __rmul__ = lmul

    def __mul__(self, lam):
        return self.rmul(lam)

    def dagger(self) -> "FockBra":
        """``(d|n>)^+ = <n| d* = (-1)^{|n||d|} d* <n|``."""
        out = {}
        for n, d in self.amps.items():
            out[n] = _graded(d.conjugate(), n.bit_count() & 1)
        return FockBra(self.modes, out, self.ring)

    def __repr__(self):
        inner = ", ".join(f"|{self.occupation(n)}>: {d}" for n, d in sorted(self.amps.items()))
        return f"FockState({{{inner}}})"


class FockBra(_Vector):
    """Bra ``sum_n e_n <n|``."""

    __slots__ = ()

    def _lift(self, c):
        if isinstance(c, GrassmannElement):
            return c
        return GrassmannElement.scalar(c, self.ring)

    def lmul(self, lam) -> "FockBra":
        """``lam <psi|``"""
        lam = self._lift(lam)
        return self._make({n: lam * e for n, e in self.amps.items()})

    def rmul(self, c) -> "FockBra":
        """``<psi| c``"""
        c = self._lift(c)
        return self._make({n: e * _graded(c, n.bit_count() & 1) for n, e in self.amps.items()})

    __rmul__ = lmul

    def __mul__(self, c):
        return self.rmul(c)

    def dagger(self) -> FockState:
        out = {}
        for n, e in self.amps.items():
            out[n] = _graded(e.conjugate(), n.bit_count() & 1)
        return FockState(self.modes, out, self.ring)

    def inner(self, ket: FockState) -> GrassmannElement:
        """``<self|ket>``"""
        if ket.ring is not self.ring:
            raise RingMismatchError("bra and ket live in different rings")
        acc = GrassmannElement.zero(self.ring)
        for n, e in self.amps.items():
            d = ket.amps.get(n)
            if d is not None:
                acc = acc + e * _graded(d, n.bit_count() & 1)
        return acc

    def __repr__(self):
        inner = ", ".join(f"<{self.occupation(n)}|: {d}" for n, d in sorted(self.amps.items()))
        return f"FockBra({{{inner}}})"


# --------------------------------------------------------------- operators ---

class LinearOperator:
    """Anything that acts on kets from the left and on bras from the right."""

    modes: ModeSet
    ring: Ring

    def apply(self, state: FockState) -> FockState:
        raise NotImplementedError

    def apply_bra(self, bra: FockBra) -> FockBra:
        raise NotImplementedError

    def __matmul__(self, other):
        if isinstance(other, FockState):
            return self.apply(other)
        if isinstance(other, LinearOperator):
            return Composite([self, other])
        return NotImplemented

    def __rmatmul__(self, bra):
        if isinstance(bra, FockBra):
            return self.apply_bra(bra)
        return NotImplemented


class FockOperator(LinearOperator):
    """Sum of terms ``c * word``; words are kept exactly as written."""

    __slots__ = ("modes", "terms", "ring")

    def __init__(self, modes: ModeSet, terms: Iterable = (), ring: Ring = None):
        self.modes = modes
        self.ring = ring or modes.ring
        merged: dict[tuple, GrassmannElement] = {}
        for c, w in terms:
            if not isinstance(c, GrassmannElement):
                c = GrassmannElement.scalar(c, self.ring)
            elif c.ring is not self.ring:
                raise RingMismatchError("coefficient ring differs from the operator ring")
            for mode, _ in w:
                if not 0 <= mode < modes.size:
                    raise IndexError(f"mode {mode} out of range")
            w = tuple(w)
            merged[w] = merged[w] + c if w in merged else c
        self.terms = [(c, w) for w, c in merged.items() if not c.is_zero()]

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, modes: ModeSet, ring: Ring = None, coeff=1) -> "FockOperator":
        ring = ring or modes.ring
        return cls(modes, [(GrassmannElement.scalar(coeff, ring), ())], ring)

    @classmethod
    def zero(cls, modes: ModeSet, ring: Ring = None) -> "FockOperator":
        return cls(modes, [], ring)

    @classmethod
    def annihilator(cls, modes: ModeSet, i: int, ring: Ring = None) -> "FockOperator":
        ring = ring or modes.ring
        return cls(modes, [(GrassmannElement.one(ring), ((i, ANNIHILATE),))], ring)

    @classmethod
    def creator(cls, modes: ModeSet, i: int, ring: Ring = None) -> "FockOperator":
        ring = ring or modes.ring
        return cls(modes, [(GrassmannElement.one(ring), ((i, CREATE),))], ring)

    @classmethod
    def word(cls, modes: ModeSet, word, coeff=1, ring: Ring = None) -> "FockOperator":
        ring = ring or modes.ring
        if not isinstance(coeff, GrassmannElement):
            coeff = GrassmannElement.scalar(coeff, ring)
        return cls(modes, [(coeff, tuple(word))], ring)

    # -- algebra ------------------------------------------------------
    def _check(self, other: "FockOperator"):
        if other.ring is not self.ring:
            raise RingMismatchError("operators live in different rings")
        if other.modes.size != self.modes.size:
            raise ValueError("operators act on different mode sets")

    def _coerce(self, other) -> "FockOperator":
        if isinstance(other, FockOperator):
            self._check(other)
            return other
        if isinstance(other, GrassmannElement) or not isinstance(other, LinearOperator):
            return FockOperator.identity(self.modes, self.ring, other) \
                if not isinstance(other, GrassmannElement) \
                else FockOperator(self.modes, [(other, ())], self.ring)
        raise TypeError("cannot combine a FockOperator with a black-box operator")

    def __add__(self, other):
        other = self._coerce(other)
        return FockOperator(self.modes, self.terms + other.terms, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return FockOperator(self.modes, [(-c, w) for c, w in self.terms], self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Operator product, or right multiplication by a scalar/Grassmann element."""
        if isinstance(other, FockOperator):
            self._check(other)
            out = []
            for ca, wa in self.terms:
                odd = len(wa) & 1
                for cb, wb in other.terms:
                    out.append((ca * _graded(cb, odd), wa + wb))
            return FockOperator(self.modes, out, self.ring)
        if isinstance(other, LinearOperator):
            return Composite([self, other])
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(other, self.ring)
        return FockOperator(self.modes, [(c * _graded(other, len(w) & 1), w)
                                         for c, w in self.terms], self.ring)

    def __rmul__(self, c):
        """Left multiplication by a scalar or Grassmann element."""
        if not isinstance(c, GrassmannElement):
            c = GrassmannElement.scalar(c, self.ring)
        return FockOperator(self.modes, [(c * d, w) for d, w in self.terms], self.ring)

    def __truediv__(self, c):
        return FockOperator(self.modes, [(d / c, w) for d, w in self.terms], self.ring)

    def __pow__(self, n: int):
        out = FockOperator.identity(self.modes, self.ring)
        for _ in range(n):
            out = out * self
        return out

    def is_zero_terms(self) -> bool:
        return not self.terms

    def parity_sectors(self) -> dict[int, "FockOperator"]:
        out = {0: [], 1: []}
        for c, w in self.terms:
            out[len(w) & 1].append((c, w))
        return {k: FockOperator(self.modes, v, self.ring) for k, v in out.items()}

    def is_grassmann_even(self) -> bool:
        """Total parity (word plus coefficient) is even in every term."""
        for c, w in self.terms:
            p = c.parity()
            if p is None or (p + len(w)) & 1:
                return False
        return True

    # -- action -------------------------------------------------------
    def apply(self, state: FockState) -> FockState:
        if state.ring is not self.ring:
            raise RingMismatchError("operator and state live in different rings")
        out: dict[int, GrassmannElement] = {}
        inv = {}
        for c, w in self.terms:
            odd = len(w) & 1
            for n, d in state.amps.items():
                hit = word_on_ket(w, n)
                if hit is None:
                    continue
                sign, m = hit
                if odd:
                    dd = inv.get(n)
                    if dd is None:
                        dd = inv[n] = involute(d)
                else:
                    dd = d
                v = c * dd
                if sign < 0:
                    v = -v
                out[m] = out[m] + v if m in out else v
        return FockState(self.modes, out, self.ring)

    def apply_bra(self, bra: FockBra) -> FockBra:
        """``<psi| (c L)``: ``c`` moves left past ``<n|`` picking ``(-1)^{|n||c|}``."""
        if bra.ring is not self.ring:
            raise RingMismatchError("operator and bra live in different rings")
        out: dict[int, GrassmannElement] = {}
        for c, w in self.terms:
            ce, co = c.even_part(), c.odd_part()
            for n, e in bra.amps.items():
                hit = word_on_bra(w, n)
                if hit is None:
                    continue
                sign, m = hit
                cc = ce - co if n.bit_count() & 1 else c
                v = e * cc
                if sign < 0:
                    v = -v
                out[m] = out[m] + v if m in out else v
        return FockBra(self.modes, out, self.ring)

    # -- adjoints -----------------------------------------------------
    def dagger(self) -> "FockOperator":
        """Hermitian adjoint: reverse words, swap kinds, conjugate coefficients."""
        out = []
        for c, w in self.terms:
            wd = tuple((mode, 1 - kind) for mode, kind in reversed(w))
            out.append((_graded(c.conjugate(), len(w) & 1), wd))
        return FockOperator(self.modes, out, self.ring)

    def fermionic_adjoint(self) -> "FockOperator":
        return fermionic_adjoint(self)

    def substitute(self, assignment) -> "FockOperator":
        return FockOperator(self.modes, [(c.substitute(assignment), w) for c, w in self.terms],
                            self.ring)

    def __repr__(self):
        if not self.terms:
            return "FockOperator(0)"
        return "FockOperator(" + " + ".join(f"[{c}] {_word_text(w)}" for c, w in self.terms) + ")"


def fermionic_adjoint(op: FockOperator) -> FockOperator:
    """Antilinear anti-automorphism ``a_s -> eps_{s,r} a+_r``, ``a+_s -> -eps_{s,r} a_r``."""
    modes, ring = op.modes, op.ring
    images = {}
    for i in range(modes.size):
        ann, cre = [], []
        for j, e in modes.partners(i):
            ann.append((GrassmannElement.scalar(e, ring), ((j, CREATE),)))
            cre.append((GrassmannElement.scalar(-e, ring), ((j, ANNIHILATE),)))
        images[(i, ANNIHILATE)] = FockOperator(modes, ann, ring)
        images[(i, CREATE)] = FockOperator(modes, cre, ring)
    out = FockOperator.zero(modes, ring)
    for c, w in op.terms:
        prod = FockOperator.identity(modes, ring)
        for f in reversed(w):
            prod = prod * images[f]
        out = out + prod * c.conjugate()
    return out


def ket_fermionic_adjoint(state: FockState) -> FockBra:
    """``(d a+... |vac>)^‡ = <vac| (a+...)^‡ d*``."""
    modes, ring = state.modes, state.ring
    out = FockBra.zero(modes, ring)
    vac = FockBra.vacuum(modes, ring)
    for n, d in state.amps.items():
        w = tuple((i, CREATE) for i in range(modes.size) if n >> i & 1)
        wop = fermionic_adjoint(FockOperator.word(modes, w, 1, ring))
        out = out + wop.apply_bra(vac).rmul(d.conjugate())
    return out


def bra_fermionic_adjoint(bra: FockBra) -> FockState:
    """``(e <vac| a...)^‡ = (a...)^‡ |vac> e*``."""
    modes, ring = bra.modes, bra.ring
    out = FockState.zero(modes, ring)
    vac = FockState.vacuum(modes, ring)
    for n, e in bra.amps.items():
        w = tuple((i, ANNIHILATE) for i in reversed(range(modes.size)) if n >> i & 1)
        wop = fermionic_adjoint(FockOperator.word(modes, w, 1, ring))
        out = out + wop.apply(vac).rmul(e.conjugate())
    return out


class Composite(LinearOperator):
    """Product ``X1 X2 ... Xn`` of black-box operators."""

    def __init__(self, factors):
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Composite) else [f])
        self.factors = flat
        self.modes = flat[0].modes
        self.ring = flat[0].ring

    def apply(self, state):
        for f in reversed(self.factors):
            state = f.apply(state)
        return state

    def apply_bra(self, bra):
        for f in self.factors:
            bra = f.apply_bra(bra)
        return bra


class ScaledSum(LinearOperator):
    """``sum_k c_k X_k`` with scalar/Grassmann-even left coefficients."""

    def __init__(self, parts):
        self.parts = [(c, x) for c, x in parts]
        self.modes = self.parts[0][1].modes
        self.ring = self.parts[0][1].ring

    def _lift(self, c):
        return c if isinstance(c, GrassmannElement) else GrassmannElement.scalar(c, self.ring)

    def apply(self, state):
        out = FockState.zero(self.modes, self.ring)
        for c, x in self.parts:
            out = out + x.apply(state).lmul(self._lift(c))
        return out

    def apply_bra(self, bra):
        out = FockBra.zero(self.modes, self.ring)
        for c, x in self.parts:
            c = self._lift(c)
            if not c.is_even():
                raise ValueError("black-box sums need even coefficients")
            out = out + x.apply_bra(bra).lmul(c)
        return out


class Diagonal(LinearOperator):
    """Occupation-number diagonal operator ``|n> -> f(n) |n>`` with even scalar ``f``."""

    def __init__(self, modes: ModeSet, fn: Callable[[int], object], ring: Ring = None):
        self.modes = modes
        self.ring = ring or modes.ring
        self.fn = fn
        self._cache: dict[int, GrassmannElement] = {}

    def factor(self, n: int) -> GrassmannElement:
        f = self._cache.get(n)
        if f is None:
            v = self.fn(n)
            f = v if isinstance(v, GrassmannElement) else GrassmannElement.scalar(v, self.ring)
            self._cache[n] = f
        return f

    def apply(self, state):
        return FockState(self.modes, {n: self.factor(n) * d for n, d in state.amps.items()},
                         self.ring)

    def apply_bra(self, bra):
        return FockBra(self.modes, {n: self.factor(n) * e for n, e in bra.amps.items()},
                       self.ring)


class Exponential(LinearOperator):
    """``exp(X)`` for a FockOperator whose series terminates on every state."""

    def __init__(self, op: FockOperator, cap: int = None):
        self.op = op
        self.modes = op.modes
        self.ring = op.ring
        self.cap = cap

    def apply(self, state):
        return op_exp_apply(self.op, state, "right", self.cap)

    def apply_bra(self, bra):
        return op_exp_apply(self.op, bra, "left", self.cap)


def _series_cap(modes: ModeSet, vec) -> int:
    gens = 0
    for d in vec.amps.values():
        gens |= d.support
    return 2 * modes.size + gens.bit_count() + 4


def op_exp_apply(op: FockOperator, state, direction: str = "right", cap: int = None):
    """``exp(op)|state>`` (direction right) or ``<state|exp(op)`` (direction left)."""
    if direction == "right":
        step = op.apply
    elif direction == "left":
        step = op.apply_bra
    else:
        raise ValueError("direction must be 'left' or 'right'")
    if cap is None:
        gens = 0
        for c, _ in op.terms:
            gens |= c.support
        cap = _series_cap(op.modes, state) + gens.bit_count()
    result = state
    term = state
    n = 0
    while True:
        n += 1
        term = step(term)
        if term.is_zero():
            return result
        if n > cap:
            raise SeriesError("operator exponential failed to terminate")
        term = type(term)(term.modes, {k: v / n for k, v in term.amps.items()}, term.ring)
        result = result + term


def vac_expect(op: LinearOperator) -> GrassmannElement:
    out = op.apply(FockState.vacuum(op.modes, op.ring))
    return out.amplitude(0)


def anticommutator(A: FockOperator, B: FockOperator) -> FockOperator:
    return A * B + B * A


def commutator(A: FockOperator, B: FockOperator) -> FockOperator:
    return A * B - B * A


def basis_words(modes: ModeSet, n: int) -> tuple:
    return tuple((i, CREATE) for i in range(modes.size) if n >> i & 1)


def operator_difference(X: LinearOperator, Y: LinearOperator, probe_odd: bool = True) -> float:
    """Largest residual amplitude of ``X - Y`` over all basis kets and bras.

    With ``probe_odd`` every basis vector is also tried with a fresh odd
    Grassmann coefficient, which separates the two parity sectors of
    black-box maps.
    """
    modes, ring = X.modes, X.ring
    coeffs = [GrassmannElement.one(ring)]
    if probe_odd:
        theta = REGISTRY.lookup("probe[θ]", "auxiliary")
        coeffs.append(GrassmannElement.gen(theta, ring))
    worst = 0.0
    for n in range(1 << modes.size):
        for c in coeffs:
            ket = FockState.basis(modes, n, ring, c)
            worst = max(worst, (X.apply(ket) - Y.apply(ket)).max_residual())
            bra = FockBra.basis(modes, n, ring, c)
            worst = max(worst, (X.apply_bra(bra) - Y.apply_bra(bra)).max_residual())
    return worst


def operators_equal(X: LinearOperator, Y: LinearOperator, probe_odd: bool = True) -> bool:
    if X.ring.exact:
        modes, ring = X.modes, X.ring
        coeffs = [GrassmannElement.one(ring)]
        if probe_odd:
            theta = REGISTRY.lookup("probe[θ]", "auxiliary")
            coeffs.append(GrassmannElement.gen(theta, ring))
        for n in range(1 << modes.size):
            for c in coeffs:
                ket = FockState.basis(modes, n, ring, c)
                if X.apply(ket) != Y.apply(ket):
                    return False
                bra = FockBra.basis(modes, n, ring, c)
                if X.apply_bra(bra) != Y.apply_bra(bra):
                    return False
        return True
    return operator_difference(X, Y, probe_odd) < 1e-10


def residual_operator(X: FockOperator, Y: FockOperator) -> FockOperator:
    """``X - Y`` collected on the basis: the matrix-unit expansion of the difference."""
    return matrix_units_operator(X - Y)


def matrix_unit(modes: ModeSet, m: int, n: int, ring: Ring = None) -> FockOperator:
    """``|m><n|`` as a ladder expression: ``a+^m (prod_i a_i a+_i) (a^n reversed)``."""
    ring = ring or modes.ring
    cre = tuple((i, CREATE) for i in range(modes.size) if m >> i & 1)
    proj = tuple(f for i in range(modes.size) for f in ((i, ANNIHILATE), (i, CREATE)))
    ann = tuple((i, ANNIHILATE) for i in reversed(range(modes.size)) if n >> i & 1)
    return FockOperator(modes, [(GrassmannElement.one(ring), cre + proj + ann)], ring)


def matrix_elements(X: LinearOperator) -> dict[tuple[int, int], GrassmannElement]:
    """``X = sum c_{mn} |m><n|`` with left coefficients; read off from ``X|n>``."""
    modes, ring = X.modes, X.ring
    out = {}
    for n in range(1 << modes.size):
        img = X.apply(FockState.basis(modes, n, ring))
        for m, d in img.amps.items():
            out[(m, n)] = d
    return out


def matrix_units_operator(X: LinearOperator) -> FockOperator:
    """Rewrite ``X`` as a FockOperator over matrix-unit words."""
    modes, ring = X.modes, X.ring
    terms = []
    for (m, n), c in matrix_elements(X).items():
        for cc, w in matrix_unit(modes, m, n, ring).terms:
            terms.append((c * cc, w))
    return FockOperator(modes, terms, ring)


def trace(X: LinearOperator) -> GrassmannElement:
    """Ordinary trace ``sum_n <n|X|n>`` (coefficient of ``|n><n|``)."""
    ring = X.ring
    acc = GrassmannElement.zero(ring)
    for (m, n), c in matrix_elements(X).items():
        if m == n:
            acc = acc + c
    return acc


def to_matrix(X: LinearOperator):
    """Dense complex matrix of an operator with scalar coefficients."""
    import numpy as np

    dim = 1 << X.modes.size
    mat = np.zeros((dim, dim), dtype=complex)
    for (m, n), c in matrix_elements(X).items():
        if set(c.terms) - {0}:
            raise ValueError("operator has Grassmann-valued matrix elements")
        mat[m, n] = complex(c.scalar_part())
    return mat
