"""Bogoliubov pairs g, h, the fermionic adjoint and the bosonized operator algebra."""

from __future__ import annotations

from dataclasses import dataclass

from .fock import (ANNIHILATE, CREATE, Composite, Diagonal, Exponential, FockOperator,
                   anticommutator, commutator, fermionic_adjoint, matrix_units_operator,
                   operators_equal)
from .grassmann import GrassmannElement, ParameterFunction, contract
from .modes import ModeSet, ModeSetError
from .report import Report, timed
from .rings import HALF, I, LAURENT_U, SQRT2, Exact, Ring

INV_SQRT2 = SQRT2.inverse()


def _require_unit_weights(modes: ModeSet):
    if not modes.unit_weights():
        raise ModeSetError("Fock-space operators are built for unit weights only")


def ladder(modes: ModeSet, ring: Ring = None):
    """Lists ``a[i]``, ``ad[i]`` of annihilators and creators."""
    ring = ring or modes.ring
    a = [FockOperator.annihilator(modes, i, ring) for i in range(modes.size)]
    ad = [FockOperator.creator(modes, i, ring) for i in range(modes.size)]
    return a, ad


def _eps_sum(modes: ModeSet, i: int, ops, ring: Ring) -> FockOperator:
    """``eps_{i,r} ops[r]``"""
    out = FockOperator.zero(modes, ring)
    for j, e in modes.partners(i):
        out = out + GrassmannElement.scalar(e, ring) * ops[j]
    return out


@dataclass
class BogoliubovSet:
    modes: ModeSet
    g: list
    h: list
    gd: list
    hd: list


def build_bogoliubov(modes: ModeSet, ring: Ring = None) -> BogoliubovSet:
    """``g = (a + eps a+)/sqrt2`` and ``h = i (a - eps a+)/sqrt2``."""
    _require_unit_weights(modes)
    if not modes.has_pairing:
        raise ModeSetError("Bogoliubov operators need a spin pairing")
    ring = ring or modes.ring
    a, ad = ladder(modes, ring)
    g, h = [], []
    for i in range(modes.size):
        ea = _eps_sum(modes, i, ad, ring)
        g.append((a[i] + ea) * INV_SQRT2)
        h.append((a[i] - ea) * (I * INV_SQRT2))
    return BogoliubovSet(modes, g, h, [x.dagger() for x in g], [x.dagger() for x in h])


class BosonizedFamily:
    """The Grassmann-even operators built from a spectral function ``A``.

    ``A`` is the unstarred function; the annihilation-type operators use its
    conjugate.  Every operator is stored with its coefficient on the left,
    so ``A+ = sum a+_s A_s = -sum A_s a+_s``.
    """

    def __init__(self, modes: ModeSet, A: ParameterFunction = None, ring: Ring = None):
        _require_unit_weights(modes)
        self.modes = modes
        self.ring = ring or (A.ring if A is not None else modes.ring)
        self.A = A if A is not None else ParameterFunction.zeros(modes, self.ring)
        self.Astar = self.A.conj()
        self._a, self._ad = ladder(modes, self.ring)

    @classmethod
    def from_star(cls, modes: ModeSet, Astar: ParameterFunction) -> "BosonizedFamily":
        fam = cls(modes, Astar.conj())
        fam.Astar = Astar
        return fam

    def _sum(self, pairs) -> FockOperator:
        return FockOperator(self.modes, pairs, self.ring)

    @property
    def Ahat(self) -> FockOperator:
        """``A*◇a``"""
        return self._sum((self.Astar[i], ((i, ANNIHILATE),)) for i in range(self.modes.size))

    @property
    def Adag(self) -> FockOperator:
        """``a+◇A``"""
        return self._sum((-self.A[i], ((i, CREATE),)) for i in range(self.modes.size))

    @property
    def Aeps(self) -> FockOperator:
        """``A f◇ a = sum A_s eps_{s,r} a_r``"""
        terms = []
        for s in range(self.modes.size):
            for r, e in self.modes.partners(s):
                terms.append((self.A[s] * e, ((r, ANNIHILATE),)))
        return self._sum(terms)

    @property
    def Aeps_dag(self) -> FockOperator:
        """``a+ f◇ A* = sum a+_r eps_{r,s} A*_s``"""
        terms = []
        for r in range(self.modes.size):
            for s, e in self.modes.partners(r):
                terms.append((-(self.Astar[s] * e), ((r, CREATE),)))
        return self._sum(terms)

    @property
    def R(self) -> FockOperator:
        return pair_annihilator(self.modes, self.ring)

    @property
    def Rdag(self) -> FockOperator:
        return pair_creator(self.modes, self.ring)

    @property
    def s(self) -> FockOperator:
        return symmetrized_number(self.modes, self.ring)


def pair_annihilator(modes: ModeSet, ring: Ring = None) -> FockOperator:
    """``R = 1/2 a f◇ a``"""
    ring = ring or modes.ring
    terms = []
    for s in range(modes.size):
        for r, e in modes.partners(s):
            terms.append((GrassmannElement.scalar(e * HALF, ring), ((s, ANNIHILATE), (r, ANNIHILATE))))
    return FockOperator(modes, terms, ring)


def pair_creator(modes: ModeSet, ring: Ring = None) -> FockOperator:
    """``R+ = 1/2 a+ f◇ a+``"""
    ring = ring or modes.ring
    terms = []
    for s in range(modes.size):
        for r, e in modes.partners(s):
            terms.append((GrassmannElement.scalar(e * HALF, ring), ((s, CREATE), (r, CREATE))))
    return FockOperator(modes, terms, ring)


def symmetrized_number(modes: ModeSet, ring: Ring = None) -> FockOperator:
    """``s = a+◇a - Omega/2``"""
    ring = ring or modes.ring
    terms = [(GrassmannElement.one(ring), ((i, CREATE), (i, ANNIHILATE))) for i in range(modes.size)]
    terms.append((GrassmannElement.scalar(Exact(-modes.omega, 0, 0, 0, 2), ring), ()))
    return FockOperator(modes, terms, ring)


def exp_s(modes: ModeSet, weight, ring: Ring = None) -> Diagonal:
    """``exp(K s)`` given ``w = e^K`` as ``|n> -> w^(n - Omega/2)``.

    With an odd mode count ``w`` must be supplied as a square root ``u`` via
    :func:`exp_s_half`.
    """
    if modes.omega % 2:
        raise ValueError("odd Omega: use exp_s_half with u = e^(K/2)")
    half = modes.omega // 2
    return Diagonal(modes, lambda n: weight ** (n.bit_count() - half), ring)


def exp_s_half(modes: ModeSet, u, ring: Ring = None) -> Diagonal:
    """``exp(K s)`` from ``u = e^(K/2)``: ``|n> -> u^(2n - Omega)``."""
    return Diagonal(modes, lambda n: u ** (2 * n.bit_count() - modes.omega), ring)


# ----------------------------------------------------------- verification ---

def _compare(X, Y) -> tuple[bool, str]:
    if operators_equal(X, Y):
        return True, "0"
    try:
        res = matrix_units_operator(Composite([X]) if not hasattr(X, "terms") else X)
        resid = matrix_units_operator(res - Y) if isinstance(Y, FockOperator) else res
        return False, repr(resid)[:400]
    except Exception:  # black-box operands: report only the fact
        return False, "nonzero"


def verify_car(modes: ModeSet, ring: Ring = None) -> Report:
    """CAR table of the ladder operators, all pairs of modes."""
    ring = ring or modes.ring
    rep = Report("car")
    a, ad = ladder(modes, ring)
    one = FockOperator.identity(modes, ring)
    zero = FockOperator.zero(modes, ring)
    for i in range(modes.size):
        for j in range(modes.size):
            for name, X, Y, rhs in (
                ("{a,a+}", a[i], ad[j], one if i == j else zero),
                ("{a,a}", a[i], a[j], zero),
                ("{a+,a+}", ad[i], ad[j], zero),
            ):
                ok, res = _compare(anticommutator(X, Y), rhs)
                rep.add(f"{name}[{i},{j}]", "CAR, discretized with unit weights", ok, res)
    return rep


def verify_bogoliubov_table(modes: ModeSet, ring: Ring = None) -> Report:
    ring = ring or modes.ring
    b = build_bogoliubov(modes, ring)
    rep = Report("bogoliubov")
    one = FockOperator.identity(modes, ring)
    zero = FockOperator.zero(modes, ring)
    M = modes.size
    for r in range(M):
        # adjoint relations
        ok, res = _compare(b.gd[r], _eps_sum(modes, r, b.h, ring) * I)
        rep.add(f"g+[{r}] = i eps h", "Hermitian adjoint of g", ok, res)
        ok, res = _compare(b.hd[r], _eps_sum(modes, r, b.g, ring) * (-I))
        rep.add(f"h+[{r}] = -i eps g", "Hermitian adjoint of h", ok, res)
        for s in range(M):
            delta = one if r == s else zero
            eps = GrassmannElement.scalar(modes.eps(r, s) * I, ring) * one
            table = (
                ("{g,g}", b.g[r], b.g[s], zero),
                ("{g+,g+}", b.gd[r], b.gd[s], zero),
                ("{h,h}", b.h[r], b.h[s], zero),
                ("{h+,h+}", b.hd[r], b.hd[s], zero),
                ("{g,h}", b.g[r], b.h[s], eps),
                ("{g+,h+}", b.gd[r], b.hd[s], eps),
                ("{g,g+}", b.g[r], b.gd[s], delta),
                ("{h,h+}", b.h[r], b.hd[s], delta),
                ("{g,h+}", b.g[r], b.hd[s], zero),
                ("{h,g+}", b.h[r], b.gd[s], zero),
            )
            for name, X, Y, rhs in table:
                ok, res = _compare(anticommutator(X, Y), rhs)
                rep.add(f"{name}[{r},{s}]", "Bogoliubov anticommutator table", ok, res)
    return rep


def verify_fermionic_adjoint(modes: ModeSet, ring: Ring = None) -> Report:
    ring = ring or modes.ring
    b = build_bogoliubov(modes, ring)
    a, ad = ladder(modes, ring)
    rep = Report("fermionic-adjoint")
    for s in range(modes.size):
        ok, res = _compare(fermionic_adjoint(a[s]), _eps_sum(modes, s, ad, ring))
        rep.add(f"a[{s}]‡ = eps a+", "definition of the fermionic adjoint", ok, res)
        ok, res = _compare(fermionic_adjoint(b.g[s]), b.g[s])
        rep.add(f"g[{s}]‡ = g", "g is fermionic self-adjoint", ok, res)
        ok, res = _compare(fermionic_adjoint(b.h[s]), b.h[s])
        rep.add(f"h[{s}]‡ = h", "h is fermionic self-adjoint", ok, res)
        ok, res = _compare(fermionic_adjoint(fermionic_adjoint(ad[s])), ad[s])
        rep.add(f"a+[{s}]‡‡ = a+", "fermionic adjoint is involutive", ok, res)
    return rep


def commutator_relations(modes: ModeSet, A: ParameterFunction, B: ParameterFunction):
    """The fifteen bosonized commutators as (id, lhs, rhs) triples."""
    FA, FB = BosonizedFamily(modes, A), BosonizedFamily(modes, B)
    ring = FA.ring
    one = FockOperator.identity(modes, ring)
    R, Rd, s = FA.R, FA.Rdag, FA.s
    Ah, Ad, Ae, Aed = FA.Ahat, FA.Adag, FA.Aeps, FA.Aeps_dag
    As, Bs = A.conj(), B.conj()
    return [
        ("[A,B+] = A*◇B", commutator(Ah, FB.Adag), contract(As, B) * one),
        ("[Ae,B+] = A f◇ B", commutator(Ae, FB.Adag), contract(A, B, "eps") * one),
        ("[A,Be+] = A* f◇ B*", commutator(Ah, FB.Aeps_dag), contract(As, Bs, "eps") * one),
        ("[Ae,Be+] = -B*◇A", commutator(Ae, FB.Aeps_dag), -contract(Bs, A) * one),
        ("[A,R+] = Ae+", commutator(Ah, Rd), Aed),
        ("[R,Ae+] = -A", commutator(R, Aed), -Ah),
        ("[R,A+] = Ae", commutator(R, Ad), Ae),
        ("[Ae,R+] = -A+", commutator(Ae, Rd), -Ad),
        ("[R,R+] = -s", commutator(R, Rd), -s),
        ("[A,s] = A", commutator(Ah, s), Ah),
        ("[Ae,s] = Ae", commutator(Ae, s), Ae),
        ("[R,s] = 2R", commutator(R, s), R * 2),
        ("[s,A+] = A+", commutator(s, Ad), Ad),
        ("[s,Ae+] = Ae+", commutator(s, Aed), Aed),
        ("[s,R+] = 2R+", commutator(s, Rd), Rd * 2),
    ]


def verify_commutator_table(modes: ModeSet, A: ParameterFunction, B: ParameterFunction) -> Report:
    rep = Report("commutators")
    for rid, lhs, rhs in commutator_relations(modes, A, B):
        with timed() as tb:
            ok, res = _compare(lhs, rhs)
        rep.add(rid, "bosonized commutator algebra", ok, res, seconds=tb[0])
    FA, FB = BosonizedFamily(modes, A), BosonizedFamily(modes, B)
    zero = FockOperator.zero(modes, FA.ring)
    for rid, lhs in (("[A,B] = 0", commutator(FA.Ahat, FB.Ahat)),
                     ("[A+,B+] = 0", commutator(FA.Adag, FB.Adag))):
        ok, res = _compare(lhs, zero)
        rep.add(rid, "bosonized operators commute", ok, res)
    return rep


def _conj(X: FockOperator, Y, c) -> Composite:
    return Composite([Exponential(X * c), Y, Exponential(X * (-c))])


def exp_conjugation_identities(modes: ModeSet, c, A: ParameterFunction, B: ParameterFunction):
    """Every exp(cX) Y exp(-cX) identity as (id, lhs, rhs); ``A``, ``B`` in the ``u`` ring."""
    ring = A.ring
    FA, FB = BosonizedFamily(modes, A), BosonizedFamily(modes, B)
    one = FockOperator.identity(modes, ring)
    c = Exact.coerce(c)
    R, Rd, s = FA.R, FA.Rdag, FA.s
    Ah, Ad, Ae, Aed = FA.Ahat, FA.Adag, FA.Aeps, FA.Aeps_dag
    As = A.conj()
    Bs = B.conj()
    out = [
        ("exp(cA) B+ exp(-cA)", _conj(Ah, FB.Adag, c), FB.Adag + contract(As, B) * c * one),
        ("exp(cAe) B+ exp(-cAe)", _conj(Ae, FB.Adag, c), FB.Adag + contract(A, B, "eps") * c * one),
        ("exp(cA) Be+ exp(-cA)", _conj(Ah, FB.Aeps_dag, c),
         FB.Aeps_dag + contract(As, Bs, "eps") * c * one),
        ("exp(cAe) Be+ exp(-cAe)", _conj(Ae, FB.Aeps_dag, c),
         FB.Aeps_dag - contract(Bs, A) * c * one),
        ("exp(cR) A+ exp(-cR)", _conj(R, Ad, c), Ad + Ae * c),
        ("exp(cR) Ae+ exp(-cR)", _conj(R, Aed, c), Aed - Ah * c),
        ("exp(cA) R+ exp(-cA)", _conj(Ah, Rd, c),
         Rd + Aed * c + contract(As, As, "eps") * (c * c * HALF) * one),
        ("exp(cAe) R+ exp(-cAe)", _conj(Ae, Rd, c),
         Rd - Ad * c - contract(A, A, "eps") * (c * c * HALF) * one),
        ("exp(cR) R+ exp(-cR)", _conj(R, Rd, c), Rd - s * c - R * (c * c)),
        ("exp(cA) s exp(-cA)", _conj(Ah, s, c), s + Ah * c),
        ("exp(cAe) s exp(-cAe)", _conj(Ae, s, c), s + Ae * c),
        ("exp(cR) s exp(-cR)", _conj(R, s, c), s + R * (2 * c)),
    ]
    # exp(c s) with the formal unit u = e^(c/2), so e^c = u^2 and e^(2c) = u^4
    u = LAURENT_U.symbol
    if ring is LAURENT_U:
        es, ems = exp_s_half(modes, u, ring), exp_s_half(modes, u ** -1, ring)
        out += [
            ("exp(cs) A+ exp(-cs)", Composite([es, Ad, ems]), Ad * (u ** 2)),
            ("exp(cs) Ae+ exp(-cs)", Composite([es, Aed, ems]), Aed * (u ** 2)),
            ("exp(cs) R+ exp(-cs)", Composite([es, Rd, ems]), Rd * (u ** 4)),
        ]
    return out


def verify_exp_conjugations(modes: ModeSet, c, A: ParameterFunction = None,
                            B: ParameterFunction = None) -> Report:
    """All exponential-conjugation identities; parameters default to fresh ones in the u ring."""
    if A is None:
        A = ParameterFunction.fresh(modes, "A", LAURENT_U)
    if B is None:
        B = ParameterFunction.fresh(modes, "B", LAURENT_U)
    rep = Report("exp-conjugations")
    for rid, lhs, rhs in exp_conjugation_identities(modes, c, A, B):
        with timed() as tb:
            ok = operators_equal(lhs, rhs)
        rep.add(f"{rid} [c={Exact.coerce(c).to_text()}]", "exponential conjugation identities",
                ok, "0" if ok else "nonzero", seconds=tb[0])
    return rep


def majorana_anticommutator(modes: ModeSet, i: int, ring: Ring = None) -> FockOperator:
    """``{m, m}`` for ``m = (a_i + a+_i)/sqrt2``: the identity, not zero."""
    ring = ring or modes.ring
    a, ad = ladder(modes, ring)
    m = (a[i] + ad[i]) * INV_SQRT2
    return anticommutator(m, m)
