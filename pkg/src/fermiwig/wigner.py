"""Quadrature bases, Grassmann Fourier analysis, Wigner and Weyl transforms, star products.

Every functional integral uses the plain Berezin measure of
:func:`berezin_integrate` and divides by the completeness constant ``c`` once
per integrated field, so ``𝒟_Λ[q] = c^-1 𝒟[q]``. Integration generators are
allocated fresh for every call and integrated out completely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bogoliubov import build_bogoliubov, ladder
from .eigenstates import bra, ket
from .fock import (FockBra, FockOperator, FockState, involute, matrix_elements, matrix_unit,
                   operators_equal, trace)
from .grassmann import (GrassmannElement, ParameterFunction,
                        berezin_integrate, contract, grassmann_delta, grassmann_exp)
from .modes import ModeSet
from .overlaps import finite_lambda, ratio_to, sifting_sign
from .report import Report, timed
from .rings import HALF, I as I_UNIT, Exact, sqrt2_power

# ----------------------------------------------------------- phase space ---


def phase_space(modes: ModeSet, name: str = "", ring=None):
    """Fresh ``(q, p)`` field variables, one real generator per mode each."""
    ring = ring or modes.ring
    q = ParameterFunction.fresh(modes, f"q{name}", ring, kind="phase-q")
    p = ParameterFunction.fresh(modes, f"p{name}", ring, kind="phase-p")
    return q, p


def fresh_field(modes: ModeSet, name: str, kind: str = "phase-q", ring=None) -> ParameterFunction:
    return ParameterFunction.fresh(modes, name, ring or modes.ring, kind=kind)


def _assign(gens, values: ParameterFunction) -> dict:
    return {g: values[i] for i, g in enumerate(gens)}


@dataclass
class PhaseSpaceFunctional:
    """A Grassmann element together with the generators playing ``q`` and ``p``."""

    modes: ModeSet
    value: GrassmannElement
    q_vars: tuple
    p_vars: tuple

    @classmethod
    def over(cls, modes: ModeSet, value: GrassmannElement, q: ParameterFunction,
             p: ParameterFunction) -> "PhaseSpaceFunctional":
        return cls(modes, value, tuple(q.generators()), tuple(p.generators()))

    @property
    def ring(self):
        return self.value.ring

    def field(self, gens) -> ParameterFunction:
        ring = self.ring
        return ParameterFunction(self.modes, [GrassmannElement.gen(g, ring) for g in gens])

    @property
    def q(self) -> ParameterFunction:
        return self.field(self.q_vars)

    @property
    def p(self) -> ParameterFunction:
        return self.field(self.p_vars)

    def at(self, q: ParameterFunction, p: ParameterFunction) -> GrassmannElement:
        """``W[q, p]`` at new odd arguments."""
        amap = _assign(self.q_vars, q)
        amap.update(_assign(self.p_vars, p))
        return self.value.substitute(amap)

    def rename(self, q: ParameterFunction, p: ParameterFunction) -> "PhaseSpaceFunctional":
        return PhaseSpaceFunctional.over(self.modes, self.at(q, p), q, p)

    def same_as(self, other: "PhaseSpaceFunctional") -> bool:
        """Equality after moving ``other`` onto this functional's variables."""
        return other.at(self.q, self.p) == self.value

    def is_even(self) -> bool:
        return self.value.is_zero() or self.value.parity() == 0

    def __add__(self, other: "PhaseSpaceFunctional"):
        return PhaseSpaceFunctional(self.modes, self.value + other.at(self.q, self.p),
                                    self.q_vars, self.p_vars)

    def __mul__(self, c):
        return PhaseSpaceFunctional(self.modes, self.value * c, self.q_vars, self.p_vars)

    __rmul__ = __mul__

    def to_text(self) -> str:
        return self.value.to_text()


# ----------------------------------------------------------- quadratures ---

def quadrature_ops(modes: ModeSet, ring=None):
    """``q_s = g_s`` and ``p_s = g+_s``."""
    bog = build_bogoliubov(modes, ring)
    return bog.g, bog.gd


def q_ket(q: ParameterFunction, modes: ModeSet) -> FockState:
    return ket("g", q, modes)


def q_bra(q: ParameterFunction, modes: ModeSet) -> FockBra:
    return bra("g", q, modes)


def p_ket(p: ParameterFunction, modes: ModeSet) -> FockState:
    return ket("gbar", p, modes)


def p_bra(p: ParameterFunction, modes: ModeSet) -> FockBra:
    return bra("gbar", p, modes)


def ket_bra(k: FockState, b: FockBra) -> FockOperator:
    """``|k><b|`` over matrix-unit words; ``b``'s coefficients move left past ``|n>``."""
    modes, ring = k.modes, k.ring
    terms = []
    for n, kn in k.amps.items():
        odd = n.bit_count() & 1
        for m, bm in b.amps.items():
            c = kn * (involute(bm) if odd else bm)
            for cc, w in matrix_unit(modes, n, m, ring).terms:
                terms.append((c * cc, w))
    return FockOperator(modes, terms, ring)


def integrate_operator(op: FockOperator, gens) -> FockOperator:
    """Berezin-integrate every left coefficient of ``op``."""
    return FockOperator(op.modes, [(berezin_integrate(c, gens), w) for c, w in op.terms], op.ring)


def _scalar_multiple_of_identity(op: FockOperator):
    """``c`` with ``op == c 1``, or ``None``."""
    elems = matrix_elements(op)
    dim = 1 << op.modes.size
    c = elems.get((0, 0))
    if c is None or c.is_zero():
        return None
    for (m, n), v in elems.items():
        if m != n and not v.is_zero():
            return None
    if any(elems.get((n, n)) != c for n in range(dim)):
        return None
    if set(c.terms) != {0}:
        return None
    return c.terms[0]


def resolution(modes: ModeSet, basis: str = "q") -> FockOperator:
    """``∫ |q><q| 𝒟[q]`` (or the ``p`` version) with the plain measure."""
    f = fresh_field(modes, f"{basis}c", "phase-q" if basis == "q" else "phase-p")
    if basis == "q":
        proj = ket_bra(q_ket(f, modes), q_bra(f, modes))
    else:
        proj = ket_bra(p_ket(f, modes), p_bra(f, modes))
    return integrate_operator(proj, f.generators())


@lru_cache(maxsize=None)
def _completeness_cached(modes: ModeSet, ring_name: str) -> Exact:
    c = _scalar_multiple_of_identity(resolution(modes, "q"))
    if c is None:
        raise ArithmeticError("the q-basis resolution is not a multiple of the identity")
    return c


def completeness_constant(modes: ModeSet) -> Exact:
    """``c`` with ``∫ |q><q| 𝒟[q] = c 1``; all ``𝒟_Λ`` integrals divide by it."""
    return _completeness_cached(modes, modes.ring.name)


def measure(modes: ModeSet, fields: int = 1) -> Exact:
    """``c^-fields``: the factor turning plain integrals into ``𝒟_Λ`` integrals."""
    return completeness_constant(modes).inverse() ** fields


# ------------------------------------------------------- Fourier analysis ---

def grassmann_fourier(value: GrassmannElement, source: ParameterFunction,
                      target: ParameterFunction, direction: str = "forward") -> GrassmannElement:
    """``∫ W[q] exp(p◇q) 𝒟_Λ[q]`` (forward) or ``∫ W[p] exp(q◇p) 𝒟_Λ[p]`` (inverse).

    ``source`` holds the integrated generators, ``target`` the new variables.
    Both directions use the kernel ``exp(target◇source)``.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    kernel = grassmann_exp(contract(target, source))
    return berezin_integrate(value * kernel, source.generators()) * measure(source.modes)


def characteristic(W: PhaseSpaceFunctional, xi: ParameterFunction = None,
                   zeta: ParameterFunction = None) -> PhaseSpaceFunctional:
    """``χ[ξ, ζ] = ∫ W[q, p] exp(ξ◇q - p◇ζ) 𝒟_Λ[q, p]``."""
    modes = W.modes
    if xi is None:
        xi, zeta = fresh_field(modes, "ξ"), fresh_field(modes, "ζ", "phase-p")
    q, p = W.q, W.p
    kernel = grassmann_exp(contract(xi, q) - contract(p, zeta))
    val = berezin_integrate(W.value * kernel, p.generators() + q.generators())
    return PhaseSpaceFunctional.over(modes, val * measure(modes, 2), xi, zeta)


def inverse_characteristic(chi: PhaseSpaceFunctional, q: ParameterFunction = None,
                           p: ParameterFunction = None) -> PhaseSpaceFunctional:
    """``W[q, p] = ∫ χ[ξ, ζ] exp(p◇ζ - ξ◇q) 𝒟_Λ[ζ, ξ]``."""
    modes = chi.modes
    if q is None:
        q, p = phase_space(modes, "w")
    xi, zeta = chi.q, chi.p
    kernel = grassmann_exp(contract(p, zeta) - contract(xi, q))
    val = berezin_integrate(chi.value * kernel, zeta.generators() + xi.generators())
    return PhaseSpaceFunctional.over(modes, val * measure(modes, 2), q, p)


# ------------------------------------------------------------ Wigner/Weyl ---

def wigner_transform(op: FockOperator, modes: ModeSet = None, q: ParameterFunction = None,
                     p: ParameterFunction = None) -> PhaseSpaceFunctional:
    """``W[q, p] = ∫ <q + x/2| op |q - x/2> exp(p◇x) 𝒟_Λ[x]``."""
    modes = modes or op.modes
    if q is None:
        q, p = phase_space(modes)
    x = fresh_field(modes, "x")
    half = x * HALF
    amp = q_bra(q + half, modes).inner(op.apply(q_ket(q - half, modes)))
    val = berezin_integrate(amp * grassmann_exp(contract(p, x)), x.generators())
    return PhaseSpaceFunctional.over(modes, val * measure(modes), q, p)


def weyl_transform(W: PhaseSpaceFunctional) -> FockOperator:
    """``∫ |q + x/2> W[q, p] exp(x◇p) <q - x/2| 𝒟_Λ[p, q, x]``.

    The kernel is ``exp(x◇p)``, the Fourier inverse of the ``exp(p◇x)`` in
    :func:`wigner_transform`; with ``exp(p◇x)`` the roundtrip fails.
    """
    modes = W.modes
    q, p = phase_space(modes, "y")
    x = fresh_field(modes, "xy")
    half = x * HALF
    middle = W.at(q, p) * grassmann_exp(contract(x, p))
    proj = ket_bra(q_ket(q + half, modes).rmul(middle), q_bra(q - half, modes))
    gens = p.generators() + q.generators() + x.generators()
    op = integrate_operator(proj, gens)
    return op * measure(modes, 3)


def density_functional(op: FockOperator, q1: ParameterFunction, q2: ParameterFunction,
                       modes: ModeSet = None) -> GrassmannElement:
    """``ρ[q1, q2] = <q1| op |q2>``."""
    modes = modes or op.modes
    return q_bra(q1, modes).inner(op.apply(q_ket(q2, modes)))


def density_from_wigner(W: PhaseSpaceFunctional, q1: ParameterFunction,
                        q2: ParameterFunction) -> GrassmannElement:
    """``ρ[q1, q2] = ∫ W[(q1 + q2)/2, p] exp((q1 - q2)◇p) 𝒟_Λ[p]``."""
    p = fresh_field(W.modes, "pρ", "phase-p")
    body = W.at((q1 + q2) * HALF, p) * grassmann_exp(contract(q1 - q2, p))
    return berezin_integrate(body, p.generators()) * measure(W.modes)


def wave_functional(state: FockState, q: ParameterFunction, modes: ModeSet = None):
    """``ψ[q] = <q|ψ>``."""
    return q_bra(q, modes or state.modes).inner(state)


def phase_space_trace(W: PhaseSpaceFunctional) -> GrassmannElement:
    """``∫ W[q, p] 𝒟_Λ[q, p]``: the supertrace ``tr((-1)^N A)`` of the operator."""
    return berezin_integrate(W.value, W.q_vars + W.p_vars) * measure(W.modes, 2)


def parity_operator(modes: ModeSet, ring=None):
    """``(-1)^N`` as a diagonal FockOperator."""
    ring = ring or modes.ring
    terms = []
    for n in range(1 << modes.size):
        sign = -1 if n.bit_count() & 1 else 1
        terms.extend((c * sign, w) for c, w in matrix_unit(modes, n, n, ring).terms)
    return FockOperator(modes, terms, ring)


def supertrace(op) -> GrassmannElement:
    """``tr((-1)^N op)``"""
    acc = GrassmannElement.zero(op.ring)
    for (m, n), c in matrix_elements(op).items():
        if m == n:
            acc = acc + (c * -1 if n.bit_count() & 1 else c)
    return acc


def operator_trace(op: FockOperator) -> GrassmannElement:
    """Ordinary trace from phase space: ``∫ W_{(-1)^N A} 𝒟_Λ[q, p]``."""
    return phase_space_trace(wigner_transform(parity_operator(op.modes, op.ring) * op))


# ----------------------------------------------------------- star products ---

def star_prefactor(modes: ModeSet, order: int = 2) -> Exact:
    """Constant in front of the star-product integrals.

    The two-fold product carries ``2^(-2 Omega)`` times the measure; the
    reduced three-fold form carries none.
    """
    if order == 2:
        return sqrt2_power(-4 * modes.omega)
    if order == 3:
        return Exact(1)
    raise ValueError("order must be 2 or 3")


def star2(WA: PhaseSpaceFunctional, WB: PhaseSpaceFunctional, q: ParameterFunction = None,
          p: ParameterFunction = None) -> PhaseSpaceFunctional:
    """``W_AB[q, p]`` from the two-fold integral with kernel
    ``exp[2(q - q2)◇p1 + 2(q1 - q)◇p2 + 2(q2 - q1)◇p]``."""
    modes = WA.modes
    if q is None:
        q, p = phase_space(modes, "s")
    q1, p1 = phase_space(modes, "s1")
    q2, p2 = phase_space(modes, "s2")
    kernel = grassmann_exp((contract(q - q2, p1) + contract(q1 - q, p2)
                            + contract(q2 - q1, p)) * 2)
    body = WA.at(q1, p1) * WB.at(q2, p2) * kernel
    gens = q1.generators() + p1.generators() + q2.generators() + p2.generators()
    val = berezin_integrate(body, gens) * (measure(modes, 4) * star_prefactor(modes, 2))
    return PhaseSpaceFunctional.over(modes, val, q, p)


def star3(WA: PhaseSpaceFunctional, WB: PhaseSpaceFunctional, WC: PhaseSpaceFunctional,
          q: ParameterFunction = None, p: ParameterFunction = None) -> PhaseSpaceFunctional:
    """``W_ABC[q, p]`` from the reduced three-fold integral over ``(qa, pa, qb, pb)``."""
    modes = WA.modes
    if q is None:
        q, p = phase_space(modes, "t")
    qa, pa = phase_space(modes, "ta")
    qb, pb = phase_space(modes, "tb")
    kernel = grassmann_exp(contract(q - qa, pb) + contract(qb, pa - p))
    a_args = ((q + qa + qb) * HALF, (p + pa + pb) * HALF)
    c_args = ((q + qa - qb) * HALF, (p + pa - pb) * HALF)
    body = kernel * WA.at(*a_args) * WB.at(qa, pa) * WC.at(*c_args)
    gens = qa.generators() + pa.generators() + qb.generators() + pb.generators()
    val = berezin_integrate(body, gens) * (measure(modes, 4) * star_prefactor(modes, 3))
    return PhaseSpaceFunctional.over(modes, val, q, p)


# ---------------------------------------------------------- verification ---

def _integrate_state(state: FockState, gens) -> FockState:
    return FockState(state.modes, {n: berezin_integrate(d, gens) for n, d in state.amps.items()},
                     state.ring)


def verify_quadratures(modes: ModeSet) -> Report:
    """Eigen-relations, ladder decomposition, bases overlaps and integral representations."""
    from .bogoliubov import INV_SQRT2
    from .eigenstates import eigen_residual
    from .fock import ket_fermionic_adjoint

    rep = Report("quadratures")
    ring = modes.ring
    qs, ps = quadrature_ops(modes)
    a, ad = ladder(modes, ring)
    q, p = phase_space(modes, "Q")
    q2, p2 = phase_space(modes, "Q2")
    kq, bq, kp, bp = q_ket(q, modes), q_bra(q, modes), p_ket(p, modes), p_bra(p, modes)
    for i in range(modes.size):
        lab = modes.label(i)
        rep.add(f"q̂[{lab}]|q> = |q>q", "quadrature eigen-relation",
                eigen_residual(qs[i], kq, q[i]).is_zero())
        rep.add(f"p̂[{lab}]|p> = |p>p", "quadrature eigen-relation",
                eigen_residual(ps[i], kp, p[i]).is_zero())
        rep.add(f"<q|q̂[{lab}] = q<q|", "left quadrature eigen-relation",
                eigen_residual(qs[i], bq, q[i], "left").is_zero())
        rep.add(f"<p|p̂[{lab}] = p<p|", "left quadrature eigen-relation",
                eigen_residual(ps[i], bp, p[i], "left").is_zero())
        eq = FockOperator.zero(modes, ring)
        ea = FockOperator.zero(modes, ring)
        for j, e in modes.partners(i):
            eq = eq + ps[j] * e
            ea = ea + qs[j] * e
        rep.add(f"a[{lab}] = (q - εp)/√2", "ladder operators from quadratures",
                operators_equal((qs[i] - eq) * INV_SQRT2, a[i]))
        rep.add(f"a+[{lab}] = (εq + p)/√2", "ladder operators from quadratures",
                operators_equal((ea + ps[i]) * INV_SQRT2, ad[i]))
    lam = completeness_lambda(modes)
    rep.add("<q|p> = exp(q◇p)", "mutually unbiased bases", bq.inner(kp) == grassmann_exp(contract(q, p)))
    rep.add("<p|q> = exp(p◇q)", "mutually unbiased bases", bp.inner(kq) == grassmann_exp(contract(p, q)))
    rep.add("<q|q'> = Λ δ[q - q']", "orthogonality of the q basis",
            bq.inner(q_ket(q2, modes)) == grassmann_delta(q - q2) * lam)
    rep.add("<p|p'> = Λ δ[p - p']", "orthogonality of the p basis",
            bp.inner(p_ket(p2, modes)) == grassmann_delta(p - p2) * lam)
    qp = bq.inner(kp)
    rep.add("<q|p> conj(<q|p>) = 1", "unit modulus of the q-p overlap",
            qp * qp.conjugate() == GrassmannElement.one(ring))
    rep.add("<q| = (|q>)‡", "dual states are fermionic adjoints", ket_fermionic_adjoint(kq) == bq)
    rep.add("<p| = (|p>)‡", "dual states are fermionic adjoints", ket_fermionic_adjoint(kp) == bp)
    rep.add("<p| = (|q>)+ at p = q", "Hermitian adjoint swaps the bases",
            q_ket(q, modes).dagger() == p_bra(q, modes))
    rep.add("<q| = (|p>)+ at q = p", "Hermitian adjoint swaps the bases",
            p_ket(q, modes).dagger() == q_bra(q, modes))
    mu = measure(modes)
    for i in range(modes.size):
        f = fresh_field(modes, "qi")
        op = integrate_operator(ket_bra(q_ket(f, modes).rmul(f[i]), q_bra(f, modes)),
                                f.generators()) * mu
        rep.add(f"q̂[{modes.label(i)}] = ∫|q>q<q|𝒟_Λ", "quadrature integral representation",
                operators_equal(op, qs[i]))
        f = fresh_field(modes, "pi", "phase-p")
        op = integrate_operator(ket_bra(p_ket(f, modes).rmul(f[i]), p_bra(f, modes)),
                                f.generators()) * mu
        rep.add(f"p̂[{modes.label(i)}] = ∫|p>p<p|𝒟_Λ", "quadrature integral representation",
                operators_equal(op, ps[i]))
    f = fresh_field(modes, "pk", "phase-p")
    st = _integrate_state(p_ket(f, modes).rmul(grassmann_exp(contract(f, q))), f.generators())
    rep.add("|q> = ∫|p>exp(p◇q)𝒟_Λ[p]", "basis change between quadratures", st.lmul(mu) == kq)
    f = fresh_field(modes, "qk")
    st = _integrate_state(q_ket(f, modes).rmul(grassmann_exp(contract(f, p))), f.generators())
    rep.add("|p> = ∫|q>exp(q◇p)𝒟_Λ[q]", "basis change between quadratures", st.lmul(mu) == kp)
    return rep


def completeness_lambda(modes: ModeSet) -> Exact:
    """Orthogonality constant of the quadrature bases, ``<q|q'> = Λ δ[q - q']``."""
    return finite_lambda(modes)


def verify_completeness(modes: ModeSet) -> Report:
    """Identity resolutions and the four sandwich identities."""
    rep = Report("completeness")
    ring = modes.ring
    one = FockOperator.identity(modes, ring)
    with timed() as tb:
        cq = _scalar_multiple_of_identity(resolution(modes, "q"))
        cp = _scalar_multiple_of_identity(resolution(modes, "p"))
    rep.add("∫|q><q|𝒟[q] = c 1", "resolution of the identity in the q basis", cq is not None,
            detail=f"c = {cq.to_text() if cq is not None else 'none'}", seconds=tb[0])
    rep.add("∫|p><p|𝒟[p] = c 1", "resolution of the identity in the p basis",
            cp is not None and cp == cq,
            detail=f"c = {cp.to_text() if cp is not None else 'none'}")
    lam = completeness_lambda(modes)
    s = sifting_sign(modes.size)
    rep.add("c = s Λ", "completeness constant against the orthogonality constant",
            cq is not None and cq == lam * s, detail=f"Λ = {lam.to_text()}, s = {s:+d}")
    rep.notes["completeness_constant"] = cq.to_text() if cq is not None else None
    rep.notes["orthogonality_constant"] = lam.to_text()
    mu = measure(modes)
    q1, p1 = phase_space(modes, "n1")
    q2, p2 = phase_space(modes, "n2")
    f = fresh_field(modes, "nq")
    kf, bf = q_ket(f, modes), q_bra(f, modes)
    gens = f.generators()

    def sandwich(left: FockBra, right: FockState) -> GrassmannElement:
        return berezin_integrate(left.inner(kf) * bf.inner(right), gens) * mu

    cases = [
        ("<q2|1|q1> = Λ δ[q1 - q2]", q_bra(q2, modes), q_ket(q1, modes),
         grassmann_delta(q1 - q2) * lam),
        ("<q2|1|p1> = exp(q2◇p1)", q_bra(q2, modes), p_ket(p1, modes),
         grassmann_exp(contract(q2, p1))),
        ("<p2|1|q1> = exp(p2◇q1)", p_bra(p2, modes), q_ket(q1, modes),
         grassmann_exp(contract(p2, q1))),
        ("<p2|1|p1> = Λ δ[p1 - p2]", p_bra(p2, modes), p_ket(p1, modes),
         grassmann_delta(p1 - p2) * lam),
    ]
    for rid, left, right, expect in cases:
        val = sandwich(left, right)
        rep.add(rid, "sandwiched identity resolution", val == expect,
                "0" if val == expect else (val - expect).to_text()[:200])
    rep.add("𝒟_Λ resolution is 1", "normalized resolution of the identity",
            operators_equal(resolution(modes, "q") * mu, one))
    return rep


def verify_fourier(modes: ModeSet, seed: int = 0) -> Report:
    """Double Fourier transforms, the delta functional and the characteristic functional."""
    from .samples import random_functional

    rep = Report("fourier")
    ring = modes.ring
    q, p = phase_space(modes, "F")
    q2 = fresh_field(modes, "F2")
    W = random_functional(q.generators(), seed, ring)
    back = grassmann_fourier(grassmann_fourier(W, q, p), p, q2, "inverse")
    moved = W.substitute(_assign(q.generators(), q2))
    rep.add("inverse(forward(W)) = W", "Grassmann Fourier transform inverts", back == moved)
    Wp = random_functional(p.generators(), seed + 1, ring)
    p2 = fresh_field(modes, "F3", "phase-p")
    back = grassmann_fourier(grassmann_fourier(Wp, p, q, "inverse"), q, p2)
    rep.add("forward(inverse(W)) = W", "Grassmann Fourier transform inverts",
            back == Wp.substitute(_assign(p.generators(), p2)))
    lam = completeness_lambda(modes)
    one = GrassmannElement.one(ring)
    for sign in (1, -1):
        val = berezin_integrate(grassmann_exp(contract(q, p) * sign), q.generators()) * measure(modes)
        expect = grassmann_delta(p) * (lam * (sign ** modes.size))
        rep.add(f"∫exp({'+' if sign > 0 else '-'}q◇p)𝒟_Λ[q] = Λ δ[p]", "Grassmann Dirac delta",
                val == expect, detail="sign (-1)^M for the minus kernel")
    rep.add("F[1] = Λ δ[p]", "transform of the constant functional",
            grassmann_fourier(one, q, p) == grassmann_delta(p) * lam)
    Wq = PhaseSpaceFunctional.over(modes, random_functional(q.generators() + p.generators(),
                                                            seed + 2, ring, 3), q, p)
    chi = characteristic(Wq)
    rep.add("χ -> W roundtrip", "characteristic functional inverts", inverse_characteristic(chi).same_as(Wq))
    chi1 = characteristic(PhaseSpaceFunctional.over(modes, one, q, p))
    xi, zeta = chi1.q, chi1.p
    ok = ratio_to(chi1.value, grassmann_delta(xi) * grassmann_delta(zeta)) is not None
    rep.add("χ[1] ∝ δ[ξ]δ[ζ]", "characteristic functional of the constant", ok)
    return rep


def verify_wigner(modes: ModeSet, seed: int = 0, roundtrip_units: bool = True) -> Report:
    """Wigner functionals of quadratures and ladders, Weyl roundtrips, traces."""
    from .bogoliubov import INV_SQRT2
    from .samples import random_operator

    rep = Report("wigner")
    ring = modes.ring
    qs, ps = quadrature_ops(modes)
    a, ad = ladder(modes, ring)
    q, p = phase_space(modes, "W")
    eq, ep = q.eps_left(), p.eps_left()
    one = FockOperator.identity(modes, ring)
    W1 = wigner_transform(one, q=q, p=p)
    rep.add("W[1] = 1", "Wigner functional of the identity", W1.value == GrassmannElement.one(ring))
    for i in range(modes.size):
        lab = modes.label(i)
        rep.add(f"W[q̂[{lab}]] = q", "quadrature Wigner functional",
                wigner_transform(qs[i], q=q, p=p).value == q[i])
        rep.add(f"W[p̂[{lab}]] = p", "quadrature Wigner functional",
                wigner_transform(ps[i], q=q, p=p).value == p[i])
        rep.add(f"W[a[{lab}]] = (q - εp)/√2", "ladder Wigner functional",
                wigner_transform(a[i], q=q, p=p).value == (q[i] - ep[i]) * INV_SQRT2)
        rep.add(f"W[a+[{lab}]] = (εq + p)/√2", "ladder Wigner functional",
                wigner_transform(ad[i], q=q, p=p).value == (eq[i] + p[i]) * INV_SQRT2)
    # the kernel order: exp(x◇p) instead of exp(p◇x) negates p-odd parts
    x = fresh_field(modes, "xr")
    op = random_operator(modes, seed, ring)
    amp = q_bra(q + x * HALF, modes).inner(op.apply(q_ket(q - x * HALF, modes)))
    rev = berezin_integrate(amp * grassmann_exp(contract(x, p)), x.generators()) * measure(modes)
    W = wigner_transform(op, q=q, p=p).value
    flip = W.substitute({g: -p[i] for i, g in enumerate(p.generators())})
    rep.add("exp(x◇p) kernel negates p", "order of x and p in the Wigner kernel", rev == flip)
    A, B = random_operator(modes, seed + 1, ring), random_operator(modes, seed + 2, ring)
    lin = wigner_transform(A * 2 + B * I_UNIT, q=q, p=p).value
    rep.add("linearity", "Wigner transform is linear",
            lin == wigner_transform(A, q=q, p=p).value * 2 + wigner_transform(B, q=q, p=p).value * I_UNIT)
    even = random_operator(modes, seed + 3, ring, parity=0)
    rep.add("even operator -> even W", "parity of Wigner functionals",
            wigner_transform(even).is_even())
    if roundtrip_units:
        dim = 1 << modes.size
        bad = []
        for m in range(dim):
            for n in range(dim):
                unit = matrix_unit(modes, m, n, ring)
                if not operators_equal(weyl_transform(wigner_transform(unit)), unit):
                    bad.append((m, n))
        rep.add("Weyl∘Wigner on all matrix units", "Weyl transform inverts the Wigner transform",
                not bad, str(len(bad)))
    for name, X in (("a+a", ad[0] * a[-1]), ("random", op)):
        rep.add(f"Weyl∘Wigner {name}", "Weyl transform inverts the Wigner transform",
                operators_equal(weyl_transform(wigner_transform(X)), X))
    rep.add("Weyl[1] = 1", "Weyl transform of the constant functional",
            operators_equal(weyl_transform(PhaseSpaceFunctional.over(modes, GrassmannElement.one(ring), q, p)), one))
    for name, X in (("random", op), ("identity", one), ("number", ad[0] * a[0])):
        WX = wigner_transform(X)
        st = phase_space_trace(WX)
        rep.add(f"∫W 𝒟_Λ[q,p] = str {name}", "phase-space integral is the supertrace",
                st == GrassmannElement.scalar(supertrace(X).scalar_part(), ring), st.to_text())
        tr = operator_trace(X)
        rep.add(f"∫W_(-1)^N A 𝒟_Λ = tr {name}", "phase-space trace formula", tr == trace(X),
                tr.to_text())
    dim = 1 << modes.size
    rho = (matrix_unit(modes, 0, 0, ring) * 3 + matrix_unit(modes, dim - 1, dim - 1, ring)
           + matrix_unit(modes, 1, 1, ring) * 2 + matrix_unit(modes, 0, dim - 1, ring)
           + matrix_unit(modes, dim - 1, 0, ring)) * Exact(1, 0, 0, 0, 6)
    rep.add("tr ρ = 1 from phase space", "normalization of density functionals",
            operator_trace(rho) == GrassmannElement.one(ring))
    q1, q2 = fresh_field(modes, "r1"), fresh_field(modes, "r2")
    Wr = wigner_transform(rho)
    rep.add("ρ[q1,q2] from W", "density functional from the Wigner functional",
            density_from_wigner(Wr, q1, q2) == density_functional(rho, q1, q2))
    vac = FockState.vacuum(modes, ring)
    pure = ket_bra(vac, vac.dagger())
    lhs = density_functional(pure, q1, q2)
    rep.add("ρ[q1,q2] = ψ[q1] ψ~[q2]", "pure-state density functional factorizes",
            lhs == wave_functional(vac, q1) * vac.dagger().inner(q_ket(q2, modes)),
            detail="ψ~[q] = <ψ|q>")
    psi2 = wave_functional(vac, q2)
    rep.add("ψ~[q] = conj(ψ[q])", "conjugate wave functional", vac.dagger().inner(q_ket(q2, modes)) == psi2.conjugate(),
            detail="holds for the vacuum")
    return rep


def verify_star(modes: ModeSet, seed: int = 0) -> Report:
    """Two- and three-fold star products against Wigner functionals of products."""
    from .samples import random_operator

    rep = Report("star")
    ring = modes.ring
    one = FockOperator.identity(modes, ring)
    qs, _ = quadrature_ops(modes)
    a, ad = ladder(modes, ring)
    W1 = wigner_transform(one)
    s = star2(W1, W1)
    rep.add("W_1 ⋆ W_1 = 1", "star product of identities", s.value == GrassmannElement.one(ring))
    Wq = wigner_transform(qs[0])
    rep.add("W_q ⋆ W_1 = q", "identity absorbs", star2(Wq, W1).same_as(Wq))
    rep.add("W_1 ⋆ W_q = q", "identity absorbs", star2(W1, Wq).same_as(Wq))
    rep.add("W_a ⋆ W_a+ = W_aa+", "two-fold star product",
            star2(wigner_transform(a[0]), wigner_transform(ad[0])).same_as(wigner_transform(a[0] * ad[0])))
    ops = [random_operator(modes, seed + k, ring, terms=3) for k in range(3)]
    A, B, C = ops
    WA, WB, WC = (wigner_transform(X) for X in ops)
    with timed() as tb:
        ok = star2(WA, WB).same_as(wigner_transform(A * B))
    rep.add("W_A ⋆ W_B = W_AB", "two-fold star product", ok, seconds=tb[0])
    with timed() as tb:
        s3 = star3(WA, WB, WC)
        ok = s3.same_as(wigner_transform(A * B * C))
    rep.add("⋆(W_A, W_B, W_C) = W_ABC", "three-fold star product", ok, seconds=tb[0])
    rep.add("(W_A ⋆ W_B) ⋆ W_C = ⋆(W_A, W_B, W_C)", "associativity of star products",
            star2(star2(WA, WB), WC).same_as(s3))
    return rep
