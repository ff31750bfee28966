"""Inner products of rendered eigenstates: disentanglement, h-functions, deltas."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bogoliubov import BosonizedFamily, exp_s
from .eigenstates import bra, ket, prefactor
from .fock import Composite, Exponential, FockBra, FockState, ScaledSum, operators_equal
from .grassmann import (GrassmannElement, ParameterFunction, berezin_integrate, contract,
                        grassmann_delta, grassmann_exp)
from .modes import ModeSet
from .report import Report, timed
from .rings import HALF, I, LAURENT_EPS, Exact, Laurent, Ring


class SingularityError(ZeroDivisionError):
    """The closed forms are singular at 1 + c1 c2 t^2 = 0."""


# ------------------------------------------------------------ h-functions ---

@dataclass(frozen=True)
class HValues:
    """The eight h-functions at one ``t``; ``h0`` is split into three coefficients.

    ``h0 = h0[0] A*◇B + h0[1] B f◇ B + h0[2] A* f◇ A*`` and ``h4 = -ln(h4_base)``.
    """

    c1: int
    c2: int
    t: object
    h0: tuple
    h1: object
    h2: object
    h3: object
    h4_base: object
    h5: object
    h6: object
    h7: object

    @property
    def h4(self) -> float:
        return -math.log(float(complex(self.h4_base).real))

    def as_floats(self) -> dict:
        f = lambda x: float(complex(x).real)  # noqa: E731
        return {"h0a": f(self.h0[0]), "h0b": f(self.h0[1]), "h0c": f(self.h0[2]),
                "h1": f(self.h1), "h2": f(self.h2), "h3": f(self.h3), "h4": self.h4,
                "h5": f(self.h5), "h6": f(self.h6), "h7": f(self.h7)}


def _check_signs(c1, c2):
    if c1 not in (1, -1) or c2 not in (1, -1):
        raise ValueError("c1 and c2 must be +1 or -1")


def h_closed_form(c1: int, c2: int, t) -> HValues:
    """Closed-form h-functions; exact for exact ``t``, floating for ``float``."""
    _check_signs(c1, c2)
    if isinstance(t, float):
        one, half = 1.0, 0.5
    else:
        t = Exact.coerce(t)
        one, half = Exact(1), HALF
    den = one + t * t * (c1 * c2)
    if den == 0:
        raise SingularityError("1 + c1 c2 t^2 vanishes")
    inv = 1 / den if isinstance(den, float) else den.inverse()
    t2, t3 = t * t, t * t * t
    return HValues(
        c1, c2, t, (t2 * inv, t3 * inv * half * c1, t3 * inv * half * c2),
        t * inv, t2 * inv * c2, t * inv * c2, den, t2 * inv * c1, t * inv, t * inv * c1,
    )


def h_ode_rhs(c1: int, c2: int, t: float, y: np.ndarray) -> np.ndarray:
    """Right-hand sides for ``y = (h0a, h0b, h0c, h1, ..., h7)``."""
    h1, h2, h3, h4 = y[3], y[4], y[5], y[6]
    T = 1 - c1 * c2 * t * t
    e4 = math.exp(h4)
    return np.array([
        (t + T * h1) * (1 - c1 * h2),
        t * c1 * h1 + 0.5 * c1 * T * h1 * h1,
        0.5 * t * t * c2 + T * h2 - 0.5 * c1 * T * h2 * h2,
        1 - t * c1 * c2 * h1 - t * c1 * h3 - c1 * T * h1 * h3,
        t * c2 - t * c1 * c2 * h2 + T * h3 - c1 * T * h2 * h3,
        c2 - 2 * t * c1 * c2 * h3 - c1 * T * h3 * h3,
        -t * c1 * c2 - c1 * T * h3,
        t * c1 * e4 + c1 * T * h1 * e4,
        T * (1 - c1 * h2) * e4,
        c1 * T * e4 * e4,
    ])


def closed_form_vector(c1: int, c2: int, t: float, perturb: dict = None) -> np.ndarray:
    h = h_closed_form(c1, c2, float(t))
    v = h.as_floats()
    for k, dv in (perturb or {}).items():
        v[k] += dv
    return np.array([v[k] for k in ("h0a", "h0b", "h0c", "h1", "h2", "h3", "h4", "h5", "h6", "h7")])


def closed_form_derivative(c1: int, c2: int, t: float) -> np.ndarray:
    """Analytic t-derivatives of the closed forms."""
    x = 1 + c1 * c2 * t * t
    dx = 2 * c1 * c2 * t

    def quot(num, dnum):
        return (dnum * x - num * dx) / (x * x)

    return np.array([
        quot(t * t, 2 * t),
        0.5 * c1 * quot(t ** 3, 3 * t * t),
        0.5 * c2 * quot(t ** 3, 3 * t * t),
        quot(t, 1.0),
        c2 * quot(t * t, 2 * t),
        c2 * quot(t, 1.0),
        -dx / x,
        c1 * quot(t * t, 2 * t),
        quot(t, 1.0),
        c1 * quot(t, 1.0),
    ])


def rk4(c1: int, c2: int, t_end: float, steps: int = 2000) -> np.ndarray:
    """Classical fourth-order Runge-Kutta from ``h(0) = 0``."""
    y = np.zeros(10)
    dt = t_end / steps
    t = 0.0
    for _ in range(steps):
        k1 = h_ode_rhs(c1, c2, t, y)
        k2 = h_ode_rhs(c1, c2, t + dt / 2, y + dt / 2 * k1)
        k3 = h_ode_rhs(c1, c2, t + dt / 2, y + dt / 2 * k2)
        k4 = h_ode_rhs(c1, c2, t + dt, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += dt
    return y


def h_ode_check(c1: int, c2: int, samples: int = 91, t_max: float = 0.9,
                perturb: dict = None) -> dict:
    """Max ODE residual of the closed forms on ``[0, t_max]`` and the RK4 endpoint gap.

    ``perturb`` adds constants to named closed forms, to show the check bites.
    """
    worst = 0.0
    for t in np.linspace(0.0, t_max, samples):
        y = closed_form_vector(c1, c2, t, perturb)
        dy = closed_form_derivative(c1, c2, t)
        worst = max(worst, float(np.max(np.abs(dy - h_ode_rhs(c1, c2, t, y)))))
    end = rk4(c1, c2, t_max)
    gap = float(np.max(np.abs(end - closed_form_vector(c1, c2, t_max, perturb))))
    return {"residual": worst, "rk4_gap": gap}


# --------------------------------------------------------------- overlaps ---

def _scalar(x, ring: Ring) -> GrassmannElement:
    return GrassmannElement.scalar(x, ring)


def _exponent(h: HValues, A: ParameterFunction, B: ParameterFunction) -> GrassmannElement:
    As = A.conj()
    return (contract(As, B) * h.h0[0] + contract(B, B, "eps") * h.h0[1]
            + contract(As, As, "eps") * h.h0[2])


def _power(base, k: int):
    if k >= 0:
        return base ** k
    return (base.inverse() if isinstance(base, Exact) else base ** -1) ** (-k)


def vacuum_factor(h: HValues, omega: int):
    """``<vac|exp(h4 s)|vac> = (1 + c1 c2 t^2)^(Omega/2)``."""
    if omega % 2:
        raise ValueError("odd Omega needs a square root of 1 + c1 c2 t^2")
    return _power(h.h4_base, omega // 2)


def overlap_analytic(c1: int, c2: int, A: ParameterFunction, B: ParameterFunction, t,
                     omega: int = None, prefactors: tuple = None) -> GrassmannElement:
    """Closed-form ``<vac|exp(tA + t c1 R) exp(tB+ + t c2 R+)|vac>``.

    ``F_L F_R (1 + c1 c2 t^2)^(+Omega/2) exp[(t^2 A*◇B + c1 t^3/2 B f◇ B
    + c2 t^3/2 A* f◇ A*)/(1 + c1 c2 t^2)]``; ``prefactors`` is ``(F_L, F_R)``.
    """
    omega = A.modes.omega if omega is None else omega
    h = h_closed_form(c1, c2, t)
    out = grassmann_exp(_exponent(h, A, B)) * vacuum_factor(h, omega)
    if prefactors:
        out = prefactors[0] * prefactors[1] * out
    return out


def overlap_direct(c1: int, c2: int, A: ParameterFunction, B: ParameterFunction, t,
                   modes: ModeSet = None, prefactors: tuple = None) -> GrassmannElement:
    """Brute-force Fock evaluation of the same matrix element."""
    modes = modes or A.modes
    ring = A.ring
    FA, FB = BosonizedFamily(modes, A), BosonizedFamily(modes, B)
    t = ring.coerce(t)
    left = (FA.Ahat + FA.R * c1) * t
    right = (FB.Adag + FB.Rdag * c2) * t
    ketv = Exponential(right).apply(FockState.vacuum(modes, ring))
    brav = Exponential(left).apply_bra(FockBra.vacuum(modes, ring))
    out = brav.inner(ketv)
    if prefactors:
        out = prefactors[0] * prefactors[1] * out
    return out


def disentangled_pair(c1: int, c2: int, A: ParameterFunction, B: ParameterFunction, t):
    """Both sides of the normal-ordering identity as black-box operators."""
    modes, ring = A.modes, A.ring
    FA, FB = BosonizedFamily(modes, A), BosonizedFamily(modes, B)
    t = Exact.coerce(t)
    lhs = Composite([Exponential(FA.Ahat * t), Exponential(FA.R * (t * c1)),
                     Exponential(FB.Adag * t), Exponential(FB.Rdag * (t * c2))])
    h = h_closed_form(c1, c2, t)
    # exp(h4 s) with h4 = -ln(w): |n> -> w^-(n - Omega/2)
    es = exp_s(modes, h.h4_base.inverse(), ring)
    rhs_ops = Composite([
        Exponential(FB.Adag * h.h1), Exponential(FA.Aeps_dag * h.h2), Exponential(FA.Rdag * h.h3),
        es, Exponential(FB.Aeps * h.h5), Exponential(FA.Ahat * h.h6), Exponential(FA.R * h.h7),
    ])
    rhs = ScaledSum([(grassmann_exp(_exponent(h, A, B)), rhs_ops)])
    return lhs, rhs


def verify_disentanglement(modes: ModeSet, ts=(Exact(1, 0, 0, 0, 3), Exact(1, 0, 0, 0, 2))) -> Report:
    """The normal-ordering identity on all basis states, all sign pairs."""
    rep = Report("disentanglement")
    ring = modes.ring
    A = ParameterFunction.fresh(modes, "Ad", ring)
    B = ParameterFunction.fresh(modes, "Bd", ring)
    for c1 in (1, -1):
        for c2 in (1, -1):
            for t in ts:
                with timed() as tb:
                    lhs, rhs = disentangled_pair(c1, c2, A, B, t)
                    ok = operators_equal(lhs, rhs)
                rep.add(f"c1={c1:+d} c2={c2:+d} t={t.to_text()}",
                        "normal-ordering identity with the closed-form h-functions", ok,
                        "0" if ok else "nonzero", seconds=tb[0])
    # the vacuum expectation of exp(K s): exp(-K Omega/2)
    w = Exact(3)
    vac = exp_s(modes, w, ring).apply(FockState.vacuum(modes, ring)).amplitude(0)
    expect = _power(w, -(modes.omega // 2))
    rep.add("<vac|exp(K s)|vac>", "vacuum expectation of the exponentiated s operator",
            vac == _scalar(expect, ring), vac.to_text(),
            "equals exp(-K Omega/2), so the overlap carries (1 + c1 c2 t^2)^(+Omega/2)")
    return rep


def verify_overlap_formula(modes: ModeSet, seeds=range(20), ts=None) -> Report:
    """overlap_analytic == overlap_direct for random scaled parameters."""
    from .samples import random_parameter

    rep = Report("overlap-formula")
    ts = ts or [Exact(1, 0, 0, 0, 3), Exact(1, 0, 0, 0, 2), Exact(2, 0, 0, 0, 3)]
    ring = modes.ring
    for seed in seeds:
        A = random_parameter(modes, f"Ao{seed}", seed * 2 + 1, ring)
        B = random_parameter(modes, f"Bo{seed}", seed * 2 + 2, ring)
        for c1 in (1, -1):
            for c2 in (1, -1):
                for t in ts:
                    d = overlap_direct(c1, c2, A, B, t, modes)
                    a = overlap_analytic(c1, c2, A, B, t, modes.omega)
                    rep.add(f"seed={seed} c1={c1:+d} c2={c2:+d} t={t.to_text()}",
                            "general inner-product formula", d == a,
                            "0" if d == a else (d - a).to_text()[:200])
    return rep


# ------------------------------------------------------- named overlaps ---

# (left kind, right kind, c1, c2)
COMMON_SIGN = [
    ("g", "gbar", 1, 1), ("hbar", "gbar", 1, 1), ("g", "h", 1, 1), ("hbar", "h", 1, 1),
    ("gbar", "g", -1, -1), ("h", "g", -1, -1), ("gbar", "hbar", -1, -1), ("h", "hbar", -1, -1),
]
OPPOSITE_SIGN = [
    ("g", "g"), ("gbar", "gbar"), ("h", "h"), ("hbar", "hbar"),
    ("hbar", "g"), ("gbar", "h"), ("g", "hbar"), ("h", "gbar"),
]


def common_sign_expected(left: str, right: str, lam: ParameterFunction,
                         x: ParameterFunction) -> GrassmannElement:
    """The reduced exponentials, e.g. ``<g_L|ḡ_R> = exp(γ*◇ḡ)``."""
    table = {
        ("g", "gbar"): contract(lam, x),
        ("hbar", "gbar"): contract(lam, x, "eps") * (-I),
        ("g", "h"): contract(lam, x, "eps") * I,
        ("hbar", "h"): contract(lam, x),
        ("gbar", "g"): contract(lam, x),
        ("h", "g"): contract(lam, x, "eps") * (-I),
        ("gbar", "hbar"): contract(lam, x, "eps") * I,
        ("h", "hbar"): contract(lam, x),
    }
    return grassmann_exp(table[(left, right)])


def delta_argument(left: str, right: str, lam: ParameterFunction,
                   x: ParameterFunction) -> ParameterFunction:
    """Argument ``f`` of the delta-type overlaps ``p[f]``."""
    iex = x.eps_left() * I
    table = {
        ("g", "g"): lam - x, ("gbar", "gbar"): lam - x, ("h", "h"): lam - x,
        ("hbar", "hbar"): lam - x,
        ("hbar", "g"): lam + iex, ("gbar", "h"): lam - iex,
        ("g", "hbar"): lam - iex, ("h", "gbar"): lam + iex,
    }
    return table[(left, right)]


def regularized_delta(f: ParameterFunction) -> GrassmannElement:
    """``eps^(-Omega/2) exp(f f◇ f / (2 eps))`` over the Laurent ring."""
    if f.ring is not LAURENT_EPS:
        f = f.to_ring(LAURENT_EPS)
    eps = LAURENT_EPS.symbol
    expo = contract(f, f, "eps") * (eps ** -1 * HALF)
    return grassmann_exp(expo) * (eps ** -(f.modes.omega // 2))


def lambda_constant(omega: int, ring=LAURENT_EPS) -> Laurent:
    """``eps^(-Omega)``: the regularized orthogonality constant after the phase discard."""
    return ring.symbol ** -omega


def discarded_phase(omega: int) -> Exact:
    """``exp(-i pi Omega/4) = (-i)^(Omega/2)``."""
    return (-I) ** (omega // 2)


def laurent_table(x: GrassmannElement) -> dict:
    """``{order: coefficient element}`` of a Grassmann element over a Laurent ring."""
    orders: dict[int, dict] = {}
    for m, c in x.terms.items():
        for k, v in c.terms.items():
            orders.setdefault(k, {})[m] = v
    from .rings import RATIONAL_SQRT2
    return {k: GrassmannElement(terms, RATIONAL_SQRT2) for k, terms in sorted(orders.items())}


def ratio_to(x: GrassmannElement, y: GrassmannElement):
    """Scalar ``c`` with ``x == c * y``, or ``None``."""
    if y.is_zero():
        return None
    m0 = next(iter(y.terms))
    if m0 not in x.terms:
        return None
    c = x.terms[m0] / y.terms[m0]
    return c if x == y * c else None


def named_overlaps(modes: ModeSet) -> Report:
    """All sixteen eigenstate overlaps with prefactors, rendered and contracted in Fock space."""
    rep = Report("named-overlaps")
    ring = modes.ring
    lam = ParameterFunction.fresh(modes, "λn", ring)
    x = ParameterFunction.fresh(modes, "xn", ring)
    for left, right, c1, c2 in COMMON_SIGN:
        val = bra(left, lam, modes).inner(ket(right, x, modes))
        ok = val == common_sign_expected(left, right, lam, x)
        rep.add(f"<{left}_L|{right}_R>", "common-sign overlaps reduce to exponentials", ok,
                "0" if ok else val.to_text()[:200])
        unit = val * val.conjugate() == GrassmannElement.one(ring)
        rep.add(f"<{left}_L|{right}_R> unitarity", "modulus square equals one", unit)
    lam_fin = None
    for left, right in OPPOSITE_SIGN:
        val = bra(left, lam, modes).inner(ket(right, x, modes))
        delta = grassmann_delta(delta_argument(left, right, lam, x))
        c = ratio_to(val, delta)
        if lam_fin is None and c is not None:
            lam_fin = c
        ok = c is not None and c == lam_fin
        rep.add(f"<{left}_L|{right}_R>", "delta-type overlaps share one finite constant", ok,
                "0" if ok else val.to_text()[:200],
                f"ratio {c.to_text() if c is not None else 'none'}")
    rep.notes["lambda_fin"] = lam_fin.to_text() if lam_fin is not None else None
    return rep


def finite_lambda(modes: ModeSet) -> Exact:
    """Constant with ``<g_L[λ]|g_R[x]> = Λ_fin δ[λ - x]``."""
    ring = modes.ring
    lam = ParameterFunction.fresh(modes, "λΛ", ring)
    x = ParameterFunction.fresh(modes, "xΛ", ring)
    val = bra("g", lam, modes).inner(ket("g", x, modes))
    c = ratio_to(val, grassmann_delta(lam - x))
    if c is None:
        raise ArithmeticError("self-overlap is not proportional to the delta functional")
    return c


def _truncate(v: Laurent, order: int) -> Laurent:
    return Laurent({k: c for k, c in v.terms.items() if k <= order}, v.var)


def series_inverse(v: Laurent, precision: int) -> Laurent:
    """``1/v`` as a Laurent series kept through order ``precision``."""
    k0 = v.min_order()
    lead = v.coeff(k0)
    rest = Laurent({k - k0: c / lead for k, c in v.terms.items() if k != k0}, v.var)
    out = Laurent({0: 1}, v.var)
    term = Laurent({0: 1}, v.var)
    for _ in range(precision - k0 + 1):
        term = _truncate(term * (-rest), precision - k0)
        if term.is_zero():
            break
        out = out + term
    return Laurent({k - k0: c / lead for k, c in _truncate(out, precision + k0).terms.items()},
                   v.var)


def overlap_laurent_analytic(c1, c2, A: ParameterFunction, B: ParameterFunction,
                             precision: int, prefactors=None) -> GrassmannElement:
    """Closed form at ``t = 1 - eps`` as Laurent series in ``eps`` through ``precision``."""
    eps = LAURENT_EPS.symbol
    t = 1 - eps
    x = t * t * (c1 * c2) + 1
    inv = series_inverse(x, precision + 2 * A.modes.omega + 2)
    As = A.conj()
    expo = (contract(As, B) * (t * t * inv) + contract(B, B, "eps") * (t * t * t * inv * HALF * c1)
            + contract(As, As, "eps") * (t * t * t * inv * HALF * c2))
    expo = expo.map_coeffs(lambda v: _truncate(v, precision + 2 * A.modes.omega + 2))
    val = grassmann_exp(expo) * (x ** (A.modes.omega // 2))
    if prefactors:
        val = prefactors[0] * prefactors[1] * val
    return val.map_coeffs(lambda v: _truncate(v, precision))


def verify_delta_overlaps(modes: ModeSet) -> Report:
    """Opposite-sign overlaps in the Laurent ring at ``t = 1 - eps``.

    Direct Fock evaluation and the closed form agree order by order; the
    ``eps^0`` term is ``Λ_fin δ[f]`` and the regularized delta's leading
    order is ``exp(-i pi Omega/4) eps^-Omega δ[f]``.
    """
    rep = Report("delta-overlaps")
    lmodes = modes.with_ring(LAURENT_EPS)
    ring = LAURENT_EPS
    lam = ParameterFunction.fresh(lmodes, "λd", ring)
    x = ParameterFunction.fresh(lmodes, "xd", ring)
    lam_fin = None
    for left, right in OPPOSITE_SIGN:
        from .eigenstates import EigenstateSpec, spectral_function, r_sign
        sL = EigenstateSpec(left, "left", lam)
        sR = EigenstateSpec(right, "right", x)
        Astar = spectral_function(sL)
        B = spectral_function(sR)
        c1, c2 = r_sign(sL), r_sign(sR)
        pre = (prefactor(lam, lmodes), prefactor(x, lmodes))
        eps = ring.symbol
        direct = overlap_direct(c1, c2, Astar.conj(), B, 1 - eps, lmodes, pre)
        top = max((v.max_order() for v in direct.terms.values()), default=0)
        analytic = overlap_laurent_analytic(c1, c2, Astar.conj(), B, top, pre)
        ok = direct == analytic
        table = {str(k): v.to_text()[:120] for k, v in laurent_table(direct).items()}
        rep.add(f"<{left}_L|{right}_R> Laurent orders", "regularized opposite-sign overlaps",
                ok, "0" if ok else "order mismatch", laurent=table)
        f = delta_argument(left, right, lam, x)
        at_one = laurent_table(direct).get(0)
        delta = laurent_table(grassmann_delta(f))[0]
        c = ratio_to(at_one, delta) if at_one is not None else None
        if lam_fin is None:
            lam_fin = c
        rep.add(f"<{left}_L|{right}_R> at t=1", "finite orthogonality constant",
                c is not None and c == lam_fin, "0" if c is not None else "not a delta",
                f"ratio {c.to_text() if c is not None else 'none'}")
        reg = regularized_delta(f)
        lead = laurent_table(reg).get(-modes.omega)
        ok = lead is not None and lead == delta * discarded_phase(modes.omega)
        rep.add(f"p[f] for <{left}_L|{right}_R>", "regularized delta leading order", ok,
                laurent={str(k): v.to_text()[:120] for k, v in laurent_table(reg).items()})
    rep.notes["lambda_fin"] = lam_fin.to_text() if lam_fin is not None else None
    return rep


def sifting_sign(M: int) -> int:
    """``∫ f_1 ... f_M 𝒟[f] = (-1)^(M(M-1)/2)`` with the highest index integrated first."""
    return -1 if (M * (M - 1) // 2) % 2 else 1


def verify_sifting(modes: ModeSet, W: GrassmannElement = None, seed: int = 0) -> Report:
    """``∫ δ[f - f'] W[f] 𝒟[f] = s W[f']`` and ``∫ W[f] δ[f - f'] 𝒟[f] = s W~[f']``.

    ``s`` is :func:`sifting_sign` and ``W~`` is ``W`` with the grade involution
    applied when ``M`` is odd.
    """
    from .fock import involute
    from .samples import random_functional

    rep = Report("sifting")
    ring = modes.ring
    f = ParameterFunction.fresh(modes, "fs", ring, kind="phase-q")
    fp = ParameterFunction.fresh(modes, "fs'", ring, kind="phase-q")
    gens = f.generators()
    if W is None:
        W = random_functional(gens, seed, ring)
    shifted = W.substitute({g: fp[i] for i, g in enumerate(gens)})
    s = sifting_sign(modes.size)
    d = grassmann_delta(f - fp)
    left = berezin_integrate(d * W, gens)
    rep.add("∫ δ W 𝒟", "delta sifting with the delta on the left", left == shifted * s,
            detail=f"sign {s:+d}")
    right = berezin_integrate(W * d, gens)
    expect = shifted if modes.size % 2 == 0 else involute(shifted)
    rep.add("∫ W δ 𝒟", "delta sifting with the delta on the right", right == expect * s,
            detail=f"sign {s:+d}")
    return rep


def fourier_delta(modes: ModeSet) -> Report:
    """``∫ exp(q◇p) 𝒟[q]`` against ``δ[p]``."""
    rep = Report("fourier-delta")
    ring = modes.ring
    q = ParameterFunction.fresh(modes, "qf", ring, kind="phase-q")
    p = ParameterFunction.fresh(modes, "pf", ring, kind="phase-p")
    val = berezin_integrate(grassmann_exp(contract(q, p)), q.generators())
    c = ratio_to(val, grassmann_delta(p))
    rep.add("∫exp(q◇p)𝒟[q] ∝ δ[p]", "Grassmann Dirac delta from a Fourier integral",
            c is not None, f"constant {c.to_text() if c is not None else 'none'}")
    rep.notes["fourier_constant"] = c.to_text() if c is not None else None
    return rep
