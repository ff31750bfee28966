"""Left and right eigenstates of g, g+, h, h+ built by rendering operators."""

from __future__ import annotations

from dataclasses import dataclass

from .bogoliubov import INV_SQRT2, BosonizedFamily, build_bogoliubov, ladder
from .fock import (FockBra, FockOperator, FockState, bra_fermionic_adjoint,
                   ket_fermionic_adjoint, op_exp_apply)
from .grassmann import GrassmannElement, ParameterFunction, contract, grassmann_exp
from .modes import ModeSet
from .report import Report
from .rings import HALF, I, SQRT2, Exact, sqrt2_power

KINDS = ("g", "gbar", "h", "hbar")
RIGHT, LEFT = "right", "left"

# spectral-function map and R sign for each eigenstate: (scale, uses eps, R sign)
_RIGHT_MAP = {
    "g": (SQRT2, False, -1),
    "gbar": (-SQRT2, True, +1),
    "h": (-I * SQRT2, False, +1),
    "hbar": (I * SQRT2, True, -1),
}
_LEFT_MAP = {
    "g": (SQRT2, True, +1),
    "gbar": (SQRT2, False, -1),
    "h": (I * SQRT2, True, -1),
    "hbar": (I * SQRT2, False, +1),
}


def normalization(modes: ModeSet) -> Exact:
    """Constant part of every prefactor, ``2^(-Omega/4)``.

    With this choice the common-sign overlaps carry no leftover constant.
    """
    if modes.omega % 2:
        raise ValueError("prefactor normalization needs an even Omega")
    return sqrt2_power(-modes.omega // 2)


@dataclass
class EigenstateSpec:
    """``kind`` in g, gbar, h, hbar (eigenstates of g, g+, h, h+).

    For right states ``parameter`` is the eigenvalue function (g, ḡ, h, h̄);
    for left states it is the bra eigenvalue (γ*, γ̄*, θ*, θ̄*), used as given.
    """

    kind: str
    side: str
    parameter: ParameterFunction
    include_prefactor: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown eigenstate kind {self.kind!r}")
        if self.side not in (RIGHT, LEFT):
            raise ValueError("side must be 'right' or 'left'")


def spectral_function(spec: EigenstateSpec) -> ParameterFunction:
    """``A`` for right states, ``A*`` for left states."""
    scale, eps, _ = (_RIGHT_MAP if spec.side == RIGHT else _LEFT_MAP)[spec.kind]
    x = spec.parameter.eps_left() if eps else spec.parameter
    return x * scale


def r_sign(spec: EigenstateSpec) -> int:
    return (_RIGHT_MAP if spec.side == RIGHT else _LEFT_MAP)[spec.kind][2]


def prefactor(parameter: ParameterFunction, modes: ModeSet) -> GrassmannElement:
    """``2^(-Omega/4) exp(1/2 f f◇ f)``"""
    half = contract(parameter, parameter, "eps") * HALF
    return grassmann_exp(half) * normalization(modes)


def rendering_operator(spec: EigenstateSpec, modes: ModeSet) -> FockOperator:
    """``A+ ± R+`` (right) or ``A ± R`` (left)."""
    f = spectral_function(spec)
    if spec.side == RIGHT:
        fam = BosonizedFamily(modes, f)
        return fam.Adag + fam.Rdag * r_sign(spec)
    fam = BosonizedFamily.from_star(modes, f)
    return fam.Ahat + fam.R * r_sign(spec)


def render_eigenstate(spec: EigenstateSpec, modes: ModeSet):
    """``F exp(A+ ± R+)|vac>`` or ``F <vac| exp(A ± R)``."""
    ring = spec.parameter.ring
    op = rendering_operator(spec, modes)
    if spec.side == RIGHT:
        out = op_exp_apply(op, FockState.vacuum(modes, ring), "right")
    else:
        out = op_exp_apply(op, FockBra.vacuum(modes, ring), "left")
    if spec.include_prefactor:
        out = out.lmul(prefactor(spec.parameter, modes))
    return out


def ket(kind: str, parameter: ParameterFunction, modes: ModeSet, prefactor: bool = True):
    return render_eigenstate(EigenstateSpec(kind, RIGHT, parameter, prefactor), modes)


def bra(kind: str, parameter: ParameterFunction, modes: ModeSet, prefactor: bool = True):
    return render_eigenstate(EigenstateSpec(kind, LEFT, parameter, prefactor), modes)


def eigen_residual(op: FockOperator, state, eigenvalue: GrassmannElement, side: str = RIGHT):
    """``op|psi> - |psi> lam`` (right) or ``<psi|op - lam <psi|`` (left)."""
    if side == RIGHT:
        return op.apply(state) - state.rmul(eigenvalue)
    return op.apply_bra(state) - state.lmul(eigenvalue)


def eigen_operator(kind: str, modes: ModeSet, s: int, ring=None) -> FockOperator:
    b = build_bogoliubov(modes, ring)
    return {"g": b.g, "gbar": b.gd, "h": b.h, "hbar": b.hd}[kind][s]


def verify_eigen_equations(modes: ModeSet, parameters: dict = None) -> Report:
    """All eight eigen-equations for every mode; parameters default to fresh generators."""
    rep = Report("eigen-equations")
    ring = modes.ring
    b = build_bogoliubov(modes, ring)
    ops = {"g": b.g, "gbar": b.gd, "h": b.h, "hbar": b.hd}
    for side in (RIGHT, LEFT):
        for kind in KINDS:
            par = (parameters or {}).get((kind, side))
            if par is None:
                par = ParameterFunction.fresh(modes, f"{kind}{'R' if side == RIGHT else 'L'}", ring)
            state = render_eigenstate(EigenstateSpec(kind, side, par), modes)
            worst = 0.0
            for s in range(modes.size):
                res = eigen_residual(ops[kind][s], state, par[s], side)
                worst = max(worst, res.max_residual())
            name = f"{kind}_{'R' if side == RIGHT else 'L'}"
            rep.add(name, "eigen-equations of the rendered states", worst == 0,
                    f"{worst:.3g}")
    return rep


def verify_wrong_sign(modes: ModeSet) -> Report:
    """Flipping the R sign of |g_R> must break the eigen-equation."""
    rep = Report("eigen-sign")
    g = ParameterFunction.fresh(modes, "gw", modes.ring)
    b = build_bogoliubov(modes)
    fam = BosonizedFamily(modes, g * SQRT2)
    state = op_exp_apply(fam.Adag + fam.Rdag, FockState.vacuum(modes, modes.ring))
    worst = max(eigen_residual(b.g[s], state, g[s]).max_residual() for s in range(modes.size))
    rep.add("g with +R+", "rendering sign selection", worst > 0, f"{worst:.3g}",
            "residual must be nonzero")
    return rep


def verify_adjoint_relations(modes: ModeSet) -> Report:
    """Left states as Hermitian and fermionic adjoints of right states."""
    rep = Report("adjoints")
    ring = modes.ring
    x = ParameterFunction.fresh(modes, "x", ring)
    xs = x.conj()
    rights = {k: ket(k, x, modes) for k in KINDS}
    lefts = {k: bra(k, xs, modes) for k in KINDS}
    for k in KINDS:
        ok = ket_fermionic_adjoint(rights[k]) == lefts[k]
        rep.add(f"<{k}_L| = (|{k}_R>)‡", "fermionic adjoint maps right to left states", ok)
        ok = bra_fermionic_adjoint(ket_fermionic_adjoint(rights[k])) == rights[k]
        rep.add(f"‡‡ |{k}_R>", "fermionic adjoint squared is the identity", ok)
    for left, right in (("g", "gbar"), ("gbar", "g"), ("h", "hbar"), ("hbar", "h")):
        ok = rights[right].dagger() == lefts[left]
        rep.add(f"<{left}_L| = (|{right}_R>)+", "Hermitian adjoint pairs", ok)
    return rep


def spin_transform_relations(modes: ModeSet) -> Report:
    """The eight relations trading eigenstate kinds for ``i eps`` rotations."""
    rep = Report("spin-transforms")
    ring = modes.ring
    q = ParameterFunction.fresh(modes, "qv", ring)
    ieq = q.eps_left() * I  # i eps . q
    iqe = q.eps_right() * I  # i q . eps
    pairs = [
        ("|g_R[iε·q]> = |h̄_R[q]>", ket("g", ieq, modes), ket("hbar", q, modes)),
        ("|h̄_R[-iε·q]> = |g_R[q]>", ket("hbar", -ieq, modes), ket("g", q, modes)),
        ("|ḡ_R[iε·p]> = |h_R[p]>", ket("gbar", ieq, modes), ket("h", q, modes)),
        ("|h_R[-iε·p]> = |ḡ_R[p]>", ket("h", -ieq, modes), ket("gbar", q, modes)),
        ("<g_L[-iq·ε]| = <h̄_L[q]|", bra("g", -iqe, modes), bra("hbar", q, modes)),
        ("<h̄_L[iq·ε]| = <g_L[q]|", bra("hbar", iqe, modes), bra("g", q, modes)),
        ("<ḡ_L[-ip·ε]| = <h_L[p]|", bra("gbar", -iqe, modes), bra("h", q, modes)),
        ("<h_L[ip·ε]| = <ḡ_L[p]|", bra("h", iqe, modes), bra("gbar", q, modes)),
    ]
    for rid, lhs, rhs in pairs:
        rep.add(rid, "spin-transformed parameter functions", lhs == rhs)
    twice = ket("g", (ieq.eps_left() * I) * -1, modes) == ket("g", q, modes)
    rep.add("iε applied twice", "(iε)(-iε) = 1 on parameter functions", twice)
    return rep


def verify_generic_solution(a1, a2, b1, b2, c0, modes: ModeSet) -> Report:
    """Eigenstates of ``u = a1 a + a2 eps a+`` and ``v = b1 eps a + b2 a+``.

    Right candidates ``exp(A+ + c0 R+)|vac>`` work iff ``a1 c0 = -a2`` (resp.
    ``b1 c0 = -b2``); left candidates ``<vac|exp(A + c0 R)`` iff ``c0 a2 = a1``
    (resp. ``c0 b2 = b1``).
    """
    a1, a2, b1, b2, c0 = (Exact.coerce(x) for x in (a1, a2, b1, b2, c0))
    ring = modes.ring
    rep = Report("generic-solution")
    a, ad = ladder(modes, ring)
    A = ParameterFunction.fresh(modes, "Ag", ring)
    fam = BosonizedFamily(modes, A)
    right = op_exp_apply(fam.Adag + fam.Rdag * c0, FockState.vacuum(modes, ring))
    left = op_exp_apply(fam.Ahat + fam.R * c0, FockBra.vacuum(modes, ring), "left")
    Aeps = A.eps_left()
    Astar = A.conj()
    Aseps = Astar.eps_left()

    def eps_op(i, ops):
        out = FockOperator.zero(modes, ring)
        for j, e in modes.partners(i):
            out = out + ops[j] * e
        return out

    cases = []
    for r in range(modes.size):
        u = a[r] * a1 + eps_op(r, ad) * a2
        v = eps_op(r, a) * b1 + ad[r] * b2
        cases.append(("u right", r, u, right, A[r] * a1, RIGHT, a1 * c0 == -a2))
        cases.append(("v right", r, v, right, Aeps[r] * b1, RIGHT, b1 * c0 == -b2))
        cases.append(("u left", r, u, left, Aseps[r] * a2, LEFT, c0 * a2 == a1))
        cases.append(("v left", r, v, left, Astar[r] * b2, LEFT, c0 * b2 == b1))
    worst: dict[str, float] = {}
    expected: dict[str, bool] = {}
    for name, r, op, state, lam, side, cond in cases:
        res = eigen_residual(op, state, lam, side).max_residual()
        worst[name] = max(worst.get(name, 0.0), res)
        expected[name] = cond
    for name in worst:
        holds = worst[name] == 0
        rep.add(name, "generic rendering solution and its sign condition", holds == expected[name],
                f"{worst[name]:.3g}", f"condition {'met' if expected[name] else 'violated'}")
    return rep


# ---------------------------------------------------------------- Majorana ---

@dataclass
class MajoranaCheck:
    single_mode_pairs: dict
    eigen_residuals: dict
    unbiasedness: dict
    obstruction_residual: dict
    symmetric_mismatch: dict

    @property
    def passed(self) -> bool:
        return (all(r == 0 for r in self.eigen_residuals.values())
                and all(v == HALF for v in self.unbiasedness.values())
                and all(r > 0 for r in self.obstruction_residual.values())
                and all(not m.is_zero() for m in self.symmetric_mismatch.values()))


def majorana_ops(modes: ModeSet, i: int, ring=None):
    ring = ring or modes.ring
    a, ad = ladder(modes, ring)
    m = (a[i] + ad[i]) * INV_SQRT2
    n = (a[i] - ad[i]) * (-I * INV_SQRT2)
    return m, n


def majorana_demo(k_points: int = 2) -> MajoranaCheck:
    """Single-mode eigenpairs and the multimode obstruction (one spin, ``k_points`` modes)."""
    one = ModeSet(1, 1)
    ring = one.ring
    m, n = majorana_ops(one, 0)
    vac = FockState.vacuum(one, ring)
    occ = FockState.basis(one, 1, ring)
    states = {
        "m+": (vac + occ).lmul(INV_SQRT2), "m-": (vac - occ).lmul(INV_SQRT2),
        # with n = -i(a - a+)/sqrt2 the +1/sqrt2 eigenvector is |vac> + i|1>
        "n+": (vac + occ.lmul(I)).lmul(INV_SQRT2), "n-": (vac - occ.lmul(I)).lmul(INV_SQRT2),
    }
    values = {"m+": INV_SQRT2, "m-": -INV_SQRT2, "n+": INV_SQRT2, "n-": -INV_SQRT2}
    residuals = {}
    for key, st in states.items():
        op = m if key[0] == "m" else n
        lam = GrassmannElement.scalar(values[key], ring)
        residuals[key] = eigen_residual(op, st, lam).max_residual()
    unbiased = {}
    for x in ("m+", "m-"):
        for y in ("n+", "n-"):
            ov = states[x].dagger().inner(states[y]).scalar_part()
            unbiased[f"<{x}|{y}>"] = ov * ov.conj()

    modes = ModeSet(k_points, 1)
    ring = modes.ring
    lam = ParameterFunction.fresh(modes, "λm", ring)
    a, ad = ladder(modes, ring)
    # the only R-type bilinear available without a spin pairing: 1/2 sum a+_i a+_i, identically zero
    rbil = FockOperator(modes, [(GrassmannElement.scalar(HALF, ring), ((i, 1), (i, 1)))
                                for i in range(modes.size)], ring)
    obstruction = {}
    for c0 in (1, -1):
        fam = BosonizedFamily(modes, lam * SQRT2)
        psi = op_exp_apply(fam.Adag + rbil * c0, FockState.vacuum(modes, ring))
        worst = 0.0
        for t in range(modes.size):
            mt, _ = majorana_ops(modes, t)
            worst = max(worst, eigen_residual(mt, psi, lam[t]).max_residual())
        obstruction[c0] = worst
    # Direct sector analysis with mu0 = 1.  The vacuum sector fixes mu1; the
    # one-particle sector then demands a two-particle tensor M_tv with
    # sum_v M_tv |v> = -sqrt2 r_t, and M must be antisymmetric to exist.
    mu0 = GrassmannElement.one(ring)
    psi01 = None
    for c in (SQRT2, -SQRT2):
        amps = {0: mu0}
        for u in range(modes.size):
            amps[1 << u] = lam[u] * c
        trial = FockState(modes, amps, ring)
        ok = all(eigen_residual(majorana_ops(modes, t)[0], trial, lam[t]).amplitude(0).is_zero()
                 for t in range(modes.size))
        if ok:
            psi01 = trial
            break
    if psi01 is None:
        raise RuntimeError("vacuum sector has no solution")
    required = {}
    for t in range(modes.size):
        r = eigen_residual(majorana_ops(modes, t)[0], psi01, lam[t])
        for v in range(modes.size):
            required[(t, v)] = r.amplitude(1 << v) * (-SQRT2)
    mismatch = {}
    for t in range(modes.size):
        for v in range(modes.size):
            mismatch[(t, v)] = (required[(t, v)] + required[(v, t)]) * HALF
    return MajoranaCheck(
        {k: v for k, v in states.items()}, residuals, unbiased, obstruction,
        {k: v for k, v in mismatch.items() if not v.is_zero()},
    )
