"""
Eigenstates of the Bogoliubov operators and their overlaps
==========================================================

Build the four eigenstate families on one k-point with two spins, check
the eigen-equations, then compare the closed-form overlap with the one
obtained by brute-force application of the exponentials.
"""

from fermiwig import ModeSet
from fermiwig.bogoliubov import build_bogoliubov
from fermiwig.eigenstates import KINDS, bra, eigen_residual, ket
from fermiwig.grassmann import ParameterFunction
from fermiwig.overlaps import h_closed_form, h_ode_check, overlap_analytic, overlap_direct
from fermiwig.rings import Exact

modes = ModeSet(1, 2)
ops = build_bogoliubov(modes)

# one fresh Grassmann parameter per mode; each family has a ket and a bra
for kind in KINDS:
    lam = ParameterFunction.fresh(modes, "λ" + kind)
    op = {"g": ops.g, "gbar": ops.gd, "h": ops.h, "hbar": ops.hd}[kind]
    for side, state in (("right", ket(kind, lam, modes)), ("left", bra(kind, lam, modes))):
        worst = max(eigen_residual(op[s], state, lam[s], side).max_residual()
                    for s in range(modes.size))
        print(f"{kind:5s} {side:5s}: largest eigen-equation residual {worst}")

# the h-functions of the disentangled overlap at t = 1/2
h = h_closed_form(1, 1, Exact(1, 0, 0, 0, 2))
print("h1(1/2) =", h.h1.to_text(), " h2(1/2) =", h.h2.to_text())

# they solve their differential equations; RK4 agrees with the closed form
print("ODE check for (c1, c2) = (1, -1):", h_ode_check(1, -1))

# the overlap <vac|exp(tA + tR) exp(tB+ + tR+)|vac> two ways
A = ParameterFunction.fresh(modes, "A")
B = ParameterFunction.fresh(modes, "B")
t = Exact(1, 0, 0, 0, 3)
direct = overlap_direct(1, 1, A, B, t, modes)
closed = overlap_analytic(1, 1, A, B, t, modes.omega)
print("closed form equals direct evaluation:", direct == closed)
print("overlap =", closed.to_text())
