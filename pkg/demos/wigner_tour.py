"""
A tour of fermionic phase space
===============================

Wigner functionals of the ladder and quadrature operators, the Weyl
transform back to operators, the phase-space integral and the star
product, all on a single k-point with two spins.
"""

from fermiwig import ModeSet
from fermiwig.bogoliubov import build_bogoliubov, ladder
from fermiwig.fock import operators_equal
from fermiwig.wigner import (phase_space, phase_space_trace, star2, supertrace,
                             weyl_transform, wigner_transform)

modes = ModeSet(1, 2)
a, ad = ladder(modes)
ops = build_bogoliubov(modes)

# quadratures become the phase-space variables themselves
print("W[g0]  =", wigner_transform(ops.g[0], modes).to_text())
print("W[gd0] =", wigner_transform(ops.gd[0], modes).to_text())

# ladder operators are linear combinations of q and p
print("W[a0]  =", wigner_transform(a[0], modes).to_text())

# a number operator picks up a constant shift
N0 = ad[0] * a[0]
W = wigner_transform(N0, modes)
print("W[a0+ a0] =", W.to_text())

# Weyl undoes Wigner exactly
print("Weyl(W) == a0+ a0:", operators_equal(weyl_transform(W), N0))

# the phase-space integral gives the supertrace
print("∫W =", phase_space_trace(W).to_text(), " str =", supertrace(N0).to_text())

# star product of two functionals is the functional of the product
q, p = phase_space(modes, "out")
WA, WB = wigner_transform(a[0], modes), wigner_transform(ad[1], modes)
lhs = star2(WA, WB, q=q, p=p)
rhs = wigner_transform(a[0] * ad[1], modes, q, p)
print("W[a0] ⋆ W[a1+] == W[a0 a1+]:", lhs.value == rhs.value)
