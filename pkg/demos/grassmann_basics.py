"""
Grassmann numbers and Berezin integrals
=======================================

Anticommuting generators, their exponentials and the integral that
picks out the top monomial.  Everything here is exact.
"""

from fermiwig import RATIONAL, GrassmannElement, berezin_integrate, grassmann_exp
from fermiwig.grassmann import REGISTRY

ring = RATIONAL

# two fresh odd generators
t1, t2 = REGISTRY.fresh("θ", 2)
a = GrassmannElement.gen(t1, ring)
b = GrassmannElement.gen(t2, ring)

# they anticommute and square to zero
print("a*b + b*a =", (a * b + b * a).to_text())
print("a*a       =", (a * a).to_text())

# the exponential of an even element stops after one term
x = a * b * 3
print("exp(3ab)  =", grassmann_exp(x).to_text())

# Berezin integration takes the last variable first: b is removed
# from ab by moving it to the front, so ab integrates to -1
print("∫ab dθ1 dθ2 =", berezin_integrate(a * b, [t1, t2]).to_text())
print("∫ba dθ1 dθ2 =", berezin_integrate(b * a, [t1, t2]).to_text())

# a Gaussian integral: ∫exp(c ab) keeps the same sign, -c
print("∫exp(5ab)   =", berezin_integrate(grassmann_exp(a * b * 5), [t1, t2]).to_text())
