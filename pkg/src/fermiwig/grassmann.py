"""Finite Grassmann algebra over a pluggable coefficient ring.

Monomials are bitsets of generator ids taken from one global, append-only
registry; a monomial lists its generators in increasing id order.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .modes import ModeSet
from .rings import FLOAT, Exact, Laurent, Ring, RingMismatchError

_SCALARS = (int, Fraction, float, complex, Exact, Laurent)

GENERATOR_KINDS = ("fock-parameter", "phase-q", "phase-p", "auxiliary")


class ParityError(ValueError):
    """An odd element was required and something else was supplied."""


class SeriesError(RuntimeError):
    """A power series that should terminate did not."""


@dataclass(frozen=True)
class Generator:
    id: int
    label: str
    kind: str = "auxiliary"

    @property
    def bit(self) -> int:
        return 1 << self.id


class Registry:
    """Append-only ordered table of generators; safe for concurrent registration."""

    def __init__(self):
        self._gens: list[Generator] = []
        self._by_label: dict[str, Generator] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._gens)

    def __getitem__(self, gid: int) -> Generator:
        return self._gens[gid]

    def new(self, label: str, kind: str = "auxiliary") -> Generator:
        if kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        with self._lock:
            base, n = label, 1
            while label in self._by_label:
                n += 1
                label = f"{base}'{n}"
            g = Generator(len(self._gens), label, kind)
            self._gens.append(g)
            self._by_label[label] = g
            return g

    def lookup(self, label: str, kind: str = "auxiliary", create: bool = True) -> Generator:
        with self._lock:
            g = self._by_label.get(label)
        if g is None:
            if not create:
                raise KeyError(label)
            g = self.new(label, kind)
        return g

    @contextmanager
    def scope(self):
        """Start label deduplication afresh; generators made inside are forgotten by label on exit.

        Ids keep growing, so elements built before and inside the scope stay
        compatible, but labels inside repeat exactly on every run.
        """
        with self._lock:
            saved, self._by_label = self._by_label, {}
        try:
            yield self
        finally:
            with self._lock:
                self._by_label = saved

    def fresh(self, prefix: str, n: int, kind: str = "auxiliary", labels=None) -> list[Generator]:
        labels = labels or [str(i + 1) for i in range(n)]
        return [self.new(f"{prefix}[{labels[i]}]", kind) for i in range(n)]


REGISTRY = Registry()


# ---------------------------------------------------------------- kernel ---

@lru_cache(maxsize=1 << 18)
def merge_sign(a: int, b: int) -> int:
    """Sign of concatenating sorted monomials ``a`` then ``b`` and sorting."""
    s = 0
    while b:
        low = b & -b
        s += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if s & 1 else 1


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def reversal_sign(m: int) -> int:
    g = m.bit_count()
    return -1 if (g * (g - 1) // 2) & 1 else 1


class GrassmannElement:
    """Immutable sparse element ``sum coeff * monomial``."""

    __slots__ = ("terms", "ring")

    def __init__(self, terms=None, ring: Ring = None, _trusted=False):
        if ring is None:
            raise ValueError("a coefficient ring is required")
        self.ring = ring
        if _trusted:
            self.terms = terms
            return
        clean = {}
        if terms:
            for m, c in terms.items():
                c = ring.coerce(c)
                if not ring.is_zero(c):
                    clean[m] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring) -> "GrassmannElement":
        return cls({}, ring, _trusted=True)

    @classmethod
    def scalar(cls, c, ring: Ring) -> "GrassmannElement":
        return cls({0: c}, ring)

    @classmethod
    def one(cls, ring: Ring) -> "GrassmannElement":
        return cls.scalar(1, ring)

    @classmethod
    def gen(cls, g: Generator, ring: Ring, coeff=1) -> "GrassmannElement":
        return cls({g.bit: coeff}, ring)

    @classmethod
    def monomial(cls, gens, ring: Ring, coeff=1) -> "GrassmannElement":
        """Product ``coeff * g1 g2 ...`` in the order given."""
        out = cls.scalar(coeff, ring)
        for g in gens:
            out = out * cls.gen(g, ring)
        return out

    # -- helpers ------------------------------------------------------
    def _lift(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            if other.ring is not self.ring:
                raise RingMismatchError(f"cannot combine {self.ring.name} with {other.ring.name}")
            return other
        return GrassmannElement({0: self.ring.coerce(other)}, self.ring, _trusted=True) \
            if not self.ring.is_zero(self.ring.coerce(other)) else GrassmannElement.zero(self.ring)

    def _new(self, terms: dict) -> "GrassmannElement":
        ring = self.ring
        if not ring.exact:
            terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}
        else:
            terms = {m: c for m, c in terms.items() if not c.is_zero()}
        return GrassmannElement(terms, ring, _trusted=True)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def support(self) -> int:
        s = 0
        for m in self.terms:
            s |= m
        return s

    def parity(self):
        """0 or 1 for homogeneous elements, ``None`` for mixed ones (zero is even)."""
        par = {m.bit_count() & 1 for m in self.terms}
        if not par:
            return 0
        if len(par) == 2:
            return None
        return par.pop()

    def is_even(self) -> bool:
        return self.parity() == 0

    def is_odd(self) -> bool:
        return bool(self.terms) and self.parity() == 1

    def even_part(self) -> "GrassmannElement":
        return GrassmannElement({m: c for m, c in self.terms.items() if not m.bit_count() & 1},
                                self.ring, _trusted=True)

    def odd_part(self) -> "GrassmannElement":
        return GrassmannElement({m: c for m, c in self.terms.items() if m.bit_count() & 1},
                                self.ring, _trusted=True)

    def scalar_part(self):
        return self.terms.get(0, self.ring.zero)

    def grade_part(self, g: int) -> "GrassmannElement":
        return GrassmannElement({m: c for m, c in self.terms.items() if m.bit_count() == g},
                                self.ring, _trusted=True)

    def coeff(self, monomial_gens) -> object:
        """Coefficient of the canonical monomial formed by ``monomial_gens``."""
        m = 0
        for g in monomial_gens:
            m |= g.bit
        return self.terms.get(m, self.ring.zero)

    def generators(self) -> list[Generator]:
        return [REGISTRY[i] for i in _bits(self.support)]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement({m: -c for m, c in self.terms.items()}, self.ring, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            c = self.ring.coerce(other)
            return self._new({m: v * c for m, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                p = c1 * c2
                if merge_sign(m1, m2) < 0:
                    p = -p
                if m in out:
                    out[m] = out[m] + p
                else:
                    out[m] = p
        return self._new(out)

    def __rmul__(self, other):
        # scalars commute with everything
        if not isinstance(other, _SCALARS):
            return NotImplemented
        c = self.ring.coerce(other)
        return self._new({m: c * v for m, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, GrassmannElement):
            raise TypeError("division by a Grassmann element is not supported")
        c = self.ring.coerce(other)
        return self._new({m: v / c for m, v in self.terms.items()})

    def __pow__(self, n: int):
        out = GrassmannElement.one(self.ring)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (RingMismatchError, TypeError):
            return NotImplemented
        if self.ring.exact:
            return self.terms == other.terms
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def close_to(self, other, tol=1e-12) -> bool:
        other = self._lift(other)
        for m in set(self.terms) | set(other.terms):
            a = complex(self.terms.get(m, 0))
            b = complex(other.terms.get(m, 0))
            if abs(a - b) > tol:
                return False
        return True

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    # -- algebra operations ------------------------------------------
    def exp(self) -> "GrassmannElement":
        return grassmann_exp(self)

    def conjugate(self) -> "GrassmannElement":
        return conjugate(self)

    def integrate(self, variables) -> "GrassmannElement":
        return berezin_integrate(self, variables)

    def substitute(self, assignment) -> "GrassmannElement":
        return substitute(self, assignment)

    def to_ring(self, ring: Ring) -> "GrassmannElement":
        return GrassmannElement({m: ring.coerce(c) for m, c in self.terms.items()}, ring)

    def map_coeffs(self, fn) -> "GrassmannElement":
        return self._new({m: fn(c) for m, c in self.terms.items()})

    def __repr__(self):
        return f"GrassmannElement({self.to_text()})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            gens = " ".join(f"<{REGISTRY[i].label}>" for i in _bits(m))
            c = self.ring.to_text(self.terms[m])
            parts.append(f"{c} * {gens}" if gens else c)
        return " + ".join(parts)


def grassmann_exp(a: GrassmannElement, cap: int = None) -> GrassmannElement:
    """Terminating series ``sum a**n / n!``."""
    ring = a.ring
    s = a.scalar_part()
    nil = a
    prefactor = None
    if not ring.is_zero(s):
        if ring is not FLOAT:
            raise ValueError("exp of an element with nonzero scalar part is not exact")
        import cmath
        prefactor = cmath.exp(s)
        nil = a - s
    cap = cap if cap is not None else nil.support.bit_count() + 2
    result = GrassmannElement.one(ring)
    term = GrassmannElement.one(ring)
    n = 0
    while True:
        n += 1
        term = term * nil / n
        if term.is_zero():
            break
        if n > cap:
            raise SeriesError("exponential series failed to terminate")
        result = result + term
    return result * prefactor if prefactor is not None else result


def conjugate(a: GrassmannElement) -> GrassmannElement:
    """Complex-conjugate coefficients and reverse each monomial; generators are real."""
    ring = a.ring
    out = {}
    for m, c in a.terms.items():
        c = ring.conj(c)
        out[m] = -c if reversal_sign(m) < 0 else c
    return GrassmannElement(out, ring, _trusted=True)


def _as_ids(variables) -> list[int]:
    ids = []
    for v in variables:
        if isinstance(v, Generator):
            ids.append(v.id)
        elif isinstance(v, int):
            ids.append(v)
        else:
            raise TypeError(f"not a generator: {v!r}")
    return ids


def berezin_integrate(a: GrassmannElement, variables) -> GrassmannElement:
    """Iterated Berezin integral, last variable first.

    Each step keeps the terms containing the variable, moves it to the front
    (sign = number of generators preceding it) and strips it.
    """
    terms = a.terms
    for gid in reversed(_as_ids(variables)):
        bit = 1 << gid
        below = bit - 1
        out = {}
        for m, c in terms.items():
            if m & bit:
                out[m ^ bit] = -c if (m & below).bit_count() & 1 else c
        terms = out
    return GrassmannElement(terms, a.ring, _trusted=True)


def left_derivative(a: GrassmannElement, g: Generator) -> GrassmannElement:
    return berezin_integrate(a, [g])


def substitute(a: GrassmannElement, assignment) -> GrassmannElement:
    """Simultaneous substitution of generators by odd elements (an algebra morphism)."""
    images = {}
    for g, img in assignment.items():
        gid = g.id if isinstance(g, Generator) else int(g)
        if not isinstance(img, GrassmannElement):
            raise ParityError("substitution images must be Grassmann elements")
        if img.ring is not a.ring:
            raise RingMismatchError("substitution image lives in another ring")
        if not img.is_zero() and img.parity() != 1:
            raise ParityError(f"image of generator {gid} is not odd")
        images[gid] = img
    if not images:
        return a
    mask = 0
    for gid in images:
        mask |= 1 << gid
    ring = a.ring
    cache: dict[int, GrassmannElement] = {}
    out = GrassmannElement.zero(ring)
    fixed: dict = {}
    for m, c in a.terms.items():
        if not m & mask:
            fixed[m] = c
            continue
        prod = GrassmannElement({0: c}, ring, _trusted=True)
        for gid in _bits(m):
            img = images.get(gid)
            if img is None:
                img = cache.get(gid)
                if img is None:
                    img = cache[gid] = GrassmannElement({1 << gid: ring.one}, ring, _trusted=True)
            prod = prod * img
        out = out + prod
    return out + GrassmannElement(fixed, ring, _trusted=True)


# ------------------------------------------------------ parameter functions ---

class ParameterFunction:
    """Per-mode odd Grassmann components, e.g. a spectral function A_s(k)."""

    __slots__ = ("modes", "components", "conjugated")

    def __init__(self, modes: ModeSet, components, conjugated: bool = False):
        comps = list(components)
        if len(comps) != modes.size:
            raise ValueError(f"expected {modes.size} components, got {len(comps)}")
        ring = None
        for c in comps:
            if not isinstance(c, GrassmannElement):
                raise ParityError("components must be Grassmann elements")
            if ring is None:
                ring = c.ring
            elif c.ring is not ring:
                raise RingMismatchError("components live in different rings")
            if not c.is_zero() and c.parity() != 1:
                raise ParityError("parameter function components must be odd")
        self.modes = modes
        self.components = tuple(comps)
        self.conjugated = conjugated

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i) -> GrassmannElement:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    @classmethod
    def zeros(cls, modes: ModeSet, ring: Ring = None) -> "ParameterFunction":
        ring = ring or modes.ring
        return cls(modes, [GrassmannElement.zero(ring) for _ in range(modes.size)])

    @classmethod
    def fresh(cls, modes: ModeSet, name: str, ring: Ring = None, kind: str = "fock-parameter",
              coeffs=None) -> "ParameterFunction":
        """One fresh generator per mode, optionally scaled by ``coeffs``."""
        ring = ring or modes.ring
        gens = REGISTRY.fresh(name, modes.size, kind, [modes.label(i) for i in range(modes.size)])
        coeffs = coeffs if coeffs is not None else [1] * modes.size
        return cls(modes, [GrassmannElement.gen(g, ring, c) for g, c in zip(gens, coeffs)])

    def generators(self) -> list[Generator]:
        """The generators of a freshly made function, in mode order."""
        out = []
        for c in self.components:
            if len(c.terms) != 1:
                raise ValueError("component is not a single scaled generator")
            (m,) = c.terms
            if m.bit_count() != 1:
                raise ValueError("component is not a single scaled generator")
            out.append(REGISTRY[m.bit_length() - 1])
        return out

    def _same(self, other: "ParameterFunction"):
        if other.modes.size != self.modes.size:
            raise ValueError("mode count mismatch")

    def __add__(self, other):
        self._same(other)
        return ParameterFunction(self.modes, [a + b for a, b in zip(self, other)], self.conjugated)

    def __sub__(self, other):
        self._same(other)
        return ParameterFunction(self.modes, [a - b for a, b in zip(self, other)], self.conjugated)

    def __neg__(self):
        return ParameterFunction(self.modes, [-a for a in self], self.conjugated)

    def __mul__(self, c):
        return ParameterFunction(self.modes, [a * c for a in self], self.conjugated)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return ParameterFunction(self.modes, [a / c for a in self], self.conjugated)

    def __eq__(self, other):
        if not isinstance(other, ParameterFunction):
            return NotImplemented
        return self.components == other.components

    def conj(self) -> "ParameterFunction":
        return ParameterFunction(self.modes, [conjugate(a) for a in self], not self.conjugated)

    def eps_left(self) -> "ParameterFunction":
        """(eps . f)_s = eps_{s,r} f_r"""
        m = self.modes
        ring = self.ring
        out = []
        for i in range(m.size):
            acc = GrassmannElement.zero(ring)
            for j, e in m.partners(i):
                acc = acc + self.components[j] * e
            out.append(acc)
        return ParameterFunction(m, out, self.conjugated)

    def eps_right(self) -> "ParameterFunction":
        """(f . eps)_s = f_r eps_{r,s}"""
        m = self.modes
        ring = self.ring
        out = [GrassmannElement.zero(ring) for _ in range(m.size)]
        for j in range(m.size):
            for i, e in m.partners(j):
                out[i] = out[i] + self.components[j] * e
        return ParameterFunction(m, out, self.conjugated)

    def substitute(self, assignment) -> "ParameterFunction":
        return ParameterFunction(self.modes, [substitute(a, assignment) for a in self],
                                 self.conjugated)

    def to_ring(self, ring: Ring) -> "ParameterFunction":
        return ParameterFunction(self.modes, [a.to_ring(ring) for a in self], self.conjugated)

    def __repr__(self):
        return f"ParameterFunction([{', '.join(c.to_text() for c in self)}])"


def contract(A: ParameterFunction, B: ParameterFunction, kind: str = "plain") -> GrassmannElement:
    """``A ◇ B = sum_i w_i A_i B_i`` or, for ``kind='eps'``, ``sum w A_s eps_{s,r} B_r``.

    Components are used as given; conjugate ``A`` first for the starred form.
    """
    if len(A) != len(B):
        raise ValueError("mode count mismatch in contraction")
    modes = A.modes
    ring = A.ring
    acc = GrassmannElement.zero(ring)
    if kind == "plain":
        for i in range(modes.size):
            acc = acc + A[i] * B[i] * modes.weight(i)
    elif kind == "eps":
        for i in range(modes.size):
            for j, e in modes.partners(i):
                acc = acc + A[i] * B[j] * (e * modes.weight(i))
    else:
        raise ValueError(f"unknown contraction kind {kind!r}")
    return acc


def grassmann_delta(f: ParameterFunction) -> GrassmannElement:
    """Ordered product of all components (the top-monomial delta functional)."""
    out = GrassmannElement.one(f.ring)
    for c in f:
        out = out * c
    return out


def lift_scalar(x, ring: Ring) -> GrassmannElement:
    if isinstance(x, GrassmannElement):
        return x
    return GrassmannElement.scalar(x, ring)


def exact(x) -> Exact:
    return Exact.coerce(x)


def factorial_inverse(n: int) -> Exact:
    return Exact(1, 0, 0, 0, factorial(n))
