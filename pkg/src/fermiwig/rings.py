"""Coefficient rings for Grassmann elements.

Three families are provided:

* ``Exact`` -- elements of Q(i, sqrt2), stored as four integer numerators over a
  common positive denominator.  ``RATIONAL`` restricts to Gaussian rationals,
  ``SQRT2`` allows the sqrt2 extension.
* ``Laurent`` -- Laurent polynomials in one formal symbol (the regulator ``eps``
  or the formal exponential unit ``u``) with ``Exact`` coefficients.
* complex floats (``FLOAT``), pruned below ``FLOAT_TOL`` after every operation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

FLOAT_TOL = 1e-12


class RingMismatchError(TypeError):
    """Raised when elements of different coefficient rings are combined."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Exact:
    """Exact element ``(a + b*i + (c + d*i)*sqrt2) / den`` of Q(i, sqrt2)."""

    __slots__ = ("a", "b", "c", "d", "den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0, den=1):
        if den <= 0:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = math.gcd(math.gcd(math.gcd(a, b), math.gcd(c, d)), den)
        if g > 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
        self.a, self.b, self.c, self.d, self.den = a, b, c, d, den
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_parts(cls, re=0, im=0, s2re=0, s2im=0) -> "Exact":
        parts = [_as_fraction(v) for v in (re, im, s2re, s2im)]
        den = math.lcm(*(p.denominator for p in parts))
        nums = [p.numerator * (den // p.denominator) for p in parts]
        return cls(*nums, den)

    @classmethod
    def coerce(cls, x) -> "Exact":
        if isinstance(x, Exact):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, (Fraction, Rational)):
            f = Fraction(x)
            return cls(f.numerator, 0, 0, 0, f.denominator)
        if isinstance(x, complex):
            raise TypeError("floating complex values cannot enter an exact ring")
        raise TypeError(f"cannot coerce {x!r} to an exact scalar")

    # -- accessors ----------------------------------------------------
    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (Fraction(self.a, self.den), Fraction(self.b, self.den),
                Fraction(self.c, self.den), Fraction(self.d, self.den))

    def has_sqrt2(self) -> bool:
        return self.c != 0 or self.d != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_one(self) -> bool:
        return self.a == self.den and self.b == 0 and self.c == 0 and self.d == 0

    def conj(self) -> "Exact":
        return Exact(self.a, -self.b, self.c, -self.d, self.den)

    def __complex__(self) -> complex:
        r2 = math.sqrt(2.0)
        return complex((self.a + self.c * r2) / self.den, (self.b + self.d * r2) / self.den)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Exact):
            try:
                o = Exact.coerce(o)
            except TypeError:
                return NotImplemented
        if self.den == o.den:
            return Exact(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.den)
        d1, d2 = self.den, o.den
        return Exact(self.a * d2 + o.a * d1, self.b * d2 + o.b * d1,
                     self.c * d2 + o.c * d1, self.d * d2 + o.d * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Exact(-self.a, -self.b, -self.c, -self.d, self.den)

    def __sub__(self, o):
        if not isinstance(o, Exact):
            try:
                o = Exact.coerce(o)
            except TypeError:
                return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, int):
            return Exact(self.a * o, self.b * o, self.c * o, self.d * o, self.den)
        if not isinstance(o, Exact):
            try:
                o = Exact.coerce(o)
            except TypeError:
                return NotImplemented
        # (x + y s)(u + v s) = xu + 2yv + (xv + yu) s, with x, y, u, v Gaussian
        xa, xb, ya, yb = self.a, self.b, self.c, self.d
        ua, ub, va, vb = o.a, o.b, o.c, o.d
        xu_a = xa * ua - xb * ub
        xu_b = xa * ub + xb * ua
        yv_a = ya * va - yb * vb
        yv_b = ya * vb + yb * va
        xv_a = xa * va - xb * vb
        xv_b = xa * vb + xb * va
        yu_a = ya * ua - yb * ub
        yu_b = ya * ub + yb * ua
        return Exact(xu_a + 2 * yv_a, xu_b + 2 * yv_b, xv_a + yu_a, xv_b + yu_b,
                     self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Exact":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # 1/(x + y s) = (x - y s) / (x^2 - 2 y^2);  x, y Gaussian integers over den
        num = Exact(self.a, self.b, -self.c, -self.d, 1)
        nx = Exact(self.a, self.b, 0, 0, 1)
        ny = Exact(self.c, self.d, 0, 0, 1)
        g = nx * nx - ny * ny * 2  # Gaussian integer
        norm = g.a * g.a + g.b * g.b
        ginv = Exact(g.a * self.den, -g.b * self.den, 0, 0, norm)
        return num * ginv

    def __truediv__(self, o):
        if isinstance(o, int):
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return Exact(self.a, self.b, self.c, self.d, self.den * o)
        if not isinstance(o, Exact):
            try:
                o = Exact.coerce(o)
            except TypeError:
                return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Exact.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Exact(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o):
        if not isinstance(o, Exact):
            try:
                o = Exact.coerce(o)
            except TypeError:
                return NotImplemented
        return (self.a, self.b, self.c, self.d, self.den) == (o.a, o.b, o.c, o.d, o.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.c, self.d, self.den))
        return self._hash

    def __repr__(self):
        return f"Exact({self.to_text()})"

    def to_text(self) -> str:
        re, im, s2re, s2im = self.parts
        if s2re == 0 and s2im == 0:
            return f"({re},{im})"
        return f"({re},{im},{s2re},{s2im})"

    @classmethod
    def from_text(cls, text: str) -> "Exact":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"bad exact scalar {text!r}")
        fields = [f.strip() for f in body[1:-1].split(",")]
        if len(fields) not in (2, 4):
            raise ValueError(f"bad exact scalar {text!r}")
        return cls.from_parts(*fields)


I = Exact(0, 1)
SQRT2 = Exact(0, 0, 1, 0)
HALF = Exact(1, 0, 0, 0, 2)


def sqrt2_power(n2: int) -> Exact:
    """Return 2**(n2/2) exactly, i.e. sqrt2 raised to ``n2``."""
    if n2 >= 0:
        return SQRT2 ** n2
    return (SQRT2 ** (-n2)).inverse()


class Laurent:
    """Laurent polynomial ``sum_k c_k * x**k`` with ``Exact`` coefficients."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var="eps"):
        self.var = var
        clean = {}
        if terms:
            for k, v in terms.items():
                v = Exact.coerce(v)
                if not v.is_zero():
                    clean[int(k)] = v
        self.terms = clean

    @classmethod
    def monomial(cls, k: int, coef=1, var="eps") -> "Laurent":
        return cls({k: coef}, var)

    def _wrap(self, o) -> "Laurent":
        if isinstance(o, Laurent):
            if o.var != self.var:
                raise RingMismatchError(f"Laurent symbols differ: {self.var} vs {o.var}")
            return o
        return Laurent({0: Exact.coerce(o)}, self.var)

    def is_zero(self) -> bool:
        return not self.terms

    def conj(self) -> "Laurent":
        # the formal symbol is real
        return Laurent({k: v.conj() for k, v in self.terms.items()}, self.var)

    def __add__(self, o):
        try:
            o = self._wrap(o)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return Laurent(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -v for k, v in self.terms.items()}, self.var)

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        try:
            o = self._wrap(o)
        except TypeError:
            return NotImplemented
        out: dict[int, Exact] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = k1 + k2
                p = v1 * v2
                out[k] = out[k] + p if k in out else p
        return Laurent(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Laurent):
            if len(o.terms) != 1:
                raise ZeroDivisionError("only monomial divisors are invertible in the Laurent ring")
            (k, v), = o.terms.items()
            inv = v.inverse()
            return Laurent({kk - k: vv * inv for kk, vv in self.terms.items()}, self.var)
        inv = Exact.coerce(o).inverse()
        return Laurent({k: v * inv for k, v in self.terms.items()}, self.var)

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ZeroDivisionError("negative power of a non-monomial Laurent polynomial")
            (k, v), = self.terms.items()
            return Laurent({k * n: v ** n}, self.var)
        result = Laurent({0: 1}, self.var)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, o):
        try:
            o = self._wrap(o)
        except (TypeError, RingMismatchError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.terms.items()))))

    def coeff(self, k: int) -> Exact:
        return self.terms.get(k, Exact(0))

    def min_order(self):
        return min(self.terms) if self.terms else None

    def max_order(self):
        return max(self.terms) if self.terms else None

    def evaluate(self, value) -> Exact:
        """Substitute an exact nonzero value for the symbol."""
        value = Exact.coerce(value)
        total = Exact(0)
        for k, v in self.terms.items():
            total = total + v * value ** k
        return total

    def __repr__(self):
        return f"Laurent({self.to_text()})"

    def to_text(self) -> str:
        body = "|".join(f"{k}:{v.to_text()}" for k, v in sorted(self.terms.items()))
        return f"{{{self.var};{body}}}"

    @classmethod
    def from_text(cls, text: str) -> "Laurent":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"bad Laurent value {text!r}")
        var, _, rest = body[1:-1].partition(";")
        terms = {}
        if rest:
            for chunk in rest.split("|"):
                k, _, v = chunk.partition(":")
                terms[int(k)] = Exact.from_text(v)
        return cls(terms, var.strip())


class Ring:
    """Descriptor of a coefficient ring; elements themselves carry arithmetic."""

    exact = True

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return f"<ring {self.name}>"

    def __reduce__(self):
        # rings are singletons compared by identity; unpickle to the registered instance
        return get_ring, (self.name,)

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def conj(self, c):
        return c.conj()

    @property
    def one(self):
        return self.coerce(1)

    @property
    def zero(self):
        return self.coerce(0)

    def to_text(self, c) -> str:
        return c.to_text()

    def from_text(self, text: str):
        raise NotImplementedError


class ExactRing(Ring):
    def __init__(self, name: str, allow_sqrt2: bool):
        super().__init__(name)
        self.allow_sqrt2 = allow_sqrt2

    def coerce(self, x) -> Exact:
        if isinstance(x, Laurent):
            raise RingMismatchError(f"Laurent value in ring {self.name}")
        v = Exact.coerce(x)
        if not self.allow_sqrt2 and v.has_sqrt2():
            raise RingMismatchError(f"sqrt2 is not available in ring {self.name}")
        return v

    def from_text(self, text: str) -> Exact:
        return self.coerce(Exact.from_text(text))


class LaurentRing(Ring):
    def __init__(self, var: str):
        super().__init__(f"laurent-{var}")
        self.var = var

    def coerce(self, x) -> Laurent:
        if isinstance(x, Laurent):
            if x.var != self.var:
                raise RingMismatchError(f"Laurent symbol {x.var} in ring {self.name}")
            return x
        return Laurent({0: Exact.coerce(x)}, self.var)

    @property
    def symbol(self) -> Laurent:
        return Laurent({1: 1}, self.var)

    def from_text(self, text: str) -> Laurent:
        return self.coerce(Laurent.from_text(text))


class FloatRing(Ring):
    exact = False

    def coerce(self, x) -> complex:
        if isinstance(x, Laurent):
            raise RingMismatchError("Laurent value in the float ring")
        return complex(x)

    def is_zero(self, c) -> bool:
        return abs(c) < FLOAT_TOL

    def conj(self, c):
        return c.conjugate()

    def to_text(self, c) -> str:
        return f"({c.real!r},{c.imag!r})"

    def from_text(self, text: str) -> complex:
        body = text.strip()
        re, im = body[1:-1].split(",")
        return complex(float(re), float(im))


RATIONAL = ExactRing("rational", allow_sqrt2=False)
RATIONAL_SQRT2 = ExactRing("rational-sqrt2", allow_sqrt2=True)
LAURENT_EPS = LaurentRing("eps")
LAURENT_U = LaurentRing("u")
FLOAT = FloatRing("float")

RINGS = {r.name: r for r in (RATIONAL, RATIONAL_SQRT2, LAURENT_EPS, LAURENT_U, FLOAT)}


def get_ring(name: str) -> Ring:
    try:
        return RINGS[name]
    except KeyError:
        raise ValueError(f"unknown ring {name!r}; expected one of {sorted(RINGS)}") from None
