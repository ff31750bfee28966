"""Small operator expression language for the command line.

Symbols, with a mode index appended (``a0``, ``ad1``, ``q2``):

* ``a``, ``ad`` ladder operators ``a`` and ``a+``
* ``q``, ``p`` the quadratures ``g`` and ``g+``
* ``g``, ``gd``, ``h``, ``hd`` the Bogoliubov operators
* ``one``, ``i``, ``sqrt2`` and integer literals

Operators are ``+ - * /`` and ``**`` with a non-negative integer exponent;
division is by scalars only.  Parsing goes through :mod:`ast` and accepts
nothing outside this whitelist.
"""

from __future__ import annotations

import ast
import re

from .bogoliubov import build_bogoliubov, ladder
from .fock import FockOperator
from .modes import ModeSet
from .rings import I, SQRT2, Exact


class ExpressionError(ValueError):
    """Unparseable or disallowed expression; ``column`` is 1-based."""

    def __init__(self, message: str, column: int = 1):
        super().__init__(f"column {column}: {message}")
        self.column = column


_SYMBOL = re.compile(r"^(ad|gd|hd|a|g|h|q|p)(\d+)$")


class _Evaluator:
    def __init__(self, modes: ModeSet):
        self.modes = modes
        self.ring = modes.ring
        a, ad = ladder(modes)
        self.table = {"a": a, "ad": ad}
        if modes.has_pairing and modes.unit_weights():
            b = build_bogoliubov(modes)
            self.table.update(g=b.g, gd=b.gd, h=b.h, hd=b.hd, q=b.g, p=b.gd)

    def fail(self, node, message: str):
        raise ExpressionError(message, getattr(node, "col_offset", 0) + 1)

    def name(self, node: ast.Name):
        if node.id == "one":
            return FockOperator.identity(self.modes, self.ring)
        if node.id == "i":
            return I
        if node.id == "sqrt2":
            return SQRT2
        m = _SYMBOL.match(node.id)
        if not m:
            self.fail(node, f"unknown symbol {node.id!r}")
        family, idx = m.group(1), int(m.group(2))
        if family not in self.table:
            self.fail(node, f"{family!r} needs a spin pairing and unit weights")
        if idx >= self.modes.size:
            self.fail(node, f"mode {idx} out of range (have {self.modes.size})")
        return self.table[family][idx]

    def eval(self, node):
        if isinstance(node, ast.Expression):
            return self.eval(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int) and not isinstance(node.value, bool):
                return Exact(node.value)
            self.fail(node, "only integer literals are allowed")
        if isinstance(node, ast.Name):
            return self.name(node)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = self.eval(node.left), self.eval(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                if isinstance(left, Exact) and isinstance(right, FockOperator):
                    return right.__rmul__(left)
                return left * right
            if isinstance(node.op, ast.Div):
                if not isinstance(right, Exact) or right == 0:
                    self.fail(node, "division only by a nonzero scalar")
                return left * right.inverse()
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, Exact) or (right.b, right.c, right.d, right.den) != (0, 0, 0, 1) \
                        or right.a < 0:
                    self.fail(node, "exponent must be a non-negative integer")
                return left ** right.a
        self.fail(node, f"disallowed syntax {type(node).__name__}")


def parse_operator(text: str, modes: ModeSet) -> FockOperator:
    """Evaluate ``text`` to a FockOperator on ``modes``; scalars become multiples of one."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"syntax error: {exc.msg}", exc.offset or 1) from None
    value = _Evaluator(modes).eval(tree)
    if isinstance(value, Exact):
        value = FockOperator.identity(modes, modes.ring, value)
    return value
