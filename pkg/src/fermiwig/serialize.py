"""Canonical text form for Grassmann elements, Fock states and operators, phase-space functionals.

A document is a header line, one ``gen`` line per generator (in creation
order, so sort order and signs survive a fresh process), then the body::

    grassmann ring=rational-sqrt2
    gen phase-q θ1
    gen phase-q θ2
    value (1,0) * <θ1> <θ2> + (-1/2,0) * <θ3>

States use ``amp |0110> <element>`` lines, operators ``term a+0 a1 : <element>``
lines, and phase-space functionals list their ``q``/``p`` generators.
"""

from __future__ import annotations

from .fock import ANNIHILATE, CREATE, FockBra, FockOperator, FockState
from .grassmann import REGISTRY, GrassmannElement
from .modes import ModeSet
from .rings import get_ring


class ParseError(ValueError):
    """Malformed text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------- writing ---

def _generator_ids(elements) -> list[int]:
    ids = set()
    for e in elements:
        for m in e.terms:
            while m:
                low = m & -m
                ids.add(low.bit_length() - 1)
                m ^= low
    return sorted(ids)


def _gen_lines(elements, extra=()) -> list[str]:
    ids = sorted(set(_generator_ids(elements)) | {g.id for g in extra})
    return [f"gen {REGISTRY[i].kind} {REGISTRY[i].label}" for i in ids]


def _modes_field(modes: ModeSet) -> str:
    text = f"modes={modes.k_points},{modes.spins}"
    if not modes.unit_weights():
        text += " weights=" + ",".join(str(w.parts[0]) for w in modes.weights)
    return text


def element_text(e: GrassmannElement) -> str:
    return e.to_text()


def _word_text(word) -> str:
    return " ".join(f"a{'+' if kind == CREATE else ''}{mode}" for mode, kind in word) or "1"


def serialize(value) -> str:
    """Text form of any supported value."""
    from .wigner import PhaseSpaceFunctional

    if isinstance(value, GrassmannElement):
        lines = [f"grassmann ring={value.ring.name}", *_gen_lines([value]),
                 f"value {value.to_text()}"]
    elif isinstance(value, (FockState, FockBra)):
        head = "fock-state" if isinstance(value, FockState) else "fock-bra"
        lines = [f"{head} ring={value.ring.name} {_modes_field(value.modes)}",
                 *_gen_lines(value.amps.values())]
        for n in sorted(value.amps):
            lines.append(f"amp |{value.occupation(n)}> {value.amps[n].to_text()}")
    elif isinstance(value, FockOperator):
        lines = [f"fock-operator ring={value.ring.name} {_modes_field(value.modes)}",
                 *_gen_lines([c for c, _ in value.terms])]
        for c, w in value.terms:
            lines.append(f"term {_word_text(w)} : {c.to_text()}")
    elif isinstance(value, PhaseSpaceFunctional):
        lines = [f"phase-space ring={value.ring.name} {_modes_field(value.modes)}",
                 *_gen_lines([value.value], [REGISTRY[g.id] for g in value.q_vars + value.p_vars]),
                 "q " + " ".join(f"<{g.label}>" for g in value.q_vars),
                 "p " + " ".join(f"<{g.label}>" for g in value.p_vars),
                 f"value {value.value.to_text()}"]
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parsing ---

class _Cursor:
    def __init__(self, text: str, line: int, offset: int = 0):
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = offset

    def error(self, message: str):
        raise ParseError(message, self.line, self.offset + self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def done(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip()
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def balanced(self, open_: str, close: str) -> str:
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            depth += ch == open_
            depth -= ch == close
            self.pos += 1
            if depth == 0:
                return self.text[start:self.pos]
        self.pos = start
        self.error(f"unbalanced {open_!r}")

    def label(self) -> str:
        self.expect("<")
        end = self.text.find(">", self.pos)
        if end < 0:
            self.error("unterminated generator label")
        label = self.text[self.pos:end]
        self.pos = end + 1
        return label


def parse_element(text: str, ring, line: int = 1, offset: int = 0) -> GrassmannElement:
    """Parse ``c * <g> <g> + c + ...`` into an element of ``ring``."""
    cur = _Cursor(text, line, offset)
    out = GrassmannElement.zero(ring)
    if text.strip() == "0":
        return out
    while True:
        cur.skip()
        start = cur.pos
        ch = cur.peek()
        if ch == "(":
            chunk = cur.balanced("(", ")")
        elif ch == "{":
            chunk = cur.balanced("{", "}")
        else:
            cur.error("expected a coefficient")
        try:
            coeff = ring.from_text(chunk)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            cur.pos = start
            cur.error(f"bad coefficient {chunk!r} ({exc})")
        gens = []
        cur.skip()
        if cur.peek() == "*":
            cur.pos += 1
            cur.skip()
            while cur.peek() == "<":
                gens.append(REGISTRY.lookup(cur.label()))
                cur.skip()
            if not gens:
                cur.error("expected a generator after '*'")
        out = out + GrassmannElement.monomial(gens, ring, coeff)
        if cur.done():
            return out
        cur.expect("+")


def _parse_header(line: str, lineno: int):
    parts = line.split()
    if not parts:
        raise ParseError("empty header", lineno, 1)
    fields = {}
    for p in parts[1:]:
        key, sep, val = p.partition("=")
        if not sep:
            raise ParseError(f"bad header field {p!r}", lineno, line.index(p) + 1)
        fields[key] = val
    if "ring" not in fields:
        raise ParseError("header lacks ring=", lineno, 1)
    try:
        ring = get_ring(fields["ring"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"unknown ring {fields['ring']!r}", lineno, line.index("ring=") + 6) from exc
    modes = None
    if "modes" in fields:
        try:
            k, s = (int(x) for x in fields["modes"].split(","))
            weights = None
            if "weights" in fields:
                from fractions import Fraction
                weights = tuple(Fraction(w) for w in fields["weights"].split(","))
            modes = ModeSet(k, s, weights, ring=ring)
        except ValueError as exc:
            raise ParseError(f"bad modes field ({exc})", lineno, line.index("modes=") + 7) from exc
    return parts[0], ring, modes


def _parse_word(text: str, modes: ModeSet, lineno: int, offset: int):
    if text.strip() == "1":
        return ()
    word = []
    col = offset
    for tok in text.split():
        col = text.index(tok, col - offset) + offset
        kind = CREATE if tok.startswith("a+") else ANNIHILATE
        digits = tok[2:] if kind == CREATE else tok[1:]
        if not tok.startswith("a") or not digits.isdigit():
            raise ParseError(f"bad ladder symbol {tok!r}", lineno, col + 1)
        mode = int(digits)
        if mode >= modes.size:
            raise ParseError(f"mode {mode} out of range", lineno, col + 1)
        word.append((mode, kind))
        col += len(tok)
    return tuple(word)


def deserialize(text: str):
    """Inverse of :func:`serialize`; raises :class:`ParseError` with a location."""
    from .wigner import PhaseSpaceFunctional

    lines = text.splitlines()
    if not lines:
        raise ParseError("empty document", 1, 1)
    kind, ring, modes = _parse_header(lines[0], 1)
    body = []
    for i, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        key, _, rest = raw.partition(" ")
        if key == "gen":
            gkind, _, label = rest.partition(" ")
            try:
                REGISTRY.lookup(label, gkind)
            except ValueError as exc:
                raise ParseError(str(exc), i, 5) from exc
            continue
        body.append((i, key, rest))
    if kind == "grassmann":
        for i, key, rest in body:
            if key == "value":
                return parse_element(rest, ring, i, 6)
        raise ParseError("missing value line", len(lines), 1)
    if modes is None and kind in ("fock-state", "fock-bra", "fock-operator", "phase-space"):
        raise ParseError("header lacks modes=", 1, 1)
    if kind in ("fock-state", "fock-bra"):
        amps = {}
        for i, key, rest in body:
            if key != "amp":
                raise ParseError(f"unexpected {key!r}", i, 1)
            occ, _, elem = rest.partition(" ")
            if not (occ.startswith("|") and occ.endswith(">")) or len(occ) != modes.size + 2 \
                    or set(occ[1:-1]) - {"0", "1"}:
                raise ParseError(f"bad occupation {occ!r}", i, 5)
            n = sum(1 << j for j, ch in enumerate(occ[1:-1]) if ch == "1")
            amps[n] = parse_element(elem, ring, i, 5 + len(occ) + 1)
        cls = FockState if kind == "fock-state" else FockBra
        return cls(modes, amps, ring)
    if kind == "fock-operator":
        terms = []
        for i, key, rest in body:
            if key != "term":
                raise ParseError(f"unexpected {key!r}", i, 1)
            word_text, sep, elem = rest.partition(" : ")
            if not sep:
                raise ParseError("expected ' : ' between word and coefficient", i, 6)
            word = _parse_word(word_text, modes, i, 5)
            terms.append((parse_element(elem, ring, i, 5 + len(word_text) + 3), word))
        return FockOperator(modes, terms, ring)
    if kind == "phase-space":
        fields = {}
        for i, key, rest in body:
            fields[key] = (i, rest)
        for need in ("q", "p", "value"):
            if need not in fields:
                raise ParseError(f"missing {need} line", len(lines), 1)

        def gens(entry):
            i, rest = entry
            cur = _Cursor(rest, i, 2)
            out = []
            while not cur.done():
                out.append(REGISTRY.lookup(cur.label()))
            return tuple(out)

        i, rest = fields["value"]
        return PhaseSpaceFunctional(modes, parse_element(rest, ring, i, 6), gens(fields["q"]),
                                    gens(fields["p"]))
    raise ParseError(f"unknown document kind {kind!r}", 1, 1)


def structurally_equal(a, b) -> bool:
    """Exact structural equality used by roundtrip checks."""
    from .wigner import PhaseSpaceFunctional

    if type(a) is not type(b):
        return False
    if isinstance(a, GrassmannElement):
        return a.ring is b.ring and a.terms == b.terms
    if isinstance(a, (FockState, FockBra)):
        return a.modes == b.modes and a.ring is b.ring and \
            {n: d.terms for n, d in a.amps.items()} == {n: d.terms for n, d in b.amps.items()}
    if isinstance(a, FockOperator):
        return a.modes == b.modes and a.ring is b.ring and \
            {w: c.terms for c, w in a.terms} == {w: c.terms for c, w in b.terms}
    if isinstance(a, PhaseSpaceFunctional):
        return (a.q_vars, a.p_vars) == (b.q_vars, b.p_vars) and structurally_equal(a.value, b.value)
    raise TypeError(f"unsupported type {type(a).__name__}")
