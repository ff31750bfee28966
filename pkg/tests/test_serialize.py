import pytest

from fermiwig.eigenstates import ket
from fermiwig.fock import FockOperator
from fermiwig.grassmann import REGISTRY, GrassmannElement, ParameterFunction
from fermiwig.modes import ModeSet
from fermiwig.rings import FLOAT, HALF, Exact
from fermiwig.samples import random_operator
from fermiwig.serialize import ParseError, deserialize, serialize, structurally_equal
from fermiwig.wigner import wigner_transform


def test_element_roundtrip():
    t = REGISTRY.fresh("st", 3)
    ring = ModeSet(1, 2).ring
    g = [GrassmannElement.gen(x, ring) for x in t]
    e = g[0] * g[1] - g[2] * HALF
    text = serialize(e)
    assert structurally_equal(deserialize(text), e)
    assert "(-1/2,0) * <st[3]>" in text


def test_state_operator_and_functional_roundtrip(m2):
    x = ParameterFunction.fresh(m2, "sx")
    for value in (ket("g", x, m2), ket("h", x, m2).dagger(), random_operator(m2, 4),
                  wigner_transform(random_operator(m2, 5))):
        assert structurally_equal(deserialize(serialize(value)), value)


def test_float_roundtrip():
    t = REGISTRY.fresh("sf", 2)
    e = GrassmannElement.gen(t[0], FLOAT, 0.1) * GrassmannElement.gen(t[1], FLOAT, 1 / 3) \
        + GrassmannElement.scalar(2.5 - 1e-7j, FLOAT)
    back = deserialize(serialize(e))
    assert back.close_to(e, 1e-12)


def test_weights_survive():
    m = ModeSet(2, 1, weights=(1, Exact(3, 0, 0, 0, 2)))
    op = FockOperator.identity(m, m.ring)
    back = deserialize(serialize(op))
    assert back.modes == m


@pytest.mark.parametrize("text,line,column", [
    ("grassmann ring=rational-sqrt2\nvalue (1,0) * <a> +", 2, 20),
    ("grassmann ring=nope\nvalue 0", 1, 16),
    ("fock-state ring=rational-sqrt2 modes=1,2\namp |012> (1,0)", 2, 5),
    ("fock-operator ring=rational-sqrt2 modes=1,2\nterm a7 : (1,0)", 2, 6),
    ("grassmann ring=rational-sqrt2\nvalue (1,x)", 2, 7),
])
def test_parse_errors_carry_locations(text, line, column):
    with pytest.raises(ParseError) as info:
        deserialize(text)
    assert (info.value.line, info.value.column) == (line, column)
