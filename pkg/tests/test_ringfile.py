import pytest

from charp import ParseError, parse_polynomial, parse_ring_file
from charp.ringfile import format_ring_file
from oracles import random_poly, seeded

HS_TEXT = """
# comment line
ring { char = 5 ; vars = [x, y, z, w] ; order = grevlex ; relations = [x*y - z*w] }
ideal T = [x + y, z, w]
ideal M = [x, y, z, w]
"""


def test_parse_hs():
    rf = parse_ring_file(HS_TEXT)
    assert rf.ring.p == 5 and rf.ring.vars == ("x", "y", "z", "w")
    assert len(rf.ring.relations) == 1
    assert rf.ideal("T").contains(rf.ring("x + y"))
    with pytest.raises(ParseError):
        rf.ideal("nope")


def test_round_trip_polynomials(HS):
    rng = seeded(11)
    for _ in range(50):
        f = random_poly(HS, rng, 5, 4)
        assert parse_polynomial(str(f), HS.ambient) == f


def test_operator_spellings(A2):
    assert A2("x**2 * (y + 1)") == A2("x^2*y + x^2")
    assert A2("-(x - y)") == A2("y - x")
    assert A2("(x + y)^3") == A2("x^3 + y^3")


def test_round_trip_ring_file(GR):
    text = format_ring_file(GR, {})
    again = parse_ring_file(text).ring
    assert again.relations == GR.relations and again.local == GR.local


@pytest.mark.parametrize("text, where", [
    ("ring { char = 4 ; vars = [x] }", (1, 15)),
    ("ring { char = 3 ; vars = [x, x] }", None),
    ("ring { char = 3 ; vars = [x] ; bogus = 1 }", (1, 32)),
    ("ring { char = 3 }", (1, 1)),
    ("ring { char = 3 ; vars = [x] ; relations = [x + y] }", None),
    ("ring { char = 3 ; vars = [x] ; relations = [x + 1] }", None),
    ("ring { char = 3 ; vars = [x] }\nideal I = [x\n", None),
    ("ring { char = 3 ; vars = [x] }\nideal I = [x]\nideal I = [x]", (3, 7)),
    ("ring { char = 3 ; vars = [x] ; order = bad }", None),
    ("ring { char = 3 ; vars = [x] ; local = [y] }", None),
])
def test_parse_errors_carry_positions(text, where):
    with pytest.raises(ParseError) as exc:
        parse_ring_file(text)
    if where:
        assert (exc.value.line, exc.value.col) == where
