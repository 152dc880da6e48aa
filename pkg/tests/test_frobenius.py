import pytest

from charp import Ideal, RingPresentation, bracket_power, f_membership, frobenius_closure, frobenius_root
from charp.frobenius import verify_frobenius_certificate
from oracles import random_poly, seeded, sympy_contains


def test_root_of_monomial_ideal_via_elimination(A2):
    # a non-monomial generating set forces the elimination path
    J = Ideal(A2, ["x^4 + x^3*y", "x^3*y", "y^7"])
    assert frobenius_root(J, 1) == Ideal(A2, ["x^2", "x*y", "y^3"])
    assert frobenius_root(J, 2) == Ideal(A2, ["x", "y"])


def test_monomial_root_ceiling_rule(A2):
    J = Ideal(A2, ["x^5*y", "y^10"])
    assert frobenius_root(J, 1) == Ideal(A2, ["x^2*y", "y^4"])


@pytest.mark.parametrize("ring", ["A2", "HS"])
def test_adjunction_against_sympy(ring, A2, HS):
    R = {"A2": A2, "HS": HS}[ring]
    rng = seeded(21)
    for _ in range(8):
        J = Ideal(R, [random_poly(R, rng, 2, 3), random_poly(R, rng, 2, 4)])
        root = frobenius_root(J, 1)
        for _ in range(5):
            f = random_poly(R, rng, 2, 2)
            assert root.contains(f) == sympy_contains(f.frobenius(1), J.generators, R)


def test_root_is_proper_on_hs(HS):
    J = bracket_power(Ideal(HS, ["x", "z"]), 1)
    R = frobenius_root(J, 1)
    assert R == Ideal(HS, ["x", "z"])


def test_bracket_power_generator_independence(HS):
    a = bracket_power(Ideal(HS, ["x + y", "z", "w"]), 1)
    b = bracket_power(Ideal(HS, ["x + y + z", "z + w", "w"]), 1)
    assert a == b


def test_regular_ring_chain_is_constant(A2):
    rng = seeded(8)
    for _ in range(5):
        I = Ideal(A2, [random_poly(A2, rng, 2, 3), random_poly(A2, rng, 2, 3)])
        ch = frobenius_closure(I, e_max=3)
        assert ch.stabilized_at == 0 and ch.candidate == I


def test_gr_frobenius_example(GR):
    I = Ideal(GR, ["y", "z"])
    v = f_membership("x", I)
    assert v.is_in and v.certificate["e"] == 1
    assert verify_frobenius_certificate("x", I, v.certificate)
    assert not I.contains(GR("x"))
    ch = frobenius_closure(I)
    assert ch.stabilized_at == 1
    assert ch.candidate == Ideal(GR, ["x", "y", "z"])
    assert ch.to_json()["flag"] == "stable to depth 2"


def test_membership_unknown_has_trace(A2):
    v = f_membership("x", Ideal(A2, ["y"]), e_max=2)
    assert v.is_unknown and len(v.certificate["trace"]) == 3


def test_bad_arguments(A2):
    with pytest.raises(ValueError):
        bracket_power(Ideal(A2, ["x"]), -1)
    with pytest.raises(ValueError):
        frobenius_root(Ideal(A2, ["x"]), -1)
    with pytest.raises(ValueError):
        frobenius_closure(Ideal(A2, ["x"]), e_max=0)


def test_unstabilized_flag():
    R = RingPresentation.make(2, ["x", "y"])
    ch = frobenius_closure(Ideal(R, ["x"]), e_max=1, confirm=2)
    assert ch.flag == "UNSTABILIZED"


@pytest.mark.parametrize("ring", ["HS", "GR"])
def test_stepwise_and_direct_roots_agree(ring, HS, GR):
    R = {"HS": HS, "GR": GR}[ring]
    gens = ["x^2 + z*w", "y"] if ring == "HS" else ["y", "z"]
    I = Ideal(R, gens)
    for J in (bracket_power(I, 2), R.maximal_ideal() * bracket_power(I, 2)):
        assert frobenius_root(J, 2, stepwise=True) == frobenius_root(J, 2, stepwise=False)
