import pytest

from charp import (
    BudgetExceeded, Ideal, RingPresentation, colon, groebner_basis, intersect, min_gens, step_budget,
)
from charp.groebner import NotLocalError, lift
from oracles import (
    divides, our_gb_as_set, random_binomial, random_monomial, random_poly, seeded, sympy_contains,
    sympy_reduced_gb,
)

RINGS = {
    "A2": lambda: RingPresentation.make(3, ["x", "y"]),
    "A3p2": lambda: RingPresentation.make(2, ["x", "y", "z"]),
    "A3lex": lambda: RingPresentation.make(5, ["x", "y", "z"], order="lex"),
    "HS": lambda: RingPresentation.make(5, ["x", "y", "z", "w"], ["x*y - z*w"]),
}


@pytest.mark.parametrize("name", sorted(RINGS))
def test_reduced_basis_matches_sympy(name):
    R = RINGS[name]()
    rng = seeded(len(name))
    for _ in range(12):
        gens = [random_poly(R, rng, 3, 3) for _ in range(rng.randint(1, 3))]
        ours = groebner_basis(gens, R)
        assert our_gb_as_set(ours) == sympy_reduced_gb(list(gens) + list(R.relations), R)


@pytest.mark.parametrize("name", ["A2", "HS"])
def test_membership_matches_sympy(name):
    R = RINGS[name]()
    rng = seeded(7)
    for _ in range(15):
        gens = [random_poly(R, rng, 2, 2) for _ in range(2)]
        I = Ideal(R, gens)
        # half the probes are in the ideal by construction
        f = random_poly(R, rng, 3, 3)
        g = f * gens[0] + random_poly(R, rng, 2, 2) * gens[1]
        for h in (f, g):
            assert I.contains(h) == sympy_contains(h, gens, R)
        assert I.contains(g)


def test_lift_reconstructs(HS):
    I = Ideal(HS, ["x + y", "z", "w"])
    f = HS("y^2")
    coeffs, rel = lift(f, list(I.generators), HS)
    total = sum((c * g for c, g in zip(coeffs, I.generators)), HS("0"))
    total = total + sum((c * r for c, r in zip(rel, HS.relations)), HS("0"))
    assert total == f
    assert lift(HS("y"), list(I.generators), HS) is None


def test_equality_ignores_generating_set(A2):
    assert Ideal(A2, ["x", "y"]) == Ideal(A2, ["x + y", "x - y"])
    assert Ideal(A2, ["x^2"]) != Ideal(A2, ["x"])
    assert Ideal(A2, ["x^2", "x*y"]) <= Ideal(A2, ["x"])


def _monomial_ideal_equal(I, exps):
    J = Ideal(I.ring, [I.ring.ambient.monomial(e) for e in exps])
    return I == J


def test_monomial_intersection_and_colon():
    R = RingPresentation.make(3, ["x", "y", "z"])
    rng = seeded(5)
    for _ in range(15):
        A = [random_monomial(R, rng, rng.randint(1, 3)) for _ in range(2)]
        B = [random_monomial(R, rng, rng.randint(1, 3)) for _ in range(2)]
        I, J = Ideal(R, A), Ideal(R, B)
        lcms = [tuple(max(u, v) for u, v in zip(a.lm, b.lm)) for a in A for b in B]
        assert _monomial_ideal_equal(intersect(I, J), lcms)
        g = B[0].lm
        quot = [tuple(max(u - v, 0) for u, v in zip(a.lm, g)) for a in A]
        assert _monomial_ideal_equal(colon(I, Ideal(R, [B[0]])), quot)


def test_colon_and_intersection_properties(HS):
    rng = seeded(9)
    for _ in range(6):
        I = Ideal(HS, [random_binomial(HS, rng, 2), random_monomial(HS, rng, 2)])
        J = Ideal(HS, [random_binomial(HS, rng, 1)])
        K = intersect(I, J)
        assert K <= I and K <= J
        prod = I * J
        assert prod <= K
        C = colon(I, J)
        assert C * J <= I
        assert I <= C


def test_colon_on_hs(HS):
    # x·z ∈ (z): the colon (z) : x contains z, and y since xy = zw
    C = colon(Ideal(HS, ["z"]), Ideal(HS, ["x"]))
    assert C == Ideal(HS, ["z", "y"])


def test_min_gens_counts():
    R = RingPresentation.make(3, ["x", "y", "z"])
    rng = seeded(4)
    for _ in range(20):
        gens = [random_monomial(R, rng, rng.randint(1, 4)) for _ in range(4)]
        exps = [g.lm for g in gens]
        minimal = {e for e in exps if not any(f != e and divides(f, e) for f in exps)}
        V = min_gens(Ideal(R, gens))
        assert V.dim == len(minimal)


def test_min_gens_coordinates(HS):
    I = Ideal(HS, ["x", "y", "z", "w", "x + y"])
    V = min_gens(I)
    assert V.dim == 4
    rng = seeded(2)
    for _ in range(10):
        vec = [rng.randrange(5) for _ in range(4)]
        f = V.lift(vec) + HS("x^2*z")
        assert V.coords(f) == vec
    with pytest.raises(ValueError):
        V.coords(HS("1"))


def test_min_gens_needs_local_proper(A2, GR):
    with pytest.raises(NotLocalError):
        min_gens(Ideal(A2, ["x + 1"]))
    with pytest.raises(NotLocalError):
        min_gens(Ideal(GR, ["x"]))


def test_ideal_power_and_product(A2):
    M = Ideal(A2, ["x", "y"])
    assert M**2 == Ideal(A2, ["x^2", "x*y", "y^2"])
    assert M**0 == Ideal(A2, [1])
    assert (M * A2("x")) == Ideal(A2, ["x^2", "x*y"])


def test_budget_stops_buchberger():
    R = RingPresentation.make(5, ["a", "b", "c", "d"])
    gens = [R("a^3 + b*c*d + 1"), R("b^3 - a*c + d"), R("c^3 + a*b*d - 2"), R("d^2*a + c - b")]
    with pytest.raises(BudgetExceeded):
        with step_budget(50):
            groebner_basis(gens, R)
