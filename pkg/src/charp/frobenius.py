"""Bracket powers, Frobenius roots and the Frobenius closure chain."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import Ideal, lift, reduced_basis
from .ring_core import BlockOrder, MonomialOrder, PolyRing, Polynomial
from .verdict import IN, UNKNOWN, Verdict

__all__ = [
    "bracket_power",
    "frobenius_root",
    "frobenius_closure",
    "f_membership",
    "FrobeniusChain",
    "ChainError",
]


class ChainError(AssertionError):
    """A computed chain violated monotonicity; indicates a kernel bug."""


def bracket_power(I: Ideal, e: int) -> Ideal:
    """I^[p^e]: the ideal generated by the p^e-th powers of the generators."""
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return I
    return Ideal(I.ring, [g.frobenius(e) for g in I.generators])


def _monomial_root(gens, q, ring):
    # f^q lies in a monomial ideal iff every term's q-th power does
    return [ring.monomial(tuple(-(-a // q) for a in g.lm)) for g in gens]


def frobenius_root(J: Ideal, e: int, stepwise: bool | None = None) -> Ideal:
    """{f : f^(p^e) ∈ J}.

    Computed in the ambient ring on the preimage J + Q.  S is free over its
    subring of q-th powers with basis the monomials of exponents < q; adjoining
    y_i = x_i^q and eliminating the x's writes every element in that basis, and
    the elements with no x-part left form the preimage of J under y -> y^q.
    With ``stepwise`` the root is taken one factor p at a time, using
    g^(p^e) ∈ J iff g^(p^(e-1)) ∈ J^(1/p).  Both give the same ideal; by
    default stepwise is used when every variable is local (graded
    presentations, where it is much faster) and a single elimination
    otherwise (presentations with inverted parameters, where the
    intermediate roots blow up).
    """
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return J
    R = J.ring
    base = R.ambient
    if not R.relations and all(g.is_monomial() for g in J.generators):
        return Ideal(R, _monomial_root(J.generators, R.p**e, base))
    if stepwise is None:
        stepwise = R.is_fp_local
    if stepwise:
        for _ in range(e):
            J = _root_step(J, R.p)
        return J
    return _root_step(J, R.p**e)


def _root_step(J: Ideal, q: int) -> Ideal:
    R = J.ring
    base = R.ambient
    gens = list(J.generators) + list(R.relations)
    n = base.nvars
    names = tuple("_f" + v for v in base.vars) + base.vars
    ext = PolyRing(base.p, names, BlockOrder((MonomialOrder("grevlex", n), base.order)))
    pad = (0,) * n
    polys = [Polynomial(ext, {m + pad: c for m, c in g.terms.items()}, _clean_terms=False) for g in gens]
    for i in range(n):
        xq = [0] * (2 * n)
        xq[i] = q
        y = [0] * (2 * n)
        y[n + i] = 1
        polys.append(Polynomial(ext, {tuple(xq): 1, tuple(y): base.p - 1}, _clean_terms=False))
    gb = reduced_basis(polys, ext)
    out = [
        Polynomial(base, {m[n:]: c for m, c in g.terms.items()}, _clean_terms=False)
        for g in gb
        if all(not any(m[:n]) for m in g.terms)
    ]
    return Ideal(R, out)


@dataclass
class FrobeniusChain:
    """Stages F_e = (I^[p^e])^(1/p^e) of the Frobenius closure of I."""

    ideal: Ideal
    stages: list = field(default_factory=list)  # list of (e, Ideal)
    stabilized_at: int | None = None
    confirm: int = 2
    e_max: int = 4

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    @property
    def candidate(self) -> Ideal:
        """Largest computed stage: a certified subset of the Frobenius closure."""
        return self.stages[-1][1]

    @property
    def flag(self) -> str:
        if self.stabilized:
            return f"stable to depth {self.confirm}"
        return "UNSTABILIZED"

    def to_json(self) -> dict:
        return {
            "ideal": [str(g) for g in self.ideal.generators],
            "stages": [{"e": e, "ideal": F.to_json()} for e, F in self.stages],
            "stabilized_at": self.stabilized_at,
            "confirm": self.confirm,
            "e_max": self.e_max,
            "flag": self.flag,
            "candidate": self.candidate.to_json(),
        }


def frobenius_closure(I: Ideal, e_max: int = 4, confirm: int = 2) -> FrobeniusChain:
    """Compute F_0 ⊆ F_1 ⊆ ... until ``confirm`` consecutive repeats or e_max."""
    if e_max < 1 or confirm < 1:
        raise ValueError("e_max and confirm must be >= 1")
    chain = FrobeniusChain(I, confirm=confirm, e_max=e_max)
    prev = None
    run = 0
    for e in range(e_max + 1):
        F = I if e == 0 else frobenius_root(bracket_power(I, e), e)
        if prev is not None:
            if not prev.issubset(F):
                raise ChainError(f"Frobenius chain not ascending at e={e}")
            run = run + 1 if F == prev else 0
        chain.stages.append((e, F))
        prev = F
        if run >= confirm:
            chain.stabilized_at = e - confirm
            break
    return chain


def _witness(x: Polynomial, I: Ideal, e: int):
    B = bracket_power(I, e)
    xq = x.frobenius(e)
    res = lift(xq, list(B.generators), I.ring)
    if res is None:  # pragma: no cover - callers only ask after a membership test
        return None
    coeffs, rel = res
    return {
        "element": str(xq),
        "generators": [str(g) for g in B.generators],
        "coefficients": [str(c) for c in coeffs],
        "relation_coefficients": [str(c) for c in rel],
    }


def f_membership(x, I: Ideal, e_max: int = 4, witness: bool = True) -> Verdict:
    """IN (with the exponent and a witness combination) if x^q ∈ I^[q] for some
    q = p^e, e <= e_max; UNKNOWN otherwise, with the probe trace."""
    x = I.ring(x)
    trace = []
    for e in range(e_max + 1):
        ok = bracket_power(I, e).contains(x.frobenius(e))
        trace.append({"e": e, "in_bracket_power": ok})
        if ok:
            cert = {"kind": "frobenius", "e": e, "q": I.ring.p**e}
            if witness:
                cert["witness"] = _witness(x, I, e)
            return Verdict(IN, cert, {"e_max": e_max})
    return Verdict(UNKNOWN, {"kind": "probe-trace", "trace": trace}, {"e_max": e_max})


def verify_frobenius_certificate(x, I: Ideal, cert: dict) -> bool:
    """Re-check an IN certificate by substituting the witness combination."""
    R = I.ring
    e = cert["e"]
    w = cert.get("witness")
    xq = R(x).frobenius(e)
    if w is None:
        return bracket_power(I, e).contains(xq)
    total = R.ambient.zero()
    for c, g in zip(w["coefficients"], w["generators"]):
        total = total + R(c) * R(g)
    for c, r in zip(w["relation_coefficients"], R.relations):
        total = total + R(c) * r
    return total == xq and all(R(g) == R(str(h)) for g, h in zip(w["generators"], bracket_power(I, e).generators))
