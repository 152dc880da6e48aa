"""The Frobenius approximation of the special part of tight closure.

Stage e is S_e(I) = (m·I^[q])^(1/q) with q = p^e, i.e. the elements z with
z^q ∈ m·I^[q].  The stages ascend (z^q ∈ mI^[q] gives z^(pq) ∈ m^[p] I^[pq]),
stage 0 is mI, and their union is the set of z with z^q ∈ (m·I^[q])^F for
some q: an inner Frobenius exponent q' is absorbed because m^[q'] ⊆ m.
Every element found is in the special part of tight closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .closures import tc_evidence
from .frobenius import ChainError, bracket_power, frobenius_closure, frobenius_root
from .groebner import Ideal, intersect, min_gens
from .verdict import IN, UNKNOWN, Verdict

__all__ = [
    "SpecialPartApprox",
    "SpecialPartError",
    "sptc_stage",
    "sptc_member",
    "sptc_approx_ideal",
    "sp_lemma_audit",
    "decomposition_check",
]


class SpecialPartError(AssertionError):
    def __init__(self, msg, dump=None):
        super().__init__(msg)
        self.dump = dump or {}


def sptc_stage(I: Ideal, e: int) -> Ideal:
    """S_e(I) = {z : z^(p^e) ∈ m·I^[p^e]}."""
    m = I.ring.maximal_ideal()
    return frobenius_root(m * bracket_power(I, e), e)


@dataclass
class SpecialPartApprox:
    ideal: Ideal
    stages: list = field(default_factory=list)  # (e, Ideal)
    e_max: int = 4
    confirm: int = 2
    stabilized_at: int | None = None

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    @property
    def candidate(self) -> Ideal:
        return self.stages[-1][1]

    def stage(self, e: int) -> Ideal:
        for k, S in self.stages:
            if k == e:
                return S
        # past stabilization every later stage equals the last one
        if self.stabilized and e > self.stages[-1][0]:
            return self.candidate
        raise KeyError(e)

    @property
    def flag(self) -> str:
        return f"stable to depth {self.confirm}" if self.stabilized else "UNSTABILIZED"

    def to_json(self) -> dict:
        return {
            "ideal": [str(g) for g in self.ideal.generators],
            "stages": [{"e": e, "ideal": S.to_json()} for e, S in self.stages],
            "e_max": self.e_max,
            "stabilized_at": self.stabilized_at,
            "flag": self.flag,
            "candidate": self.candidate.to_json(),
        }


def sptc_approx_ideal(I: Ideal, e_max: int = 4, confirm: int = 2) -> SpecialPartApprox:
    """Stages S_0 ⊆ S_1 ⊆ ... with the same stopping rule as the Frobenius chain."""
    out = SpecialPartApprox(I, e_max=e_max, confirm=confirm)
    mI = I.ring.maximal_ideal() * I
    prev, run = None, 0
    for e in range(e_max + 1):
        S = sptc_stage(I, e)
        if e == 0 and not mI.issubset(S):
            raise SpecialPartError("stage 0 does not contain mI", {"I": str(I), "S0": str(S)})
        if prev is not None:
            if not prev.issubset(S):
                raise ChainError(f"special-part stages not ascending at e={e}")
            run = run + 1 if S == prev else 0
        out.stages.append((e, S))
        prev = S
        if run >= confirm:
            out.stabilized_at = e - confirm
            break
    return out


def sptc_member(z, I: Ideal, e_max: int = 4) -> Verdict:
    """IN when z^q ∈ m·I^[q] for some q = p^e, e <= e_max; UNKNOWN otherwise."""
    R = I.ring
    z = R(z)
    m = R.maximal_ideal()
    trace = []
    for e in range(e_max + 1):
        ok = (m * bracket_power(I, e)).contains(z.frobenius(e))
        trace.append({"e": e, "in_m_bracket_power": ok})
        if ok:
            return Verdict(IN, {"kind": "special-part", "e": e, "q": R.p**e}, {"e_max": e_max})
    return Verdict(UNKNOWN, {"kind": "probe-trace", "trace": trace}, {"e_max": e_max})


def _tight_independent(I: Ideal, e_range=(1, 2)) -> bool:
    """Minimal generators certified independent for tight closure (OUT verdicts)."""
    R = I.ring
    if not R.is_fp_local or I.is_zero():
        return False
    gens = list(min_gens(I).elements)
    for i, g in enumerate(gens):
        others = Ideal(R, gens[:i] + gens[i + 1:])
        if not tc_evidence(g, others, e_range=e_range).is_out:
            return False
    return True


def sp_lemma_audit(I: Ideal, e_max: int = 3, J: Ideal | None = None, domain: bool | None = None,
                   approx: SpecialPartApprox | None = None) -> dict:
    """Check the structural facts about the special part on one instance.

    (a) mI ⊆ S ∩ I;
    (b) I ⊄ S when I ≠ 0 (in a domain);
    (c) S ∩ I = mI when the minimal generators are certified independent;
    (d) if J ⊆ F_e0(I) then S_e(J) ⊆ S_(e+e0)(I) for every computed e.
    Raises SpecialPartError with the instance on any failure.
    """
    R = I.ring
    if domain is None:
        domain = R.is_polynomial_ring
    A = approx or sptc_approx_ideal(I, e_max)
    S = A.candidate
    m = R.maximal_ideal()
    mI = m * I
    report = {"I": [str(g) for g in I.generators], "e_max": e_max, "approx": S.to_json()}

    def fail(which, **dump):
        raise SpecialPartError(f"special-part audit ({which}) failed for {I}", {"check": which, **dump})

    if not (mI.issubset(S) and mI.issubset(I)):
        fail("a", approx=S.to_json())
    report["a"] = "pass"
    if not domain:
        report["b"] = "skipped (not declared a domain)"
    elif I.is_zero():
        report["b"] = "vacuous"
    elif I.issubset(S):
        fail("b", approx=S.to_json())
    else:
        report["b"] = "pass"
    if _tight_independent(I):
        cap = intersect(S, I)
        if cap != mI:
            fail("c", intersection=cap.to_json(), mI=mI.to_json())
        report["c"] = "pass"
    else:
        report["c"] = "vacuous"
    if J is None:
        report["d"] = "vacuous"
    else:
        report["d"] = _transfer(J, I, A, e_max)
    return report


def _transfer(J, I, A, e_max):
    e0 = next((e for e in range(e_max + 1) if bracket_power(J, e).issubset(bracket_power(I, e))), None)
    if e0 is None:
        return "vacuous"
    B = sptc_approx_ideal(J, e_max - e0, confirm=e_max + 1)
    for e, SJ in B.stages:
        try:
            SI = A.stage(e + e0)
        except KeyError:
            SI = sptc_stage(I, e + e0)
        if not SJ.issubset(SI):
            raise SpecialPartError("special-part audit (d) failed",
                                   {"check": "d", "J": str(J), "I": str(I), "e": e, "shift": e0})
    return f"pass (shift {e0})"


def decomposition_check(I: Ideal, e_max: int = 4, sp_depth: int = 1, chain=None) -> dict:
    """Find the least q' = p^e' with x^q' ∈ I^[q'] + S(I^[q']) for every
    generator x of the certified Frobenius closure candidate of I.

    S(I^[q']) is the special-part approximation of I^[q'] to depth sp_depth.
    The reverse containment D = (I^[q'] + S(I^[q']))^(1/q') ⊆ I^F is checked
    on the computed ideal D through x^(q'·p^sp_depth) ∈ I^[q'·p^sp_depth].
    """
    R = I.ring
    chain = chain or frobenius_closure(I, e_max=e_max)
    C = chain.candidate
    elems = C.canonical_generators() or list(C.generators)
    out = {"I": [str(g) for g in I.generators], "e_max": e_max, "sp_depth": sp_depth,
           "closure_candidate": C.to_json(), "closure_flag": chain.flag, "probes": []}
    for e in range(e_max + 1):
        Iq = bracket_power(I, e)
        S = sptc_approx_ideal(Iq, sp_depth, confirm=sp_depth + 1).candidate
        T = Iq + S
        ok = all(T.contains(x.frobenius(e)) for x in elems)
        out["probes"].append({"e": e, "q": R.p**e, "holds": ok})
        if ok:
            D = frobenius_root(T, e)
            E = e + sp_depth
            target = bracket_power(I, E)
            bad = [str(d) for d in D.generators if not target.contains(d.frobenius(E))]
            if bad:
                raise SpecialPartError("decomposition reverse containment fails",
                                       {"I": str(I), "e": e, "elements": bad})
            out.update(status="found", e=e, q=R.p**e, decomposed=D.to_json(),
                       reverse_containment=f"D ⊆ F_{E}(I)", contains_candidate=C.issubset(D))
            return out
    out["status"] = "NOT-FOUND"
    return out
