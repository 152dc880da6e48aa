"""Closure oracles and tight-closure diagnostics.

Every oracle answers membership questions with a three-valued Verdict and a
certificate that can be re-checked independently:

* ``IdentityClosure``   exact ideal membership;
* ``FrobeniusClosure``  the truncated Frobenius closure x^Q ∈ I^[Q], Q = p^e_max;
* ``IntegralBoundedClosure``  one-sided search for equations of integral
  dependence of degree <= n_max;
* ``NewtonClosure``     integral closure in polynomial rings: exact for
  monomial ideals, certified upper bounds otherwise.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import sympy

from . import newton
from .frobenius import bracket_power, f_membership, frobenius_root
from .groebner import Ideal, _exact_div, _extended, _embed, colon, lift, min_gens, reduced_basis, relation_basis, normal_form
from .ring_core import MonomialOrder, Polynomial
from .verdict import IN, OUT, UNKNOWN, Verdict

__all__ = [
    "EffectiveClosure",
    "IdentityClosure",
    "FrobeniusClosure",
    "IntegralBoundedClosure",
    "NewtonClosure",
    "TestElementCandidate",
    "ClosureAxiomError",
    "UnsupportedInput",
    "integral_member_bounded",
    "verify_integral_certificate",
    "newton_closure_monomial",
    "tc_evidence",
    "colon_profile",
    "closure_axiom_audit",
    "audit_instance_log",
    "get_closure",
    "CLOSURE_NAMES",
]


class ClosureAxiomError(AssertionError):
    """A closure oracle violated extensivity, monotonicity or idempotence."""

    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample or {}


class UnsupportedInput(ValueError):
    pass


def _key(I: Ideal):
    return (I.ring, tuple(I.gb))


# --------------------------------------------------------------------------
# integral dependence


def _ideal_powers(I: Ideal, n: int) -> list:
    """[I^0, I^1, ..., I^n] with pruned generator lists."""
    out = [Ideal(I.ring, [1]), I]
    for _ in range(2, n + 1):
        out.append(out[-1] * I)
    return out[: n + 1]


def integral_member_bounded(x, I: Ideal, n_max: int = 6) -> Verdict:
    """Search for x^n ∈ I·(I + (x))^(n-1) = Σ_k x^k I^(n-k), n <= n_max.

    A hit is turned into an equation x^n + a_1 x^(n-1) + ... + a_n = 0 with
    a_j ∈ I^j, returned as the certificate.  Never returns OUT.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    R = I.ring
    x = R(x)
    powers = _ideal_powers(I, n_max)
    trace = []
    for n in range(1, n_max + 1):
        gens, tags = [], []
        for k in range(n):
            xk = x**k
            for g in powers[n - k].generators:
                gens.append(xk * g)
                tags.append((n - k, g))
        target = Ideal(R, gens)
        ok = target.contains(x**n)
        trace.append({"n": n, "found": ok})
        if ok:
            cert = _integral_equation(x, n, gens, tags, R)
            return Verdict(IN, cert, {"n_max": n_max})
    return Verdict(UNKNOWN, {"kind": "integral-search", "trace": trace}, {"n_max": n_max})


def _integral_equation(x, n, gens, tags, R):
    res = lift(x**n, gens, R)
    coeffs, _ = res
    b = {j: R.ambient.zero() for j in range(1, n + 1)}
    for c, (j, g) in zip(coeffs, tags):
        b[j] = b[j] + c * g
    # x^n = Σ b_j x^(n-j)  ->  a_j = -b_j
    a = {j: (-b[j]) for j in b}
    a = {j: normal_form(v, relation_basis(R)) for j, v in a.items()}
    return {
        "kind": "integral",
        "n": n,
        "element": str(x),
        "coefficients": {str(j): str(a[j]) for j in sorted(a)},
    }


def verify_integral_certificate(x, I: Ideal, cert: dict) -> bool:
    """Substitute the equation of integral dependence and check a_j ∈ I^j."""
    R = I.ring
    x = R(x)
    n = cert["n"]
    a = {int(j): R(s) for j, s in cert["coefficients"].items()}
    total = x**n
    for j in range(1, n + 1):
        total = total + a.get(j, R.ambient.zero()) * x ** (n - j)
    if normal_form(total, relation_basis(R)):
        return False
    powers = _ideal_powers(I, n)
    return all(powers[j].contains(a.get(j, R.ambient.zero())) for j in range(1, n + 1))


def _radical_contains(x, I: Ideal) -> bool:
    """x ∈ √(I + Q), by 1 ∈ I + Q + (1 - s x) in one extra variable."""
    R = I.ring
    base = R.ambient
    ext = _extended(base, ("s",), MonomialOrder("grevlex", 1))
    s = ext.gen(0)
    gens = [_embed(g, ext, 1) for g in list(I.generators) + list(R.relations)]
    gens.append(1 - s * _embed(R(x), ext, 1))
    gb = reduced_basis(gens, ext)
    return gb.is_unit()


# --------------------------------------------------------------------------
# Newton polyhedra


def _exps(I: Ideal):
    return tuple(newton.minimal_exponents(g.lm for g in I.generators))


def newton_closure_monomial(I: Ideal) -> Ideal:
    """Integral closure of a monomial ideal in a polynomial ring (exact)."""
    R = I.ring
    if R.relations:
        raise UnsupportedInput("Newton closure needs a presentation without relations")
    if not I.is_monomial():
        raise UnsupportedInput(f"not a monomial ideal: {I}")
    if I.is_zero():
        return I
    pts = newton.newton_closure_exponents(_exps(I))
    return Ideal(R, [R.ambient.monomial(v) for v in pts])


def _newton_term_check(x: Polynomial, G: tuple):
    """Per-term Newton membership; (True, certs) or (False, (term, w))."""
    certs = []
    for m in sorted(x.terms, key=x.ring.order.key, reverse=True):
        ok, cert = newton.in_newton_polyhedron(G, tuple(m))
        if not ok:
            return False, (m, cert)
        certs.append((m, cert))
    return True, certs


def _frac(v):
    return [str(c) for c in v]


def _to_sympy(f: Polynomial, syms):
    return sympy.Poly.from_dict({m: int(c) for m, c in f.terms.items()}, *syms, modulus=f.ring.p)


def _from_sympy(P, ring) -> Polynomial:
    p = ring.p
    return Polynomial(ring, {m: int(c) % p for m, c in P.terms()})


def polynomial_gcd(polys) -> Polynomial:
    """gcd over F_p of the given polynomials (monic), checked by exact division."""
    polys = [f for f in polys if f]
    ring = polys[0].ring
    syms = sympy.symbols(" ".join(f"_g{i}" for i in range(ring.nvars)) + " ", seq=True)
    g = _to_sympy(polys[0], syms)
    for f in polys[1:]:
        g = sympy.gcd(g, _to_sympy(f, syms))
    out = _from_sympy(g, ring).monic()
    for f in polys:
        _exact_div(f, out)  # raises if the gcd is wrong
    return out


# --------------------------------------------------------------------------
# closure oracles


class EffectiveClosure:
    """A closure oracle.

    ``member(x, I)`` answers x ∈ cl(I); ``ideal_in_closure(I, J)`` answers
    I ⊆ cl(J); ``closure(I)`` returns cl(I) where the oracle can compute it.
    Computed instances are logged so the axioms can be audited afterwards.
    """

    name = "abstract"
    nakayama = True

    def __init__(self):
        self._memo = {}
        self._lock = threading.Lock()
        self.log = {}  # key(I) -> (I, cl(I))

    @property
    def params(self) -> dict:
        return {}

    def describe(self) -> dict:
        return {"name": self.name, "params": self.params}

    def _member(self, x, I: Ideal) -> Verdict:  # pragma: no cover - abstract
        raise NotImplementedError

    def member(self, x, I: Ideal) -> Verdict:
        x = I.ring(x)
        k = (x, _key(I))
        hit = self._memo.get(k)
        if hit is None:
            hit = self._member(x, I)
            with self._lock:
                self._memo.setdefault(k, hit)
        return hit

    def _closure(self, I: Ideal) -> Ideal:
        raise UnsupportedInput(f"{self.name} closure does not compute closure ideals")

    def supports_closure(self, I: Ideal) -> bool:
        try:
            self._check_closure_input(I)
        except UnsupportedInput:
            return False
        return True

    def _check_closure_input(self, I: Ideal):
        pass

    def closure(self, I: Ideal) -> Ideal:
        k = _key(I)
        hit = self.log.get(k)
        if hit is not None:
            return hit[1]
        C = self._closure(I)
        with self._lock:
            self.log.setdefault(k, (I, C))
        return C

    def ideal_in_closure(self, I: Ideal, J: Ideal) -> Verdict:
        """Is I ⊆ cl(J)?  Uses closure ideal arithmetic: once elements are
        certified in cl(J), the rest are tested against J + (certified)."""
        gens = _small_gens(I)
        K = J
        certs = []
        pending = []
        for g in gens:
            if K.contains(g):
                certs.append({"element": str(g), "kind": "ideal-arithmetic"})
                continue
            v = self.member(g, J)
            if v.is_out:
                return Verdict(OUT, {"kind": "generator-out", "element": str(g), "reason": v.certificate},
                               self.params)
            if v.is_in:
                certs.append({"element": str(g), "certificate": v.certificate})
                K = K + [g]
            else:
                pending.append(g)
        unresolved = [g for g in pending if not K.contains(g)]
        if not unresolved:
            return Verdict(IN, {"kind": "generators", "elements": certs}, self.params)
        return Verdict(UNKNOWN, {"kind": "generators", "elements": certs,
                                 "unresolved": [str(g) for g in unresolved]}, self.params)


_gens_cache: dict = {}


def _small_gens(I: Ideal) -> list:
    k = _key(I)
    hit = _gens_cache.get(k)
    if hit is None:
        R = I.ring
        if R.is_fp_local and I.is_proper_local() and not I.is_zero():
            hit = list(min_gens(I).elements)
        else:
            hit = list(I.generators)
        _gens_cache.setdefault(k, hit)
    return hit


class IdentityClosure(EffectiveClosure):
    name = "identity"

    def _member(self, x, I):
        if I.contains(x):
            return Verdict(IN, {"kind": "ideal-membership"}, {})
        return Verdict(OUT, {"kind": "normal-form", "remainder": str(I.reduce(x))}, {})

    def _closure(self, I):
        return I


class FrobeniusClosure(EffectiveClosure):
    """Truncated Frobenius closure F(I) = (I^[Q])^(1/Q), Q = p^e_max.

    It is extensive, monotone and idempotent, and for homogeneous ideals it
    has the Nakayama property.  OUT verdicts are exact for this operator; in
    a polynomial ring they are also exact for the full Frobenius closure,
    which is I itself there.
    """

    name = "frobenius"

    def __init__(self, e_max: int = 2, self_audit: bool = True):
        super().__init__()
        if e_max < 0:
            raise ValueError("e_max must be >= 0")
        self.e_max = e_max
        self.self_audit = self_audit

    @property
    def params(self):
        return {"e_max": self.e_max}

    def _scope(self, R):
        return "global" if R.is_polynomial_ring else f"truncated at e={self.e_max}"

    def _member(self, x, I):
        v = f_membership(x, I, e_max=self.e_max)
        if v.is_in:
            return v
        return Verdict(OUT, {"kind": "frobenius-probes", "trace": v.certificate["trace"],
                             "scope": self._scope(I.ring)}, self.params)

    def ideal_in_closure(self, I, J):
        for e in range(self.e_max + 1):
            if bracket_power(I, e).issubset(bracket_power(J, e)):
                return Verdict(IN, {"kind": "bracket-containment", "e": e}, self.params)
        bad = next(g for g in I.generators if not bracket_power(J, self.e_max).contains(g.frobenius(self.e_max)))
        return Verdict(OUT, {"kind": "bracket-containment-fails", "element": str(bad),
                             "scope": self._scope(I.ring)}, self.params)

    def _closure(self, I):
        C = frobenius_root(bracket_power(I, self.e_max), self.e_max)
        if self.self_audit:
            if not I.issubset(C):
                raise ClosureAxiomError("Frobenius closure not extensive", {"I": str(I), "cl": str(C)})
            CC = frobenius_root(bracket_power(C, self.e_max), self.e_max)
            if CC != C:
                raise ClosureAxiomError("Frobenius closure not idempotent", {"I": str(I), "cl": str(C)})
        return C


class IntegralBoundedClosure(EffectiveClosure):
    """Integral closure through bounded search for equations of dependence.

    IN verdicts carry an equation; without ``radical_bound`` nothing is ever
    OUT except for the trivial case of the unit ideal.  With it, x ∉ √I
    certifies x ∉ Ī.
    """

    name = "intbounded"

    def __init__(self, n_max: int = 6, radical_bound: bool = False):
        super().__init__()
        self.n_max = n_max
        self.radical_bound = radical_bound

    @property
    def params(self):
        return {"n_max": self.n_max, "radical_bound": self.radical_bound}

    def _member(self, x, I):
        if self.radical_bound and not I.contains(x) and not _radical_contains(x, I):
            return Verdict(OUT, {"kind": "radical", "bound": "sqrt(I)", "element": str(x)}, self.params)
        return integral_member_bounded(x, I, self.n_max)


class NewtonClosure(EffectiveClosure):
    """Integral closure in a polynomial ring.

    Monomial ideals are handled exactly through their Newton polyhedra.  For
    other ideals the oracle uses two certified upper bounds (the principal
    ideal generated by the gcd of the generators, and the integral closure of
    the ideal of all terms of the generators) for OUT, and bounded search
    for IN.
    """

    name = "newton"

    def __init__(self, n_max: int = 6):
        super().__init__()
        self.n_max = n_max

    @property
    def params(self):
        return {"n_max": self.n_max}

    def _require_polynomial_ring(self, I):
        if I.ring.relations:
            raise UnsupportedInput("the Newton closure needs a presentation without relations")

    def _check_closure_input(self, I):
        self._require_polynomial_ring(I)
        if not (I.is_monomial() or len(I.generators) <= 1):
            raise UnsupportedInput(f"closure ideal available for monomial or principal ideals only: {I}")

    def _closure(self, I):
        self._check_closure_input(I)
        if I.is_monomial():
            return newton_closure_monomial(I)
        return I  # principal ideals of a polynomial ring are integrally closed

    def _member(self, x, I):
        self._require_polynomial_ring(I)
        R = I.ring
        if I.contains(x):
            return Verdict(IN, {"kind": "ideal-membership"}, self.params)
        if I.is_zero():
            return Verdict(OUT, {"kind": "zero-ideal"}, self.params)
        if I.is_monomial():
            G = _exps(I)
            ok, info = _newton_term_check(x, G)
            bound = [str(R.ambient.monomial(g)) for g in G]
            if ok:
                return Verdict(IN, {"kind": "newton", "ideal": bound,
                                    "terms": [{"exponent": list(m), "weights": _frac(c)} for m, c in info]},
                               self.params)
            m, w = info
            return Verdict(OUT, {"kind": "newton-separation", "bound": "newton-polyhedron", "ideal": bound,
                                 "exponent": list(m), "separator": _frac(w)}, self.params)
        g = polynomial_gcd(I.generators)
        if not g.is_constant():
            if not Ideal(R, [g]).contains(x):
                return Verdict(OUT, {"kind": "principal-bound", "bound": f"({g})"}, self.params)
        # ideal of all terms of the generators contains I
        T = tuple(newton.minimal_exponents(m for f in I.generators for m in f.terms))
        ok, info = _newton_term_check(x, T)
        if not ok:
            m, w = info
            return Verdict(OUT, {"kind": "newton-separation", "bound": "term-ideal",
                                 "ideal": [str(R.ambient.monomial(t)) for t in T],
                                 "exponent": list(m), "separator": _frac(w)}, self.params)
        v = integral_member_bounded(x, I, self.n_max)
        return Verdict(v.status, v.certificate, self.params)


CLOSURE_NAMES = ("identity", "frobenius", "intbounded", "newton")


def get_closure(name: str, **params) -> EffectiveClosure:
    if name == "identity":
        return IdentityClosure()
    if name == "frobenius":
        return FrobeniusClosure(e_max=params.get("e_max", 2))
    if name == "intbounded":
        return IntegralBoundedClosure(n_max=params.get("n_max", 6), radical_bound=params.get("radical_bound", False))
    if name == "newton":
        return NewtonClosure(n_max=params.get("n_max", 6))
    raise ValueError(f"unknown closure {name!r}; choose from {', '.join(CLOSURE_NAMES)}")


# --------------------------------------------------------------------------
# tight closure evidence


@dataclass(frozen=True)
class TestElementCandidate:
    """The multiplier c in c·x^q ∈ I^[q], with the q_0 it is assumed to work from."""

    c: Polynomial
    q0_exp: int = 0

    __test__ = False  # keep pytest from collecting this class

    def __post_init__(self):
        if not self.c:
            raise ValueError("test element candidate must be nonzero")

    @classmethod
    def default(cls, R):
        return cls(R.ambient.one())

    def verified(self, R) -> bool:
        # c = 1 is a test element of a regular ring; anything else is taken on trust
        return R.is_polynomial_ring and self.c.is_constant()


def tc_evidence(x, I: Ideal, c=None, e_range=(1, 4)) -> Verdict:
    """Evidence for x ∈ I^* from the probes c·x^q ∈ I^[q], e in e_range.

    IN      x ∈ I^F (certified; I^F ⊆ I^*);
    OUT     x fails a certified upper bound of I^*: the Newton bound in a
            polynomial ring, or a failed probe with c = 1 there;
    UNKNOWN otherwise, with kind "evidence-in" when every probe succeeded.
    """
    R = I.ring
    x = R(x)
    if c is None:
        c = TestElementCandidate.default(R)
    elif not isinstance(c, TestElementCandidate):
        c = TestElementCandidate(R(c))
    lo, hi = e_range
    params = {"e_range": [lo, hi], "c": str(c.c), "c_verified": c.verified(R)}
    fv = f_membership(x, I, e_max=hi)
    if fv.is_in:
        return Verdict(IN, {"kind": "frobenius", "via": fv.certificate}, params)
    probes = []
    for e in range(lo, hi + 1):
        ok = bracket_power(I, e).contains(c.c * x.frobenius(e))
        probes.append({"e": e, "q": R.p**e, "holds": ok})
    if R.is_polynomial_ring:
        nv = NewtonClosure().member(x, I)
        if nv.is_out:
            return Verdict(OUT, {"kind": "integral-bound", "bound": nv.certificate, "probes": probes}, params)
        fail = next((pr for pr in probes if not pr["holds"]), None)
        if fail is not None and c.verified(R):
            return Verdict(OUT, {"kind": "probe-failure", "e": fail["e"], "test_element": "1",
                                 "probes": probes}, params)
    if probes and all(pr["holds"] for pr in probes):
        return Verdict(UNKNOWN, {"kind": "evidence-in", "probes": probes}, params)
    return Verdict(UNKNOWN, {"kind": "probe-trace", "probes": probes}, params)


def _bracket_depth(C: Ideal, r_cap: int):
    """Largest r <= r_cap with C ⊆ m^[p^r]; None if C is not inside m."""
    R = C.ring
    m = R.maximal_ideal()
    if C.is_zero():
        return math.inf
    if not C.issubset(m):
        return None
    r = 0
    while r < r_cap and C.issubset(bracket_power(m, r + 1)):
        r += 1
    return r


def colon_profile(f, I: Ideal, e_range=(1, 4)) -> dict:
    """Table of (q, I^[q] : f^q, bracket depth of the colon in m) per e.

    Depth growing by at least one per step is the shape expected when
    f ∉ I^*; a colon equal to (1) at every probe is what f ∈ I gives.
    """
    R = I.ring
    f = R(f)
    if not f:
        raise ValueError("f must be nonzero")
    lo, hi = e_range
    rows = []
    for e in range(lo, hi + 1):
        q = R.p**e
        C = colon(bracket_power(I, e), Ideal(R, [f.frobenius(e)]))
        d = _bracket_depth(C, e + 2)
        rows.append({"e": e, "q": q, "colon": C.to_json(), "depth": "inf" if d == math.inf else d})
    depths = [r["depth"] for r in rows]
    numeric = all(isinstance(d, int) for d in depths)
    growth = numeric and len(depths) > 1 and all(b - a >= 1 for a, b in zip(depths, depths[1:]))
    return {"f": str(f), "ideal": [str(g) for g in I.generators], "rows": rows,
            "linear_growth": bool(growth),
            "reading": "evidence f not in I^*" if growth else "no evidence against membership"}


# --------------------------------------------------------------------------
# axiom audit


def _minimize_pair(cl, J, I, bad):
    """Drop generators while the violation persists."""
    for side in ("J", "I"):
        changed = True
        while changed:
            changed = False
            A = J if side == "J" else I
            for k in range(len(A.generators)):
                gens = A.generators[:k] + A.generators[k + 1:]
                if not gens:
                    continue
                B = Ideal(A.ring, gens)
                J2, I2 = (B, I) if side == "J" else (J, B)
                if J2.issubset(I2) and bad(J2, I2):
                    J, I = J2, I2
                    changed = True
                    break
    return J, I


def closure_axiom_audit(cl: EffectiveClosure, instances) -> dict:
    """Check extensive / monotone / idempotent on pairs (J, I) with J ⊆ I.

    Raises ClosureAxiomError with a minimized counterexample on failure.
    """
    checked = 0
    skipped = 0
    for J, I in instances:
        if not (cl.supports_closure(J) and cl.supports_closure(I)):
            skipped += 1
            continue
        if not J.issubset(I):
            raise ValueError(f"audit pair not nested: {J} ⊄ {I}")
        cJ, cI = cl.closure(J), cl.closure(I)
        for A, cA in ((J, cJ), (I, cI)):
            if not A.issubset(cA):
                raise ClosureAxiomError(f"{cl.name}: not extensive", {"I": str(A), "closure": str(cA)})
            if cl.closure(cA) != cA:
                raise ClosureAxiomError(f"{cl.name}: not idempotent", {"I": str(A), "closure": str(cA)})
        if not cJ.issubset(cI):
            def bad(a, b):
                return not cl.closure(a).issubset(cl.closure(b))
            mJ, mI = _minimize_pair(cl, J, I, bad)
            raise ClosureAxiomError(f"{cl.name}: not monotone",
                                    {"J": str(mJ), "I": str(mI), "cl(J)": str(cl.closure(mJ)),
                                     "cl(I)": str(cl.closure(mI))})
        checked += 1
    return {"closure": cl.name, "params": cl.params, "pairs_checked": checked,
            "pairs_skipped": skipped, "status": "pass"}


def audit_instance_log(cl: EffectiveClosure) -> dict:
    """Audit every closure instance this oracle has computed so far.

    Extensivity and idempotence per instance; monotonicity on every logged
    pair that happens to be nested.
    """
    items = list(cl.log.values())
    for I, C in items:
        if not I.issubset(C):
            raise ClosureAxiomError(f"{cl.name}: not extensive", {"I": str(I), "closure": str(C)})
        if cl.closure(C) != C:
            raise ClosureAxiomError(f"{cl.name}: not idempotent", {"I": str(I), "closure": str(C)})
    items = list(cl.log.values())
    nested = 0
    for J, cJ in items:
        for I, cI in items:
            if J is I or J.ring != I.ring:
                continue
            if J.issubset(I):
                nested += 1
                if not cJ.issubset(cI):
                    raise ClosureAxiomError(f"{cl.name}: not monotone", {"J": str(J), "I": str(I)})
    return {"closure": cl.name, "instances": len(items), "nested_pairs": nested, "status": "pass"}
