"""Reductions with respect to a closure, minimal reductions and spread.

Subspaces L of V = I/mI are handled as RREF coordinate rows relative to
``min_gens(I)``.  A subspace is classified by the verdict on I ⊆ cl(K) for a
lift K of L.  For a closure with the Nakayama property this agrees with
I ⊆ cl(K + mI), so the verdict depends on L only; that is spot-checked with
random lifts.  Membership is computed in the graded model, so the search is
restricted to homogeneous ideals of graded presentations, where graded
Nakayama applies, and OUT verdicts for inhomogeneous lifts are withheld.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .closures import EffectiveClosure, _radical_contains
from .groebner import Ideal, intersect, min_gens
from .linalg import count_subspaces, enumerate_subspaces, rref, subspace_key
from .verdict import IN, OUT, UNKNOWN, Verdict

__all__ = [
    "ReductionReport",
    "SpreadReport",
    "NakayamaViolation",
    "ReductionError",
    "EnumerationBudgetExceeded",
    "is_reduction",
    "nakayama_audit",
    "minimize_reduction",
    "independence",
    "strong_independence",
    "enumerate_minimal_reductions",
    "spread_consistency_audit",
    "frobenius_power_stability",
]

YES, NO = "YES", "NO"


class NakayamaViolation(AssertionError):
    def __init__(self, msg, dump):
        super().__init__(msg)
        self.dump = dump


class ReductionError(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    pass


def _gens_json(I):
    return [str(g) for g in I.generators]


@dataclass
class ReductionReport:
    I: Ideal
    J: Ideal
    closure: str
    is_reduction: str
    certificate: dict = field(default_factory=dict)
    K: Ideal | None = None
    minimal: str | None = None
    smaller: Ideal | None = None
    frontier: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    mode: str | None = None

    @property
    def mu(self):
        return None if self.K is None else len(self.K.generators)

    def to_json(self) -> dict:
        out = {
            "I": _gens_json(self.I),
            "J": _gens_json(self.J),
            "closure": self.closure,
            "is_reduction": self.is_reduction,
            "certificate": self.certificate,
        }
        if self.K is not None:
            out.update({
                "mode": self.mode,
                "K": _gens_json(self.K),
                "mu": self.mu,
                "minimal": self.minimal,
                "smaller": None if self.smaller is None else _gens_json(self.smaller),
                "frontier": self.frontier,
                "checks": self.checks,
            })
        return out


@dataclass
class SpreadReport:
    I: Ideal
    closure: str
    dim: int
    entries: list          # per dimension: counts, representative
    mu_set: list
    unknown_count: int
    well_defined: bool
    minimal_members: list  # (dim, generators) of certified minimal members
    lift_checks: list
    subspaces: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "I": _gens_json(self.I),
            "closure": self.closure,
            "dim_V": self.dim,
            "entries": self.entries,
            "mu_set": self.mu_set,
            "unknown_count": self.unknown_count,
            "well_defined": self.well_defined,
            "minimal_members": self.minimal_members,
            "lift_checks": self.lift_checks,
            "subspaces": self.subspaces,
        }


# --------------------------------------------------------------------------
# subspace classification


class _Space:
    """V = I/mI with a memo of subspace verdicts for one closure."""

    def __init__(self, I: Ideal, cl: EffectiveClosure):
        R = I.ring
        if not (R.is_homogeneous and all(g.is_homogeneous() for g in I.generators)):
            # Nakayama (and with it lift independence) only holds in the graded model
            raise ReductionError(f"subspace search needs a homogeneous ideal in a graded presentation: {I}")
        self.I = I
        self.cl = cl
        self.V = min_gens(I)
        self.p = I.ring.p
        self.memo = {}

    @property
    def dim(self):
        return self.V.dim

    def key(self, rows):
        return subspace_key(rows, self.p) if rows else ()

    def lift(self, rows) -> Ideal:
        return Ideal(self.I.ring, self.V.span(rows))

    def classify(self, rows) -> Verdict:
        k = self.key(rows)
        hit = self.memo.get(k)
        if hit is not None:
            return hit
        if not k:
            v = self._zero_subspace()
        else:
            K = self.lift(k)
            v = self.cl.ideal_in_closure(self.I, K)
            if v.is_out and not all(g.is_homogeneous() for g in K.generators):
                # non-membership in the affine model need not hold locally
                v = Verdict(UNKNOWN, {"kind": "inhomogeneous-lift", "affine": v.certificate}, v.params)
        self.memo[k] = v
        return v

    def _zero_subspace(self):
        # every oracle here lies inside integral closure, and the integral
        # closure of (0) is the nilradical
        zero = Ideal(self.I.ring, [])
        for g in self.V.elements:
            if not _radical_contains(g, zero):
                return Verdict(OUT, {"kind": "nilradical-bound", "element": str(g)}, {})
        return self.cl.ideal_in_closure(self.I, zero)

    def hyperplanes(self, rows):
        """RREF bases of the codimension-one subspaces of span(rows)."""
        k = len(rows)
        for sub in enumerate_subspaces(k, k - 1, self.p):
            yield self.key([[sum(c * r[j] for c, r in zip(coef, rows)) % self.p for j in range(self.dim)]
                            for coef in sub])

    def subspaces_of(self, rows, k):
        d = len(rows)
        for sub in enumerate_subspaces(d, k, self.p):
            yield self.key([[sum(c * r[j] for c, r in zip(coef, rows)) % self.p for j in range(self.dim)]
                            for coef in sub])

    def describe(self, rows):
        return [str(g) for g in self.V.span(rows)]


def _minimality(space: _Space, rows):
    """YES if every hyperplane is certified OUT, NO with a smaller member, else UNKNOWN."""
    frontier = []
    for h in space.hyperplanes(rows):
        v = space.classify(h)
        if v.is_in:
            return NO, h, []
        if v.is_unknown:
            frontier.append(h)
    if frontier:
        return UNKNOWN, None, frontier
    return YES, None, []


def _nakayama_checks(space: _Space, K: Ideal, rows):
    I = space.I
    m = I.ring.maximal_ideal()
    mI = m * I
    mK = m * K
    out = {"K_cap_mI_eq_mK": intersect(K, mI) == mK}
    v = space.cl.ideal_in_closure(I, K + mI)
    out["I_in_cl(K+mI)"] = v.status
    out["I_in_cl(K)"] = space.classify(rows).status
    return out


# --------------------------------------------------------------------------
# operations


def is_reduction(J: Ideal, I: Ideal, cl: EffectiveClosure) -> ReductionReport:
    """J ⊆ I ⊆ cl(J)?  J ⊆ I is checked exactly."""
    if not J.issubset(I):
        raise ReductionError(f"{J} is not contained in {I}")
    v = cl.ideal_in_closure(I, J)
    return ReductionReport(I, J, cl.name, v.status, v.certificate)


def nakayama_audit(I: Ideal, J: Ideal, cl: EffectiveClosure, strict: bool = True) -> dict:
    """If I ⊆ cl(J + mI) is certified, require I ⊆ cl(J) to be certified."""
    if not J.issubset(I):
        raise ReductionError(f"{J} is not contained in {I}")
    m = I.ring.maximal_ideal()
    hyp = cl.ideal_in_closure(I, J + m * I)
    out = {"I": _gens_json(I), "J": _gens_json(J), "closure": cl.name, "hypothesis": hyp.status}
    if not hyp.is_in:
        out["status"] = "vacuous"
        return out
    concl = cl.ideal_in_closure(I, J)
    out["conclusion"] = concl.status
    if concl.is_in:
        out["status"] = "pass"
        return out
    out["status"] = "violation"
    out["dump"] = {"hypothesis": hyp.to_json(), "conclusion": concl.to_json()}
    if strict and cl.nakayama:
        raise NakayamaViolation(f"Nakayama implication fails for {cl.name}: {J} ⊆ {I}", out)
    return out


def _image_rows(space: _Space, J: Ideal):
    rows = [space.V.coords(g) for g in J.generators]
    return rref(rows, space.p)[0] if rows else []


def minimize_reduction(J: Ideal, I: Ideal, cl: EffectiveClosure, mode: str = "exhaustive",
                       max_subspaces: int = 200000) -> ReductionReport:
    """A minimal cl-reduction K of I contained in J (up to mI).

    exhaustive: subspaces of the image W of J in I/mI by increasing dimension;
    greedy:     drop basis vectors of W one at a time while still a reduction;
    descent:    repeatedly pass to the first certified hyperplane.
    """
    base = is_reduction(J, I, cl)
    if base.is_reduction != IN:
        raise ReductionError(f"J is not a certified {cl.name}-reduction of I ({base.is_reduction})")
    space = _Space(I, cl)
    W = _image_rows(space, J)
    d = len(W)
    rows = W
    if mode == "exhaustive":
        total = sum(count_subspaces(d, k, space.p) for k in range(d + 1))
        if total > max_subspaces:
            raise EnumerationBudgetExceeded(f"{total} subspaces exceed the budget {max_subspaces}")
        for k in range(d + 1):
            hit = next((L for L in space.subspaces_of(W, k) if space.classify(L).is_in), None)
            if hit is not None:
                rows = list(hit)
                break
    elif mode == "greedy":
        i = 0
        while i < len(rows):
            trial = rows[:i] + rows[i + 1:]
            if space.classify(trial).is_in:
                rows = list(space.key(trial))
            else:
                i += 1
    elif mode == "descent":
        while rows:
            nxt = next((h for h in space.hyperplanes(rows) if space.classify(h).is_in), None)
            if nxt is None:
                break
            rows = list(nxt)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rows = list(space.key(rows))
    K = space.lift(rows)
    minimal, smaller, frontier = _minimality(space, rows) if rows else (YES, None, [])
    rep = ReductionReport(I, J, cl.name, IN, base.certificate, K=K, mode=mode, minimal=minimal,
                          smaller=None if smaller is None else space.lift(smaller),
                          frontier=[space.describe(f) for f in frontier])
    rep.checks = _nakayama_checks(space, K, rows)
    if not rep.checks["K_cap_mI_eq_mK"]:  # pragma: no cover - min_gens guarantees it
        raise AssertionError("K ∩ mI != mK for a lift of a subspace of I/mI")
    return rep


def independence(elements, cl: EffectiveClosure, I: Ideal | None = None) -> dict:
    """Per element: is x_i in cl(x_1, ..., omit x_i, ..., x_n)?

    independent = YES when every verdict is OUT, NO when some is IN.
    """
    if I is None:
        raise ValueError("an ambient ideal (for its ring) is required")
    R = I.ring
    elems = [R(e) for e in elements]
    verdicts = []
    for i, x in enumerate(elems):
        others = Ideal(R, elems[:i] + elems[i + 1:])
        verdicts.append(cl.member(x, others))
    if all(v.is_out for v in verdicts):
        status = YES
    elif any(v.is_in for v in verdicts):
        status = NO
    else:
        status = UNKNOWN
    return {
        "elements": [str(e) for e in elems],
        "closure": cl.name,
        "verdicts": [v.to_json() for v in verdicts],
        "independent": status,
    }


def strong_independence(J: Ideal, cl: EffectiveClosure) -> Verdict:
    """IN = strongly cl-independent: no hyperplane of J/mJ gives a reduction.

    By monotonicity it is enough to look at hyperplanes.  OUT carries the
    first certified hyperplane as witness; UNKNOWN the unresolved frontier.
    """
    space = _Space(J, cl)
    full = [[int(i == j) for j in range(space.dim)] for i in range(space.dim)]
    status, smaller, frontier = _minimality(space, full)
    params = {"closure": cl.name, **cl.params}
    if status == NO:
        return Verdict(OUT, {"kind": "reduction-witness", "witness": space.describe(smaller),
                             "certificate": space.classify(smaller).certificate}, params)
    if status == YES:
        return Verdict(IN, {"kind": "all-hyperplanes-out", "hyperplanes": count_subspaces(space.dim, space.dim - 1,
                                                                                          space.p)}, params)
    return Verdict(UNKNOWN, {"kind": "frontier", "frontier": [space.describe(f) for f in frontier]}, params)


def _random_homogeneous(mI: Ideal, d: int, rng: random.Random, p: int):
    """A random element of mI, homogeneous of degree d (possibly zero)."""
    R = mI.ring
    f = R.ambient.zero()
    for g in mI.generators:
        e = d - g.degree()
        c = rng.randrange(p)
        if e < 0 or not c:
            continue
        mono = [0] * R.nvars
        for _ in range(e):
            mono[rng.randrange(R.nvars)] += 1
        f = f + g.mul_monomial(tuple(mono), c)
    return f


def _random_lift(space: _Space, rows, rng: random.Random):
    """Lift of L through a randomly perturbed basis b_i + h_i, h_i ∈ (mI)_deg(b_i)."""
    basis = [b + _random_homogeneous(space.V.mI, b.degree(), rng, space.p) for b in space.V.elements]
    out = []
    for r in rows:
        f = space.I.ring.ambient.zero()
        for c, b in zip(r, basis):
            if c:
                f = f + b.scale(c)
        out.append(f)
    return Ideal(space.I.ring, out)


def enumerate_minimal_reductions(I: Ideal, cl: EffectiveClosure, dim_bound: int = 6,
                                 max_subspaces: int = 20000, spot_checks: int = 4,
                                 seed: int = 0, detail: bool = False) -> SpreadReport:
    """Classify every subspace of I/mI and collect the certified minimal members."""
    space = _Space(I, cl)
    d, p = space.dim, space.p
    if d > dim_bound:
        raise EnumerationBudgetExceeded(f"dim I/mI = {d} exceeds the bound {dim_bound}")
    total = sum(count_subspaces(d, k, p) for k in range(d + 1))
    if total > max_subspaces:
        raise EnumerationBudgetExceeded(f"{total} subspaces exceed the budget {max_subspaces}")
    by_dim = {}
    for k in range(d + 1):
        by_dim[k] = [(L, space.classify(L)) for L in enumerate_subspaces(d, k, p)]
    entries, minimal_members, subspaces = [], [], []
    unknown = 0
    for k in range(d + 1):
        counts = {IN: 0, OUT: 0, UNKNOWN: 0}
        rep = None
        for L, v in by_dim[k]:
            counts[v.status] += 1
            certified_min = False
            if v.is_in:
                certified_min = k == 0 or all(space.classify(h).is_out for h in space.hyperplanes(list(L)))
                if certified_min:
                    minimal_members.append({"dim": k, "generators": space.describe(L)})
                    if rep is None:
                        rep = space.describe(L)
            if detail:
                subspaces.append({"dim": k, "basis": [list(r) for r in L], "status": v.status,
                                  "certified_minimal": certified_min})
        unknown += counts[UNKNOWN]
        entries.append({"dim": k, "subspaces": len(by_dim[k]), "in": counts[IN], "out": counts[OUT],
                        "unknown": counts[UNKNOWN], "representative": rep})
    mu_set = sorted({m["dim"] for m in minimal_members})
    well = len(mu_set) == 1 and all(e["unknown"] == 0 for e in entries if e["dim"] < mu_set[0])
    # lift independence: exact equality of K + mI, equal verdicts
    rng = random.Random(seed)
    checks = []
    for k in range(1, d + 1):
        for L, v in by_dim[k][:spot_checks]:
            K1, K2 = _random_lift(space, L, rng), _random_lift(space, L, rng)
            mI = space.V.mI
            same_span = (K1 + mI) == (K2 + mI) == (space.lift(L) + mI)
            v1 = cl.ideal_in_closure(I, K1).status
            v2 = cl.ideal_in_closure(I, K2).status
            agree = not ({v1, v2, v.status} >= {IN, OUT})
            if not (same_span and agree):
                raise NakayamaViolation("lift dependence detected", {"subspace": space.describe(L),
                                                                     "verdicts": [v.status, v1, v2]})
            checks.append({"dim": k, "subspace": space.describe(L), "verdicts": [v.status, v1, v2]})
    return SpreadReport(I, cl.name, d, entries, mu_set, unknown, well, minimal_members, checks, subspaces)


def spread_consistency_audit(I: Ideal, cl: EffectiveClosure, report: SpreadReport | None = None) -> dict:
    """pass: one certified μ and nothing unresolved below it; fail: two μ values."""
    if report is None:
        report = enumerate_minimal_reductions(I, cl)
    out = {"I": _gens_json(I), "closure": cl.name, "mu_set": report.mu_set}
    if len(report.mu_set) > 1:
        a, b = report.mu_set[:2]
        wa = next(m for m in report.minimal_members if m["dim"] == a)
        wb = next(m for m in report.minimal_members if m["dim"] == b)
        out.update(status="fail", witnesses=[wa, wb])
    elif report.well_defined:
        out.update(status="pass", spread=report.mu_set[0])
    else:
        out.update(status="incomparable", unknown_count=report.unknown_count)
    return out


def frobenius_power_stability(elements, cl: EffectiveClosure, I: Ideal, e_values=(1,)) -> dict:
    """If the elements are certified independent, so are their p^e-th powers."""
    base = independence(elements, cl, I)
    out = {"base": base["independent"], "powers": []}
    if base["independent"] != YES:
        out["status"] = "vacuous"
        return out
    R = I.ring
    for e in e_values:
        powered = [R(x).frobenius(e) for x in elements]
        rep = independence(powered, cl, I)
        out["powers"].append({"e": e, "independent": rep["independent"]})
    out["status"] = "pass" if all(r["independent"] == YES for r in out["powers"]) else "fail"
    return out
