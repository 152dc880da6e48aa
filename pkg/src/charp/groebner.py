"""Buchberger kernel, ideal arithmetic and minimal generators.

Everything is computed in the ambient polynomial ring on ``generators +
relations``; an ideal of R = S/Q is represented by its preimage in S.
"""

from __future__ import annotations

import contextlib
import contextvars
import threading
from heapq import heapify, heappop, heappush

from .linalg import rref
from .ring_core import BlockOrder, MonomialOrder, PolyRing, Polynomial, RingPresentation

__all__ = [
    "BudgetExceeded",
    "step_budget",
    "Ideal",
    "GroebnerBasis",
    "VectorSpaceBasis",
    "groebner_basis",
    "reduced_basis",
    "normal_form",
    "relation_basis",
    "membership",
    "colon",
    "intersect",
    "ideal_equal",
    "min_gens",
    "lift",
    "NotLocalError",
]

DEFAULT_BUDGET = 10**7

_budget = contextvars.ContextVar("charp_step_budget", default=DEFAULT_BUDGET)


class BudgetExceeded(RuntimeError):
    """The reduction-step budget ran out; distinct from a mathematical failure."""


class NotLocalError(ValueError):
    """An operation needing a proper-local ideal (or an F_p-local ring) got something else."""


@contextlib.contextmanager
def step_budget(n: int):
    """Limit every Gröbner computation inside the block to ``n`` reduction steps."""
    tok = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(tok)


class _Counter:
    __slots__ = ("n", "limit")

    def __init__(self):
        self.n = 0
        self.limit = _budget.get()

    def step(self, k=1):
        self.n += k
        if self.n > self.limit:
            raise BudgetExceeded(f"Gröbner step budget of {self.limit} reduction steps exhausted")


# --------------------------------------------------------------------------
# raw kernel on {monomial: coeff} dicts


def _neg(k):
    return tuple(-x for x in k)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _monic(f, key, p):
    lm = max(f, key=key)
    c = f[lm]
    if c != 1:
        inv = pow(c, p - 2, p)
        f = {m: (a * inv) % p for m, a in f.items()}
    return lm, f


def _reduce(f, basis, key, p, counter, cofactors=None, track=None):
    """Full reduction of ``f`` by ``basis`` (list of (lm, monic poly)).

    If ``track`` is given it is the cofactor vector of ``f`` (list of dicts) and
    ``cofactors[i]`` that of ``basis[i]``; the returned remainder's cofactors
    are accumulated in place.
    """
    f = dict(f)
    heap = [(_neg(key(m)), m) for m in f]
    heapify(heap)
    rem = {}
    while heap:
        _, m = heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        del f[m]
        for idx, (lm, g) in enumerate(basis):
            if _divides(lm, m):
                break
        else:
            rem[m] = c
            continue
        shift = tuple(a - b for a, b in zip(m, lm))
        for gm, gc in g.items():
            if gm is lm or gm == lm:
                continue
            nm = tuple(a + b for a, b in zip(gm, shift))
            old = f.get(nm)
            nc = ((old or 0) - c * gc) % p
            if nc:
                if old is None:
                    heappush(heap, (_neg(key(nm)), nm))
                f[nm] = nc
            elif old is not None:
                del f[nm]
        if track is not None:
            _addmul(track, cofactors[idx], -c, shift, p)
        counter.step()
    return rem


def _addmul(target, vec, c, shift, p):
    # target += c * x^shift * vec   (vectors of dict polys)
    for k, h in enumerate(vec):
        if not h:
            continue
        t = target[k]
        for hm, hc in h.items():
            nm = tuple(a + b for a, b in zip(hm, shift))
            v = (t.get(nm, 0) + c * hc) % p
            if v:
                t[nm] = v
            else:
                t.pop(nm, None)


def _spoly(a, b, p):
    (lma, fa), (lmb, fb) = a, b
    L = _lcm(lma, lmb)
    sa = tuple(x - y for x, y in zip(L, lma))
    sb = tuple(x - y for x, y in zip(L, lmb))
    out = {}
    for m, c in fa.items():
        nm = tuple(x + y for x, y in zip(m, sa))
        out[nm] = c
    for m, c in fb.items():
        nm = tuple(x + y for x, y in zip(m, sb))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out, sa, sb


def _buchberger(polys, key, p, track=False):
    """Reduced Gröbner basis of the dict polynomials ``polys``.

    Gebauer-Möller pair elimination; pairs are selected by sugar degree.
    Returns a list of (lm, g) sorted by decreasing leading monomial; with
    ``track`` also the cofactor vectors (in terms of the input list).
    """
    counter = _Counter()
    n_in = len(polys)
    G, cof, sugar = [], [], []
    pairs = set()
    heap = []

    def update(lm, f, fc, sg):
        nonlocal pairs
        t = len(G)
        keep = set()
        for (i, j) in pairs:
            Lij = _lcm(G[i][0], G[j][0])
            if (not _divides(lm, Lij)) or Lij == _lcm(G[i][0], lm) or Lij == _lcm(G[j][0], lm):
                keep.add((i, j))
        pairs = keep
        groups = {}
        for i, (lmi, _) in enumerate(G):
            groups.setdefault(_lcm(lmi, lm), []).append(i)
        kept = []
        for L in sorted(groups, key=key):
            if all(not _divides(L2, L) for L2 in kept):
                kept.append(L)
        for L in kept:
            idx = groups[L]
            if any(all(a == 0 or b == 0 for a, b in zip(G[i][0], lm)) for i in idx):
                continue
            i = min(idx)
            d = sum(L)
            pairs.add((i, t))
            heappush(heap, (max(sugar[i] - sum(G[i][0]), sg - sum(lm)) + d, key(L), i, t))
        G.append((lm, f))
        cof.append(fc)
        sugar.append(sg)

    for k, f in enumerate(polys):
        if not f:
            continue
        fc = None
        if track:
            fc = [dict() for _ in range(n_in)]
            fc[k] = {(0,) * len(next(iter(f))): 1}
        r = _reduce(f, G, key, p, counter, cof, fc) if G else dict(f)
        if not r:
            continue
        lm, r2 = _monic(r, key, p)
        if track:
            scale = pow(r[lm], p - 2, p)
            fc = [{m: (c * scale) % p for m, c in h.items()} for h in fc]
        update(lm, r2, fc, max(sum(m) for m in f))

    while heap:
        sg, _, i, j = heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        s, sa, sb = _spoly(G[i], G[j], p)
        sc = None
        if track:
            sc = [dict() for _ in range(n_in)]
            _addmul(sc, cof[i], 1, sa, p)
            _addmul(sc, cof[j], -1, sb, p)
        counter.step()
        r = _reduce(s, G, key, p, counter, cof, sc)
        if r:
            lm, r2 = _monic(r, key, p)
            if track:
                scale = pow(r[lm], p - 2, p)
                sc = [{m: (c * scale) % p for m, c in h.items()} for h in sc]
            update(lm, r2, sc, sg)

    # minimalize
    order_idx = sorted(range(len(G)), key=lambda i: key(G[i][0]))
    mins = []
    for i in order_idx:
        if all(not _divides(G[k][0], G[i][0]) for k in mins):
            mins.append(i)
    # interreduce
    out, outc = [], []
    for i in mins:
        others = [G[k] for k in mins if k != i]
        oc = [cof[k] for k in mins if k != i] if track else None
        fc = [dict(h) for h in cof[i]] if track else None
        r = _reduce(G[i][1], others, key, p, counter, oc, fc)
        lm, r2 = _monic(r, key, p)
        out.append((lm, r2))
        if track:
            scale = pow(r[lm], p - 2, p)
            outc.append([{m: (c * scale) % p for m, c in h.items()} for h in fc])
    perm = sorted(range(len(out)), key=lambda i: key(out[i][0]), reverse=True)
    out = [out[i] for i in perm]
    if track:
        return out, [outc[i] for i in perm]
    return out


# --------------------------------------------------------------------------
# public Gröbner layer


class GroebnerBasis(tuple):
    """Reduced Gröbner basis: monic polynomials sorted by decreasing leading monomial."""

    def __new__(cls, ring: PolyRing, polys):
        self = super().__new__(cls, polys)
        self.ring = ring
        return self

    def is_unit(self) -> bool:
        return len(self) == 1 and self[0].is_constant()


_gb_cache: dict = {}
_gb_lock = threading.Lock()


def _poly_key(f: Polynomial):
    return frozenset(f.terms.items())


def reduced_basis(polys, ring: PolyRing) -> GroebnerBasis:
    """Reduced Gröbner basis of ``polys`` in the polynomial ring ``ring`` (cached)."""
    polys = [f for f in polys if f]
    ck = (ring, frozenset(_poly_key(f) for f in polys))
    hit = _gb_cache.get(ck)
    if hit is not None:
        return hit
    # deterministic input order regardless of caller ordering
    key = ring.order.key
    raw = sorted((f.terms for f in polys), key=lambda t: sorted((key(m), c) for m, c in t.items()))
    basis = _buchberger(raw, key, ring.p) if raw else []
    gb = GroebnerBasis(ring, [Polynomial(ring, g, _clean_terms=False) for _, g in basis])
    with _gb_lock:
        _gb_cache.setdefault(ck, gb)
    return _gb_cache[ck]


def clear_cache():
    with _gb_lock:
        _gb_cache.clear()


def normal_form(f: Polynomial, basis) -> Polynomial:
    ring = f.ring
    if not basis or not f:
        return f
    raw = [(g.lm, g.terms) for g in basis]
    r = _reduce(f.terms, raw, ring.order.key, ring.p, _Counter())
    return Polynomial(ring, r, _clean_terms=False)


def relation_basis(R: RingPresentation) -> GroebnerBasis:
    return reduced_basis(R.relations, R.ambient)


def lift(f: Polynomial, gens, R: RingPresentation):
    """Express ``f`` in terms of ``gens`` modulo the relations.

    Returns ``(coeffs, rel_coeffs)`` with
    ``f == sum(c*g) + sum(d*r)`` exactly in the ambient ring, or None when
    ``f`` is not in the ideal.
    """
    ring = R.ambient
    key = ring.order.key
    allg = [g for g in gens] + list(R.relations)
    idx = [i for i, g in enumerate(allg) if g]
    raw = [allg[i].terms for i in idx]
    if not raw:
        return None if f else ([ring.zero()] * len(gens), [ring.zero()] * len(R.relations))
    basis, cof = _buchberger(raw, key, ring.p, track=True)
    fc = [dict() for _ in raw]
    r = _reduce(f.terms, basis, key, ring.p, _Counter(), cof, fc)
    if r:
        return None
    # f - sum(cof_stuff) = 0  ->  f = -fc . raw
    full = [ring.zero() for _ in allg]
    for k, i in enumerate(idx):
        full[i] = -Polynomial(ring, fc[k])
    out = full[: len(gens)], full[len(gens):]
    check = ring.zero()
    for c, g in zip(out[0] + out[1], allg):
        check = check + c * g
    if check != f:  # pragma: no cover - kernel self check
        raise AssertionError("lift self-check failed")
    return out


def groebner_basis(gens, R: RingPresentation) -> GroebnerBasis:
    """Reduced Gröbner basis of (gens) + Q."""
    return reduced_basis(list(gens) + list(R.relations), R.ambient)


# --------------------------------------------------------------------------
# ideals


class Ideal:
    """Finitely generated ideal of a RingPresentation.

    Equality is equality of reduced Gröbner bases of generators + relations.
    """

    def __init__(self, ring: RingPresentation, generators=(), name: str = ""):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self._gb = None

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(self.generators, self.ring)
        return self._gb

    # -- predicates
    def contains(self, f) -> bool:
        f = self.ring(f)
        return not normal_form(f, self.gb)

    __contains__ = contains

    def reduce(self, f) -> Polynomial:
        return normal_form(self.ring(f), self.gb)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and tuple(self.gb) == tuple(other.gb)

    def __hash__(self):
        return hash((self.ring, tuple(self.gb)))

    def is_zero(self) -> bool:
        return all(not normal_form(g, relation_basis(self.ring)) for g in self.generators)

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_proper_local(self) -> bool:
        m = self.ring.maximal_ideal()
        return all(m.contains(g) for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    # -- arithmetic
    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(self.ring(g) for g in other))

    def __mul__(self, other):
        if isinstance(other, Ideal):
            prods = {}
            for a in self.generators:
                for b in other.generators:
                    c = a * b
                    prods.setdefault(c, None)
            return Ideal(self.ring, _prune(self.ring, list(prods)))
        f = self.ring(other)
        return Ideal(self.ring, [g * f for g in self.generators])

    def __pow__(self, n: int):
        if n == 0:
            return Ideal(self.ring, [1])
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def canonical_generators(self) -> list:
        """Reduced basis elements not lying in the relation ideal."""
        rb = relation_basis(self.ring)
        return [g for g in self.gb if normal_form(g, rb)]

    def __repr__(self):
        nm = f"{self.name} = " if self.name else ""
        return f"Ideal({nm}({', '.join(str(g) for g in self.generators)}))"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def to_json(self):
        return [str(g) for g in self.canonical_generators()]


def _prune(R, gens):
    # drop exact duplicates and monomials divisible by other monomial generators
    mons = [g for g in gens if g.is_monomial()]
    out = []
    for g in gens:
        if g.is_monomial():
            m = g.lm
            if any(h.lm != m and _divides(h.lm, m) for h in mons):
                continue
        out.append(g)
    return out


def membership(f, I: Ideal) -> bool:
    """True iff f lies in I + Q."""
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J


def _extended(ring: PolyRing, new_vars, first_order):
    """Polynomial ring with ``new_vars`` prepended under an elimination order."""
    names = tuple(new_vars) + ring.vars
    while len(set(names)) != len(names):
        new_vars = tuple("_" + v for v in new_vars)
        names = tuple(new_vars) + ring.vars
    order = BlockOrder((first_order, ring.order))
    return PolyRing(ring.p, names, order)


def _embed(f: Polynomial, ring: PolyRing, k: int):
    pad = (0,) * k
    return Polynomial(ring, {pad + m: c for m, c in f.terms.items()}, _clean_terms=False)


def _restrict(f: Polynomial, ring: PolyRing, k: int):
    return Polynomial(ring, {m[k:]: c for m, c in f.terms.items()}, _clean_terms=False)


def _intersect_ambient(A, B, base: PolyRing):
    """Gröbner basis of (A) ∩ (B) in the ambient ring (t A + (1 - t) B, eliminate t)."""
    ext = _extended(base, ("t",), MonomialOrder("grevlex", 1))
    t = ext.gen(0)
    gens = [t * _embed(g, ext, 1) for g in A] + [(1 - t) * _embed(g, ext, 1) for g in B]
    gb = reduced_basis(gens, ext)
    return [_restrict(g, base, 1) for g in gb if all(m[0] == 0 for m in g.terms)]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of an auxiliary variable."""
    R = I.ring
    if J.ring != R:
        raise ValueError("ideals from different rings")
    rel = list(R.relations)
    return Ideal(R, _intersect_ambient(list(I.generators) + rel, list(J.generators) + rel, R.ambient))


def _exact_div(h: Polynomial, g: Polynomial) -> Polynomial:
    ring = h.ring
    key = ring.order.key
    p = ring.p
    lm = g.lm
    inv = pow(g.lc, p - 2, p)
    rem = dict(h.terms)
    quo = {}
    while rem:
        m = max(rem, key=key)
        if not _divides(lm, m):
            raise ArithmeticError("inexact division")
        c = rem[m] * inv % p
        s = tuple(a - b for a, b in zip(m, lm))
        quo[s] = c
        for gm, gc in g.terms.items():
            nm = tuple(a + b for a, b in zip(gm, s))
            v = (rem.get(nm, 0) - c * gc) % p
            if v:
                rem[nm] = v
            else:
                rem.pop(nm, None)
    return Polynomial(ring, quo, _clean_terms=False)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {r : r J ⊆ I}, as the intersection of the element colons I : g."""
    R = I.ring
    result = None
    for g in J.generators:
        if I.contains(g):
            continue
        cap = _intersect_ambient(list(I.generators) + list(R.relations), [g], R.ambient)
        quo = [_exact_div(h, g) for h in cap]
        Ig = Ideal(R, quo)
        result = Ig if result is None else intersect(result, Ig)
    if result is None:
        return Ideal(R, [1])
    return Ideal(R, result.canonical_generators() or [0])


# --------------------------------------------------------------------------
# minimal generators / the vector space I / mI


class VectorSpaceBasis:
    """Representatives of a basis of I/mI over F_p plus coordinate machinery.

    ``coords(f)`` gives the coordinates of the image of ``f ∈ I`` in this basis;
    ``lift(v)`` maps a coordinate vector back to an element of I.
    """

    def __init__(self, ideal: Ideal, elements, mI: Ideal, monos, pivots, inv_rows):
        self.ideal = ideal
        self.elements = list(elements)
        self.mI = mI
        self._monos = monos
        self._pivots = pivots
        self._inv = inv_rows

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.elements)

    def _vector(self, f):
        r = self.mI.reduce(f)
        return [r.terms.get(m, 0) for m in self._monos], r

    def coords(self, f) -> list:
        p = self.ideal.ring.p
        vec, r = self._vector(f)
        pv = [vec[c] for c in self._pivots]
        out = [sum(a * b for a, b in zip(self._inv[i], pv)) % p for i in range(self.dim)]
        back = self.mI.reduce(self.lift(out))
        if back != r:
            raise ValueError("element does not lie in the ideal")
        return out

    def lift(self, vec) -> Polynomial:
        R = self.ideal.ring
        f = R.ambient.zero()
        for c, b in zip(vec, self.elements):
            if c % R.p:
                f = f + b.scale(c)
        return f

    def span(self, rows) -> list:
        return [self.lift(r) for r in rows]


def min_gens(I: Ideal) -> VectorSpaceBasis:
    """Basis of I/mI; its size is μ(I) and (graded Nakayama) it generates I."""
    R = I.ring
    if not R.is_fp_local:
        raise NotLocalError("I/mI is a finite F_p-space only when every variable is local")
    if not I.is_proper_local():
        raise NotLocalError(f"ideal {I} is not contained in the maximal ideal")
    p = R.p
    m = R.maximal_ideal()
    mI = m * I
    cands = list(I.canonical_generators()) + list(I.generators)
    reds = [mI.reduce(g) for g in cands]
    monos = sorted({mo for r in reds for mo in r.terms}, key=R.order.key, reverse=True)
    rows = [[r.terms.get(mo, 0) for mo in monos] for r in reds]
    chosen, basis_rows = [], []
    for g, row in zip(cands, rows):
        trial = basis_rows + [row]
        if rref(trial, p)[1].__len__() > len(basis_rows):
            chosen.append(g)
            basis_rows.append(row)
    # transform from pivot coordinates back to basis coordinates
    piv = rref(basis_rows, p)[1] if basis_rows else []
    d = len(chosen)
    # matrix B (d x d) = basis_rows restricted to pivot columns; invert it
    B = [[basis_rows[i][c] for c in piv] for i in range(d)]
    inv = _invert(B, p) if d else []
    # coords c with c . B = v_piv  ->  c = v_piv . B^{-1}; store transpose rows
    invT = [[inv[k][i] for k in range(d)] for i in range(d)]
    return VectorSpaceBasis(I, chosen, mI, monos, piv, invT)


def _invert(B, p):
    n = len(B)
    M = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(B)]
    E, piv = rref(M, p)
    if piv[:n] != list(range(n)):
        raise ArithmeticError("singular matrix")
    return [row[n:] for row in E[:n]]
