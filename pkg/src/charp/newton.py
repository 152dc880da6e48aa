"""Newton polyhedra of monomial ideals with exact rational certificates.

A monomial x^v lies in the integral closure of a monomial ideal with exponent
set G iff v ∈ conv(G) + R^n_{>=0}.  Membership is decided by an exact
phase-one simplex over the rationals; by Farkas' lemma exactly one of

* λ >= 0, Σλ = 1, Σ λ_g g <= v                      (IN certificate), or
* w >= 0 with w·g >= w·v + 1 for every g             (OUT certificate)

is feasible, and each certificate is checked by plain arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

__all__ = [
    "in_newton_polyhedron",
    "check_in_certificate",
    "check_out_certificate",
    "newton_closure_exponents",
    "minimal_exponents",
]


def _phase_one(A, b):
    """Find x >= 0 with A x = b (b >= 0) exactly, or return None."""
    m = len(A)
    n = len(A[0]) if m else 0
    # tableau rows: [A | I | b]; objective: minimise sum of artificials
    T = [[Fraction(v) for v in A[i]] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(b[i])]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    while True:
        # reduced costs of the phase-one objective
        # (artificial columns never re-enter once they leave)
        art = [i for i in range(m) if basis[i] >= n]
        cost = [-sum(T[i][j] for i in art) for j in range(n)]
        enter = next((j for j in range(n) if j not in basis and cost[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][-1] / T[i][enter], basis[i], i) for i in range(m) if T[i][enter] > 0]
        if not ratios:  # pragma: no cover - phase one is bounded below by 0
            break
        _, _, r = min(ratios)
        piv = T[r][enter]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        basis[r] = enter
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    if any(x[j] for j in range(n, width)):
        return None
    return x[:n]


def _primal(G, v):
    k, n = len(G), len(v)
    # variables: λ_1..λ_k, s_1..s_n ; rows: coordinates, then Σλ = 1
    A = [[g[i] for g in G] + [int(i == j) for j in range(n)] for i in range(n)]
    A.append([1] * k + [0] * n)
    sol = _phase_one(A, list(v) + [1])
    return None if sol is None else sol[:k]


def _separation(G, v):
    k, n = len(G), len(v)
    # variables: w_1..w_n, t_1..t_k ; rows: (g - v)·w - t_g = 1
    A = [[g[i] - v[i] for i in range(n)] + [-int(j == r) for j in range(k)] for r, g in enumerate(G)]
    sol = _phase_one(A, [1] * k)
    return None if sol is None else sol[:n]


def check_in_certificate(G, v, lam) -> bool:
    lam = [Fraction(x) for x in lam]
    if any(x < 0 for x in lam) or sum(lam) != 1:
        return False
    return all(sum(l * g[i] for l, g in zip(lam, G)) <= v[i] for i in range(len(v)))


def check_out_certificate(G, v, w) -> bool:
    w = [Fraction(x) for x in w]
    if any(x < 0 for x in w):
        return False
    wv = sum(a * b for a, b in zip(w, v))
    return all(sum(a * b for a, b in zip(w, g)) >= wv + 1 for g in G)


@lru_cache(maxsize=65536)
def in_newton_polyhedron(G: tuple, v: tuple):
    """Decide v ∈ conv(G) + R^n_+ exactly.

    Returns ``(True, λ)`` or ``(False, w)`` with certificates as Fractions.
    """
    if not G:
        return False, tuple(Fraction(0) for _ in v)
    for i, g in enumerate(G):
        if all(a <= b for a, b in zip(g, v)):
            lam = [Fraction(0)] * len(G)
            lam[i] = Fraction(1)
            return True, tuple(lam)
    lam = _primal(G, v)
    if lam is not None:
        assert check_in_certificate(G, v, lam)
        return True, tuple(lam)
    w = _separation(G, v)
    if w is None or not check_out_certificate(G, v, w):  # pragma: no cover - Farkas
        raise ArithmeticError("Newton polyhedron membership: no certificate either way")
    return False, tuple(w)


def minimal_exponents(points) -> list:
    """Exponent vectors minimal under componentwise order, sorted."""
    pts = sorted(set(tuple(p) for p in points))
    return [p for p in pts if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)]


def newton_closure_exponents(G) -> list:
    """Minimal exponents of the integral closure of the monomial ideal (x^g : g ∈ G)."""
    G = tuple(minimal_exponents(G))
    if not G:
        return []
    n = len(G[0])
    # minimal generators have every coordinate <= the max over G
    box = [range(max(g[i] for g in G) + 1) for i in range(n)]
    inside = [v for v in product(*box) if in_newton_polyhedron(G, v)[0]]
    return minimal_exponents(inside)
