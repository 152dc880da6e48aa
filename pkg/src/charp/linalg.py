"""Dense linear algebra over F_p and subspace enumeration in RREF order."""

from __future__ import annotations

from itertools import combinations, product

__all__ = ["rref", "rank", "enumerate_subspaces", "count_subspaces", "subspace_key", "in_span"]


def rref(rows, p):
    """Reduced row echelon form over F_p.

    Returns ``(E, pivots)`` where ``E`` holds the nonzero rows only.
    """
    M = [[x % p for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, p) -> int:
    return len(rref(rows, p)[1])


def in_span(vec, rows, p) -> bool:
    return rank(list(rows) + [vec], p) == rank(rows, p)


def subspace_key(rows, p):
    """Canonical form (tuple of RREF rows) of the span of ``rows``."""
    return tuple(tuple(r) for r in rref(rows, p)[0])


def count_subspaces(n: int, k: int, p: int) -> int:
    """Gaussian binomial [n choose k]_p."""
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces(n: int, k: int, p: int):
    """Yield every k-dimensional subspace of F_p^n as its RREF basis.

    Order: pivot tuples in decreasing lexicographic order, then the free
    entries (row-major) in increasing lexicographic order.  Deterministic.
    """
    if k == 0:
        yield ()
        return
    for piv in sorted(combinations(range(n), k), reverse=True):
        free = [(i, c) for i in range(k) for c in range(piv[i] + 1, n) if c not in piv]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)
