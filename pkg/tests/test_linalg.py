from itertools import product

import pytest

from charp.linalg import count_subspaces, enumerate_subspaces, in_span, rank, rref, subspace_key


def brute_subspaces(n, k, p):
    """All k-dim subspaces of F_p^n as frozensets of their vectors."""
    vecs = list(product(range(p), repeat=n))
    spaces = set()
    for rows in product(vecs, repeat=k):
        span = {tuple(sum(c * r[i] for c, r in zip(cs, rows)) % p for i in range(n))
                for cs in product(range(p), repeat=k)}
        if len(span) == p**k:
            spaces.add(frozenset(span))
    return spaces


@pytest.mark.parametrize("n,k,p", [(2, 1, 3), (3, 1, 2), (3, 2, 2), (3, 2, 3), (2, 2, 5), (4, 2, 2), (3, 0, 3)])
def test_enumeration_matches_brute_force(n, k, p):
    listed = list(enumerate_subspaces(n, k, p))
    assert len(listed) == count_subspaces(n, k, p)
    spans = set()
    for rows in listed:
        span = frozenset(tuple(sum(c * r[i] for c, r in zip(cs, rows)) % p for i in range(n))
                         for cs in product(range(p), repeat=k))
        spans.add(span)
    assert len(spans) == len(listed)
    if k:
        assert spans == brute_subspaces(n, k, p)


def test_rref_and_rank():
    rows = [[1, 2, 0], [2, 4, 0], [0, 1, 1]]
    E, piv = rref(rows, 5)
    assert rank(rows, 5) == 2 == len(piv)
    assert in_span([1, 3, 1], rows, 5)
    assert not in_span([0, 0, 1], rows, 5)
    assert subspace_key([[2, 4, 0], [0, 1, 1]], 5) == subspace_key([[1, 2, 0], [1, 3, 1]], 5)


def test_count_known_values():
    assert count_subspaces(3, 1, 3) == 13
    assert count_subspaces(4, 2, 5) == 806
    assert count_subspaces(2, 3, 3) == 0
