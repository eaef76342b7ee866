"""Brute-force references for small parameters, shared by the self-test and the test suite."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import mpmath

from rankdec.ffield import PrimeField, rank, rank_qm
from rankdec.gabidulin import GabidulinCode, encode


def all_subspaces(n: int, d: int, q: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every d-dim subspace of F_q^n, as its reduced row echelon basis."""
    out = []
    for pivots in combinations(range(n), d):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        for vals in product(range(q), repeat=len(free)):
            M = [[0] * n for _ in range(d)]
            for i, p in enumerate(pivots):
                M[i][p] = 1
            for (i, j), x in zip(free, vals):
                M[i][j] = x
            out.append(tuple(map(tuple, M)))
    return out


def intersection_dim(U, V, F: PrimeField) -> int:
    U, V = [list(r) for r in U], [list(r) for r in V]
    joint = rank(U + V, F) if U or V else 0
    return len(U) + len(V) - joint


def brute_intersection_prob(l: int, u: int, v: int, omega: int, q: int) -> Fraction:
    """P[dim(U cap V) >= omega], U the span of the first u unit vectors, V uniform of dim v."""
    F = PrimeField(q)
    U = [[int(i == j) for j in range(l)] for i in range(u)]
    spaces = all_subspaces(l, v, q)
    hits = sum(intersection_dim(U, V, F) >= omega for V in spaces)
    return Fraction(hits, len(spaces))


def codebook(code: GabidulinCode) -> list[tuple[int, ...]]:
    """All q^(mk) codewords, built from F_q-multiples of a basis by linearity."""
    T = code.tower
    basis = []
    for i in range(code.k):
        for b in range(T.m):
            msg = [0] * code.k
            msg[i] = T.pow(T.generator(), b)
            basis.append(encode(code, msg))
    words = [tuple([0] * code.n)]
    for vec in basis:
        words = [
            tuple(T.add(c, T.scale(s, x)) for c, x in zip(word, vec)) for word in words for s in range(T.q)
        ]
    return words


def close_codewords_bruteforce(code: GabidulinCode, r, w: int, book=None) -> list[list[int]]:
    T = code.tower
    book = codebook(code) if book is None else book
    found = [list(c) for c in book if rank_qm([T.sub(a, b) for a, b in zip(r, c)], T) <= w]
    return sorted(found)


def chi2_pvalue(counts, expected: float) -> float:
    """Upper-tail p-value of Pearson's statistic against a flat expectation."""
    stat = sum((c - expected) ** 2 / expected for c in counts)
    dof = len(counts) - 1
    return float(mpmath.gammainc(dof / 2, stat / 2, mpmath.inf, regularized=True))
