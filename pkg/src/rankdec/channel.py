"""Random instances: messages, uniform rank-w errors and uniform subspaces of F_q^n.

Every draw goes through ``SeededRng.integers`` in a fixed order, so the
compiled simulator in :mod:`rankdec.fastsim` can replay the same stream.

Draw order
----------
* field element: one integer in [0, q^m)  (or m digits when q^m >= 2^62)
* F_q row of length n: one integer in [0, q^n) read as base-q digits
* full-rank rows x n matrix: ``rows`` row draws, repeated until full rank
* F_q-independent w-tuple: w element draws, repeated until independent
* error: independent a (w elements), then full-rank B (w x n)
* instance: message (k elements), then the error
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rankdec.ffield import FieldTower, PrimeField, rank, rank_qm, xor_rank
from rankdec.gabidulin import GabidulinCode, Instance, encode

_DIRECT_LIMIT = 2**62


class SeededRng:
    """numpy Philox generator keyed by (seed, stream).

    Equal (seed, stream) pairs give identical streams on every platform;
    distinct streams are statistically independent."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        self.generator = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))
        )

    def integers(self, high: int) -> int:
        return int(self.generator.integers(0, high))

    def spawn(self, stream: int) -> "SeededRng":
        return SeededRng(self.seed, stream)


def _base_digits(x: int, q: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        x, d = divmod(x, q)
        out.append(d)
    return out


def random_element(tower: FieldTower, rng: SeededRng) -> int:
    if tower.order < _DIRECT_LIMIT:
        return rng.integers(tower.order)
    return tower.from_digits([rng.integers(tower.q) for _ in range(tower.m)])


def random_vector(tower: FieldTower, n: int, rng: SeededRng) -> list[int]:
    return [random_element(tower, rng) for _ in range(n)]


def random_base_row(n: int, q: int, rng: SeededRng) -> list[int]:
    if q**n < _DIRECT_LIMIT:
        return _base_digits(rng.integers(q**n), q, n)
    return [rng.integers(q) for _ in range(n)]


def sample_full_rank(rows: int, n: int, q: int, rng: SeededRng) -> list[list[int]]:
    """Uniform full-rank rows x n matrix over F_q (rejection sampling)."""
    if rows > n:
        raise ValueError(f"no full-rank {rows}x{n} matrix exists")
    if rows == 0:
        return []
    if q == 2 and 2**n < _DIRECT_LIMIT:
        while True:
            packed = [rng.integers(2**n) for _ in range(rows)]
            if xor_rank(packed) == rows:
                return [_base_digits(x, 2, n) for x in packed]
    F = PrimeField(q)
    while True:
        B = [random_base_row(n, q, rng) for _ in range(rows)]
        if rank(B, F) == rows:
            return B


def sample_grassmannian(n: int, delta: int, q: int, rng: SeededRng) -> list[list[int]]:
    """Basis (delta x n, full rank) of a uniformly random delta-dim subspace of F_q^n.

    Each subspace has the same number of bases, so a uniform full-rank matrix
    has a uniform row space."""
    if not 0 <= delta <= n:
        raise ValueError(f"delta={delta} outside [0, {n}]")
    return sample_full_rank(delta, n, q, rng)


def sample_independent(tower: FieldTower, w: int, rng: SeededRng) -> list[int]:
    while True:
        a = random_vector(tower, w, rng)
        if rank_qm(a, tower) == w:
            return a


@dataclass
class ErrorSample:
    a: list[int]
    B: list[list[int]]
    e: list[int]


def sample_error(tower: FieldTower, n: int, w: int, rng: SeededRng) -> ErrorSample:
    """e = a B uniform over the vectors of F_{q^m}^n with rank exactly w.

    GL(w, F_q) acts freely on the pairs (a, B) with a independent and B of full
    rank, and the orbits are exactly the fibres of (a, B) -> aB, so uniform
    pairs give a uniform e."""
    if not 0 <= w <= min(n, tower.m):
        raise ValueError(f"w={w} must lie in [0, min(n, m)]")
    a = sample_independent(tower, w, rng)
    B = sample_full_rank(w, n, tower.q, rng)
    e = [0] * n
    for ai, row in zip(a, B):
        for j, b in enumerate(row):
            if b:
                e[j] = tower.add(e[j], tower.scale(b, ai))
    return ErrorSample(a, B, e)


def sample_instance(code: GabidulinCode, w: int, rng: SeededRng) -> tuple[Instance, ErrorSample]:
    T = code.tower
    msg = random_vector(T, code.k, rng)
    err = sample_error(T, code.n, w, rng)
    c = encode(code, msg)
    r = [T.add(x, y) for x, y in zip(c, err.e)]
    return Instance(code, r, w, msg=msg, e=err.e), err
