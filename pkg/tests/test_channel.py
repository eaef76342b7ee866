from collections import Counter

import pytest

from rankdec import analysis, oracles
from rankdec.channel import (
    SeededRng,
    random_vector,
    sample_error,
    sample_full_rank,
    sample_grassmannian,
    sample_independent,
    sample_instance,
)
from rankdec.ffield import FieldTower, PrimeField, rank, rank_qm, row_space_key
from rankdec.gabidulin import GabidulinCode, encode


def test_streams_are_reproducible_and_distinct():
    a = [SeededRng(5, 1).integers(2**40) for _ in range(3)]
    b = [SeededRng(5, 1).integers(2**40) for _ in range(3)]
    c = [SeededRng(5, 2).integers(2**40) for _ in range(3)]
    assert a == b and a != c
    assert SeededRng(5, 1).spawn(2).stream == 2


def test_large_fields_draw_digit_by_digit():
    T = FieldTower(2, 70)
    v = random_vector(T, 3, SeededRng(1))
    assert all(0 <= x < T.order for x in v)
    assert sample_independent(T, 4, SeededRng(1)) != []


@pytest.mark.parametrize("q,m,n", [(2, 24, 24), (3, 4, 4), (2, 6, 5)])
def test_error_has_exact_rank(q, m, n):
    T = FieldTower(q, m)
    rng = SeededRng(2, q)
    for w in range(min(m, n) + 1):
        for _ in range(10):
            err = sample_error(T, n, w, rng)
            assert rank_qm(err.e, T) == w == rank_qm(err.a, T) == rank(err.B, T.base)
    assert sample_error(T, n, 0, rng).e == [0] * n


def test_error_rejects_oversized_weight():
    with pytest.raises(ValueError):
        sample_error(FieldTower(2, 4), 3, 4, SeededRng(0))


def test_full_rank_and_grassmannian_edges():
    rng = SeededRng(3)
    assert sample_grassmannian(5, 0, 2, rng) == []
    full = sample_grassmannian(5, 5, 3, rng)
    assert rank(full, PrimeField(3)) == 5
    with pytest.raises(ValueError):
        sample_grassmannian(3, 4, 2, rng)
    with pytest.raises(ValueError):
        sample_full_rank(4, 3, 2, rng)


def test_instance_is_codeword_plus_error():
    code = GabidulinCode.standard(FieldTower(2, 10), 9, 3)
    inst, err = sample_instance(code, 4, SeededRng(4))
    c = encode(code, inst.msg)
    assert inst.r == [a ^ b for a, b in zip(c, err.e)]
    inst2, _ = sample_instance(code, 4, SeededRng(4))
    assert inst2.r == inst.r


def test_rank1_errors_uniform():
    T = FieldTower(2, 4)
    rng = SeededRng(5)
    draws = 100_000
    counts = Counter(tuple(sample_error(T, 3, 1, rng).e) for _ in range(draws))
    support = analysis.count_rank_vectors(4, 3, 1, 2)
    assert support == 105 == len(counts)
    assert oracles.chi2_pvalue(list(counts.values()), draws / support) > 1e-3


@pytest.mark.parametrize("q,n", [(2, n) for n in range(1, 6)] + [(3, n) for n in range(1, 5)])
def test_grassmannian_uniform(q, n):
    F = PrimeField(q)
    rng = SeededRng(6, 10 * q + n)
    for delta in range(n + 1):
        total = analysis.gaussian_binomial(n, delta, q)
        draws = max(2000, 60 * total)
        counts = Counter(row_space_key(sample_grassmannian(n, delta, q, rng), F) for _ in range(draws))
        assert len(counts) == total
        if total > 1:
            assert oracles.chi2_pvalue(list(counts.values()), draws / total) > 1e-3


def test_grassmannian_35_subspaces():
    F = PrimeField(2)
    rng = SeededRng(7)
    counts = Counter(row_space_key(sample_grassmannian(4, 2, 2, rng), F) for _ in range(100_000))
    assert len(counts) == 35
    assert oracles.chi2_pvalue(list(counts.values()), 100_000 / 35) > 1e-3
