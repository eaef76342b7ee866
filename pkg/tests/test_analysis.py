import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankdec import analysis as A
from rankdec import oracles
from rankdec.ffield import FieldTower, rank_qm

ROW1 = A.ParamSet(2, 24, 24, 16, 6)

# a 4-dim guess must lie inside the 6-dim error row space: [6 choose 4]_2 / [24 choose 4]_2
FROZEN_P2_ROW1 = Fraction(31, 187141184048532685646311)


def test_paramset_validation_and_json():
    assert ROW1.xi == 2 and ROW1.two_xi == 4
    assert A.ParamSet(2, 8, 7, 2, 3).xi == Fraction(1, 2)
    for bad in [(1, 4, 4, 2, 1), (2, 4, 5, 2, 1), (2, 4, 4, 0, 1), (2, 4, 4, 2, 5)]:
        with pytest.raises(ValueError):
            A.ParamSet(*bad)
    assert A.ParamSet.from_json(json.loads(json.dumps(ROW1.to_json()))) == ROW1


def test_log2_exactness():
    assert A.log2(2**1000) == 1000.0
    assert A.log2(Fraction(1, 2**300)) == -300.0
    assert A.log2(0) == -math.inf
    with pytest.raises(ValueError):
        A.log2(-1)


def test_gaussian_binomial_examples():
    assert A.gaussian_binomial(7, 0, 3) == 1
    assert A.gaussian_binomial(4, 2, 2) == 35
    assert A.gaussian_binomial(3, 4, 2) == 0
    assert A.gaussian_binomial(3, -1, 2) == 0


@given(st.integers(0, 30), st.integers(0, 30), st.sampled_from([2, 3, 5, 7]))
def test_gaussian_binomial_symmetry(a, b, q):
    b = min(a, b)
    assert A.gaussian_binomial(a, b, q) == A.gaussian_binomial(a, a - b, q)


@pytest.mark.parametrize("q", [2, 3])
def test_gaussian_binomial_counts_rref(q):
    for n in range(6 if q == 2 else 5):
        for d in range(n + 1):
            assert len(oracles.all_subspaces(n, d, q)) == A.gaussian_binomial(n, d, q)


def test_count_rank_vectors_examples():
    assert A.count_rank_vectors(5, 3, 0, 2) == 1
    assert A.count_rank_vectors(4, 2, 1, 2) == 45
    T = FieldTower(2, 4)
    hist = [0, 0, 0]
    for x, y in itertools.product(range(16), repeat=2):
        hist[rank_qm([x, y], T)] += 1
    assert hist == [A.count_rank_vectors(4, 2, j, 2) for j in range(3)]


@pytest.mark.parametrize("q", [2, 3])
def test_rank_partition_identity(q):
    for m in range(1, 9):
        for n in range(1, 9):
            total = sum(A.count_rank_vectors(m, n, j, q) for j in range(min(m, n) + 1))
            assert total == q ** (m * n)


def test_ball_probability_and_candidates():
    assert A.ball_probability(6, 6, 6, 6, 2).value == 1
    assert A.expected_candidates(6, 6, 3, 0, 2) == 1
    assert A.log2(A.expected_candidates(24, 24, 16, 6, 2)) == pytest.approx(61.77, abs=0.01)


def test_work_factors_row1():
    assert A.wf_combinatorial_over_n(ROW1) == pytest.approx(38.99, abs=0.05)
    assert A.wf_algebraic(ROW1) == pytest.approx(126.01, abs=0.05)
    assert A.wf_key(ROW1) == pytest.approx(43.40, abs=0.05)
    # without the cubic prefactor
    assert A.wf_combinatorial(ROW1, poly_factor=False) == 78.0
    assert A.wf_pq_combinatorial(ROW1, poly_factor=False) == 39.0
    # the <= form of the case split picks the smaller exponent
    assert A.wf_algebraic(ROW1, printed_condition=True) < A.wf_algebraic(ROW1) - 10
    with pytest.raises(ValueError):
        A.wf_key(A.ParamSet(2, 24, 24, 16, 4))


def test_intersection_examples():
    assert A.lemma1_exact(5, 2, 3, 0, 2).value == 1
    assert A.lemma1_exact(2, 1, 1, 1, 2).value == Fraction(1, 3)
    assert A.lemma1_exact(4, 1, 1, 2, 3).value == 0
    assert A.lemma1_bound(4, 1, 1, 2, 3) == -math.inf


@pytest.mark.parametrize("q", [2, 3])
def test_intersection_matches_enumeration(q):
    for l in range(6):
        for u in range(l + 1):
            for v in range(l + 1):
                for om in range(min(u, v) + 2):
                    assert A.lemma1_exact(l, u, v, om, q).value == oracles.brute_intersection_prob(l, u, v, om, q)


@pytest.mark.parametrize("q", [2, 3])
def test_intersection_terms_sum_to_one(q):
    for l in range(9):
        for u in range(l + 1):
            for v in range(l + 1):
                assert sum(A._intersection_terms(l, u, v, q).values()) == A.gaussian_binomial(l, v, q)


def test_guess_probability_examples():
    assert A.lemma2_prob(24, 16, 4, 0, 2).value == 1
    assert A.lemma2_prob(24, 16, 2, 3, 2).value == 1
    p = A.lemma2_prob(24, 16, 4, 6, 2)
    assert p.value == FROZEN_P2_ROW1
    assert float(p) == pytest.approx(1.6565e-22, rel=1e-4)
    assert A.lemma2_min_intersection(24, 16, 4, 6) == 4


def test_success_probability_examples():
    ps0 = A.ParamSet(2, 10, 8, 3, 0)
    assert A.lemma3_success_prob(ps0, 2).value == Fraction(1, 2 ** (10 * 5))
    p = A.lemma3_success_prob(ROW1, 4)
    assert float(p) == pytest.approx(6.5104e-4, rel=1e-4)
    assert p.value >= A.lemma3_dominant_term(ROW1, 4).value
    assert A.log2(Fraction(24**2) / p.value) == pytest.approx(19.755, abs=0.001)


def _grid():
    for q in (2, 3):
        for n in range(2, 9):
            for m in (n, n + 2):
                for k in range(1, n):
                    for w in range(0, n - k + 1):
                        for d in range(0, n - k + 1):
                            yield q, m, n, k, w, d


def test_bounds_dominate_exact_values():
    checked = {"l1": 0, "l2": 0, "l3": 0}
    for q in (2, 3):
        for l in range(8):
            for u in range(l + 1):
                for v in range(l + 1):
                    for om in range(min(u, v) + 1):
                        assert A.lemma1_exact(l, u, v, om, q).log2 <= A.lemma1_bound(l, u, v, om, q) + 1e-9
                        checked["l1"] += 1
    for q, m, n, k, w, d in _grid():
        if 2 * w - (n - k) > d:
            continue
        if 2 * w + d > n - k:
            assert A.lemma2_prob(n, k, d, w, q).log2 <= A.lemma2_bound(n, k, d, w, q) + 1e-9
            checked["l2"] += 1
        if 2 * w > n - k:
            ps = A.ParamSet(q, m, n, k, w)
            assert A.lemma3_success_prob(ps, d).log2 <= A.lemma3_bound(ps, d) + 1e-9
            checked["l3"] += 1
    assert min(checked.values()) >= 100


def test_theorem1_scans_every_delta():
    val, delta = A.theorem1_work_factor(ROW1)
    assert delta == 4
    objs = {d: A.theorem1_objective(ROW1, d) for d in range(4, 9)}
    assert val == min(objs.values()) == objs[4]
    assert A.theorem1_work_factor(A.ParamSet(2, 64, 64, 32, 19))[1] == 6
    assert A.theorem1_work_factor(A.ParamSet(2, 82, 82, 48, 20))[1] == 6
    with pytest.raises(ValueError):
        A.theorem1_work_factor(A.ParamSet(2, 24, 24, 16, 4))
    with pytest.raises(ValueError):
        A.theorem1_work_factor(A.ParamSet(2, 24, 24, 16, 9))


def test_theorem1_ties_go_to_smaller_delta(monkeypatch):
    monkeypatch.setattr(A, "theorem1_objective", lambda ps, d: 1.0)
    assert A.theorem1_work_factor(ROW1) == (1.0, 4)


def test_corollary_and_remark_bounds():
    for q, m, n, k, w, _ in _grid():
        ps = A.ParamSet(q, m, n, k, w)
        if not ps.beyond_unique:
            continue
        lo, hi = A.corollary1_lower_bound(ps), A.remark_upper_bound(ps)
        assert hi - lo == pytest.approx(math.log2(64 * n), abs=1e-9)
    assert A.corollary1_lower_bound(ROW1) <= A.theorem1_work_factor(ROW1)[0]


def test_joint_guess_row1():
    assert float(A.lemma4_joint_bound(24, 16, 24, 6, 4, 0, 2)) == pytest.approx(1.66e-22, rel=0.01)
    assert float(A.lemma4_joint_bound(24, 16, 24, 6, 2, 2, 2)) == pytest.approx(1.93e-22, rel=0.01)
    # row-only guessing reduces to the single-guess probability
    assert A.lemma4_joint_bound(24, 16, 24, 6, 4, 0, 2).value == FROZEN_P2_ROW1


def test_report_json_round_trip_and_degenerate_case():
    rep = A.report(ROW1)
    doc = json.loads(json.dumps(rep.to_json()))
    assert set(doc["log2"]) >= {
        "W_RD", "W_RD_lower", "W_RD_upper", "W_Comb", "W_Comb_over_N",
        "W_PQComb", "W_Alg", "W_Key", "success_prob",
    }
    assert doc["delta_star"] == 4
    assert A.WorkFactorReport.from_json(doc) == rep
    easy = A.report(A.ParamSet(2, 24, 24, 16, 3))
    assert easy.W_RD == pytest.approx(math.log2(24**2)) and easy.delta_star == 0 and easy.W_Key is None


def test_joint_guess_large_example_reconstructed():
    # m=n=64, w=19: the row-only and split guesses agree near 5.27e-82 at k=32, delta=6
    row = A.lemma4_joint_bound(64, 32, 64, 19, 6, 0, 2)
    split = A.lemma4_joint_bound(64, 32, 64, 19, 3, 3, 2)
    assert float(row) == pytest.approx(5.27e-82, rel=0.01)
    assert float(split) == pytest.approx(5.27e-82, rel=0.01)
