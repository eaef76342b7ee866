"""Acceptance criteria A1-A6.  Each test records one PASS/FAIL line that the
terminal summary prints at the end of the run."""
import json
import os
import time

import pytest

from rankdec import analysis as A
from rankdec import cli, oracles
from rankdec.channel import SeededRng, random_vector, sample_full_rank, sample_instance
from rankdec.ffield import FieldTower, PrimeField, rank, rank_qm
from rankdec.gabidulin import GabidulinCode, decode_error_erasure, list_close_codewords
from rankdec.randdec import RandDecoderConfig, randomized_decode
from rankdec.simulate import SimulationConfig, binomial_ci, intersection_rate, simulate

F2 = PrimeField(2)

TABLE_ROWS = [(24, 24, 16, 6), (64, 64, 32, 19), (80, 80, 40, 23), (96, 96, 48, 27), (82, 82, 48, 20)]
EXPECTED = {
    "W_RD": ([19.65, 257.20, 401.85, 578.38, 290.92], 0.05),
    "W_Key": ([43.40, 371.21, 492.64, 589.17, 410.92], 0.05),
    "W_Comb_over_N": ([38.99, 571.21, 897.93, 1263.51, 838.54], 0.05),
    "W_Alg": ([126.01, 460.01, 576.15, 694.93, 504.70], 1.0),
}
EXPECTED_DELTA = [4, 6, 6, 6, 6]


def test_A1_table_analysis(acceptance, tmp_path, capsys):
    batch = tmp_path / "rows.json"
    batch.write_text(json.dumps([dict(q=2, m=m, n=n, k=k, w=w) for m, n, k, w in TABLE_ROWS]))
    t0 = time.perf_counter()
    code = cli.main(["analyze", "--batch", str(batch), "--format", "json"])
    elapsed = time.perf_counter() - t0
    docs = json.loads(capsys.readouterr().out)
    misses = []
    for i, doc in enumerate(docs):
        if doc["delta_star"] != EXPECTED_DELTA[i]:
            misses.append(f"row {i + 1} delta {doc['delta_star']} != {EXPECTED_DELTA[i]}")
        for key, (vals, tol) in EXPECTED.items():
            got = doc["log2"][key]
            if abs(got - vals[i]) > tol:
                misses.append(f"row {i + 1} {key} {got:.3f} vs {vals[i]} (tol {tol})")
    ok = code == 0 and not misses and elapsed < 10
    acceptance("A1", ok, f"{elapsed:.1f}s; " + ("; ".join(misses) if misses else "all 20 values in tolerance"))
    assert code == 0 and elapsed < 10
    assert not misses, misses


@pytest.mark.slow
def test_A2_row1_simulation(acceptance):
    cfg = SimulationConfig(2, 24, 24, 16, 6, 4, trials=1_000_000, seed=0, workers=os.cpu_count() or 1)
    rec = simulate(cfg)
    centre = 4488 / 6844700
    lo, hi = binomial_ci(centre, rec.total_trials)
    rate, wf = rec.empirical_success_rate, rec.empirical_log2_workfactor
    ok = lo <= rate <= hi and wf is not None and 19.3 <= wf <= 20.2
    acceptance(
        "A2", ok,
        f"{rec.successes}/{rec.total_trials} = {rate:.3e} in [{lo:.3e}, {hi:.3e}]; log2 WF {wf:.2f}; {rec.wall_seconds:.0f}s",
    )
    assert lo <= rate <= hi
    assert 19.3 <= wf <= 20.2


def test_A3_joint_guessing(acceptance):
    cases = [
        ((24, 16, 24, 6, 4, 0), 1.66e-22),
        ((24, 16, 24, 6, 2, 2), 1.93e-22),
        ((64, 16, 64, 19, 32, 0), 5.27e-82),
        ((64, 16, 64, 19, 16, 16), 5.27e-82),
    ]
    misses = []
    for args, want in cases:
        got = float(A.lemma4_joint_bound(*args, 2))
        if abs(got - want) / want > 0.01:
            misses.append(f"(n,k,m,w,dr,dc)={args}: {got:.3e} vs {want:.3e}")
    acceptance("A3", not misses, "; ".join(misses) if misses else "4/4 within 1%")
    assert not misses, misses


def test_A4_oracle_equivalence(acceptance):
    # (a) exact intersection probability vs enumeration
    cases = 0
    for q in (2, 3):
        for l in range(6):
            for u in range(l + 1):
                for v in range(l + 1):
                    for om in range(min(u, v) + 2):
                        assert A.lemma1_exact(l, u, v, om, q).value == oracles.brute_intersection_prob(l, u, v, om, q)
                        cases += 1
    # (b) list decoder vs codebook search
    code = GabidulinCode.standard(FieldTower(2, 8), 8, 2)
    book = oracles.codebook(code)
    rng = SeededRng(404, 0)
    for _ in range(20):
        r = random_vector(code.tower, 8, rng)
        assert list_close_codewords(code, r, 4) == oracles.close_codewords_bruteforce(code, r, 4, book)
    # (c) guess probability vs decoder-free Monte Carlo
    n, k, j, delta = 24, 16, 6, 4
    need = A.lemma2_min_intersection(n, k, delta, j)
    exact = float(A.lemma2_prob(n, k, delta, j, 2))
    est = intersection_rate(n, j, delta, need, 1_000_000, seed=0)
    rel = abs(est - exact) / exact
    acceptance(
        "A4", rel < 0.1,
        f"(a) {cases} cases exact; (b) 20/20 words; (c) MC {est:.3e} vs exact {exact:.3e}, rel. error {rel:.2f}",
    )
    assert rel < 0.1


def _error_in_guess(code, w, delta, eps, rng):
    inst, err = sample_instance(code, w, rng)
    while True:
        extra = sample_full_rank(delta - eps, code.n, 2, rng)
        S = sample_full_rank(eps, w, 2, rng) if eps else []
        U = [[sum(a * b for a, b in zip(row, col)) % 2 for col in zip(*err.B)] for row in S] + extra
        joint = rank(err.B + extra, F2) if extra else w
        if rank(U, F2) == delta and joint == w + delta - eps:
            return inst, U


def test_A5_decoder_correctness(acceptance, row1_code):
    T = row1_code.tower
    unsound = 0
    rng = SeededRng(505, 0)
    for i in range(1000):
        w = i % 5
        inst, _ = sample_instance(row1_code, w, rng)
        rep = randomized_decode(row1_code, inst.r, RandDecoderConfig(0, 1, w, 24, 16), rng)
        assert not rep.outcome.failed and rep.outcome.message == inst.msg
        unsound += rank_qm([a ^ b for a, b in zip(inst.r, rep.outcome.codeword)], T) > w
    constructed = 0
    for w, delta, eps in [(6, 4, 4), (5, 4, 3), (5, 6, 4), (4, 8, 4), (6, 6, 5), (7, 6, 6), (3, 2, 0)]:
        assert eps <= min(w, delta) and 2 * (w - eps) + delta <= 8
        for _ in range(20):
            inst, U = _error_in_guess(row1_code, w, delta, eps, rng)
            out = decode_error_erasure(row1_code, inst.r, None, U)
            assert out.message == inst.msg
            unsound += out.residual_rank > w
            constructed += 1
    # beyond the unique radius on random words: any returned word must be within rank w
    returned = 0
    for i in range(300):
        r = random_vector(T, 24, rng)
        rep = randomized_decode(row1_code, r, RandDecoderConfig(4, 1, 6, 24, 16), rng)
        if not rep.outcome.failed:
            returned += 1
            unsound += rank_qm([a ^ b for a, b in zip(r, rep.outcome.codeword)], T) > 6
    acceptance(
        "A5", unsound == 0,
        f"1000/1000 unique-radius, {constructed}/{constructed} erasure-aided, {unsound} unsound outputs",
    )
    assert unsound == 0


def test_A6_bound_dominance(acceptance):
    points = 0
    for q in (2, 3):
        for l in range(8):
            for u in range(l + 1):
                for v in range(l + 1):
                    for om in range(min(u, v) + 1):
                        assert A.lemma1_exact(l, u, v, om, q).log2 <= A.lemma1_bound(l, u, v, om, q) + 1e-9
                        points += 1
        for n in range(2, 9):
            for k in range(1, n):
                for w in range(n - k + 1):
                    for d in range(n - k + 1):
                        if 2 * w - (n - k) > d:
                            continue
                        if 2 * w + d > n - k:
                            assert A.lemma2_prob(n, k, d, w, q).log2 <= A.lemma2_bound(n, k, d, w, q) + 1e-9
                            points += 1
                        for m in (n, n + 2):
                            if 2 * w > n - k:
                                ps = A.ParamSet(q, m, n, k, w)
                                assert A.lemma3_success_prob(ps, d).log2 <= A.lemma3_bound(ps, d) + 1e-9
                                points += 1
    partitions = 0
    for q in (2, 3):
        for m in range(1, 9):
            for n in range(1, 9):
                assert sum(A.count_rank_vectors(m, n, j, q) for j in range(min(m, n) + 1)) == q ** (m * n)
                partitions += 1
    acceptance("A6", points >= 100, f"{points} bound checks, {partitions} partition identities")
    assert points >= 100
