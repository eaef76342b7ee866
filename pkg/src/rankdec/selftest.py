"""Oracle cross-checks runnable from the command line (``rankdec selftest``)."""
from __future__ import annotations

import contextlib
import time
from collections import Counter

from rankdec import analysis, oracles
from rankdec.channel import SeededRng, random_vector, sample_error, sample_grassmannian, sample_instance
from rankdec.ffield import FieldTower, PrimeField, row_space_key
from rankdec.gabidulin import GabidulinCode, decode_unique, list_close_codewords


def check_gaussian_binomial(level, rng):
    for q in (2, 3):
        for n in range(5 if level == "fast" else 6):
            for d in range(n + 1):
                if len(oracles.all_subspaces(n, d, q)) != analysis.gaussian_binomial(n, d, q):
                    return False, f"[{n} choose {d}]_{q}"
    return True, "exact"


def check_intersection(level, rng):
    lmax = 4 if level == "fast" else 5
    count = 0
    for q in (2, 3):
        for l in range(lmax + 1):
            for u in range(l + 1):
                for v in range(l + 1):
                    for om in range(min(u, v) + 2):
                        exact = analysis.lemma1_exact(l, u, v, om, q).value
                        if exact != oracles.brute_intersection_prob(l, u, v, om, q):
                            return False, f"l={l} u={u} v={v} omega={om} q={q}"
                        count += 1
    return True, f"exact, {count} cases"


def check_list_oracle(level, rng):
    T = FieldTower(2, 8)
    code = GabidulinCode.standard(T, 8, 2)
    book = oracles.codebook(code)
    words = 2 if level == "fast" else 20
    for _ in range(words):
        r = random_vector(T, 8, rng)
        if list_close_codewords(code, r, 4) != oracles.close_codewords_bruteforce(code, r, 4, book):
            return False, "list mismatch"
    return True, f"exact, {words} words"


def check_guess_probability(level, rng):
    from rankdec.simulate import intersection_rate

    n, k, j, delta = 8, 4, 3, 2
    need = analysis.lemma2_min_intersection(n, k, delta, j)
    exact = float(analysis.lemma2_prob(n, k, delta, j, 2))
    samples = 100_000 if level == "fast" else 1_000_000
    est = intersection_rate(n, j, delta, need, samples, seed=rng.seed)
    rel = abs(est - exact) / exact
    return rel < 0.1, f"rel. error {rel:.3f} < 0.1"


def check_unique_decoding(level, rng):
    T = FieldTower(2, 24)
    code = GabidulinCode.standard(T, 24, 16)
    trials = 50 if level == "fast" else 1000
    for _ in range(trials):
        inst, _ = sample_instance(code, 4, rng)
        out = decode_unique(code, inst.r)
        if out.failed or out.message != inst.msg:
            return False, "decoding failure inside the unique radius"
    return True, f"{trials}/{trials} decoded"


def check_error_uniformity(level, rng):
    T = FieldTower(2, 4)
    counts = Counter(tuple(sample_error(T, 3, 1, rng).e) for _ in range(100_000))
    expected_support = (2**4 - 1) * (2**3 - 1)
    if len(counts) != expected_support:
        return False, f"{len(counts)} distinct rank-1 vectors, expected {expected_support}"
    p = oracles.chi2_pvalue(list(counts.values()), 100_000 / expected_support)
    return p > 1e-3, f"chi2 p={p:.3g} > 0.001"


def check_subspace_uniformity(level, rng):
    F = PrimeField(2)
    counts = Counter(row_space_key(sample_grassmannian(4, 2, 2, rng), F) for _ in range(100_000))
    if len(counts) != 35:
        return False, f"{len(counts)} subspaces hit, expected 35"
    p = oracles.chi2_pvalue(list(counts.values()), 100_000 / 35)
    return p > 1e-3, f"chi2 p={p:.3g} > 0.001"


CHECKS = {
    "fast": [
        ("gaussian binomial vs RREF enumeration", check_gaussian_binomial),
        ("intersection probability vs Grassmannian enumeration", check_intersection),
        ("list_close_codewords vs codebook search", check_list_oracle),
        ("guess success probability vs Monte Carlo", check_guess_probability),
        ("unique-radius decoding", check_unique_decoding),
    ],
}
CHECKS["full"] = CHECKS["fast"] + [
    ("rank-1 error uniformity", check_error_uniformity),
    ("Grassmannian sampler uniformity", check_subspace_uniformity),
]


@contextlib.contextmanager
def _perturbed_gaussian_binomial():
    orig = analysis.gaussian_binomial

    def bad(a, b, q):
        return orig(a, b, q) + (1 if (a, b, q) == (4, 2, 2) else 0)

    analysis.gaussian_binomial = bad
    try:
        yield
    finally:
        analysis.gaussian_binomial = orig


def run(level: str = "fast", seed: int = 0, inject_fault: bool = False, out=print) -> bool:
    ctx = _perturbed_gaussian_binomial() if inject_fault else contextlib.nullcontext()
    ok = True
    with ctx:
        for i, (name, fn) in enumerate(CHECKS[level]):
            t0 = time.perf_counter()
            passed, detail = fn(level, SeededRng(seed, 1000 + i))
            ok &= passed
            out(f"{'PASS' if passed else 'FAIL'}  {name}  ({detail}, {time.perf_counter() - t0:.1f}s)")
    out(f"selftest {level}: {'all checks passed' if ok else 'FAILED'}")
    return ok
