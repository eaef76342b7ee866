"""Randomized decoding beyond the unique radius by guessing error row spaces.

Each iteration draws a uniform delta-dimensional subspace U of F_q^n, treats it
as the known row space of column erasures and runs the error/erasure decoder.
It stops at the first codeword within rank distance w of r.
"""
from __future__ import annotations

from dataclasses import dataclass

from rankdec.channel import SeededRng, sample_grassmannian, sample_instance
from rankdec.ffield import rank_qm
from rankdec.gabidulin import DecodeOutcome, GabidulinCode, decode_error_erasure

MAX_ITER_CAP = 2**31


@dataclass(frozen=True)
class RandDecoderConfig:
    delta: int
    max_iter: int
    w: int
    n: int
    k: int

    def __post_init__(self):
        if not 0 <= self.delta <= self.n - self.k:
            raise ValueError(f"delta={self.delta} outside [0, n-k={self.n - self.k}]")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0 <= self.w <= self.n:
            raise ValueError(f"w={self.w} outside [0, n]")

    @classmethod
    def for_code(cls, code: GabidulinCode, w: int, delta: int | None = None, max_iter: int | None = None):
        """Config with delta chosen by :func:`choose_delta` and max_iter = 20/p
        (p the per-iteration success probability), both unless given."""
        from rankdec import analysis

        T = code.tower
        if delta is None:
            delta = choose_delta(code.n, code.k, T.m, w, T.q)
        if max_iter is None:
            p = analysis.lemma3_success_prob(analysis.ParamSet(T.q, T.m, code.n, code.k, w), delta).value
            max_iter = min(MAX_ITER_CAP, max(1, int(20 / p))) if p > 0 else MAX_ITER_CAP
        return cls(delta, max_iter, w, code.n, code.k)


@dataclass
class RandDecodeReport:
    outcome: DecodeOutcome
    iterations_used: int
    trials_attempted: int


def randomized_decode(
    code: GabidulinCode, r, cfg: RandDecoderConfig, rng: SeededRng
) -> RandDecodeReport:
    if (cfg.n, cfg.k) != (code.n, code.k):
        raise ValueError("config was built for a different code")
    T = code.tower
    for it in range(1, cfg.max_iter + 1):
        B_C = sample_grassmannian(code.n, cfg.delta, T.q, rng)
        out = decode_error_erasure(code, r, None, B_C)
        if not out.failed:
            # the decoder's own residual is re-derived here on purpose
            res = rank_qm([T.sub(a, b) for a, b in zip(r, out.codeword)], T)
            if res <= cfg.w:
                return RandDecodeReport(out, it, it)
    return RandDecodeReport(DecodeOutcome(), cfg.max_iter, cfg.max_iter)


def choose_delta(n: int, k: int, m: int, w: int, q: int) -> int:
    """Guess dimension minimizing the expected work factor (0 inside the unique radius)."""
    from rankdec import analysis

    if w <= (n - k) // 2:
        return 0
    return analysis.theorem1_work_factor(analysis.ParamSet(q, m, n, k, w))[1]


FAIL, OTHER, TRUE = 0, 1, 2


def per_guess_trial(code: GabidulinCode, w: int, delta: int, rng: SeededRng) -> int:
    """One simulation trial: fresh message and rank-w error, one guess, one decode.

    Returns FAIL, OTHER (some codeword within rank w that is not the
    transmitted one) or TRUE (the transmitted codeword)."""
    inst, _ = sample_instance(code, w, rng)
    B_C = sample_grassmannian(code.n, delta, code.tower.q, rng)
    out = decode_error_erasure(code, inst.r, None, B_C)
    if out.failed or out.residual_rank > w:
        return FAIL
    return TRUE if out.message == inst.msg else OTHER
