"""Monte Carlo harness for the randomized decoder.

Trials are cut into fixed-size chunks; chunk c draws from the stream
(seed, c).  The partition does not depend on the worker count, so the merged
counts are identical for any number of workers.

per-guess mode
    every trial is a fresh instance (message + rank-w error) and one guess.
geometric mode
    every trial is a fresh instance decoded by repeated guessing until a
    codeword within rank w appears or max_iter guesses are spent.

Both modes report total decoder calls and successes; the empirical work
factor is n^2 * calls / successes.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from functools import lru_cache

import numpy as np

from rankdec import analysis
from rankdec.channel import SeededRng, sample_instance
from rankdec.ffield import TABLE_MAX_M, FieldTower
from rankdec.gabidulin import GabidulinCode
from rankdec.randdec import FAIL, OTHER, TRUE, RandDecoderConfig, per_guess_trial, randomized_decode

log = logging.getLogger(__name__)

MODES = ("per-guess", "geometric")
CHUNK = {"per-guess": 10_000, "geometric": 16}


@dataclass(frozen=True)
class SimulationConfig:
    q: int
    m: int
    n: int
    k: int
    w: int
    delta: int
    trials: int
    seed: int = 0
    workers: int = 1
    mode: str = "per-guess"
    max_iter: int = 1
    compiled: bool = True

    def __post_init__(self):
        analysis.ParamSet(self.q, self.m, self.n, self.k, self.w)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.w > min(self.n, self.m):
            raise ValueError("w exceeds min(n, m)")
        # validates delta and max_iter
        RandDecoderConfig(self.delta, self.max_iter, self.w, self.n, self.k)

    @property
    def params(self) -> analysis.ParamSet:
        return analysis.ParamSet(self.q, self.m, self.n, self.k, self.w)

    def chunks(self) -> list[tuple[int, int]]:
        size = CHUNK[self.mode]
        return [(c, min(size, self.trials - c * size)) for c in range(math.ceil(self.trials / size))]


@dataclass
class SimulationRecord:
    q: int
    m: int
    n: int
    k: int
    w: int
    delta: int
    mode: str
    seed: int
    workers: int
    instances: int
    total_trials: int
    successes: int
    true_successes: int
    empirical_success_rate: float
    empirical_log2_workfactor: float | None
    theory_log2_workfactor: float | None
    wall_seconds: float

    def __post_init__(self):
        assert 0 <= self.true_successes <= self.successes <= self.total_trials

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "SimulationRecord":
        return cls(**obj)


CSV_COLUMNS = [f.name for f in fields(SimulationRecord)]
_CSV_TYPES = {f.name: f.type for f in fields(SimulationRecord)}


def records_to_csv(records: list[SimulationRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: "" if v is None else repr(v) if isinstance(v, float) else v for k, v in rec.to_json().items()})
    return buf.getvalue()


def records_from_csv(text: str) -> list[SimulationRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        vals = {}
        for key, raw in row.items():
            typ = _CSV_TYPES[key]
            if raw == "":
                vals[key] = None
            elif typ == "str":
                vals[key] = raw
            elif typ == "int":
                vals[key] = int(raw)
            else:
                vals[key] = float(raw)
        out.append(SimulationRecord(**vals))
    return out


@lru_cache(maxsize=8)
def _code(q: int, m: int, n: int, k: int) -> GabidulinCode:
    return GabidulinCode.standard(FieldTower(q, m), n, k)


def _use_compiled(cfg: SimulationConfig) -> bool:
    return cfg.compiled and cfg.q == 2 and cfg.m <= TABLE_MAX_M


def run_chunk(cfg: SimulationConfig, chunk: int, count: int) -> tuple[int, int, int]:
    """(decoder calls, successes, true-codeword successes) for one chunk."""
    code = _code(cfg.q, cfg.m, cfg.n, cfg.k)
    rng = SeededRng(cfg.seed, chunk)
    if _use_compiled(cfg):
        from rankdec import fastsim

        g, moore, lg, ex = fastsim.code_arrays(code)
        outcomes = np.zeros(count, np.int8)
        if cfg.mode == "per-guess":
            fastsim.per_guess_chunk(rng.generator, count, cfg.m, lg, ex, cfg.n, cfg.k, cfg.w, cfg.delta, g, moore, outcomes)
            calls = count
        else:
            iters = np.zeros(count, np.int64)
            fastsim.geometric_chunk(
                rng.generator, count, cfg.max_iter, cfg.m, lg, ex, cfg.n, cfg.k, cfg.w, cfg.delta, g, moore, iters, outcomes
            )
            calls = int(iters.sum())
        hist = np.bincount(outcomes, minlength=3)
        return calls, int(hist[OTHER] + hist[TRUE]), int(hist[TRUE])
    if cfg.mode == "per-guess":
        res = [per_guess_trial(code, cfg.w, cfg.delta, rng) for _ in range(count)]
        return count, sum(r != FAIL for r in res), sum(r == TRUE for r in res)
    dcfg = RandDecoderConfig(cfg.delta, cfg.max_iter, cfg.w, cfg.n, cfg.k)
    calls = succ = true = 0
    for _ in range(count):
        inst, _err = sample_instance(code, cfg.w, rng)
        rep = randomized_decode(code, inst.r, dcfg, rng)
        calls += rep.trials_attempted
        if not rep.outcome.failed:
            succ += 1
            true += rep.outcome.message == inst.msg
    return calls, succ, true


def _run_chunk_args(args):
    return run_chunk(*args)


def theory_log2_workfactor(cfg: SimulationConfig) -> float | None:
    ps = cfg.params
    if analysis.w_le_unique(ps):
        return analysis.log2(ps.n**2)
    return analysis.theorem1_objective(ps, cfg.delta)


def simulate(cfg: SimulationConfig) -> SimulationRecord:
    t0 = time.perf_counter()
    jobs = [(cfg, c, cnt) for c, cnt in cfg.chunks()]
    log.info("simulating %d trials in %d chunks on %d worker(s)", cfg.trials, len(jobs), cfg.workers)
    if cfg.workers == 1 or len(jobs) == 1:
        results = [run_chunk(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_run_chunk_args, jobs))
    calls = sum(r[0] for r in results)
    succ = sum(r[1] for r in results)
    true = sum(r[2] for r in results)
    rate = succ / calls
    emp = analysis.log2(Fraction(cfg.n**2 * calls, succ)) if succ else None
    return SimulationRecord(
        q=cfg.q,
        m=cfg.m,
        n=cfg.n,
        k=cfg.k,
        w=cfg.w,
        delta=cfg.delta,
        mode=cfg.mode,
        seed=cfg.seed,
        workers=cfg.workers,
        instances=cfg.trials,
        total_trials=calls,
        successes=succ,
        true_successes=true,
        empirical_success_rate=rate,
        empirical_log2_workfactor=emp,
        theory_log2_workfactor=theory_log2_workfactor(cfg),
        wall_seconds=time.perf_counter() - t0,
    )


def binomial_ci(p: float, trials: int, sigmas: float = 3.0) -> tuple[float, float]:
    half = sigmas * math.sqrt(p * (1 - p) / trials)
    return p - half, p + half


def intersection_rate(n: int, j: int, delta: int, need: int, samples: int, seed: int = 0) -> float:
    """Decoder-free Monte Carlo (q = 2): how often a uniform delta-dim guess meets a
    uniform j-dim row space in at least ``need`` dimensions."""
    from rankdec import fastsim

    out = np.zeros(1, np.int64)
    fastsim.intersection_chunk(SeededRng(seed, 0).generator, samples, n, j, delta, need, out)
    return int(out[0]) / samples
