"""Exact work-factor and success-probability formulas for rank-metric decoding.

Every probability is an exact ``Fraction``; only the final log2 is rounded,
computed from the exact rational at 128-bit precision.  Work factors are
returned as log2 values (floats).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

MU = 2.807  # linear-algebra exponent used by the algebraic estimate

_MP = mpmath.MPContext()
_MP.prec = 128


def log2(x) -> float:
    """log2 of a nonnegative int or Fraction (-inf for 0)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("log2 of a negative number")
    if x == 0:
        return -math.inf
    return float(_MP.log(_MP.mpf(x.numerator), 2) - _MP.log(_MP.mpf(x.denominator), 2))


def _mpf(x):
    x = Fraction(x)
    return _MP.mpf(x.numerator) / x.denominator


def _ceil(x: Fraction) -> int:
    return math.ceil(Fraction(x))


@dataclass(frozen=True)
class ParamSet:
    q: int
    m: int
    n: int
    k: int
    w: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q={self.q} must be a prime power >= 2")
        if not 1 <= self.n <= self.m:
            raise ValueError(f"need 1 <= n <= m (n={self.n}, m={self.m})")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k={self.k} outside [1, n={self.n}]")
        if not 0 <= self.w <= self.n:
            raise ValueError(f"w={self.w} outside [0, n={self.n}]")

    @property
    def xi(self) -> Fraction:
        """Excess of the error weight over half the redundancy."""
        return self.w - Fraction(self.n - self.k, 2)

    @property
    def two_xi(self) -> int:
        return 2 * self.w - (self.n - self.k)

    @property
    def beyond_unique(self) -> bool:
        return (self.n - self.k) // 2 < self.w <= self.n - self.k

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "ParamSet":
        return cls(*(int(obj[key]) for key in ("q", "m", "n", "k", "w")))


@dataclass(frozen=True)
class BigProbability:
    value: Fraction

    @property
    def log2(self) -> float:
        return log2(self.value)

    def __float__(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------------------
# counting


@lru_cache(maxsize=None)
def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of b-dimensional subspaces of F_q^a (0 outside 0 <= b <= a)."""
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def count_rank_vectors(m: int, n: int, j: int, q: int) -> int:
    """Number of vectors of F_{q^m}^n with rank exactly j."""
    if not 0 <= j <= min(m, n):
        return 0
    num = den = 1
    for i in range(j):
        num *= (q**m - q**i) * (q**n - q**i)
        den *= q**j - q**i
    return num // den


def ball_probability(m: int, n: int, k: int, w: int, q: int) -> BigProbability:
    """Probability that a uniform vector of F_{q^m}^n has rank <= w."""
    total = sum(count_rank_vectors(m, n, j, q) for j in range(min(w, n, m) + 1))
    return BigProbability(Fraction(total, q ** (m * n)))


def expected_candidates(m: int, n: int, k: int, w: int, q: int) -> Fraction:
    """Expected number of codewords in a rank-w ball around a random word, floored at 1."""
    return max(q ** (m * k) * ball_probability(m, n, k, w, q).value, Fraction(1))


# ---------------------------------------------------------------------------
# generic decoding work factors


def _comb_exponent(ps: ParamSet) -> int:
    return ps.w * _ceil(Fraction((ps.k + 1) * ps.m, ps.n)) - ps.m


def _poly_factor(ps: ParamSet) -> int:
    # cubic prefactor of the enumeration cost, taken as (m(n-k))^3
    return max(ps.m * (ps.n - ps.k), 1) ** 3


def wf_combinatorial(ps: ParamSet, poly_factor: bool = True) -> float:
    e = _comb_exponent(ps)
    val = Fraction(ps.q) ** e
    if poly_factor:
        val *= _poly_factor(ps)
    return log2(val)


def wf_combinatorial_over_n(ps: ParamSet, poly_factor: bool = True) -> float:
    return wf_combinatorial(ps, poly_factor) - log2(expected_candidates(ps.m, ps.n, ps.k, ps.w, ps.q))


def wf_pq_combinatorial(ps: ParamSet, poly_factor: bool = True) -> float:
    """Enumeration cost with a Grover square-root speedup on the exponential part."""
    val = _MP.mpf(_comb_exponent(ps)) * _MP.log(ps.q, 2) / 2
    if poly_factor:
        val += _MP.log(_poly_factor(ps), 2)
    return float(val)


def wf_algebraic(ps: ParamSet, mu: float = MU, printed_condition: bool = False) -> float:
    """Groebner-basis estimate with unit big-O constant.

    The exponent w is used when the system has enough equations,
    m*C(n-k-1, w) >= C(n, w), and w+1 otherwise.  ``printed_condition=True``
    flips the test to the <= form."""
    m, n, k, w = ps.m, ps.n, ps.k, ps.w
    lhs, rhs = m * math.comb(n - k - 1, w), math.comb(n, w)
    use_w = lhs <= rhs if printed_condition else lhs >= rhs
    e = w if use_w else w + 1
    return mu * log2(Fraction(((m + n) * w) ** e, math.factorial(e)))


def w_le_unique(ps: ParamSet) -> bool:
    return ps.w <= (ps.n - ps.k) // 2


def wf_key(ps: ParamSet) -> float:
    """Brute force over the key-equation solution space, divided by the candidate count."""
    if w_le_unique(ps):
        raise ValueError("key-equation enumeration needs w > floor((n-k)/2)")
    N = expected_candidates(ps.m, ps.n, ps.k, ps.w, ps.q)
    return log2(Fraction(ps.n**2 * ps.q ** (ps.m * ps.two_xi)) / N)


# ---------------------------------------------------------------------------
# subspace intersection probabilities


def _intersection_terms(l: int, u: int, v: int, q: int) -> dict[int, int]:
    """i -> number of v-dim subspaces of F_q^l meeting a fixed u-dim one in exactly i dims."""
    return {
        i: gaussian_binomial(l - u, v - i, q) * gaussian_binomial(u, i, q) * q ** ((u - i) * (v - i))
        for i in range(max(0, v - (l - u)), min(u, v) + 1)
    }


def lemma1_exact(l: int, u: int, v: int, omega: int, q: int) -> BigProbability:
    """P[dim(U cap V) >= omega] for fixed u-dim U and uniform v-dim V in F_q^l."""
    if not (0 <= u <= l and 0 <= v <= l):
        raise ValueError("need 0 <= u, v <= l")
    terms = _intersection_terms(l, u, v, q)
    hits = sum(c for i, c in terms.items() if i >= omega)
    return BigProbability(Fraction(hits, gaussian_binomial(l, v, q)))


def lemma1_bound(l: int, u: int, v: int, omega: int, q: int) -> float:
    """log2 of 16(min(u,v)+1-omega) q^((j*-v)(l-u-j*)), j* = min(v-omega, (l+v-u)/2)."""
    c = min(u, v) + 1 - omega
    if c <= 0:
        return -math.inf
    js = min(Fraction(v - omega), Fraction(l + v - u, 2))
    return float(_MP.log(16 * c, 2) + _mpf((js - v) * (l - u - js)) * _MP.log(q, 2))


def lemma2_min_intersection(n: int, k: int, delta: int, j: int) -> int:
    """Smallest guess/row-space overlap eps with 2(j - eps) + delta <= n - k."""
    return _ceil(j - Fraction(n - k, 2) + Fraction(delta, 2))


def lemma2_prob(n: int, k: int, delta: int, j: int, q: int) -> BigProbability:
    """Probability that a uniform delta-dim guess lets the erasure decoder fix a rank-j error."""
    if not (0 <= delta <= n and 0 <= j <= n):
        raise ValueError("need 0 <= delta, j <= n")
    if 2 * j + delta <= n - k:
        return BigProbability(Fraction(1))
    lo = lemma2_min_intersection(n, k, delta, j)
    if lo > min(delta, j):
        return BigProbability(Fraction(0))
    return lemma1_exact(n, j, delta, max(lo, 0), q)


def lemma2_bound(n: int, k: int, delta: int, j: int, q: int) -> float:
    a = lemma2_min_intersection(n, k, delta, j)
    b = Fraction(n + k, 2) - _ceil(Fraction(delta, 2))
    return float(_MP.log(16 * n, 2) - _mpf(a * b) * _MP.log(q, 2))


def _abar(ps: ParamSet, j: int) -> Fraction:
    return Fraction(count_rank_vectors(ps.m, ps.n, j, ps.q), ps.q ** (ps.m * (ps.n - ps.k)))


def lemma3_success_prob(ps: ParamSet, delta: int) -> BigProbability:
    """Per-guess probability that the decoder returns some codeword within rank w
    of a uniformly random received word."""
    total = sum(
        _abar(ps, j) * lemma2_prob(ps.n, ps.k, delta, j, ps.q).value for j in range(ps.w + 1)
    )
    return BigProbability(total)


def lemma3_dominant_term(ps: ParamSet, delta: int) -> BigProbability:
    return BigProbability(_abar(ps, ps.w) * lemma2_prob(ps.n, ps.k, delta, ps.w, ps.q).value)


def lemma3_bound(ps: ParamSet, delta: int) -> float:
    q, m, n, k, w = ps.q, ps.m, ps.n, ps.k, ps.w
    a = lemma2_min_intersection(n, k, delta, w)
    b = Fraction(n + k, 2) - _ceil(Fraction(delta, 2))
    e = m * (k - n) + w * (n + m) - w * w - a * b
    return float(_MP.log(64 * n, 2) + _mpf(e) * _MP.log(q, 2))


def theorem1_objective(ps: ParamSet, delta: int) -> float:
    """log2(n^2 / success probability) for one guess dimension."""
    p = lemma3_success_prob(ps, delta).value
    return log2(Fraction(ps.n**2) / p) if p else math.inf


def theorem1_work_factor(ps: ParamSet) -> tuple[float, int]:
    """(log2 W_RD, delta*) minimizing over every delta in [2 xi, n-k]; ties go to the smaller delta."""
    if not ps.beyond_unique:
        raise ValueError(
            f"w={ps.w} outside the randomized-decoding regime "
            f"({(ps.n - ps.k) // 2} < w <= {ps.n - ps.k})"
        )
    best = None
    for delta in range(max(ps.two_xi, 0), ps.n - ps.k + 1):
        v = theorem1_objective(ps, delta)
        if best is None or v < best[0]:
            best = (v, delta)
    return best


def _bound_exponent(ps: ParamSet) -> int:
    q, m, n, k, w = ps.q, ps.m, ps.n, ps.k, ps.w
    # 2xi((n+k)/2 - xi) simplifies to 2xi(n - w), an integer
    return m * (n - k) - w * (n + m) + w * w + min(ps.two_xi * (n - w), w * k)


def corollary1_lower_bound(ps: ParamSet) -> float:
    return log2(Fraction(ps.n, 64) * Fraction(ps.q) ** _bound_exponent(ps))


def remark_upper_bound(ps: ParamSet) -> float:
    return log2(ps.n**2 * Fraction(ps.q) ** _bound_exponent(ps))


def lemma4_joint_bound(n: int, k: int, m: int, w: int, delta_r: int, delta_c: int, q: int) -> BigProbability:
    """Success probability when guessing delta_r row and delta_c column dimensions of the error."""
    if not (0 <= delta_r <= n and 0 <= delta_c <= m):
        raise ValueError("need 0 <= delta_r <= n and 0 <= delta_c <= m")
    delta = delta_r + delta_c
    lo = max(_ceil(w - Fraction(n - k, 2) + Fraction(delta, 2)), 0)
    rows = _intersection_terms(n, w, delta_r, q)
    cols = _intersection_terms(m, w, delta_c, q)
    hits = 0
    for i in range(lo, min(delta, w) + 1):
        for wr, cr in rows.items():
            cc = cols.get(i - wr)
            if cc:
                hits += cr * cc
    return BigProbability(Fraction(hits, gaussian_binomial(n, delta_r, q) * gaussian_binomial(m, delta_c, q)))


# ---------------------------------------------------------------------------
# report


@dataclass
class WorkFactorReport:
    params: ParamSet
    W_RD: float | None
    delta_star: int | None
    W_RD_lower: float | None
    W_RD_upper: float | None
    W_Comb: float
    W_Comb_over_N: float
    W_PQComb: float
    W_Alg: float
    W_Key: float | None
    success_prob: float | None
    N: float

    def to_json(self) -> dict:
        logs = {key: val for key, val in asdict(self).items() if key not in ("params", "delta_star")}
        return {"params": self.params.to_json(), "delta_star": self.delta_star, "log2": logs}

    @classmethod
    def from_json(cls, obj: dict) -> "WorkFactorReport":
        return cls(ParamSet.from_json(obj["params"]), delta_star=obj["delta_star"], **obj["log2"])


def report(ps: ParamSet, poly_factor: bool = True) -> WorkFactorReport:
    """All work factors for one parameter set.  Entries that do not apply are None;
    inside the unique radius W_RD is one decoding (log2 n^2) with delta* = 0."""
    q, m, n, k, w = ps.q, ps.m, ps.n, ps.k, ps.w
    N = expected_candidates(m, n, k, w, q)
    W_RD = delta = lower = upper = key = succ = None
    if w_le_unique(ps):
        W_RD, delta, succ = log2(n * n), 0, 0.0
    elif ps.beyond_unique:
        W_RD, delta = theorem1_work_factor(ps)
        lower, upper = corollary1_lower_bound(ps), remark_upper_bound(ps)
        key = wf_key(ps)
        succ = lemma3_success_prob(ps, delta).log2
    return WorkFactorReport(
        params=ps,
        W_RD=W_RD,
        delta_star=delta,
        W_RD_lower=lower,
        W_RD_upper=upper,
        W_Comb=wf_combinatorial(ps, poly_factor),
        W_Comb_over_N=wf_combinatorial_over_n(ps, poly_factor),
        W_PQComb=wf_pq_combinatorial(ps, poly_factor),
        W_Alg=wf_algebraic(ps),
        W_Key=key,
        success_prob=succ,
        N=log2(N),
    )
