"""Gabidulin codes: encoding, error/column-erasure decoding and a small-scale list oracle."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from rankdec.ffield import (
    FieldTower,
    kernel_basis,
    rank,
    rank_qm,
    solve_linear,
    transpose,
    vec_times_base_matrix,
)
from rankdec.linpoly import LinearizedPoly, evaluate, left_divide

LIST_CAP = 2**24


class ContractError(ValueError):
    """A decoder precondition was violated (as opposed to a decoding failure)."""


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GabidulinCode:
    tower: FieldTower
    n: int
    k: int
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        if len(self.g) != self.n:
            raise ValueError(f"need {self.n} locators, got {len(self.g)}")
        if not self.n <= self.tower.m:
            raise ValueError(f"n={self.n} exceeds m={self.tower.m}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k={self.k} outside [1, n={self.n}]")
        if rank_qm(self.g, self.tower) != self.n:
            raise ValueError("locators are not linearly independent over F_q")

    @classmethod
    def standard(cls, tower: FieldTower, n: int, k: int) -> "GabidulinCode":
        """Code with locators 1, a, ..., a^(n-1) (a = root of the modulus)."""
        a = tower.generator()
        return cls(tower, n, k, tuple(tower.pow(a, i) for i in range(n)))

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def unique_radius(self) -> int:
        return (self.n - self.k) // 2


@dataclass
class DecodeOutcome:
    codeword: list[int] | None = None
    message: list[int] | None = None
    residual_rank: int | None = None

    @property
    def failed(self) -> bool:
        return self.codeword is None

    def to_json(self, tower: FieldTower) -> dict:
        if self.failed:
            return {"status": "FAILURE"}
        return {
            "status": "SUCCESS",
            "codeword": [tower.to_digits(x) for x in self.codeword],
            "message": [tower.to_digits(x) for x in self.message],
            "residual_rank": self.residual_rank,
        }


def moore_matrix(v: Sequence[int], rows: int, tower: FieldTower) -> list[list[int]]:
    out = [list(v)]
    for _ in range(rows - 1):
        out.append([tower.frob(x, 1) for x in out[-1]])
    return out[:rows]


def generator_matrix(code: GabidulinCode) -> list[list[int]]:
    return moore_matrix(code.g, code.k, code.tower)


def encode(code: GabidulinCode, msg: Sequence[int]) -> list[int]:
    if len(msg) != code.k:
        raise ValueError(f"message length {len(msg)} != k={code.k}")
    f = LinearizedPoly(code.tower, tuple(msg))
    return [evaluate(f, gi) for gi in code.g]


def recover_message(code: GabidulinCode, c: Sequence[int]) -> list[int]:
    """Message of a codeword; raises ValueError if c is not in the code."""
    T = code.tower
    G = generator_matrix(code)
    x = solve_linear(transpose(G), list(c), T)
    if x is None:
        raise ValueError("word is not a codeword")
    return x


def _reconstruct(tower: FieldTower, locs: Sequence[int], r: Sequence[int], k: int, t: int):
    """Nonzero (V, N) with qdeg V <= t, qdeg N <= k+t-1 and V(r_i) = N(g_i) for all i,
    taken as the first canonical kernel vector of the interpolation system.
    Returns None when the system has only the trivial solution."""
    T = tower
    rows = []
    for gi, ri in zip(locs, r):
        row = []
        x = ri
        for j in range(t + 1):
            row.append(x)
            x = T.frob(x, 1)
        y = gi
        for j in range(k + t):
            row.append(T.neg(y))
            y = T.frob(y, 1)
        rows.append(row)
    basis = kernel_basis(rows, T, ncols=2 * t + k + 1)
    if not basis:
        return None
    sol = basis[0]
    return LinearizedPoly(T, tuple(sol[: t + 1])), LinearizedPoly(T, tuple(sol[t + 1 :]))


def _finish(code: GabidulinCode, r: Sequence[int], f: LinearizedPoly) -> DecodeOutcome:
    T = code.tower
    msg = list(f.coeffs) + [0] * (code.k - len(f.coeffs))
    c = encode(code, msg)
    e = [T.sub(a, b) for a, b in zip(r, c)]
    return DecodeOutcome(c, msg, rank_qm(e, T))


def decode_error_erasure(
    code: GabidulinCode,
    r: Sequence[int],
    row_erasure_part: Sequence | None = None,
    B_C: Sequence[Sequence[int]] | None = None,
) -> DecodeOutcome:
    """Errors plus column erasures with known row space B_C (gamma x n over F_q).

    Succeeds whenever r = c + e with e = a_C B_C + a_E B_E and
    2 rank(a_E B_E) + gamma <= n - k.  The erasures are removed by puncturing:
    with P a basis of ker(B_C) (n x (n-gamma)), r P is a word of the Gabidulin
    code with locators g P, corrupted only by the error part outside
    rowspace(B_C).
    """
    if row_erasure_part:
        raise ContractError("row erasures are not supported (a_R must be empty)")
    T = code.tower
    n, k = code.n, code.k
    if len(r) != n:
        raise ValueError(f"received word has length {len(r)} != n={n}")
    B_C = [list(row) for row in (B_C or [])]
    gamma = len(B_C)
    if gamma:
        if any(len(row) != n for row in B_C):
            raise ContractError("B_C must have n columns")
        if rank(B_C, T.base) != gamma:
            raise ContractError("B_C is not of full row rank")
        if gamma > n - k:
            raise ContractError(f"gamma={gamma} exceeds n-k={n - k}")
        P = transpose(kernel_basis(B_C, T.base))
        locs = vec_times_base_matrix(code.g, P, T)
        rp = vec_times_base_matrix(r, P, T)
    else:
        locs, rp = list(code.g), list(r)
    t = (len(locs) - k) // 2
    sol = _reconstruct(T, locs, rp, k, t)
    if sol is None:
        return DecodeOutcome()
    V, N = sol
    if V.is_zero():
        return DecodeOutcome()
    f = left_divide(N, V)
    if f is None or f.qdeg >= k:
        return DecodeOutcome()
    return _finish(code, r, f)


def decode_unique(code: GabidulinCode, r: Sequence[int]) -> DecodeOutcome:
    out = decode_error_erasure(code, r)
    if out.failed or out.residual_rank > code.unique_radius:
        return DecodeOutcome()
    return out


def _projective_points(dim: int, field_order: int):
    """Representatives (first nonzero coordinate = 1) of the 1-dim subspaces of F^dim."""
    for lead in range(dim):
        for tail in product(range(field_order), repeat=dim - lead - 1):
            yield lead, tail


def list_close_codewords(
    code: GabidulinCode, r: Sequence[int], w: int, cap: int = LIST_CAP
) -> list[list[int]]:
    """All codewords within rank distance w of r.

    Every such codeword c = f(g) gives a solution V = annihilator of the
    error's column space, N = V o f of the interpolation system with t = w, so
    enumerating the solution space (up to scalars) and dividing finds them
    all.  For a generic r the space has dimension about 2w - (n-k) + 1; inputs
    close to many codewords (a codeword itself, say) have a larger one and
    can exceed ``cap``."""
    T = code.tower
    n, k = code.n, code.k
    if w < (n - k) // 2:
        raise ValueError("w below the unique decoding radius; use decode_unique")
    if w > n:
        raise ValueError("w exceeds the code length")
    rows = []
    for gi, ri in zip(code.g, r):
        row, x = [], ri
        for _ in range(w + 1):
            row.append(x)
            x = T.frob(x, 1)
        y = gi
        for _ in range(k + w):
            row.append(T.neg(y))
            y = T.frob(y, 1)
        rows.append(row)
    basis = kernel_basis(rows, T, ncols=2 * w + k + 1)
    dim = len(basis)
    count = sum(T.order**i for i in range(dim))
    if count > cap:
        raise CapExceeded(f"{count} candidate solutions exceed cap {cap}")
    ncols = 2 * w + k + 1
    found: dict[tuple, list[int]] = {}
    for lead, tail in _projective_points(dim, T.order):
        sol = list(basis[lead])
        for coef, vec in zip(tail, basis[lead + 1 :]):
            if coef:
                sol = [T.add(a, T.mul(coef, b)) for a, b in zip(sol, vec)]
        V = LinearizedPoly(T, tuple(sol[: w + 1]))
        if V.is_zero():
            continue
        f = left_divide(LinearizedPoly(T, tuple(sol[w + 1 : ncols])), V)
        if f is None or f.qdeg >= k:
            continue
        out = _finish(code, r, f)
        if out.residual_rank <= w:
            found.setdefault(tuple(out.codeword), out.codeword)
    return sorted(found.values())


# ---------------------------------------------------------------------------
# instance files


@dataclass
class Instance:
    code: GabidulinCode
    r: list[int]
    w: int
    msg: list[int] | None = None
    e: list[int] | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        T = self.code.tower
        out = {
            "q": T.q,
            "m": T.m,
            "modulus": list(T.modulus),
            "n": self.code.n,
            "k": self.code.k,
            "g": [T.to_digits(x) for x in self.code.g],
            "r": [T.to_digits(x) for x in self.r],
            "w": self.w,
        }
        if self.msg is not None:
            out["msg"] = [T.to_digits(x) for x in self.msg]
        if self.e is not None:
            out["e"] = [T.to_digits(x) for x in self.e]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Instance":
        for key in ("q", "m", "n", "k", "g", "r", "w"):
            if key not in obj:
                raise ValueError(f"instance is missing field {key!r}")
        T = FieldTower(obj["q"], obj["m"], obj.get("modulus"))
        vec = lambda rows, n: _vector(T, rows, n)  # noqa: E731
        code = GabidulinCode(T, obj["n"], obj["k"], tuple(vec(obj["g"], obj["n"])))
        return cls(
            code,
            vec(obj["r"], obj["n"]),
            int(obj["w"]),
            vec(obj["msg"], obj["k"]) if "msg" in obj else None,
            vec(obj["e"], obj["n"]) if "e" in obj else None,
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "Instance":
        return cls.from_json(json.loads(text))


def _vector(T: FieldTower, rows, n: int) -> list[int]:
    if len(rows) != n:
        raise ValueError(f"expected a vector of length {n}, got {len(rows)}")
    return [T.from_digits(list(d)) for d in rows]
