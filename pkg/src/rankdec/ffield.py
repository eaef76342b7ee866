"""Finite-field arithmetic for F_q and F_{q^m}, and dense linear algebra over both.

Elements of F_{q^m} are plain Python ints: the base-q digits of the int are the
coefficients of the element in the polynomial basis 1, a, a^2, ..., a^(m-1)
(constant coefficient least significant).  For q = 2 this is the usual
bit-packed representation and addition is XOR.

Matrices are lists of rows (lists of ints).  Every linear-algebra routine takes
the field it works over as an argument, so the same code serves F_q and F_{q^m}.
"""
from __future__ import annotations

from array import array
from typing import Sequence

import numpy as np

Matrix = list[list[int]]

# q = 2 towers up to this degree multiply through log/exp tables (~12 bytes per element).
TABLE_MAX_M = 24
_TABLES: dict[tuple, tuple[array, array]] = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field F_q with elements 0..q-1."""

    def __init__(self, q: int):
        if not _is_prime(q):
            raise ValueError(f"q={q} is not prime")
        self.q = q
        self.order = q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.q - 2, self.q)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))

    def __repr__(self):
        return f"PrimeField({self.q})"


# ---------------------------------------------------------------------------
# polynomials over F_q (coefficient lists, constant term first)


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], q: int) -> list[int]:
    a = _ptrim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], q - 2, q)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % q
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % q
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _pmod(out, f, q)


def _pgcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, q)
    return a


def is_irreducible(f: Sequence[int], q: int) -> bool:
    """Ben-Or test: f (monic, degree m) is irreducible over F_q iff
    gcd(x^(q^i) - x, f) = 1 for every i <= m/2."""
    f = _ptrim([c % q for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(m // 2):
        # h <- h^q mod f
        acc, base, e = [1], h, q
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, q)
            base = _pmulmod(base, base, f, q)
            e >>= 1
        h = acc
        d = list(h) + [0] * max(0, 2 - len(h))
        d[1] = (d[1] - 1) % q
        if len(_pgcd(f, d, q)) != 1:
            return False
    return True


def smallest_irreducible(m: int, q: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree m over F_q.

    Candidates x^m + c(x) are ordered by the base-q integer value of c."""
    for low in range(q**m):
        digits = []
        x = low
        for _ in range(m):
            x, d = divmod(x, q)
            digits.append(d)
        f = digits + [1]
        if is_irreducible(f, q):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{q}")


# ---------------------------------------------------------------------------


class FieldTower:
    """F_{q^m} built as F_q[x]/(modulus), q prime.

    ``modulus`` is the list of m+1 coefficients of a monic irreducible
    polynomial, constant term first.  When omitted, the lexicographically
    smallest one is used.
    """

    def __init__(self, q: int, m: int, modulus: Sequence[int] | None = None):
        if m < 1:
            raise ValueError("extension degree m must be >= 1")
        self.base = PrimeField(q)
        self.q = q
        self.m = m
        if modulus is None:
            modulus = smallest_irreducible(m, q)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}: {modulus}")
        if not is_irreducible(list(modulus), q):
            raise ValueError(f"modulus {modulus} is reducible over F_{q}")
        self.modulus = modulus
        self.order = q**m
        if q == 2:
            self._poly = sum(c << i for i, c in enumerate(modulus))
            self.add = self.sub = _xor
            self.neg = _ident
            self.mul = self._mul_lazy if m <= TABLE_MAX_M else self._mul2
            self._exp = self._log = None
        else:
            self.add = self._add_q
            self.sub = self._sub_q
            self.neg = self._neg_q
            self.mul = self._mul_q

    # -- representation ---------------------------------------------------
    def to_digits(self, x: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.m):
            x, d = divmod(x, q)
            out.append(d)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) != self.m:
            raise ValueError(f"expected {self.m} digits, got {len(digits)}")
        x = 0
        for d in reversed(digits):
            if not 0 <= d < self.q:
                raise ValueError(f"digit {d} outside F_{self.q}")
            x = x * self.q + d
        return x

    def generator(self) -> int:
        """The class of x, i.e. the root of the modulus."""
        return self.q if self.m > 1 else self.from_digits([(-self.modulus[0]) % self.q])

    def in_base_field(self, x: int) -> bool:
        return 0 <= x < self.q

    # -- arithmetic, q = 2 -------------------------------------------------
    def _mul2(self, a: int, b: int) -> int:
        return _clmul_mod(a, b, self.m, self._poly)

    def _mul_lazy(self, a: int, b: int) -> int:
        if self._exp is None:
            self._exp, self._log = _binary_tables(self.m, self._poly)
            self.mul = self._mul_tab
        return self._mul_tab(a, b)

    def _mul_tab(self, a: int, b: int) -> int:
        if a and b:
            log = self._log
            return self._exp[log[a] + log[b]]
        return 0

    # -- arithmetic, odd q -------------------------------------------------
    def _add_q(self, a: int, b: int) -> int:
        q = self.q
        da, db = self.to_digits(a), self.to_digits(b)
        return self.from_digits([(x + y) % q for x, y in zip(da, db)])

    def _sub_q(self, a: int, b: int) -> int:
        q = self.q
        da, db = self.to_digits(a), self.to_digits(b)
        return self.from_digits([(x - y) % q for x, y in zip(da, db)])

    def _neg_q(self, a: int) -> int:
        return self.from_digits([(-x) % self.q for x in self.to_digits(a)])

    def _mul_q(self, a: int, b: int) -> int:
        prod = _pmulmod(_ptrim(self.to_digits(a)), _ptrim(self.to_digits(b)), list(self.modulus), self.q)
        return self.from_digits(prod + [0] * (self.m - len(prod)))

    # -- derived -----------------------------------------------------------
    def scale(self, c: int, x: int) -> int:
        """Multiply x by the base-field scalar c."""
        c %= self.q
        if c == 0:
            return 0
        if c == 1:
            return x
        return self.from_digits([c * d % self.q for d in self.to_digits(x)])

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            e >>= 1
        return acc

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.q == 2 and self.mul == self._mul_tab:
            return self._exp[self.order - 1 - self._log[x]]
        return self.pow(x, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, x: int, i: int = 1) -> int:
        """x^(q^i); negative i gives the inverse Frobenius."""
        i %= self.m
        if self.q == 2:
            if self.mul == self._mul_tab and x:
                return self._exp[(self._log[x] << i) % (self.order - 1)]
            for _ in range(i):
                x = self._mul2(x, x)
            return x
        for _ in range(i):
            x = self.pow(x, self.q)
        return x

    frobenius_pow = frob

    def to_json(self) -> dict:
        return {"q": self.q, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldTower":
        return cls(obj["q"], obj["m"], obj.get("modulus"))

    def __eq__(self, other):
        return isinstance(other, FieldTower) and (self.q, self.m, self.modulus) == (
            other.q,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.q, self.m, self.modulus))

    def __repr__(self):
        return f"FieldTower(q={self.q}, m={self.m}, modulus={list(self.modulus)})"


def _clmul_mod(a: int, b: int, m: int, poly: int) -> int:
    if a < b:
        a, b = b, a
    r = 0
    top = 1 << m
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _binary_tables(m: int, poly: int) -> tuple[array, array]:
    key = (m, poly)
    if key in _TABLES:
        return _TABLES[key]
    order = (1 << m) - 1
    if m == 1:
        exp = np.array([1, 1], dtype=np.int64)
        log = np.array([0, 0], dtype=np.int64)
    else:

        def pw(x: int, e: int) -> int:
            acc = 1
            while e:
                if e & 1:
                    acc = _clmul_mod(acc, x, m, poly)
                x = _clmul_mod(x, x, m, poly)
                e >>= 1
            return acc

        factors = _prime_factors(order)
        g = next(x for x in range(2, 1 << m) if all(pw(x, order // p) != 1 for p in factors))
        from rankdec._kernels import power_table

        exp = power_table(g, m, poly)
        log = np.zeros(order + 1, dtype=np.int64)
        log[exp] = np.arange(order)
        exp = np.concatenate([exp, exp])
    tables = (array("i", exp.astype(np.int32).tobytes()), array("i", log.astype(np.int32).tobytes()))
    _TABLES[key] = tables
    return tables


def _xor(a: int, b: int) -> int:
    return a ^ b


def _ident(a: int) -> int:
    return a


# ---------------------------------------------------------------------------
# linear algebra over an arbitrary field object (PrimeField or FieldTower)


def rref(A: Matrix, F) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  A is not modified."""
    R = [list(row) for row in A]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    mul, sub = F.mul, F.sub
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = F.inv(R[r][c])
        if inv != 1:
            R[r] = [mul(inv, x) if x else 0 for x in R[r]]
        prow = R[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = R[i][c]
                if f:
                    row = R[i]
                    for j in nz:
                        row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: Matrix, F) -> int:
    return len(rref(A, F)[1])


def kernel_basis(A: Matrix, F, ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel {x : A x = 0}.

    The basis is the canonical one read off the RREF: one vector per free
    column, in increasing column order, with a 1 in that free position.
    ``ncols`` is needed when A has no rows."""
    if ncols is None:
        ncols = len(A[0])
    if not A:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(A, F)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [0] * ncols
        x[free] = 1
        for row, pc in zip(R, pivots):
            if row[free]:
                x[pc] = F.neg(row[free])
        basis.append(x)
    return basis


def solve_linear(A: Matrix, b: Sequence[int], F) -> list[int] | None:
    """One solution of A x = b, or None when b is not in the column span."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, F)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def matmul(A: Matrix, B: Matrix, F) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for t in range(inner):
            a = row[t]
            if a:
                brow = B[t]
                for j in range(ncols):
                    if brow[j]:
                        acc[j] = F.add(acc[j], F.mul(a, brow[j]))
        out.append(acc)
    return out


def row_space_key(B: Matrix, F) -> tuple[tuple[int, ...], ...]:
    """Canonical form of the row space of B (its nonzero RREF rows)."""
    R, piv = rref(B, F)
    return tuple(tuple(R[i]) for i in range(len(piv)))


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def vec_times_base_matrix(v: Sequence[int], M: Matrix, tower: FieldTower) -> list[int]:
    """v (over F_{q^m}, length n) times M (n x s over F_q)."""
    s = len(M[0]) if M else 0
    out = [0] * s
    for vi, row in zip(v, M):
        if vi:
            for j in range(s):
                if row[j]:
                    out[j] = tower.add(out[j], tower.scale(row[j], vi))
    return out


def expand_to_base(v: Sequence[int], tower: FieldTower) -> Matrix:
    """m x n matrix over F_q whose i-th column is the coefficient vector of v_i."""
    cols = [tower.to_digits(x) for x in v]
    return [[col[r] for col in cols] for r in range(tower.m)]


def rank_qm(v: Sequence[int], tower: FieldTower) -> int:
    """F_q-dimension of the span of the entries of v (the rank weight)."""
    if tower.q == 2:
        return xor_rank(v)
    if not v:
        return 0
    return rank(expand_to_base(v, tower), tower.base)


def xor_rank(values: Sequence[int]) -> int:
    """Rank over F_2 of bit-packed vectors."""
    basis: list[int] = []
    for x in values:
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
    return len(basis)
