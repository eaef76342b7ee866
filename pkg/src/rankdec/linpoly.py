"""Linearized (q-)polynomials over F_{q^m}.

A linearized polynomial f = sum_i f_i x^(q^i) is stored as its coefficient
tuple (f_0, f_1, ...).  Composition is (f o g)(x) = f(g(x)).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from rankdec.ffield import FieldTower, kernel_basis


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class LinearizedPoly:
    tower: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def identity(cls, tower: FieldTower) -> "LinearizedPoly":
        return cls(tower, (1,))

    @classmethod
    def zero(cls, tower: FieldTower) -> "LinearizedPoly":
        return cls(tower, ())

    @classmethod
    def monomial(cls, tower: FieldTower, i: int, c: int = 1) -> "LinearizedPoly":
        return cls(tower, (0,) * i + (c,))

    @property
    def qdeg(self) -> int:
        """Index of the top nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        T = self.tower
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return LinearizedPoly(T, tuple(T.add(x, y) for x, y in zip(a, b)))

    def __sub__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        T = self.tower
        return self + LinearizedPoly(T, tuple(T.neg(c) for c in other.coeffs))

    def scale(self, c: int) -> "LinearizedPoly":
        """Left multiplication by the constant c (the polynomial c*x composed on the left)."""
        return LinearizedPoly(self.tower, tuple(self.tower.mul(c, x) for x in self.coeffs))

    def compose(self, other: "LinearizedPoly") -> "LinearizedPoly":
        return compose(self, other)


def evaluate(f: LinearizedPoly, x: int) -> int:
    T = f.tower
    acc = 0
    xp = x
    for i, c in enumerate(f.coeffs):
        if i:
            xp = T.frob(xp, 1)
        if c:
            acc = T.add(acc, T.mul(c, xp))
    return acc


def compose(f: LinearizedPoly, g: LinearizedPoly) -> LinearizedPoly:
    """(f o g)_k = sum_{i+j=k} f_i * g_j^(q^i)."""
    T = f.tower
    if f.is_zero() or g.is_zero():
        return LinearizedPoly.zero(T)
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(g.coeffs):
            if gj:
                out[i + j] = T.add(out[i + j], T.mul(fi, T.frob(gj, i)))
    return LinearizedPoly(T, tuple(out))


def left_divide(N: LinearizedPoly, V: LinearizedPoly) -> LinearizedPoly | None:
    """The f with V o f = N, or None if V does not divide N on the left.

    Back-substitution from the top coefficient: at step s the only unknown in
    (V o f)_s is f_{s-d}, multiplied by V_d (d = qdeg V)."""
    if V.is_zero():
        raise ZeroDivisionError("left division by the zero polynomial")
    T = N.tower
    if N.is_zero():
        return LinearizedPoly.zero(T)
    d, D = V.qdeg, N.qdeg
    if D < d:
        return None
    v = V.coeffs
    inv_lead = T.inv(v[d])
    f = [0] * (D - d + 1)
    for s in range(D, d - 1, -1):
        acc = N.coeffs[s]
        for i in range(d):
            j = s - i
            if j <= D - d and f[j]:
                acc = T.sub(acc, T.mul(v[i], T.frob(f[j], i)))
        f[s - d] = T.frob(T.mul(acc, inv_lead), -d)
    # the low coefficients are over-determined; check them
    for s in range(d):
        acc = N.coeffs[s] if s < len(N.coeffs) else 0
        for i in range(max(0, s - (D - d)), s + 1):
            if f[s - i]:
                acc = T.sub(acc, T.mul(v[i], T.frob(f[s - i], i)))
        if acc:
            return None
    return LinearizedPoly(T, tuple(f))


def evaluation_matrix(f: LinearizedPoly) -> list[list[int]]:
    """m x m matrix over F_q of x -> f(x) in the polynomial basis (acting on column vectors)."""
    T = f.tower
    cols = [T.to_digits(evaluate(f, T.pow(T.generator(), i))) for i in range(T.m)]
    return [[col[r] for col in cols] for r in range(T.m)]


def root_space_basis(f: LinearizedPoly) -> list[int]:
    """F_q-basis of the roots of f in F_{q^m}."""
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    T = f.tower
    return [T.from_digits(v) for v in kernel_basis(evaluation_matrix(f), T.base)]


def annihilator(U: Sequence[int], tower: FieldTower) -> LinearizedPoly:
    """Monic subspace polynomial whose root space is span_{F_q}(U).

    Built as f <- (x^q - f(u)^(q-1) x) o f over the elements of U; elements
    already in the span (f(u) = 0) are skipped."""
    T = tower
    f = LinearizedPoly.identity(T)
    for u in U:
        y = evaluate(f, u)
        if y == 0:
            continue
        step = LinearizedPoly(T, (T.neg(T.pow(y, T.q - 1)), 1))
        f = compose(step, f)
    return f
