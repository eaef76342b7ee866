"""Compiled GF(2^m) primitives (m <= 62) shared by the table builder and the fast simulator."""
import numpy as np
from numba import njit


@njit(cache=True)
def gf2_mul(a, b, m, poly):
    r = np.int64(0)
    top = np.int64(1) << m
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


@njit(cache=True)
def gf2_pow(x, e, m, poly):
    acc = np.int64(1)
    while e:
        if e & 1:
            acc = gf2_mul(acc, x, m, poly)
        x = gf2_mul(x, x, m, poly)
        e >>= 1
    return acc


@njit(cache=True)
def power_table(g, m, poly):
    order = (np.int64(1) << m) - 1
    out = np.empty(order, np.int64)
    x = np.int64(1)
    for i in range(order):
        out[i] = x
        x = gf2_mul(x, g, m, poly)
    return out
