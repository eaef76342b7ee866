"""Compiled per-guess pipeline for q = 2 (m <= 24, log/exp table arithmetic).

This replays exactly what :mod:`rankdec.channel` and
:func:`rankdec.gabidulin.decode_error_erasure` do: same draws from the same
numpy Generator, same canonical kernel vectors, same left division.  Field
elements are int64 bit vectors; F_2 rows of length n are n-bit masks with
column j at bit j.

Trial outcome codes: 0 = failure, 1 = a codeword within rank w other than the
transmitted one, 2 = the transmitted codeword.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from rankdec.ffield import TABLE_MAX_M, _binary_tables

FAIL, OTHER, TRUE = 0, 1, 2


@njit(cache=True)
def _xor_rank(vals, count):
    basis = np.zeros(64, np.int64)
    nb = 0
    for idx in range(count):
        x = vals[idx]
        for b in range(nb):
            y = x ^ basis[b]
            if y < x:
                x = y
        if x:
            basis[nb] = x
            nb += 1
    return nb


@njit(cache=True)
def _mul(a, b, lg, ex):
    if a == 0 or b == 0:
        return np.int64(0)
    return np.int64(ex[lg[a] + lg[b]])


@njit(cache=True)
def _inv(a, lg, ex):
    return np.int64(ex[lg.shape[0] - 1 - lg[a]])


@njit(cache=True)
def _frob(x, i, m, lg, ex):
    if x == 0:
        return np.int64(0)
    order = lg.shape[0] - 1
    i = i % m
    return np.int64(ex[(np.int64(lg[x]) << i) % order])


@njit(cache=True)
def _sq(x, lg, ex):
    if x == 0:
        return np.int64(0)
    return np.int64(ex[2 * lg[x]])


@njit(cache=True)
def _draw_full_rank(rng, rows, n, out):
    high = np.int64(1) << n
    while True:
        for i in range(rows):
            out[i] = rng.integers(0, high)
        if _xor_rank(out, rows) == rows:
            return


@njit(cache=True)
def _draw_independent(rng, w, m, out):
    high = np.int64(1) << m
    while True:
        for i in range(w):
            out[i] = rng.integers(0, high)
        if _xor_rank(out, w) == w:
            return


@njit(cache=True)
def sample_trial(rng, m, lg, ex, n, k, w, moore):
    """Message, received word and error row-space basis, drawn like channel.sample_instance."""
    high = np.int64(1) << m
    msg = np.empty(k, np.int64)
    for i in range(k):
        msg[i] = rng.integers(0, high)
    a = np.empty(max(w, 1), np.int64)
    B = np.empty(max(w, 1), np.int64)
    if w > 0:
        _draw_independent(rng, w, m, a)
        _draw_full_rank(rng, w, n, B)
    r = np.zeros(n, np.int64)
    for j in range(n):
        c = np.int64(0)
        for i in range(k):
            if msg[i]:
                c ^= _mul(msg[i], moore[i, j], lg, ex)
        e = np.int64(0)
        for i in range(w):
            if (B[i] >> j) & 1:
                e ^= a[i]
        r[j] = c ^ e
    return msg, r, B[:w]


@njit(cache=True)
def _kernel_f2(rows, count, n):
    """Canonical kernel basis of a count x n F_2 matrix (rows as masks).
    Returns an array of n-bit masks, one per free column in increasing order."""
    R = rows[:count].copy()
    pivcol = np.full(count, -1, np.int64)
    rr = 0
    for c in range(n):
        if rr == count:
            break
        p = -1
        for i in range(rr, count):
            if (R[i] >> c) & 1:
                p = i
                break
        if p < 0:
            continue
        tmp = R[rr]
        R[rr] = R[p]
        R[p] = tmp
        for i in range(count):
            if i != rr and (R[i] >> c) & 1:
                R[i] ^= R[rr]
        pivcol[rr] = c
        rr += 1
    ispiv = np.zeros(n, np.bool_)
    for i in range(rr):
        ispiv[pivcol[i]] = True
    out = np.empty(n - rr, np.int64)
    t = 0
    for f in range(n):
        if ispiv[f]:
            continue
        x = np.int64(1) << f
        for i in range(rr):
            if (R[i] >> f) & 1:
                x |= np.int64(1) << pivcol[i]
        out[t] = x
        t += 1
    return out


@njit(cache=True)
def _first_kernel_vector(M, nrows, ncols, m, lg, ex, sol):
    """Canonical first kernel vector of M over GF(2^m) (free variable = 1 at the
    first non-pivot column).  M is destroyed.  Returns False if the kernel is trivial."""
    pivcol = np.full(nrows, -1, np.int64)
    ispiv = np.zeros(ncols, np.bool_)
    rr = 0
    for c in range(ncols):
        if rr == nrows:
            break
        p = -1
        for i in range(rr, nrows):
            if M[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != rr:
            for j in range(c, ncols):
                tmp = M[rr, j]
                M[rr, j] = M[p, j]
                M[p, j] = tmp
        inv = _inv(M[rr, c], lg, ex)
        for j in range(c, ncols):
            if M[rr, j]:
                M[rr, j] = _mul(M[rr, j], inv, lg, ex)
        for i in range(rr + 1, nrows):
            f = M[i, c]
            if f:
                for j in range(c, ncols):
                    if M[rr, j]:
                        M[i, j] ^= _mul(f, M[rr, j], lg, ex)
        pivcol[rr] = c
        ispiv[c] = True
        rr += 1
    free = -1
    for c in range(ncols):
        if not ispiv[c]:
            free = c
            break
    if free < 0:
        return False
    for j in range(ncols):
        sol[j] = 0
    sol[free] = 1
    # back substitution; later free columns stay 0
    for i in range(rr - 1, -1, -1):
        pc = pivcol[i]
        if pc > free:
            continue
        acc = np.int64(0)
        for j in range(pc + 1, ncols):
            if sol[j] and M[i, j]:
                acc ^= _mul(M[i, j], sol[j], lg, ex)
        sol[pc] = acc
    return True


@njit(cache=True)
def _left_divide(N, dN, V, dV, m, lg, ex, f):
    """f with V o f = N (qdeg f = dN - dV); returns False if not divisible."""
    inv_lead = _inv(V[dV], lg, ex)
    top = dN - dV
    for j in range(top + 1):
        f[j] = 0
    for s in range(dN, dV - 1, -1):
        acc = N[s]
        for i in range(dV):
            j = s - i
            if j <= top and f[j]:
                acc ^= _mul(V[i], _frob(f[j], i, m, lg, ex), lg, ex)
        f[s - dV] = _frob(_mul(acc, inv_lead, lg, ex), m - dV, m, lg, ex)
    for s in range(dV):
        acc = N[s] if s <= dN else np.int64(0)
        for i in range(max(0, s - top), s + 1):
            if f[s - i]:
                acc ^= _mul(V[i], _frob(f[s - i], i, m, lg, ex), lg, ex)
        if acc:
            return False
    return True


@njit(cache=True)
def decode_erasure(r, BC, gamma, g, moore, m, lg, ex, n, k, out_msg):
    """Column-erasure decoder; returns the rank of r - c_hat, or -1 on failure.
    The recovered message is written to out_msg."""
    if gamma > 0:
        P = _kernel_f2(BC, gamma, n)
    else:
        P = np.empty(n, np.int64)
        for j in range(n):
            P[j] = np.int64(1) << j
    npunct = P.shape[0]
    locs = np.zeros(npunct, np.int64)
    rp = np.zeros(npunct, np.int64)
    for l in range(npunct):
        x = P[l]
        for j in range(n):
            if (x >> j) & 1:
                locs[l] ^= g[j]
                rp[l] ^= r[j]
    t = (npunct - k) // 2
    ncols = 2 * t + k + 1
    M = np.empty((npunct, ncols), np.int64)
    for l in range(npunct):
        x = rp[l]
        for j in range(t + 1):
            M[l, j] = x
            x = _sq(x, lg, ex)
        y = locs[l]
        for j in range(k + t):
            M[l, t + 1 + j] = y
            y = _sq(y, lg, ex)
    sol = np.zeros(ncols, np.int64)
    if not _first_kernel_vector(M, npunct, ncols, m, lg, ex, sol):
        return -1
    dV = -1
    for i in range(t + 1):
        if sol[i]:
            dV = i
    if dV < 0:
        return -1
    V = sol[: t + 1]
    N = sol[t + 1 :]
    dN = -1
    for i in range(k + t):
        if N[i]:
            dN = i
    for i in range(k):
        out_msg[i] = 0
    if dN >= 0:
        if dN < dV or dN - dV >= k:
            return -1
        f = np.zeros(dN - dV + 1, np.int64)
        if not _left_divide(N, dN, V, dV, m, lg, ex, f):
            return -1
        for i in range(dN - dV + 1):
            out_msg[i] = f[i]
    diff = np.empty(n, np.int64)
    for j in range(n):
        c = np.int64(0)
        for i in range(k):
            if out_msg[i]:
                c ^= _mul(out_msg[i], moore[i, j], lg, ex)
        diff[j] = r[j] ^ c
    return _xor_rank(diff, n)


@njit(cache=True)
def _classify(msg, dec_msg, res, w, k):
    if res < 0 or res > w:
        return FAIL
    for i in range(k):
        if msg[i] != dec_msg[i]:
            return OTHER
    return TRUE


@njit(cache=True)
def per_guess_chunk(rng, count, m, lg, ex, n, k, w, delta, g, moore, outcomes):
    """``count`` independent trials of (fresh message + error, one guess, one decode)."""
    BC = np.empty(max(delta, 1), np.int64)
    dec = np.empty(k, np.int64)
    for t in range(count):
        msg, r, _ = sample_trial(rng, m, lg, ex, n, k, w, moore)
        if delta > 0:
            _draw_full_rank(rng, delta, n, BC)
        res = decode_erasure(r, BC, delta, g, moore, m, lg, ex, n, k, dec)
        outcomes[t] = _classify(msg, dec, res, w, k)


@njit(cache=True)
def geometric_chunk(rng, count, max_iter, m, lg, ex, n, k, w, delta, g, moore, iterations, outcomes):
    """``count`` instances, each decoded by repeated guessing until success or max_iter."""
    BC = np.empty(max(delta, 1), np.int64)
    dec = np.empty(k, np.int64)
    for t in range(count):
        msg, r, _ = sample_trial(rng, m, lg, ex, n, k, w, moore)
        outcomes[t] = FAIL
        iterations[t] = max_iter
        for it in range(max_iter):
            if delta > 0:
                _draw_full_rank(rng, delta, n, BC)
            res = decode_erasure(r, BC, delta, g, moore, m, lg, ex, n, k, dec)
            o = _classify(msg, dec, res, w, k)
            if o != FAIL:
                outcomes[t] = o
                iterations[t] = it + 1
                break


@njit(cache=True)
def intersection_chunk(rng, count, n, j, delta, need, out):
    """Decoder-free check: draw a uniform j-dim row space and a uniform delta-dim
    guess and count how often they meet in >= need dimensions."""
    E = np.empty(max(j, 1), np.int64)
    U = np.empty(max(delta, 1), np.int64)
    both = np.empty(max(j + delta, 1), np.int64)
    hits = 0
    for t in range(count):
        if j > 0:
            _draw_full_rank(rng, j, n, E)
        if delta > 0:
            _draw_full_rank(rng, delta, n, U)
        for i in range(j):
            both[i] = E[i]
        for i in range(delta):
            both[j + i] = U[i]
        inter = j + delta - _xor_rank(both, j + delta)
        if inter >= need:
            hits += 1
    out[0] = hits


def code_arrays(code):
    """(g, moore, log, exp) arrays for a q = 2 GabidulinCode."""
    T = code.tower
    if T.q != 2 or T.m > TABLE_MAX_M:
        raise ValueError(f"the compiled path needs q = 2 and m <= {TABLE_MAX_M}")
    g = np.array(code.g, dtype=np.int64)
    moore = np.empty((code.k, code.n), np.int64)
    row = list(code.g)
    for i in range(code.k):
        moore[i] = row
        row = [T.frob(x, 1) for x in row]
    exp, log = _binary_tables(T.m, T._poly)
    return g, moore, np.frombuffer(log, dtype=np.int32), np.frombuffer(exp, dtype=np.int32)
