"""Pure-Python / numpy versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and outputs; used when the extension is not built or when
``HFL_PURE_PYTHON=1``.
"""

from __future__ import annotations

import itertools
from math import factorial

import numpy as np

_CHUNK = 1 << 16


def _perm_chunks(n: int):
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int8).reshape(len(block), n)


def grade_all(n, o_perm, x_perm, comp_of, ncomp, alex_consts, maslov_const):
    total = factorial(n)
    mas = np.empty(total, dtype=np.int16)
    alex = np.empty((total, ncomp), dtype=np.int16)
    cols = np.arange(n)
    start = 0
    for block in _perm_chunks(n):
        k = block.shape[0]
        m = np.full(k, maslov_const, dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                m += block[:, i] < block[:, j]
        acc = np.tile(np.asarray(alex_consts, dtype=np.int64), (k, 1))
        for c in range(n):
            left = cols <= c
            o_hits = ((block <= o_perm[c]) == left).sum(axis=1)
            x_hits = ((block <= x_perm[c]) == left).sum(axis=1)
            m -= o_hits
            acc[:, comp_of[c]] += x_hits - o_hits
        mas[start:start + k] = m
        alex[start:start + k] = acc
        start += k
    return mas, alex


def rank_perms(perms):
    perms = np.asarray(perms, dtype=np.int8)
    k, n = perms.shape
    out = np.zeros(k, dtype=np.int64)
    for i in range(n):
        less = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        out += less * factorial(n - 1 - i)
    return out


def unrank(ranks, n):
    ranks = np.asarray(ranks, dtype=np.int64)
    out = np.empty((len(ranks), n), dtype=np.int8)
    for t, r in enumerate(ranks.tolist()):
        pool = list(range(n))
        for i in range(n):
            d, r = divmod(r, factorial(n - 1 - i))
            out[t, i] = pool.pop(d)
    return out


def boundary_targets(perms, free):
    perms = np.asarray(perms, dtype=np.int8)
    k, n = perms.shape
    p = perms.astype(np.int64)
    rows = np.arange(k)
    srcs, tgts = [], []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            r1 = p[:, a]
            r2 = p[:, b]
            ok = free[a, b, r1, r2].astype(bool)
            if not ok.any():
                continue
            h = (r2 - r1) % n
            w = (b - a) % n
            for off in range(1, w):
                c = (a + off) % n
                d = (p[:, c] - r1) % n
                ok &= ~((d > 0) & (d < h))
            if not ok.any():
                continue
            q = perms[ok].copy()
            q[:, a], q[:, b] = perms[ok, b], perms[ok, a]
            srcs.append(rows[ok])
            tgts.append(rank_perms(q))
    if not srcs:
        return np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int64)
    src = np.concatenate(srcs)
    tgt = np.concatenate(tgts)
    # match the compiled kernel's ordering: by source, then column pair
    order = np.argsort(src, kind="stable")
    return src[order].astype(np.int32), tgt[order]


def gf2_rank(indptr, indices, nrows):
    pivots: dict[int, int] = {}
    rank = 0
    for j in range(len(indptr) - 1):
        v = 0
        for r in indices[indptr[j]:indptr[j + 1]].tolist():
            v ^= 1 << r
        while v:
            low = v.bit_length() - 1
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = v
                rank += 1
                break
            v ^= piv
    return rank
