# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot loops: state gradings, empty-rectangle differential, GF(2) rank."""

import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector
from libcpp.algorithm cimport next_permutation, sort

cnp.import_array()

ctypedef cnp.int8_t i8
ctypedef cnp.int16_t i16
ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64
ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef i64 _factorial(int n):
    cdef i64 f = 1
    cdef int k
    for k in range(2, n + 1):
        f *= k
    return f


def grade_all(int n, o_perm, x_perm, comp_of, int ncomp, alex_consts, int maslov_const):
    """Maslov and doubled Alexander gradings of all n! states, lexicographic order."""
    cdef i64 total = _factorial(n)
    cdef cnp.ndarray[i16, ndim=1] mas = np.empty(total, dtype=np.int16)
    cdef cnp.ndarray[i16, ndim=2] alex = np.empty((total, ncomp), dtype=np.int16)
    cdef int o[32]
    cdef int x[32]
    cdef int comp[32]
    cdef int consts[32]
    cdef int acc[32]
    cdef vector[int] p
    cdef int i, j, c, m, k
    cdef i64 s
    for i in range(n):
        o[i] = o_perm[i]
        x[i] = x_perm[i]
        comp[i] = comp_of[i]
        p.push_back(i)
    for i in range(ncomp):
        consts[i] = alex_consts[i]
    s = 0
    while True:
        m = maslov_const
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] < p[j]:
                    m += 1
        for k in range(ncomp):
            acc[k] = consts[k]
        for c in range(n):
            for i in range(n):
                # marking at (c + 1/2, row + 1/2); point (i, p[i]); comparable iff same side in both axes
                if (i <= c) == (p[i] <= o[c]):
                    m -= 1
                    acc[comp[c]] -= 1
                if (i <= c) == (p[i] <= x[c]):
                    acc[comp[c]] += 1
        mas[s] = m
        for k in range(ncomp):
            alex[s, k] = acc[k]
        s += 1
        if not next_permutation(p.begin(), p.end()):
            break
    return mas, alex


cdef inline i64 _rank_one(const i8* p, int n, const i64* fact):
    cdef i64 r = 0
    cdef int i, j, less
    for i in range(n):
        less = 0
        for j in range(i + 1, n):
            if p[j] < p[i]:
                less += 1
        r += less * fact[n - 1 - i]
    return r


def rank_perms(cnp.ndarray[i8, ndim=2] perms):
    """Lexicographic index of each row."""
    cdef int k = perms.shape[0]
    cdef int n = perms.shape[1]
    cdef i64 fact[32]
    cdef int i
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    cdef cnp.ndarray[i64, ndim=1] out = np.empty(k, dtype=np.int64)
    cdef cnp.ndarray[i8, ndim=2] c = np.ascontiguousarray(perms)
    for i in range(k):
        out[i] = _rank_one(&c[i, 0], n, fact)
    return out


def unrank(cnp.ndarray[i64, ndim=1] ranks, int n):
    """Inverse of rank_perms."""
    cdef int k = ranks.shape[0]
    cdef cnp.ndarray[i8, ndim=2] out = np.empty((k, n), dtype=np.int8)
    cdef i64 fact[32]
    cdef int used[32]
    cdef int i, j, t, d, cnt
    cdef i64 r
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    for t in range(k):
        r = ranks[t]
        for j in range(n):
            used[j] = 0
        for i in range(n):
            d = <int>(r // fact[n - 1 - i])
            r = r % fact[n - 1 - i]
            cnt = -1
            for j in range(n):
                if not used[j]:
                    cnt += 1
                    if cnt == d:
                        used[j] = 1
                        out[t, i] = j
                        break
    return out


def boundary_targets(cnp.ndarray[i8, ndim=2] perms, cnp.ndarray[cnp.uint8_t, ndim=4] free):
    """Empty-rectangle differential.

    ``free[a, b, r1, r2]`` is 1 when the rectangle spanning columns a..b-1 and
    rows r1..r2-1 (cyclically) holds no marking.  Returns parallel arrays
    (source row index, lexicographic rank of the target state).
    """
    cdef int k = perms.shape[0]
    cdef int n = perms.shape[1]
    cdef i64 fact[32]
    cdef i8 q[32]
    cdef int i, a, b, c, w, h, r1, r2, off
    cdef bint ok
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    cdef vector[i32] src
    cdef vector[i64] tgt
    for i in range(k):
        for a in range(n):
            r1 = perms[i, a]
            for b in range(n):
                if a == b:
                    continue
                r2 = perms[i, b]
                if not free[a, b, r1, r2]:
                    continue
                w = (b - a + n) % n
                h = (r2 - r1 + n) % n
                ok = True
                for off in range(1, w):
                    c = (a + off) % n
                    if 0 < (perms[i, c] - r1 + n) % n < h:
                        ok = False
                        break
                if not ok:
                    continue
                for c in range(n):
                    q[c] = perms[i, c]
                q[a] = r2
                q[b] = r1
                src.push_back(i)
                tgt.push_back(_rank_one(q, n, fact))
    cdef cnp.ndarray[i32, ndim=1] s_out = np.empty(src.size(), dtype=np.int32)
    cdef cnp.ndarray[i64, ndim=1] t_out = np.empty(tgt.size(), dtype=np.int64)
    for i in range(<int>src.size()):
        s_out[i] = src[i]
        t_out[i] = tgt[i]
    return s_out, t_out


cdef void _xor_into(vector[i32]& dst, const vector[i32]& src, vector[i32]& scratch):
    # symmetric difference of two sorted vectors
    scratch.clear()
    cdef size_t i = 0, j = 0
    cdef size_t na = dst.size(), nb = src.size()
    while i < na and j < nb:
        if dst[i] < src[j]:
            scratch.push_back(dst[i]); i += 1
        elif src[j] < dst[i]:
            scratch.push_back(src[j]); j += 1
        else:
            i += 1; j += 1
    while i < na:
        scratch.push_back(dst[i]); i += 1
    while j < nb:
        scratch.push_back(src[j]); j += 1
    dst.swap(scratch)


cdef int _dense_low(const vector[u64]& bits):
    # index of the highest set bit, -1 when zero
    cdef int w = <int>bits.size() - 1
    while w >= 0:
        if bits[w]:
            return w * 64 + 63 - __builtin_clzll(bits[w])
        w -= 1
    return -1


cdef void _to_dense(const vector[i32]& col, vector[u64]& bits, int words):
    bits.assign(words, 0)
    cdef size_t u
    for u in range(col.size()):
        bits[col[u] >> 6] ^= (<u64>1) << (col[u] & 63)


def gf2_rank(cnp.ndarray[i64, ndim=1] indptr, cnp.ndarray[i32, ndim=1] indices, int nrows):
    """Rank over GF(2) of a sparse matrix given column-wise (CSC).

    Duplicate row entries in a column cancel mod 2.  Columns are reduced by
    their largest row index against previously stored pivots.  A column is
    kept as a sorted index list while short and switched to a bitset once
    fill-in makes it dense.
    """
    cdef int ncols = indptr.shape[0] - 1
    cdef int words = (nrows + 63) // 64
    cdef size_t threshold = max(words, 16)
    cdef vector[vector[i32]] sparse_piv
    cdef vector[vector[u64]] dense_piv
    # owner[row] = 2 * index + (1 if the pivot is dense)
    cdef vector[int] owner
    owner.assign(nrows, -1)
    cdef vector[i32] col, scratch, tmp
    cdef vector[u64] bits
    cdef int j, low, o, w, rank = 0
    cdef bint dense
    cdef i64 t
    cdef size_t u
    for j in range(ncols):
        tmp.clear()
        for t in range(indptr[j], indptr[j + 1]):
            tmp.push_back(indices[t])
        sort(tmp.begin(), tmp.end())
        col.clear()
        u = 0
        while u < tmp.size():
            if u + 1 < tmp.size() and tmp[u] == tmp[u + 1]:
                u += 2
            else:
                col.push_back(tmp[u])
                u += 1
        dense = False
        low = col.back() if col.size() else -1
        while low >= 0:
            o = owner[low]
            if o < 0:
                rank += 1
                if dense:
                    owner[low] = 2 * <int>dense_piv.size() + 1
                    dense_piv.push_back(bits)
                else:
                    owner[low] = 2 * <int>sparse_piv.size()
                    sparse_piv.push_back(col)
                break
            if not dense and (o & 1 or col.size() > threshold):
                _to_dense(col, bits, words)
                dense = True
            if dense:
                if o & 1:
                    for w in range(words):
                        bits[w] ^= dense_piv[o >> 1][w]
                else:
                    for u in range(sparse_piv[o >> 1].size()):
                        bits[sparse_piv[o >> 1][u] >> 6] ^= (<u64>1) << (sparse_piv[o >> 1][u] & 63)
                low = _dense_low(bits)
            else:
                _xor_into(col, sparse_piv[o >> 1], scratch)
                low = col.back() if col.size() else -1
    return rank
