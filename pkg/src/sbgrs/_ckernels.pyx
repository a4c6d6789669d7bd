# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops over table-backed fields.

Every function takes ``tables = (p, q, exp, log, zech)`` as produced by
``GF.tables()`` and int64 numpy arrays for matrices.  Contracts match
``_pykernels``.
"""

import numpy as np

ctypedef long long i64


cdef struct Field:
    i64 p
    i64 q
    i64 *exp
    i64 *log
    i64 *zech


cdef inline i64 f_add(Field *F, i64 x, i64 y) noexcept nogil:
    cdef i64 lx, d, z
    if F.p == 2:
        return x ^ y
    if x == 0:
        return y
    if y == 0:
        return x
    lx = F.log[x]
    d = F.log[y] - lx
    if d < 0:
        d += F.q - 1
    z = F.zech[d]
    if z < 0:
        return 0
    return F.exp[lx + z]


cdef inline i64 f_neg(Field *F, i64 x) noexcept nogil:
    if F.p == 2 or x == 0:
        return x
    return F.exp[F.log[x] + (F.q - 1) // 2]


cdef inline i64 f_mul(Field *F, i64 x, i64 y) noexcept nogil:
    if x == 0 or y == 0:
        return 0
    return F.exp[F.log[x] + F.log[y]]


cdef inline i64 f_inv(Field *F, i64 x) noexcept nogil:
    return F.exp[(F.q - 1 - F.log[x]) % (F.q - 1)]


cdef class _Tables:
    cdef Field F
    cdef object keep

    def __cinit__(self, tables):
        cdef i64[::1] e, l, z
        p, q, exp, log, zech = tables
        e = np.ascontiguousarray(exp, dtype=np.int64)
        l = np.ascontiguousarray(log, dtype=np.int64)
        z = np.ascontiguousarray(zech, dtype=np.int64)
        self.keep = (e, l, z)
        self.F.p = p
        self.F.q = q
        self.F.exp = &e[0]
        self.F.log = &l[0]
        self.F.zech = &z[0]


def make_context(tables):
    """Wrap ``GF.tables()`` once; kernels accept the context or the raw tuple."""
    return _Tables(tables)


cdef _Tables _get(tables):
    if isinstance(tables, _Tables):
        return <_Tables>tables
    return _Tables(tables)


cdef i64 _det_inplace(Field *F, i64[:, ::1] A, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t c, r, j, piv
    cdef i64 result = 1, pc, inv, f, t
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if A[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(n):
                t = A[c, j]
                A[c, j] = A[piv, j]
                A[piv, j] = t
            result = f_neg(F, result)
        pc = A[c, c]
        result = f_mul(F, result, pc)
        inv = f_inv(F, pc)
        for r in range(c + 1, n):
            f = A[r, c]
            if f != 0:
                f = f_neg(F, f_mul(F, f, inv))
                for j in range(c, n):
                    if A[c, j] != 0:
                        A[r, j] = f_add(F, A[r, j], f_mul(F, f, A[c, j]))
    return result


def det(tables, M):
    cdef _Tables T = _get(tables)
    cdef i64[:, ::1] A = np.array(M, dtype=np.int64, order="C", copy=True).reshape(len(M), -1)
    if A.shape[0] == 0:
        return 1
    return int(_det_inplace(&T.F, A, A.shape[0]))


def rank(tables, M):
    cdef _Tables T = _get(tables)
    cdef Field *F = &T.F
    arr = np.array(M, dtype=np.int64, order="C", copy=True)
    if arr.size == 0:
        return 0
    cdef i64[:, ::1] A = arr.reshape(len(M), -1)
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t rk = 0, c, r, j, piv
    cdef i64 inv, f, t
    for c in range(cols):
        piv = -1
        for r in range(rk, rows):
            if A[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rk:
            for j in range(cols):
                t = A[rk, j]
                A[rk, j] = A[piv, j]
                A[piv, j] = t
        inv = f_inv(F, A[rk, c])
        for r in range(rk + 1, rows):
            f = A[r, c]
            if f != 0:
                f = f_neg(F, f_mul(F, f, inv))
                for j in range(c, cols):
                    A[r, j] = f_add(F, A[r, j], f_mul(F, f, A[rk, j]))
        rk += 1
        if rk == rows:
            break
    return rk


def elem_sym(tables, values):
    cdef _Tables T = _get(tables)
    cdef i64[::1] v = np.asarray(values, dtype=np.int64).reshape(-1)
    cdef Py_ssize_t n = v.shape[0], t, l
    out = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] e = out
    e[0] = 1
    for t in range(1, n + 1):
        for l in range(t, 0, -1):
            e[l] = f_add(&T.F, e[l], f_mul(&T.F, v[t - 1], e[l - 1]))
    return [int(x) for x in out]


def xi_value(tables, points, supports, Py_ssize_t k):
    cdef _Tables T = _get(tables)
    cdef Field *F = &T.F
    cdef i64[::1] pts = np.asarray(points, dtype=np.int64).reshape(-1)
    arr = np.zeros((k, k), dtype=np.int64)
    cdef i64[:, ::1] A = arr
    cdef i64[::1] e = np.zeros(k + 1, dtype=np.int64)
    cdef Py_ssize_t i, t, l, size, top
    cdef i64 x
    for i, Z in enumerate(supports):
        size = len(Z)
        e[0] = 1
        for l in range(1, k + 1):
            e[l] = 0
        t = 0
        for j in Z:
            t += 1
            x = pts[j]
            top = t if t < k else k - 1
            for l in range(top, 0, -1):
                e[l] = f_add(F, e[l], f_mul(F, x, e[l - 1]))
        for l in range(k):
            A[l, i] = e[l]
    return int(_det_inplace(F, A, k))


def first_singular_minor(tables, G, combos):
    cdef _Tables T = _get(tables)
    cdef i64[:, ::1] g = np.ascontiguousarray(G, dtype=np.int64)
    cdef i64[:, ::1] cs = np.ascontiguousarray(combos, dtype=np.int64).reshape(len(combos), -1)
    cdef Py_ssize_t k = g.shape[0], idx, r, c
    cdef i64[:, ::1] A = np.zeros((k, k), dtype=np.int64)
    cdef Py_ssize_t found = -1
    with nogil:
        for idx in range(cs.shape[0]):
            for r in range(k):
                for c in range(k):
                    A[r, c] = g[r, cs[idx, c]]
            if _det_inplace(&T.F, A, k) == 0:
                found = idx
                break
    return found


def min_weight(tables, G):
    cdef _Tables T = _get(tables)
    cdef Field *F = &T.F
    cdef i64[:, ::1] g = np.ascontiguousarray(G, dtype=np.int64)
    cdef Py_ssize_t k = g.shape[0], n = g.shape[1], q = F.q
    cdef i64[:, :, ::1] scaled = np.zeros((k, q, n), dtype=np.int64)
    cdef i64[:, ::1] partial = np.zeros((k + 1, n), dtype=np.int64)
    cdef i64[::1] digits = np.zeros(k, dtype=np.int64)
    cdef Py_ssize_t i, j, v, level = 0, w, best = n + 1
    cdef bint nonzero
    with nogil:
        for i in range(k):
            for v in range(q):
                for j in range(n):
                    scaled[i, v, j] = f_mul(F, v, g[i, j])
        while True:
            for i in range(level, k):
                for j in range(n):
                    partial[i + 1, j] = f_add(F, partial[i, j], scaled[i, digits[i], j])
            nonzero = False
            for i in range(k):
                if digits[i] != 0:
                    nonzero = True
                    break
            if nonzero:
                w = 0
                for j in range(n):
                    if partial[k, j] != 0:
                        w += 1
                if w < best:
                    best = w
            i = k - 1
            while i >= 0 and digits[i] == q - 1:
                digits[i] = 0
                i -= 1
            if i < 0:
                break
            digits[i] += 1
            level = i
    return best


def encode_batch(tables, G, messages):
    cdef _Tables T = _get(tables)
    cdef Field *F = &T.F
    cdef i64[:, ::1] g = np.ascontiguousarray(G, dtype=np.int64)
    cdef i64[:, ::1] msg = np.ascontiguousarray(messages, dtype=np.int64).reshape(len(messages), -1)
    cdef Py_ssize_t k = g.shape[0], n = g.shape[1], b, i, j
    out = np.zeros((msg.shape[0], n), dtype=np.int64)
    cdef i64[:, ::1] cw = out
    cdef i64 m
    with nogil:
        for b in range(msg.shape[0]):
            for i in range(k):
                m = msg[b, i]
                if m != 0:
                    for j in range(n):
                        cw[b, j] = f_add(F, cw[b, j], f_mul(F, m, g[i, j]))
    return out.tolist()
