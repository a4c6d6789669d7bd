"""Pure-Python hot loops; same contracts as the compiled ``_ckernels``.

Matrices are lists of lists of field elements (ints).
"""

from __future__ import annotations


def det(gf, M) -> int:
    """Determinant by Gaussian elimination, first nonzero pivot in row order."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    result = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), -1)
        if piv < 0:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = gf.neg(result)
        pc = A[c][c]
        result = gf.mul(result, pc)
        inv = gf.inv(pc)
        rowc = A[c]
        for r in range(c + 1, n):
            f = A[r][c]
            if f:
                f = gf.mul(f, inv)
                rowr = A[r]
                for j in range(c, n):
                    if rowc[j]:
                        rowr[j] = gf.sub(rowr[j], gf.mul(f, rowc[j]))
    return result


def rank(gf, M) -> int:
    A = [list(map(int, row)) for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    rk = 0
    for c in range(cols):
        piv = next((r for r in range(rk, rows) if A[r][c]), -1)
        if piv < 0:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = gf.inv(A[rk][c])
        for r in range(rk + 1, rows):
            f = A[r][c]
            if f:
                f = gf.mul(f, inv)
                for j in range(c, cols):
                    A[r][j] = gf.sub(A[r][j], gf.mul(f, A[rk][j]))
        rk += 1
        if rk == rows:
            break
    return rk


def elem_sym(gf, values) -> list[int]:
    """Coefficients of prod(x + v): e_0 = 1, e_1, ..., e_len."""
    e = [1] + [0] * len(values)
    for t, v in enumerate(values, start=1):
        for l in range(t, 0, -1):
            e[l] = gf.add(e[l], gf.mul(v, e[l - 1]))
    return e


def xi_value(gf, points, supports, k: int) -> int:
    """det of the k x k matrix whose (l, i) entry is s^(l) over supports[i]."""
    cols = []
    for Z in supports:
        s = elem_sym(gf, [points[j] for j in Z])
        cols.append((s + [0] * k)[:k])
    return det(gf, [[cols[i][l] for i in range(k)] for l in range(k)])


def first_singular_minor(gf, G, combos) -> int:
    """Index of the first column subset whose k x k minor is singular, else -1."""
    for idx, cols in enumerate(combos):
        if det(gf, [[row[c] for c in cols] for row in G]) == 0:
            return idx
    return -1


def min_weight(gf, G) -> int:
    """Minimum Hamming weight over all nonzero messages m, codeword m*G.

    Odometer enumeration with the last message symbol varying fastest;
    prefix sums are cached per level so each step costs O(n).
    """
    k, n = len(G), len(G[0])
    q = gf.q
    scaled = [[[gf.mul(v, g) for g in row] for v in range(q)] for row in G]
    partial = [[0] * n for _ in range(k + 1)]
    digits = [0] * k
    best = n + 1
    level = 0
    while True:
        for i in range(level, k):
            prev, add_row = partial[i], scaled[i][digits[i]]
            partial[i + 1] = [gf.add(a, b) for a, b in zip(prev, add_row)]
        if any(digits):
            w = n - partial[k].count(0)
            if w < best:
                best = w
        i = k - 1
        while i >= 0 and digits[i] == q - 1:
            digits[i] = 0
            i -= 1
        if i < 0:
            return best
        digits[i] += 1
        level = i


def encode_batch(gf, G, messages) -> list[list[int]]:
    n = len(G[0])
    out = []
    for msg in messages:
        cw = [0] * n
        for m_i, row in zip(msg, G):
            if m_i:
                cw = [gf.add(c, gf.mul(m_i, g)) for c, g in zip(cw, row)]
        out.append(cw)
    return out
