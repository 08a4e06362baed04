"""Sparse exact linear algebra over a coefficient field.

Vectors are ``dict[int, Scalar]`` with no stored zeros; the integer keys are
column indices and also fix the pivot order (smallest column first).
"""
from __future__ import annotations

import heapq


def axpy(row, coef, other):
    """row += coef * other, in place; drops cancelled entries."""
    for k, v in other.items():
        nv = row.get(k)
        nv = coef * v if nv is None else nv + coef * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


class Echelon:
    """Incrementally built row echelon form.

    Each stored row has its pivot at its smallest column, normalized to 1.
    Pivoting is by first nonzero entry; there is no pivot-size heuristic since
    the arithmetic is exact.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        row = {k: v for k, v in row.items() if v}
        heap = list(row)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if v is None:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                continue
            for k in prow:
                if k not in row:
                    heapq.heappush(heap, k)
            axpy(row, -v, prow)
        return row

    def add(self, row):
        """Reduce ``row`` and insert it if independent; returns the inserted row or None."""
        row = self.reduce(row)
        if not row:
            return None
        p = min(row)
        inv = row[p].inverse()
        row = {k: v * inv for k, v in row.items()}
        self.pivots[p] = row
        return row

    def contains(self, row):
        return not self.reduce(row)

    def rref(self):
        """Fully reduced rows, keyed by pivot column."""
        out = {}
        for p in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[p])
            for q in [k for k in row if k != p and k in out]:
                axpy(row, -row[q], out[q])
            out[p] = row
        return dict(sorted(out.items()))


def rank(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, ncols, one):
    """Basis of {v : r . v = 0 for all rows r}, as sparse vectors over columns 0..ncols-1.

    The basis is the standard one read off the reduced row echelon form: one
    vector per free column, with a 1 in that column.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    red = ech.rref()
    free = [c for c in range(ncols) if c not in red]
    basis = []
    for f in free:
        v = {f: one}
        for p, row in red.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def reduced_basis(vectors):
    """Reduced echelon representatives spanning the same space (deterministic)."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return list(ech.rref().values())


def transpose_rows(columns):
    """Turn a list of sparse column vectors (row-key -> value) into sparse rows."""
    rows = {}
    for j, col in enumerate(columns):
        for key, v in col.items():
            if v:
                rows.setdefault(key, {})[j] = v
    return list(rows.values())


# -- small dense helpers ------------------------------------------------------

def mat_mul(A, B, zero):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for k in range(m):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(p):
                b = Bk[j]
                if b:
                    row[j] = row[j] + a * b
    return out


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in r] for r in A]


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def solve(A, b, zero, one):
    """Unique solution of A x = b for square invertible A, else None."""
    n = len(A)
    rows = []
    for i in range(n):
        r = {j: A[i][j] for j in range(n) if A[i][j]}
        if b[i]:
            r[n] = b[i]
        rows.append(r)
    ech = Echelon()
    for r in rows:
        ech.add(r)
    red = ech.rref()
    if any(p >= n for p in red) or len(red) < n:
        return None
    return [red[i].get(n, zero) for i in range(n)]


def inverse(A, zero, one):
    n = len(A)
    cols = []
    for j in range(n):
        e = [one if i == j else zero for i in range(n)]
        x = solve(A, e, zero, one)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def det(A, zero):
    """Cofactor expansion; works for entries in any commutative ring (small n)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = zero
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total
