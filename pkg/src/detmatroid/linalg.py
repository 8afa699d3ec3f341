"""Dense exact linear algebra over a coefficient field.

Matrices are lists of row lists of field elements.  Everything is plain
Gaussian elimination; matrices here are desk-scale (tens of rows), so no
pivoting strategy beyond "first nonzero" is needed and arithmetic stays exact.
"""

from __future__ import annotations


def zeros(rows: int, cols: int, field) -> list[list]:
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(k: int, field) -> list[list]:
    out = zeros(k, k, field)
    for i in range(k):
        out[i][i] = field.one
    return out


def mat_transpose(a: list[list]) -> list[list]:
    return [list(row) for row in zip(*a)] if a else []

def random_matrix(rows: int, cols: int, field, rng) -> list[list]:
    return [[field.rand(rng) for _ in range(cols)] for _ in range(rows)]


def mat_mul(a: list[list], b: list[list], field) -> list[list]:
    if not a or not b:
        return [[] for _ in a]
    n = len(b)
    cols = len(b[0])
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = field.zero
            for k in range(n):
                acc = field.add(acc, field.mul(row[k], col[k]))
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: list[list], x: list, field) -> list:
    out = []
    for row in a:
        acc = field.zero
        for v, c in zip(row, x):
            acc = field.add(acc, field.mul(v, c))
        out.append(acc)
    return out


def rank(a: list[list], field) -> int:
    """Rank by forward elimination on a working copy."""
    if not a:
        return 0
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0])
    zero = field.zero
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        prow = m[r]
        for i in range(r + 1, rows):
            f = m[i][c]
            if f != zero:
                f = field.mul(f, inv)
                mrow = m[i]
                for j in range(c, cols):
                    mrow[j] = field.sub(mrow[j], field.mul(f, prow[j]))
        r += 1
        if r == rows:
            break
    return r


def rref(a: list[list], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [list(row) for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    zero = field.zero
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, v) for v in m[r]]
        prow = m[r]
        for i in range(rows):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                mrow = m[i]
                for j in range(c, cols):
                    mrow[j] = field.sub(mrow[j], field.mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def right_kernel(a: list[list], cols: int, field) -> list[list]:
    """Basis of {x : a·x = 0}, one vector per free column, deterministic."""
    red, pivots = rref(a, field)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc]) if red else field.zero
        basis.append(v)
    return basis


def solve_unique(a: list[list], b: list, field) -> list | None:
    """The unique x with a·x = b, or None (inconsistent or underdetermined)."""
    if not a:
        return None
    cols = len(a[0])
    aug = [list(row) + [bb] for row, bb in zip(a, b)]
    red, pivots = rref(aug, field)
    # inconsistent: pivot in the augmented column
    if cols in pivots:
        return None
    if len(pivots) < cols:
        return None
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def det(a: list[list], field):
    """Determinant by elimination with row-swap sign tracking; det([]) = 1."""
    n = len(a)
    if n == 0:
        return field.one
    m = [list(row) for row in a]
    zero = field.zero
    sign_flip = False
    acc = field.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != zero:
                piv = i
                break
        if piv is None:
            return zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign_flip = not sign_flip
        acc = field.mul(acc, m[c][c])
        inv = field.inv(m[c][c])
        prow = m[c]
        for i in range(c + 1, n):
            f = m[i][c]
            if f != zero:
                f = field.mul(f, inv)
                mrow = m[i]
                for j in range(c, n):
                    mrow[j] = field.sub(mrow[j], field.mul(f, prow[j]))
    return field.neg(acc) if sign_flip else acc


def submatrix(a: list[list], row_idx, col_idx) -> list[list]:
    return [[a[i][j] for j in col_idx] for i in row_idx]
