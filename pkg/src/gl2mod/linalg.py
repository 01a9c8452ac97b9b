"""Exact dense linear algebra over the tower fields.

Matrices are lists of row lists of encoded field elements; vectors are
flat lists.  Everything is computed by Gaussian elimination with exact
field arithmetic -- no floating point anywhere in the package.
"""

from __future__ import annotations

from .fields import FieldTower

Mat = list  # list[list[int]]
Vec = list  # list[int]


def zeros(rows: int, cols: int) -> Mat:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_from_int(t: FieldTower, a: Mat) -> Mat:
    return [[t.from_int(x) for x in row] for row in a]


def mat_copy(a: Mat) -> Mat:
    return [row[:] for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def mat_eq(a: Mat, b: Mat) -> bool:
    return a == b


def mat_add(t: FieldTower, a: Mat, b: Mat) -> Mat:
    return [[t.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(t: FieldTower, a: Mat, b: Mat) -> Mat:
    return [[t.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(t: FieldTower, c: int, a: Mat) -> Mat:
    return [[t.mul(c, x) for x in row] for row in a]


def mat_mul(t: FieldTower, a: Mat, b: Mat) -> Mat:
    n, m = len(a), len(b[0]) if b else 0
    k = len(b)
    bt = transpose(b)
    add, mul = t.add, t.mul
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for j in range(m):
            bj = bt[j]
            s = 0
            for l in range(k):
                x = ai[l]
                if x:
                    s = add(s, mul(x, bj[l]))
            oi[j] = s
    return out


def mat_vec(t: FieldTower, a: Mat, v: Vec) -> Vec:
    add, mul = t.add, t.mul
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return out


def mat_pow(t: FieldTower, a: Mat, e: int) -> Mat:
    res = identity(len(a))
    base = mat_copy(a)
    while e:
        if e & 1:
            res = mat_mul(t, res, base)
        base = mat_mul(t, base, base)
        e >>= 1
    return res


def rref(t: FieldTower, a: Mat) -> tuple[Mat, list[int]]:
    """Row-reduced echelon form and pivot column indices."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = t.inv(m[r][c])
        m[r] = [t.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [t.sub(x, t.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(t: FieldTower, a: Mat) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(t, a)[1])


def nullspace(t: FieldTower, a: Mat) -> list[Vec]:
    """Basis of the right kernel {v : a v = 0}."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(t, a)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [0] * cols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = t.neg(r[i][free])
        basis.append(v)
    return basis


def solve(t: FieldTower, a: Mat, b: Vec) -> Vec | None:
    """One solution of a x = b, or None if inconsistent."""
    rows = len(a)
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    r, pivots = rref(t, aug)
    cols = len(a[0]) if rows else 0
    if cols in pivots:
        return None
    x = [0] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def inverse(t: FieldTower, a: Mat) -> Mat | None:
    n = len(a)
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    r, pivots = rref(t, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in r]


def det2(t: FieldTower, g: Mat) -> int:
    return t.sub(t.mul(g[0][0], g[1][1]), t.mul(g[0][1], g[1][0]))


def column_echelon(t: FieldTower, vectors: list[Vec]) -> list[Vec]:
    """Canonical basis of span(vectors) in column-reduced echelon form.

    Each basis vector's first nonzero entry (from the top) is 1 and is
    the only nonzero entry of the span basis in that coordinate row.
    """
    if not vectors:
        return []
    r, _ = rref(t, [list(v) for v in vectors])
    return [row for row in r if any(row)]


def in_span(t: FieldTower, echelon: list[Vec], v: Vec) -> bool:
    """Membership test against a column_echelon basis."""
    v = list(v)
    for b in echelon:
        lead = next(i for i, x in enumerate(b) if x)
        if v[lead]:
            f = v[lead]
            v = [t.sub(x, t.mul(f, y)) for x, y in zip(v, b)]
    return not any(v)


def reduce_mod_span(t: FieldTower, echelon: list[Vec], v: Vec) -> Vec:
    v = list(v)
    for b in echelon:
        lead = next(i for i, x in enumerate(b) if x)
        if v[lead]:
            f = v[lead]
            v = [t.sub(x, t.mul(f, y)) for x, y in zip(v, b)]
    return v


def kron(t: FieldTower, a: Mat, b: Mat) -> Mat:
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if x:
                for k in range(rb):
                    for l in range(cb):
                        if b[k][l]:
                            out[i * rb + k][j * cb + l] = t.mul(x, b[k][l])
    return out


def hstack(a: Mat, b: Mat) -> Mat:
    return [ra + rb for ra, rb in zip(a, b)]


def columns(a: Mat) -> list[Vec]:
    return [list(col) for col in zip(*a)] if a and a[0] else []


def from_columns(cols: list[Vec]) -> Mat:
    return [list(row) for row in zip(*cols)] if cols else []
