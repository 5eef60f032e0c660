"""Small dense exact linear algebra over the rationals.

Matrices are lists of lists of Fraction (rows).  Everything here is sized
for the few-dozen-state systems this package builds; no pivoting tricks,
just exact Gaussian elimination.
"""

from fractions import Fraction

from .errors import DomainError


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = Fraction(0)
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = Fraction(0)
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s)
    return out


def vec_mat(v, a):
    n = len(a[0]) if a else 0
    out = [Fraction(0)] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def dot(u, v):
    s = Fraction(0)
    for x, y in zip(u, v):
        if x and y:
            s += x * y
    return s


def kernel_basis(a):
    """Basis of the right kernel of a (list of column vectors)."""
    if not a:
        return []
    rows = [list(map(Fraction, r)) for r in a]
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for pr, pc in enumerate(pivots):
            v[pc] = -rows[pr][fc]
        basis.append(v)
    return basis


def fixed_vector(a):
    """The one-dimensional solution of a*v = v, up to scale.

    Raises when the kernel of (a - I) is not one-dimensional.
    """
    n = len(a)
    basis = kernel_basis(mat_sub(a, identity(n)))
    if len(basis) != 1:
        raise DomainError(
            f"fixed space has dimension {len(basis)}, expected 1",
            code="KERNEL_DIMENSION")
    return basis[0]


def is_irreducible(a) -> bool:
    """Strong connectivity of the support digraph of a square matrix."""
    n = len(a)
    if n == 0:
        return False
    if n == 1:
        return True

    def reaches_all(succ):
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in succ(u):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n

    fwd = reaches_all(lambda u: (v for v in range(n) if a[u][v]))
    bwd = reaches_all(lambda u: (v for v in range(n) if a[v][u]))
    return fwd and bwd
