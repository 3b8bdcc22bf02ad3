"""Small exact linear algebra kit over FieldElement vectors and matrices.

Vectors are tuples of FieldElement, matrices are tuples of row tuples.
The bilinear form used throughout is the plain coordinate dot product
with no conjugation; it is the complexification of the real scalar
product on the ambient space.
"""

from __future__ import annotations

from .fields import Field, FieldElement

Vector = tuple[FieldElement, ...]
Matrix = tuple[Vector, ...]


def vec(field: Field, entries) -> Vector:
    return tuple(field.element(e) for e in entries)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))

def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: FieldElement, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def vec_is_zero(a: Vector) -> bool:
    return all(x.is_zero() for x in a)


def dot(a: Vector, b: Vector) -> FieldElement:
    total = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        total = total + x * y
    return total


def reflect(v: Vector, alpha: Vector, alpha_norm: FieldElement | None = None) -> Vector:
    """Orthogonal reflection of v in the hyperplane normal to alpha."""
    if alpha_norm is None:
        alpha_norm = dot(alpha, alpha)
    c = (dot(v, alpha) / alpha_norm) * 2
    return tuple(x - c * a for x, a in zip(v, alpha))


def identity(field: Field, n: int) -> Matrix:
    one, zero = field.one(), field.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def reflection_matrix(field: Field, alpha: Vector) -> Matrix:
    n = len(alpha)
    norm = dot(alpha, alpha)
    return tuple(reflect(row, alpha, norm) for row in identity(field, n))


def rref(rows: list[Vector] | tuple[Vector, ...]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with unit pivots; returns (rows, pivot columns)."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if not work[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inverse()
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][c].is_zero():
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def nullspace(rows: tuple[Vector, ...], ncols: int, field: Field) -> tuple[Vector, ...]:
    """Basis of the solution space of rows . x = 0."""
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    zero, one = field.zero(), field.one()
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def rank(rows) -> int:
    return len(rref(tuple(rows))[0])


def invert(m: Matrix, field: Field) -> Matrix:
    n = len(m)
    aug = [list(row) + list(idrow) for row, idrow in zip(m, identity(field, n))]
    reduced, pivots = rref(tuple(tuple(r) for r in aug))
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def solve(m: Matrix, b: Vector, field: Field) -> Vector | None:
    """One solution x of m . x = b, or None when inconsistent."""
    if not m:
        return None
    ncols = len(m[0])
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(m, b))
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][ncols]
    return tuple(x)


def in_span(rows: tuple[Vector, ...], v: Vector) -> bool:
    base, _ = rref(rows)
    return rank(base + (v,)) == len(base)


def gram(vectors: tuple[Vector, ...]) -> Matrix:
    return tuple(tuple(dot(a, b) for b in vectors) for a in vectors)
