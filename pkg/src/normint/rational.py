"""Small exact linear algebra over the rationals (dense rows of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_vec(values: Iterable, dim: int | None = None) -> Vec:
    v = tuple(Fraction(x) for x in values)
    if dim is not None and len(v) != dim:
        raise ValueError(f"vector length {len(v)} != {dim}")
    return v


def sparse_to_vec(entries: dict[int, Fraction], dim: int) -> Vec:
    out = [ZERO] * dim
    for i, c in entries.items():
        out[i] = Fraction(c)
    return tuple(out)


def vec_to_sparse(v: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i: c for i, c in enumerate(v) if c}


def rref(rows: Iterable[Sequence[Fraction]]) -> list[Vec]:
    """Reduced row echelon form; returns the nonzero rows (canonical basis)."""
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = ONE / mat[pivot_row][col]
        mat[pivot_row] = [x * inv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                f = mat[r][col]
                prow = mat[pivot_row]
                mat[r] = [x - f * y for x, y in zip(mat[r], prow)]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [tuple(r) for r in mat[:pivot_row] if any(r)]


def pivot_columns(rref_rows: Sequence[Vec]) -> list[int]:
    cols = []
    for row in rref_rows:
        for j, x in enumerate(row):
            if x:
                cols.append(j)
                break
    return cols


def reduce_against(rref_rows: Sequence[Vec], v: Sequence[Fraction]) -> Vec:
    """Residual of v after elimination by an RREF basis."""
    out = list(v)
    for row in rref_rows:
        lead = next(j for j, x in enumerate(row) if x)
        if out[lead]:
            f = out[lead]
            out = [x - f * y for x, y in zip(out, row)]
    return tuple(out)


def in_span(rref_rows: Sequence[Vec], v: Sequence[Fraction]) -> bool:
    return not any(reduce_against(rref_rows, v))


def coords_in_rref(rref_rows: Sequence[Vec], v: Sequence[Fraction]) -> Vec:
    """Coordinates of v in an RREF basis (v must lie in the span)."""
    pivots = pivot_columns(rref_rows)
    coeffs = tuple(Fraction(v[p]) for p in pivots)
    residual = list(v)
    for c, row in zip(coeffs, rref_rows):
        if c:
            residual = [x - c * y for x, y in zip(residual, row)]
    if any(residual):
        raise ValueError("vector is not in the span")
    return coeffs


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(rows))


def span_equal(rows_a: Iterable[Sequence[Fraction]], rows_b: Iterable[Sequence[Fraction]]) -> bool:
    return rref(rows_a) == rref(rows_b)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """Basis of {x : row . x = 0 for every row}, canonical order."""
    basis = rref(rows)
    pivots = pivot_columns(basis)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out: list[Vec] = []
    for j in free:
        x = [ZERO] * ncols
        x[j] = ONE
        for row, p in zip(basis, pivots):
            x[p] = -row[j]
        out.append(tuple(x))
    return out


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vec:
    """Solve A x = b requiring a unique solution (A given row-wise)."""
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    aug = rref([tuple(r) + (Fraction(b),) for r, b in zip(rows, rhs)])
    x = [ZERO] * ncols
    seen = set()
    for row in aug:
        lead = next(j for j, v in enumerate(row) if v)
        if lead == ncols:
            raise ValueError("inconsistent linear system")
        if any(row[j] for j in range(lead + 1, ncols)):
            raise ValueError("linear system is underdetermined")
        x[lead] = row[ncols]
        seen.add(lead)
    if len(seen) != ncols:
        raise ValueError("linear system is underdetermined")
    return tuple(x)


def intersect_rowspaces(rows_a: Sequence[Vec], rows_b: Sequence[Vec]) -> list[Vec]:
    """Basis of span(rows_a) & span(rows_b)."""
    a = rref(rows_a)
    b = rref(rows_b)
    if not a or not b:
        return []
    ncols = len(a[0])
    ka, kb = len(a), len(b)
    constraints = []
    for j in range(ncols):
        constraints.append(
            tuple(a[i][j] for i in range(ka)) + tuple(-b[i][j] for i in range(kb))
        )
    combos = nullspace(constraints, ka + kb)
    vecs = []
    for c in combos:
        v = [ZERO] * ncols
        for i in range(ka):
            if c[i]:
                v = [x + c[i] * y for x, y in zip(v, a[i])]
        vecs.append(tuple(v))
    return rref(vecs)
