"""Exact linear algebra over :class:`~extkoszul.field.Field`.

Vectors are sparse ``{column: value}`` dicts or dense sequences.  Prime
fields run on int64 numpy arrays; the rationals use ``Fraction`` rows.
"""
from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .field import Field

Vector = Union[Mapping[int, object], Sequence]

# keeps every intermediate product below 2**63
_NUMPY_PRIME_LIMIT = 3_000_000_000


def _dense(rows: Sequence[Vector], ncols: int, field: Field) -> List[List]:
    out = []
    zero = field.coerce(0)
    for r in rows:
        if isinstance(r, Mapping):
            row = [zero] * ncols
            for c, v in r.items():
                row[c] = field.coerce(v)
        else:
            if len(r) != ncols:
                raise ValueError(f"row of length {len(r)} in a {ncols}-column matrix")
            row = [field.coerce(v) for v in r]
        out.append(row)
    return out


def _use_numpy(field: Field) -> bool:
    return 0 < field.characteristic < _NUMPY_PRIME_LIMIT


def _to_array(rows: Sequence[Vector], ncols: int, p: int) -> np.ndarray:
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        if isinstance(r, Mapping):
            for c, v in r.items():
                a[i, c] = int(v) % p
        else:
            a[i, :] = np.asarray([int(v) % p for v in r], dtype=np.int64)
    return a


def _rref_numpy(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = a.copy()
    m, n = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            a[idx] = (a[idx] - np.outer(col[idx], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_lists(rows: List[List], field: Field) -> Tuple[List[List], List[int]]:
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    red = field.reduce
    n = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == len(rows):
            break
        i = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = field.inv(rows[r][c])
        pr = [red(x * inv) for x in rows[r]]
        rows[r] = pr
        nzcols = [j for j, x in enumerate(pr) if x]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                row = rows[k]
                for j in nzcols:
                    row[j] = red(row[j] - f * pr[j])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(rows: Sequence[Vector], ncols: int, field: Field) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    if _use_numpy(field):
        a, piv = _rref_numpy(_to_array(rows, ncols, field.characteristic), field.characteristic)
        return [list(map(int, r)) for r in a], piv
    return _rref_lists(_dense(rows, ncols, field), field)


def rank(rows: Sequence[Vector], ncols: int, field: Field) -> int:
    if not rows or not ncols:
        return 0
    if _use_numpy(field):
        return len(_rref_numpy(_to_array(rows, ncols, field.characteristic), field.characteristic)[1])
    return len(_rref_lists(_dense(rows, ncols, field), field)[1])


def _transpose_rows(rows: Sequence[Vector], ncols: int) -> List[Dict[int, object]]:
    cols: List[Dict[int, object]] = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        it = r.items() if isinstance(r, Mapping) else enumerate(r)
        for c, v in it:
            if v:
                cols[c][i] = v
    return cols


def independent_rows(rows: Sequence[Vector], ncols: int, field: Field) -> List[int]:
    """Indices of the rows kept when scanning in order and dropping dependent ones."""
    if not rows:
        return []
    t = _transpose_rows(rows, ncols)
    return rref(t, len(rows), field)[1]


def left_kernel(rows: Sequence[Vector], ncols: int, field: Field) -> List[Dict[int, object]]:
    """Basis of ``{x : sum_i x[i] * rows[i] = 0}`` as sparse vectors."""
    m = len(rows)
    if m == 0:
        return []
    if ncols == 0:
        return [{i: field.coerce(1)} for i in range(m)]
    t = _transpose_rows(rows, ncols)
    red_rows, piv = rref(t, m, field)
    pivset = set(piv)
    basis = []
    for f in range(m):
        if f in pivset:
            continue
        vec = {f: field.coerce(1)}
        for k, pc in enumerate(piv):
            v = red_rows[k][f]
            if v:
                vec[pc] = field.neg(v)
        basis.append(vec)
    return basis


def nullspace(matrix: Sequence[Sequence], field: Field) -> List[List]:
    """Right kernel ``{x : matrix @ x = 0}`` as dense vectors."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    cols = [[matrix[i][j] for i in range(len(matrix))] for j in range(ncols)]
    out = []
    for vec in left_kernel(cols, len(matrix), field):
        dense = [field.coerce(0)] * ncols
        for c, v in vec.items():
            dense[c] = v
        out.append(dense)
    return out


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field) -> List[List]:
    red = field.reduce
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[red(sum(a[i][t] * b[t][j] for t in range(k))) for j in range(m)] for i in range(n)]


def inverse(matrix: Sequence[Sequence], field: Field) -> Optional[List[List]]:
    """Inverse matrix, or ``None`` when singular."""
    n = len(matrix)
    one, zero = field.coerce(1), field.coerce(0)
    aug = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError("inverse needs a square matrix")
        aug.append([field.coerce(x) for x in row] + [one if j == i else zero for j in range(n)])
    if n == 0:
        return []
    red_rows, piv = _rref_lists(aug, field) if not _use_numpy(field) else rref(aug, 2 * n, field)
    if piv[:n] != list(range(n)):
        return None
    return [list(r[n:]) for r in red_rows[:n]]


def det(matrix: Sequence[Sequence], field: Field):
    """Determinant by Gaussian elimination over the field."""
    n = len(matrix)
    a = _dense(matrix, n, field) if n else []
    red = field.reduce
    result = field.coerce(1)
    for c in range(n):
        i = next((k for k in range(c, n) if a[k][c]), None)
        if i is None:
            return field.coerce(0)
        if i != c:
            a[c], a[i] = a[i], a[c]
            result = field.neg(result)
        piv = a[c][c]
        result = red(result * piv)
        inv = field.inv(piv)
        for k in range(c + 1, n):
            if a[k][c]:
                f = red(a[k][c] * inv)
                for j in range(c, n):
                    a[k][j] = red(a[k][j] - f * a[c][j])
    return result
