# Copyright 2024 BDP Ecosystem Limited. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

"""
Exact linear algebra on dense object arrays.

Over the rationals every row is scaled to integers and reduced with
fraction-free (Bareiss) elimination, so intermediate entries stay integral
minors of the input. Over a prime field the computation is delegated to
:class:`sympy.polys.matrices.DomainMatrix`.
"""

import math
from fractions import Fraction
from typing import List, Sequence

import numpy as np
from sympy.polys.matrices import DomainMatrix

from ._errors import PreconditionError
from ._scalar import Field, PrimeField, QQ

__all__ = [
    'as_matrix',
    'rank',
    'det',
    'nullspace',
    'is_independent',
]


def as_matrix(rows, n_cols: int = None) -> np.ndarray:
    """Stack rows into a 2-d ``object`` array without converting the entries."""
    rows = [list(r) for r in rows]
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), n_cols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise PreconditionError(f'Ragged matrix: row {i} has {len(row)} entries, expected {n_cols}.')
        out[i, :] = row
    return out


def _integer_rows(matrix: np.ndarray):
    """Scale each row by the lcm of its denominators; returns the integer matrix and the scales."""
    out = np.empty(matrix.shape, dtype=object)
    scales = []
    for i in range(matrix.shape[0]):
        row = [Fraction(v) for v in matrix[i]]
        scale = math.lcm(*[v.denominator for v in row]) if row else 1
        out[i, :] = [int(v * scale) for v in row]
        scales.append(scale)
    return out, scales


def _bareiss_rank(m: np.ndarray) -> int:
    m = m.copy()
    n_rows, n_cols = m.shape
    row = 0
    previous = 1
    for col in range(n_cols):
        if row == n_rows:
            break
        nonzero = [i for i in range(row, n_rows) if m[i, col] != 0]
        if not nonzero:
            continue
        pivot_row = nonzero[0]
        if pivot_row != row:
            m[[row, pivot_row]] = m[[pivot_row, row]]
        pivot = m[row, col]
        if row + 1 < n_rows:
            lower = m[row + 1:, col + 1:] * pivot - np.outer(m[row + 1:, col], m[row, col + 1:])
            # exact: every entry is a minor of the input
            m[row + 1:, col + 1:] = lower // previous
            m[row + 1:, col] = 0
        previous = pivot
        row += 1
    return row


def _bareiss_det(m: np.ndarray) -> int:
    m = m.copy()
    n = m.shape[0]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i, k] != 0), None)
            if swap is None:
                return 0
            m[[k, swap]] = m[[swap, k]]
            sign = -sign
        lower = m[k + 1:, k + 1:] * m[k, k] - np.outer(m[k + 1:, k], m[k, k + 1:])
        m[k + 1:, k + 1:] = lower // previous
        previous = m[k, k]
    return sign * m[n - 1, n - 1]


def _domain_matrix(matrix: np.ndarray, field: PrimeField) -> DomainMatrix:
    rows = [[field(v) for v in row] for row in matrix]
    return DomainMatrix(rows, matrix.shape, field.domain)


def rank(matrix, field: Field = QQ) -> int:
    """
    Exact rank of a matrix with entries in ``field``.

    Parameters
    ----------
    matrix : array-like
        Rows of field elements (``Fraction``/``int`` over ``Q``).
    field : Field
        The scalar field; ``QQ`` by default.
    """
    matrix = matrix if isinstance(matrix, np.ndarray) else as_matrix(matrix)
    if matrix.size == 0:
        return 0
    if isinstance(field, PrimeField):
        return int(_domain_matrix(matrix, field).rank())
    ints, _ = _integer_rows(matrix)
    return _bareiss_rank(ints)


def det(matrix, field: Field = QQ):
    """Exact determinant of a square matrix; the empty matrix has determinant 1."""
    matrix = matrix if isinstance(matrix, np.ndarray) else as_matrix(matrix)
    n_rows, n_cols = matrix.shape
    if n_rows != n_cols:
        raise PreconditionError(f'Determinant of a non-square {n_rows}x{n_cols} matrix.')
    if n_rows == 0:
        return field.one
    if isinstance(field, PrimeField):
        return _domain_matrix(matrix, field).det()
    ints, scales = _integer_rows(matrix)
    return Fraction(_bareiss_det(ints), math.prod(scales))


def nullspace(matrix, field: Field = QQ) -> List[tuple]:
    """
    Basis of the right kernel ``{v : M v = 0}``, read off the reduced row echelon form.

    Returns one tuple per free column, with a 1 in that column.
    """
    matrix = matrix if isinstance(matrix, np.ndarray) else as_matrix(matrix)
    n_rows, n_cols = matrix.shape
    m = np.empty(matrix.shape, dtype=object)
    for i in range(n_rows):
        m[i, :] = [field(v) for v in matrix[i]]
    pivots = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        pivot_row = next((i for i in range(row, n_rows) if m[i, col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != row:
            m[[row, pivot_row]] = m[[pivot_row, row]]
        m[row, :] = [field.div(v, m[row, col]) for v in m[row, :]]
        for i in range(n_rows):
            if i != row and m[i, col] != 0:
                m[i, :] = m[i, :] - m[row, :] * m[i, col]
        pivots.append(col)
        row += 1
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        v = [field.zero] * n_cols
        v[free] = field.one
        for r, p in enumerate(pivots):
            v[p] = -m[r, free]
        basis.append(tuple(v))
    return basis


def is_independent(vectors: Sequence[Sequence], field: Field = QQ) -> bool:
    """Whether the given vectors are linearly independent."""
    vectors = list(vectors)
    if not vectors:
        return True
    return rank(vectors, field) == len(vectors)
