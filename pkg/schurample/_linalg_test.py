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

from fractions import Fraction

import numpy as np
import pytest

from schurample._errors import PreconditionError
from schurample._linalg import as_matrix, det, is_independent, nullspace, rank
from schurample._scalar import PrimeField, QQ

F = PrimeField(2_147_483_647)


def _random_matrix(rng, n_rows, n_cols):
    return [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(n_cols)]
            for _ in range(n_rows)]


class TestRank:
    def test_examples(self):
        assert rank([[1, 2], [2, 4]]) == 1
        assert rank([[1, 0, 0], [0, 1, 0]]) == 2
        assert rank([[0, 0], [0, 0]]) == 0
        assert rank(as_matrix([])) == 0

    def test_column_skipping(self):
        assert rank([[0, 1, 2], [0, 2, 4], [0, 0, 1]]) == 2

    def test_fractions(self):
        assert rank([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]) == 1

    def test_agrees_with_prime_field(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            m = _random_matrix(rng, 3, 5)
            m.append([a + b for a, b in zip(m[0], m[1])])
            assert rank(m) == 3
            assert rank(m, F) == 3


class TestDet:
    def test_examples(self):
        assert det([[2, 1], [1, 1]]) == 1
        assert det([[0, 1], [1, 0]]) == -1
        assert det([[1, 2], [2, 4]]) == 0
        assert det(as_matrix([], 0)) == 1

    def test_fractions(self):
        assert det([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)

    def test_multiplicative(self):
        rng = np.random.default_rng(2)
        a = np.array(_random_matrix(rng, 3, 3), dtype=object)
        b = np.array(_random_matrix(rng, 3, 3), dtype=object)
        assert det(a.dot(b)) == det(a) * det(b)

    def test_prime_field(self):
        assert det([[2, 1], [1, 1]], F) == F.one

    def test_not_square(self):
        with pytest.raises(PreconditionError):
            det([[1, 2, 3], [4, 5, 6]])


class TestNullspace:
    def test_kernel_vectors(self):
        m = [[1, 2, 3], [2, 4, 6]]
        basis = nullspace(m)
        assert len(basis) == 2
        for v in basis:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)

    def test_full_rank(self):
        assert nullspace([[1, 0], [0, 1]]) == []

    def test_prime_field(self):
        basis = nullspace([[1, 1, 1]], F)
        assert len(basis) == 2
        assert all(sum(v, F.zero) == 0 for v in basis)


def test_is_independent():
    assert is_independent([[1, 0], [0, 1]])
    assert not is_independent([[1, 2], [2, 4]])
    assert is_independent([])


def test_ragged_rows():
    with pytest.raises(PreconditionError):
        as_matrix([[1, 2], [3]])
