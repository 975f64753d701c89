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

import math

import pytest
from hypothesis import given, settings, strategies as st

from schurample._errors import PreconditionError
from schurample._partition import (
    Partition,
    JumpSequence,
    ample_regime,
    ampleness_weight,
    br_vanishes,
    conjugate,
    flag_dim,
    grassmannian_total_dim,
    jump_sequence,
    normalized_ampleness_weight,
    optimality_audit,
    partitions_of,
    partitions_up_to,
    quotient_upper_bound,
    schur_dim,
    ssyt_count,
)

partitions = st.lists(st.integers(1, 8), min_size=1, max_size=6).map(
    lambda parts: Partition(sorted(parts, reverse=True))
)


class TestPartition:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            Partition([])
        with pytest.raises(PreconditionError):
            Partition([1, 2])
        with pytest.raises(PreconditionError):
            Partition([2, 0])
        with pytest.raises(TypeError):
            Partition([1.5])

    def test_parse_and_str(self):
        lam = Partition.parse('3, 1,1')
        assert lam == Partition([3, 1, 1])
        assert str(lam) == '3,1,1'
        assert repr(lam) == 'Partition(3, 1, 1)'
        with pytest.raises(PreconditionError):
            Partition.parse('a,b')

    def test_multiplicities(self):
        lam = Partition.from_multiplicities({1: 2, 3: 1})
        assert lam.parts == (3, 1, 1)
        assert lam.to_multiplicities() == {3: 1, 1: 2}

    def test_scale_and_primitive(self):
        lam = Partition([4, 2, 2])
        assert lam.gcd() == 2
        assert lam.primitive() == Partition([2, 1, 1])
        assert Partition([2, 1]).scale(3) == Partition([6, 3])
        with pytest.raises(PreconditionError):
            lam.scale(0)

    def test_hashable(self):
        assert len({Partition([2, 1]), Partition((2, 1)), Partition([3])}) == 2


class TestConjugate:
    def test_examples(self):
        assert conjugate([5, 3, 3, 1]) == Partition([4, 3, 3, 1, 1])
        assert conjugate([1]) == Partition([1])
        assert conjugate([3]) == Partition([1, 1, 1])

    @given(partitions)
    def test_involution(self, lam):
        assert conjugate(conjugate(lam)) == lam

    def test_involution_exhaustive(self):
        for lam in partitions_up_to(12):
            assert lam.conjugate().conjugate() == lam


class TestJumpSequence:
    def test_example(self):
        s = jump_sequence([5, 3, 3, 1])
        assert s == JumpSequence((4, 3, 1), (1, 2, 2))
        assert s.k == 4
        assert s.t == 3
        assert s.plus == (5, 4, 2)

    def test_grassmannian_case(self):
        assert jump_sequence([1, 1]) == JumpSequence((2,), (1,))

    @given(partitions)
    def test_values_are_distinct_conjugate_parts(self, lam):
        s = jump_sequence(lam)
        star = conjugate(lam).parts
        assert s.values == tuple(sorted(set(star), reverse=True))
        assert s.multiplicities == tuple(star.count(v) for v in s.values)


class TestWeights:
    def test_ampleness_weight(self):
        assert ampleness_weight([5, 3, 3, 1]) == 17
        assert ampleness_weight([1]) == 2
        assert ampleness_weight([1, 1]) == 3

    @given(partitions)
    def test_weight_from_conjugate(self, lam):
        assert ampleness_weight(lam) == sum(p + 1 for p in conjugate(lam))

    def test_normalized(self):
        assert normalized_ampleness_weight([2, 2]) == 3
        assert normalized_ampleness_weight([6, 3]) == ampleness_weight([2, 1])


class TestVanishing:
    def test_examples(self):
        assert br_vanishes(5, 2, [1])
        assert br_vanishes(5, 2, [1, 1])
        assert not br_vanishes(3, 3, [1])

    def test_codimension_range(self):
        with pytest.raises(PreconditionError):
            br_vanishes(3, 4, [1])
        with pytest.raises(PreconditionError):
            br_vanishes(3, 0, [1])

    def test_missing_conjugate_parts_are_zero(self):
        # λ* = (1, 1, 1) is padded with a zero: 3 < 10 - 4
        assert br_vanishes(10, 4, [3])
        # λ* = (1, 1): 2 < 7 - 4
        assert br_vanishes(7, 4, [2])
        assert not br_vanishes(6, 4, [2])

    @pytest.mark.parametrize('N', range(3, 9))
    def test_multiples_agree_from_c_on(self, N):
        for lam in partitions_up_to(4):
            for c in range(1, N):
                values = {br_vanishes(N, c, lam.scale(m)) for m in range(c, c + 10)}
                assert len(values) == 1

    def test_optimality_audit(self):
        report = optimality_audit(8, 1, [1, 1], 6)
        assert report.passed
        assert report.multiples == (1, 2, 3, 4, 5, 6)
        assert report.to_json()['passed'] is True

    def test_optimality_requires_subcritical_regime(self):
        with pytest.raises(PreconditionError):
            optimality_audit(5, 2, [1, 1], 4)

    def test_optimality_grid(self):
        for lam in partitions_up_to(6):
            for N in range(2, 9):
                c = 1
                while c * (lam.length + 1) < N:
                    assert optimality_audit(N, c, lam, c + 3).passed
                    c += 1

    def test_regime(self):
        assert ample_regime(5, 2, [1, 1]) == 'ample-possible'
        assert ample_regime(5, 1, [1, 1]) == 'vanishing'


class TestSchurDim:
    def test_examples(self):
        assert schur_dim([2, 1], 2) == 2
        assert schur_dim([2, 1], 3) == 8
        assert schur_dim([1, 1, 1], 2) == 0

    @pytest.mark.parametrize('n', range(1, 9))
    def test_symmetric_and_exterior_powers(self, n):
        for m in range(1, 9):
            assert schur_dim([m], n) == math.comb(n + m - 1, m)
            assert schur_dim([1] * m, n) == math.comb(n, m)

    def test_against_tableaux(self):
        for lam in partitions_up_to(5):
            for n in range(1, 5):
                assert schur_dim(lam, n) == ssyt_count(lam, n)

    def test_quotient_bound(self):
        assert quotient_upper_bound([2, 1], 3) == (8, 9, True)
        for lam in partitions_up_to(8):
            for n in range(lam.length, 7):
                assert quotient_upper_bound(lam, n)[2]

    def test_quotient_bound_needs_room(self):
        with pytest.raises(PreconditionError):
            quotient_upper_bound([1, 1, 1], 2)


class TestDimensions:
    def test_flag_dim(self):
        assert flag_dim((2,), 4) == 4
        assert flag_dim((2, 1), 3) == 3
        assert flag_dim(jump_sequence([1, 1]), 5) == 6

    def test_flag_dim_validation(self):
        with pytest.raises(PreconditionError):
            flag_dim((3,), 3)
        with pytest.raises(PreconditionError):
            flag_dim((1, 2), 4)
        with pytest.raises(PreconditionError):
            flag_dim((), 4)

    def test_grassmannian_total_dim(self):
        assert grassmannian_total_dim(5, 2) == 11
        for N in range(2, 8):
            for k in range(1, N):
                assert N + flag_dim((k,), N) == grassmannian_total_dim(N, k)


class TestEnumeration:
    def test_partitions_of_four(self):
        assert [lam.parts for lam in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    @settings(max_examples=20)
    @given(st.integers(1, 12))
    def test_counts(self, n):
        parts = list(partitions_of(n))
        assert len(parts) == len(set(parts))
        assert all(lam.size == n for lam in parts)

    def test_known_counts(self):
        assert [len(list(partitions_of(n))) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
        assert list(partitions_of(0)) == []
