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

import numpy as np
import pytest

from schurample._errors import PreconditionError, SizeBudgetError
from schurample._scalar import QQ
from schurample._strata import (
    StratumLabel,
    audit_open_set_inequalities,
    check_star,
    classify_block,
    in_sigma,
    on_stratum,
    open_set_display,
    phi_eta_matrix,
    rank_formula,
    rank_oracle_grid,
    restriction_check,
    sample_frame,
    sample_sigma,
    sampler_parameter_count,
    sigma_dimension,
    stratum_labels,
)
from schurample._universal import FlagFrame, Instance, ParameterPoint, random_parameter_point


class TestStratumLabel:
    def test_properties(self):
        label = StratumLabel(3, (2, 0), (2,))
        assert label.I == (0, 2)
        assert label.k0 == 1
        assert label.k1 == 2
        assert label.chart == 1
        assert StratumLabel(3, ()).k1 == 3
        assert label.to_json() == {'I': [0, 2], 'Iprime': [2]}

    def test_validation(self):
        with pytest.raises(PreconditionError):
            StratumLabel(3, (4,))
        with pytest.raises(PreconditionError):
            StratumLabel(3, (0, 1, 2))
        with pytest.raises(PreconditionError):
            StratumLabel(3, (0,), (1,))

    def test_enumeration(self):
        assert len(stratum_labels(2)) == 4
        labels = stratum_labels(3, k=2)
        assert len(labels) == 27
        assert len(set(labels)) == 27
        assert all(label.k1 >= 2 for label in labels)
        assert labels[0] == StratumLabel(3, (), ())


class TestMembership:
    def test_on_stratum(self):
        assert on_stratum((0, 1, 2), (0,))
        assert not on_stratum((0, 1, 2), ())
        assert not on_stratum((0, 0, 2), (0,))

    def test_in_sigma(self):
        label = StratumLabel(2, (1,), (1,))
        assert in_sigma(FlagFrame(0, (1, 0, 2), [(0, 3)]), label)
        assert not in_sigma(FlagFrame(0, (1, 0, 2), [(3, 0)]), label)
        assert in_sigma(FlagFrame(0, (1, 0, 2), [(3, 0)]), StratumLabel(2, (1,), ()))
        assert not in_sigma(FlagFrame(0, (1, 1, 2), [(3, 0)]), StratumLabel(2, (1,), ()))

    @pytest.mark.parametrize('N,k', [(2, 1), (3, 1), (3, 2), (4, 2)])
    def test_samplers_land_in_sigma(self, N, k):
        inst = Instance(N, k, 1, 1)
        rng = np.random.default_rng(N * 10 + k)
        for label in stratum_labels(N, k):
            frame = sample_sigma(inst, label, rng, QQ, 20)
            assert frame.k == k
            assert in_sigma(frame, label)
            assert on_stratum(sample_frame(inst, label, rng, QQ, 20).x, label.I)

    def test_sample_sigma_preconditions(self):
        inst = Instance(3, 2, 1, 1)
        rng = np.random.default_rng(0)
        with pytest.raises(PreconditionError):
            sample_sigma(inst, StratumLabel(3, (0,)), rng)
        with pytest.raises(PreconditionError):
            sample_sigma(inst, StratumLabel(3, (0, 1), (0, 1)), rng)

    def test_sampler_dimension_count(self):
        for N in range(2, 6):
            for k in range(1, N):
                for label in stratum_labels(N, k):
                    assert sigma_dimension(N, k, label) == sampler_parameter_count(N, k, label)


class TestPhiEta:
    def test_rank_formula(self):
        assert rank_formula(1, 1, 1, 2) == 6
        assert rank_formula(1, 1, 2, 2) == 6 + 2
        assert rank_formula(2, 3, 3, 1) == 12
        with pytest.raises(PreconditionError):
            rank_formula(1, 0, 1, 1)
        with pytest.raises(PreconditionError):
            rank_formula(1, 2, 1, 1)

    def test_shape_and_generic_rank(self):
        inst = Instance(2, 1, 1, 1)
        frame = sample_sigma(inst, StratumLabel(2, (), ()), np.random.default_rng(1), QQ, 50)
        phi = phi_eta_matrix(inst, frame)
        assert phi.shape == (6, 9)
        assert phi.is_block_diagonal()
        assert phi.rank() == rank_formula(1, 2, 2, 1) == 6

    def test_budget(self):
        inst = Instance(2, 1, 1, 1)
        frame = FlagFrame(0, (1, 2, 3), [(1, 0)])
        with pytest.raises(SizeBudgetError):
            phi_eta_matrix(inst, frame, budget=10)

    def test_classify_block(self):
        generic = StratumLabel(3, (0,), ())
        assert classify_block((0, 1, 1, 0), generic, 1) == 2
        assert classify_block((1, 1, 0, 0), generic, 1) == 1
        assert classify_block((2, 0, 0, 0), generic, 1) == 0
        assert classify_block((1, 1, 0, 0), StratumLabel(3, (0,), (0,)), 1) == 0
        assert classify_block((1, 1, 0, 0), StratumLabel(3, (0,)), 1) == 1

    @pytest.mark.parametrize('N,k,delta,epsilon', [(2, 1, 2, 1), (3, 1, 2, 1), (3, 2, 1, 2)])
    def test_block_ranks_match_classification(self, N, k, delta, epsilon):
        inst = Instance(N, k, delta, epsilon)
        rng = np.random.default_rng(7)
        for label in stratum_labels(N, k):
            frame = sample_sigma(inst, label, rng, QQ, 50)
            phi = phi_eta_matrix(inst, frame)
            assert phi.is_block_diagonal()
            for J in phi.blocks:
                assert phi.block_rank(J) == classify_block(J, label, k)
            assert phi.rank() == rank_formula(k, label.k0, label.k1, delta)
            assert restriction_check(phi, label, k, delta).surjective

    def test_rank_oracle_grid(self):
        cells = rank_oracle_grid(Instance(2, 1, 2, 1), frames=2, seed=0)
        assert sorted((c.label.k0, c.label.k1) for c in cells) == [(1, 1), (1, 2), (2, 2)]
        assert all(cell.passed for cell in cells)
        assert cells[0].to_json()['passed'] is True


class TestStar:
    def test_zero_point_fails(self):
        inst = Instance(2, 1, 1, 1)
        report = check_star(inst, ParameterPoint.zeros(inst), StratumLabel(2, ()), samples=3, seed=0)
        assert not report.passed
        assert report.full_rank == 0
        assert len(report.counterexamples) == 3
        assert report.to_json()['field'] == 'Q'

    def test_generic_point_passes(self):
        inst = Instance(3, 1, 2, 1)
        a = random_parameter_point(inst, np.random.default_rng(0), QQ, 100)
        for label in stratum_labels(3):
            report = check_star(inst, a, label, samples=3, seed=1)
            assert report.passed
            assert report.full_rank == 3

    def test_deterministic(self):
        inst = Instance(2, 1, 1, 1)
        a = ParameterPoint.zeros(inst)
        one = check_star(inst, a, StratumLabel(2, (0,)), samples=2, seed=5)
        two = check_star(inst, a, StratumLabel(2, (0,)), samples=2, seed=5)
        assert one.counterexamples == two.counterexamples

    def test_dimension_mismatch(self):
        inst = Instance(2, 1, 1, 1)
        with pytest.raises(PreconditionError):
            check_star(inst, ParameterPoint.zeros(inst), StratumLabel(3, ()), samples=1)


class TestOpenSetAudit:
    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_inequalities_hold(self, k):
        audit = audit_open_set_inequalities(k, k + 1, 12, 12)
        assert audit.passed
        assert not audit.report_only
        assert audit.checked == 78

    def test_report_only_below_range(self):
        audit = audit_open_set_inequalities(2, 1, 3, 3)
        assert audit.report_only

    def test_display_example(self):
        assert open_set_display(1, 2, 1, 1) == -1
