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

from schurample._errors import (
    ChartDegeneracyError,
    FrameNotTangentError,
    PreconditionError,
    RankDeficiencyError,
)
from schurample._linalg import as_matrix
from schurample._partition import Partition, jump_sequence
from schurample._plucker import (
    DeltaCoordinates,
    PluckerSelector,
    TransitionVerdict,
    cocycle_check,
    delta_coords,
    delta_transition_check,
    forgetful_check,
    maximal_minors,
    minor_transition_check,
    minor_twist_degree,
    plucker_minor,
    psi,
    pullback_degree,
    tangent_frame,
    transport_frame,
    verify_psi_in_Y,
)
from schurample._poly import HomogPoly, enumerate_multi_indices
from schurample._scalar import QQ
from schurample._universal import FlagFrame, Instance, ParameterPoint, RankMatrix, random_parameter_point


def _small_matrix():
    return RankMatrix(as_matrix([[1, 2, 3], [4, 5, 6]]), enumerate_multi_indices(2, 1))


def _random_frame(instance, rng, chart=0, height=20):
    x = [QQ.random_nonzero(rng, height) for _ in range(instance.n_vars)]
    x[chart] = 1
    vectors = [[QQ.random_element(rng, height) for _ in range(instance.N)] for _ in range(instance.k)]
    return FlagFrame(chart, x, vectors)


class TestSelector:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            PluckerSelector([])
        with pytest.raises(PreconditionError):
            PluckerSelector([(1, 0), (1, 0)])

    def test_identity(self):
        sel = PluckerSelector([[1, 0], (0, 1)])
        assert sel.l == 2
        assert sel == PluckerSelector([(1, 0), (0, 1)])
        assert sel != PluckerSelector([(0, 1), (1, 0)])
        assert len({sel, PluckerSelector([(1, 0), (0, 1)])}) == 1
        assert sel.to_json() == [[1, 0], [0, 1]]


class TestMinors:
    def test_plucker_minor(self):
        A = _small_matrix()
        assert plucker_minor(A, PluckerSelector([(1, 0, 0), (0, 1, 0)])) == -3
        assert plucker_minor(A, PluckerSelector([(0, 1, 0), (1, 0, 0)])) == 3
        assert plucker_minor(A, PluckerSelector([(0, 0, 1)])) == 3
        with pytest.raises(PreconditionError):
            plucker_minor(A, PluckerSelector(A.columns))

    def test_maximal_minors(self):
        minors = list(maximal_minors(_small_matrix()))
        assert [v for _, v in minors] == [-3, -6, -3]
        assert minors[1][0] == PluckerSelector([(1, 0, 0), (0, 0, 1)])

    def test_delta_stream(self):
        s = jump_sequence(Partition((2,)))
        delta = DeltaCoordinates(_small_matrix(), s, budget=100)
        assert delta.sizes == (2,)
        assert delta.factor_count == 2
        assert delta.total_count() == 6
        coords = list(delta)
        assert [c.value for c in coords] == [9, 18, 9, 36, 18, 9]
        assert len({c.selectors for c in coords}) == 6
        assert delta.witness().value == 9
        assert len(DeltaCoordinates(_small_matrix(), s, budget=2).dump()) == 2

    def test_two_levels(self):
        A = RankMatrix(as_matrix([[1, 0, 0, 2], [0, 1, 0, 3], [0, 0, 1, 4]]), enumerate_multi_indices(3, 1))
        delta = DeltaCoordinates(A, jump_sequence((2, 1)), budget=100)
        assert delta.sizes == (3, 2)
        coords = list(delta)
        assert delta.total_count() == len(coords) == 4 * 6
        assert all(len(c.selectors) == 2 for c in coords)
        assert [s.l for s in coords[0].selectors] == [3, 2]


class TestDeltaCoords:
    def test_preconditions(self):
        inst = Instance(2, 1, 1, 1)
        frame = FlagFrame(0, (1, 2, 3), [(1, 0)])
        with pytest.raises(PreconditionError):
            delta_coords(inst, ParameterPoint.zeros(inst), frame, (1, 1))
        with pytest.raises(RankDeficiencyError):
            delta_coords(inst, ParameterPoint.zeros(inst), frame, (2,))

    def test_witness_is_nonzero(self):
        inst = Instance(3, 2, 2, 1)
        rng = np.random.default_rng(0)
        a = random_parameter_point(inst, rng, QQ, 20)
        delta = delta_coords(inst, a, _random_frame(inst, rng), Partition((2, 1)), budget=5)
        assert delta.sizes == (3, 2)
        assert len(list(delta)) == 5
        assert delta.witness().value != 0
        assert len(delta.witness().selectors) == 2

    def test_degrees(self):
        assert pullback_degree((2, 1), 1, 2) == 15
        assert minor_twist_degree(2, 1, 2) == 6


class TestCocycle:
    def test_random_sections(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            N = int(rng.integers(1, 4))
            l = int(rng.integers(1, 5))
            d = int(rng.integers(1, 4))
            sections = [HomogPoly.random(N + 1, d, rng, QQ, 10) for _ in range(l)]
            i, j = (int(c) for c in rng.choice(N + 1, size=2, replace=False))
            x = [QQ.random_nonzero(rng, 10) for _ in range(N + 1)]
            vectors = [[QQ.random_element(rng, 10) for _ in range(N)] for _ in range(l - 1)]
            verdict = cocycle_check(sections, i, j, x, vectors)
            assert verdict.passed, verdict.to_json()

    def test_preconditions(self):
        x0, x1 = HomogPoly.coordinate(2, 0), HomogPoly.coordinate(2, 1)
        with pytest.raises(PreconditionError):
            cocycle_check([], 0, 1, (1, 1), [])
        with pytest.raises(PreconditionError):
            cocycle_check([x0, x1 * x1], 0, 1, (1, 1), [(1,)])
        with pytest.raises(PreconditionError):
            cocycle_check([x0, x1], 0, 1, (1, 1), [])
        with pytest.raises(ChartDegeneracyError):
            cocycle_check([x0, x1], 0, 1, (1, 0), [(1,)])

    def test_single_section(self):
        # l = 1: B is the value of the section, g = (x_1/x_0)^d
        verdict = cocycle_check([HomogPoly.monomial((1, 1))], 0, 1, (1, 2), [])
        assert verdict.det_from == 2
        assert verdict.det_to == Fraction(1, 2)
        assert verdict.factor == 4
        assert verdict.passed


class TestTransitionLaws:
    @pytest.mark.parametrize('N,k,delta,epsilon,r', [(2, 1, 2, 1, 1), (3, 2, 1, 1, 1), (3, 1, 2, 2, 2)])
    def test_minor_transition(self, N, k, delta, epsilon, r):
        inst = Instance(N, k, delta, epsilon, r)
        rng = np.random.default_rng(N + k + delta)
        for _ in range(5):
            a = random_parameter_point(inst, rng, QQ, 20)
            frame = _random_frame(inst, rng)
            for l in range(1, k + 2):
                picks = sorted(int(p) for p in rng.choice(inst.n_columns, size=l, replace=False))
                sel = PluckerSelector([inst.multi_indices[p] for p in picks])
                chart_to = int(rng.integers(1, N + 1))
                verdict = minor_transition_check(inst, a, sel, 0, chart_to, frame.x, frame.vectors)
                assert verdict.passed, verdict.to_json()

    @pytest.mark.parametrize('lam', [(1,), (2,), (2, 1), (1, 1)])
    def test_product_law(self, lam):
        inst = Instance(3, len(lam), 2, 1)
        rng = np.random.default_rng(17)
        a = random_parameter_point(inst, rng, QQ, 20)
        frame = _random_frame(inst, rng)
        verdicts = delta_transition_check(inst, a, frame, lam, chart_to=2, count=4)
        assert len(verdicts) == 5
        assert all(v.passed for v in verdicts)
        assert verdicts[-1].value_to != 0

    def test_ratio(self):
        assert TransitionVerdict(0, 0, 1, QQ).ratio is None
        assert TransitionVerdict(6, 3, 2, QQ).ratio == 2
        assert TransitionVerdict(6, 3, 2, QQ).to_json()['passed'] is True


class TestPsi:
    @pytest.mark.parametrize('N,k,delta,epsilon,r,chart', [
        (2, 1, 2, 1, 1, 0),
        (3, 1, 2, 1, 2, 1),
        (3, 2, 3, 1, 1, 2),
        (4, 2, 3, 2, 1, 0),
    ])
    def test_tangent_frames_map_into_Y(self, N, k, delta, epsilon, r, chart):
        inst = Instance(N, k, delta, epsilon, r)
        rng = np.random.default_rng(N * 7 + chart)
        for _ in range(3):
            a, frame = tangent_frame(inst, rng, QQ, 20, chart=chart)
            assert frame.chart == chart and frame.k == k
            verdict = verify_psi_in_Y(inst, a, frame)
            assert verdict.passed
            assert len(verdict.contractions) == k + 1

    def test_not_tangent(self):
        inst = Instance(2, 1, 1, 1)
        a = ParameterPoint(inst, {(1, 0, 0): HomogPoly.coordinate(3, 0)})
        with pytest.raises(FrameNotTangentError) as info:
            verify_psi_in_Y(inst, a, FlagFrame(0, (1, 1, 1), [(0, 1)]))
        assert 'E(a,x)=0' in info.value.failed

    def test_psi_value(self):
        inst = Instance(2, 1, 2, 1, r=2)
        rng = np.random.default_rng(3)
        a = random_parameter_point(inst, rng, QQ, 20)
        frame = _random_frame(inst, rng)
        value = psi(inst, a, frame, (1,), budget=3)
        assert value.z == tuple(c ** 2 for c in frame.x)
        data = value.to_json()
        assert data['delta']['count'] == value.delta.total_count()
        assert len(data['z']) == 3


class TestForgetful:
    def test_basis_and_chart_changes(self):
        inst = Instance(3, 2, 2, 1)
        rng = np.random.default_rng(23)
        a = random_parameter_point(inst, rng, QQ, 20)
        frame = _random_frame(inst, rng)
        v1, v2 = frame.vectors
        mixed = FlagFrame(0, frame.x, [[p + q for p, q in zip(v1, v2)], [3 * q for q in v2]])
        assert forgetful_check(inst, a, frame, mixed).passed
        assert forgetful_check(inst, a, frame, transport_frame(frame, 2)).passed

    def test_requires_same_flag(self):
        inst = Instance(3, 2, 2, 1)
        rng = np.random.default_rng(29)
        a = random_parameter_point(inst, rng, QQ, 20)
        frame = FlagFrame(0, (1, 2, 3, 4), [(1, 0, 0), (0, 1, 0)])
        with pytest.raises(PreconditionError):
            forgetful_check(inst, a, frame, FlagFrame(0, (1, 2, 3, 4), [(1, 0, 0), (0, 0, 1)]))
        with pytest.raises(PreconditionError):
            forgetful_check(inst, a, frame, FlagFrame(0, (1, 2, 3, 5), [(1, 0, 0), (0, 1, 0)]))
