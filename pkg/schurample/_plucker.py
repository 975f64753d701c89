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

import itertools
import logging
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from . import _environ as environ
from ._errors import (
    ChartDegeneracyError,
    FrameNotTangentError,
    PreconditionError,
    RankDeficiencyError,
    SamplingError,
)
from ._linalg import det as exact_det, is_independent, nullspace, rank as exact_rank
from ._misc import binomial, set_module_as
from ._partition import JumpSequence, Partition, ampleness_weight, jump_sequence
from ._poly import (
    HomogPoly,
    MultiIndex,
    chart_point,
    dir_derivative,
    monomial_value,
    transition_factor,
    transport_tangent,
)
from ._scalar import Field, QQ
from ._universal import (
    FlagFrame,
    Instance,
    ParameterPoint,
    RankMatrix,
    build_A,
    build_E,
    random_parameter_point,
)

__all__ = [
    'PluckerSelector',
    'plucker_minor',
    'maximal_minors',
    'DeltaCoordinate',
    'DeltaCoordinates',
    'delta_coords',
    'CocycleVerdict',
    'cocycle_check',
    'pullback_degree',
    'minor_twist_degree',
    'TransitionVerdict',
    'minor_transition_check',
    'delta_transition_check',
    'PsiValue',
    'psi',
    'PsiVerdict',
    'verify_psi_in_Y',
    'tangent_frame',
    'transport_frame',
    'ForgetfulVerdict',
    'forgetful_check',
]

logger = logging.getLogger(__name__)


class PluckerSelector:
    """
    A Plücker coordinate of size ``l``: the first ``l`` rows of ``A`` and ``l``
    distinct columns ``J₁, ..., J_l``, kept in the given order.
    """
    __module__ = 'schurample'
    __slots__ = ('columns',)

    def __init__(self, columns: Sequence[MultiIndex]):
        columns = tuple(tuple(J) for J in columns)
        if len(columns) == 0:
            raise PreconditionError('A Plücker selector needs at least one column.')
        if len(set(columns)) != len(columns):
            raise PreconditionError(f'Plücker selector has repeated columns: {columns}.')
        self.columns = columns

    @property
    def l(self) -> int:
        return len(self.columns)

    def __eq__(self, other):
        return isinstance(other, PluckerSelector) and self.columns == other.columns

    def __hash__(self):
        return hash(self.columns)

    def __repr__(self):
        return f'PluckerSelector({list(self.columns)})'

    def to_json(self):
        return [list(J) for J in self.columns]


def _minor_at(A: RankMatrix, positions: Sequence[int]):
    l = len(positions)
    return exact_det(A.entries[:l, list(positions)], A.field)


@set_module_as('schurample')
def plucker_minor(A: RankMatrix, sel: PluckerSelector):
    """Determinant of the ``l × l`` submatrix on the first ``l`` rows and the selected columns."""
    if sel.l > A.shape[0]:
        raise PreconditionError(f'Selector of size {sel.l} does not fit a matrix with {A.shape[0]} rows.')
    return _minor_at(A, [A.column_of(J) for J in sel.columns])


@set_module_as('schurample')
def maximal_minors(A: RankMatrix) -> Iterator[Tuple[PluckerSelector, object]]:
    """All ``(k+1)``-minors of ``A``, columns in lexicographic order of their positions."""
    l = A.shape[0]
    for positions in itertools.combinations(range(A.shape[1]), l):
        sel = PluckerSelector([A.columns[p] for p in positions])
        yield sel, _minor_at(A, positions)


def _next_combination(c: Tuple[int, ...], n: int) -> Optional[Tuple[int, ...]]:
    l = len(c)
    for i in range(l - 1, -1, -1):
        if c[i] < n - l + i:
            head = c[:i] + (c[i] + 1,)
            return head + tuple(range(c[i] + 2, c[i] + 2 + l - i - 1))
    return None


def _multisets(n: int, l: int, b: int, start: Tuple[int, ...]):
    # weakly increasing b-tuples of l-subsets of range(n), lexicographic, from `start`
    if b == 0:
        yield ()
        return
    c = start
    while c is not None:
        for rest in _multisets(n, l, b - 1, c):
            yield (c,) + rest
        c = _next_combination(c, n)


def _levels(n: int, sizes: Sequence[int], mults: Sequence[int]):
    if not sizes:
        yield ()
        return
    l, b = sizes[0], mults[0]
    for first in _multisets(n, l, b, tuple(range(l))):
        for rest in _levels(n, sizes[1:], mults[1:]):
            yield (first,) + rest


class DeltaCoordinate(NamedTuple):
    """One coordinate of ``Δ(a, η)``: a product of minors and its value."""
    selectors: Tuple[PluckerSelector, ...]
    value: object

    def to_json(self, field: Field = QQ):
        out = {'selectors': [s.to_json() for s in self.selectors]}
        out.update(field.to_json(self.value))
        return out


class DeltaCoordinates:
    """
    Lazy, deterministically ordered coordinates of ``Δ(a, η)``.

    For the jump sequence ``s`` with multiplicities ``b``, a coordinate is a
    product of ``b₁ + ... + b_t`` minors of ``A``: ``b_i`` of them of size
    ``s_i + 1``. Level ``i`` runs over weakly increasing ``b_i``-tuples of
    column subsets (symmetric power), levels combine as a product.

    The total number of coordinates is astronomically large for realistic
    ``δ``, so iteration stops after ``budget`` coordinates.
    """
    __module__ = 'schurample'

    def __init__(self, A: RankMatrix, s: JumpSequence, budget: int):
        self.A = A
        self.s = s
        self.budget = budget
        self._cache = {}

    @property
    def sizes(self) -> Tuple[int, ...]:
        return self.s.plus

    @property
    def factor_count(self) -> int:
        return sum(self.s.multiplicities)

    def total_count(self) -> int:
        """Number of coordinates, ``∏_i C(C(N_δ, s_i+1) + b_i - 1, b_i)``."""
        n = self.A.shape[1]
        total = 1
        for l, b in zip(self.sizes, self.s.multiplicities):
            total *= binomial(binomial(n, l) + b - 1, b)
        return total

    def _minor(self, positions: Tuple[int, ...]):
        if positions not in self._cache:
            self._cache[positions] = _minor_at(self.A, positions)
        return self._cache[positions]

    def _coordinate(self, levels) -> DeltaCoordinate:
        selectors = []
        value = self.A.field.one
        for level in levels:
            for positions in level:
                selectors.append(PluckerSelector([self.A.columns[p] for p in positions]))
                value = value * self._minor(positions)
        return DeltaCoordinate(tuple(selectors), value)

    def __iter__(self) -> Iterator[DeltaCoordinate]:
        n = self.A.shape[1]
        stream = _levels(n, self.sizes, self.s.multiplicities)
        for levels in itertools.islice(stream, self.budget):
            yield self._coordinate(levels)

    def witness(self) -> DeltaCoordinate:
        """
        A nonzero coordinate, built from one nonzero minor per level.

        The first ``l`` rows of a rank ``k+1`` matrix have rank ``l``, so each
        size has a nonzero minor.
        """
        n = self.A.shape[1]
        levels = []
        for l, b in zip(self.sizes, self.s.multiplicities):
            positions = next(p for p in itertools.combinations(range(n), l) if self._minor(p) != 0)
            levels.append((positions,) * b)
        return self._coordinate(levels)

    def dump(self, limit: int = 10) -> List[dict]:
        return [c.to_json(self.A.field) for c in itertools.islice(iter(self), limit)]


def _as_jump_sequence(s: Union[JumpSequence, Partition, Sequence[int]]) -> JumpSequence:
    if isinstance(s, JumpSequence):
        return s
    return jump_sequence(s)


def _require_full_rank(A: RankMatrix, k: int):
    r = A.rank()
    if r != k + 1:
        raise RankDeficiencyError(f'A has rank {r} < {k + 1}: the frame lies outside the (*) locus.',
                                  rank=r, expected=k + 1)


@set_module_as('schurample')
def delta_coords(
    instance: Instance,
    a: ParameterPoint,
    frame: FlagFrame,
    s: Union[JumpSequence, Partition, Sequence[int]],
    budget: Optional[int] = None,
) -> DeltaCoordinates:
    """
    The coordinate stream of ``Δ(a, η)`` for flags of type ``s``.

    ``s`` is a jump sequence, or a partition whose jump sequence is taken.

    Raises
    ------
    RankDeficiencyError
        If ``A(a; η)`` does not have rank ``k+1``.
    """
    s = _as_jump_sequence(s)
    if s.k != instance.k:
        raise PreconditionError(f'Jump sequence {s.values} must start with k = {instance.k}.')
    budget = environ.get('delta_budget') if budget is None else budget
    A = build_A(instance, a, frame)
    _require_full_rank(A, instance.k)
    return DeltaCoordinates(A, s, budget)


class CocycleVerdict(NamedTuple):
    """``det B_V`` against ``g^l · det B_V'``."""
    det_from: object
    det_to: object
    factor: object
    field: Field

    @property
    def passed(self) -> bool:
        return self.det_from == self.factor * self.det_to

    def to_json(self):
        f = self.field
        return {
            'det_from': f.to_json(self.det_from),
            'det_to': f.to_json(self.det_to),
            'factor': f.to_json(self.factor),
            'passed': self.passed,
        }


def _section_matrix(sections, chart, x, vectors, field):
    rows = [[w(x) for w in sections]]
    for v in vectors:
        rows.append([dir_derivative(w, chart, x, v, field) for w in sections])
    return rows


@set_module_as('schurample')
def cocycle_check(
    sections: Sequence[HomogPoly],
    chart_from: int,
    chart_to: int,
    x: Sequence,
    vectors: Sequence[Sequence],
    field: Field = QQ,
) -> CocycleVerdict:
    """
    Gluing law of the ``l × l`` matrix ``B = (ω_j(x); dω_j(x, v_i))``.

    For sections ``ω₁, ..., ω_l`` of ``O(d)`` and ``l - 1`` tangent vectors
    given in chart ``V``, the matrices written in charts ``V`` and ``V'``
    satisfy ``det B_V = g^l det B_V'`` with ``g = (x_V' / x_V)^d``. The vectors
    are carried to ``V'`` by :func:`transport_tangent`.

    Raises
    ------
    ChartDegeneracyError
        If ``x`` lies outside one of the charts.
    """
    sections = list(sections)
    if not sections:
        raise PreconditionError('Need at least one section.')
    d = sections[0].degree
    if any(w.degree != d for w in sections):
        raise PreconditionError('All sections must have the same degree.')
    if len(vectors) != len(sections) - 1:
        raise PreconditionError(f'{len(sections)} sections need {len(sections) - 1} tangent vectors.')
    if x[chart_from] == 0 or x[chart_to] == 0:
        raise ChartDegeneracyError(f'Point {tuple(x)} is not in both charts {chart_from} and {chart_to}.')
    l = len(sections)
    x_from = chart_point(x, chart_from, field)
    x_to = chart_point(x, chart_to, field)
    moved = [transport_tangent(x, v, chart_from, chart_to, field) for v in vectors]
    det_from = exact_det(_section_matrix(sections, chart_from, x_from, vectors, field), field)
    det_to = exact_det(_section_matrix(sections, chart_to, x_to, moved, field), field)
    g = transition_factor(d, chart_from, chart_to, x, field)
    return CocycleVerdict(det_from, det_to, g ** l, field)


@set_module_as('schurample')
def pullback_degree(lam: Union[Partition, Sequence[int]], epsilon: int, delta: int) -> int:
    """``|λ*₊|(ε+δ)``, the ``O_M`` twist carried by ``Δ(a, .)^* O(1)``."""
    return ampleness_weight(lam) * (epsilon + delta)


@set_module_as('schurample')
def minor_twist_degree(l: int, epsilon: int, delta: int) -> int:
    """A size ``l`` minor of ``A`` is a section twisted by ``O(l(ε+δ))``."""
    return l * (epsilon + delta)


class TransitionVerdict(NamedTuple):
    """A quantity computed in two charts and the predicted transition factor."""
    value_from: object
    value_to: object
    factor: object
    field: Field

    @property
    def passed(self) -> bool:
        return self.value_from == self.factor * self.value_to

    @property
    def ratio(self):
        """``value_from / value_to``, or ``None`` when ``value_to = 0``."""
        if self.value_to == 0:
            return None
        return self.field.div(self.value_from, self.value_to)

    def to_json(self):
        f = self.field
        ratio = self.ratio
        return {
            'value_from': f.to_json(self.value_from),
            'value_to': f.to_json(self.value_to),
            'factor': f.to_json(self.factor),
            'ratio': None if ratio is None else f.to_json(ratio),
            'passed': self.passed,
        }


@set_module_as('schurample')
def minor_transition_check(
    instance: Instance,
    a: ParameterPoint,
    sel: PluckerSelector,
    chart_from: int,
    chart_to: int,
    x: Sequence,
    vectors: Sequence[Sequence],
    field: Field = QQ,
) -> TransitionVerdict:
    """
    Compare a size ``l`` minor of ``A`` computed in two charts.

    The rows of ``A`` change by a triangular matrix whose diagonal is
    ``g^{ε+δ}``, so the minor changes by ``g^{l(ε+δ)}`` with ``g = x_V' / x_V``.
    """
    if x[chart_from] == 0 or x[chart_to] == 0:
        raise ChartDegeneracyError(f'Point {tuple(x)} is not in both charts {chart_from} and {chart_to}.')
    frame = FlagFrame.from_point(chart_from, x, vectors, field)
    moved = frame.transport(chart_to)
    value_from = plucker_minor(build_A(instance, a, frame), sel)
    value_to = plucker_minor(build_A(instance, a, moved), sel)
    factor = transition_factor(minor_twist_degree(sel.l, instance.epsilon, instance.delta),
                               chart_from, chart_to, x, field)
    return TransitionVerdict(value_from, value_to, factor, field)


@set_module_as('schurample')
def delta_transition_check(
    instance: Instance,
    a: ParameterPoint,
    frame: FlagFrame,
    lam: Union[Partition, Sequence[int]],
    chart_to: int,
    count: int = 10,
) -> List[TransitionVerdict]:
    """
    Product law: every coordinate of ``Δ(a, η)`` changes by ``g^{|λ*₊|(ε+δ)}``.

    The first ``count`` streamed coordinates and the nonzero witness are compared.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    moved = frame.transport(chart_to)
    here = delta_coords(instance, a, frame, lam, budget=count)
    there = delta_coords(instance, a, moved, lam, budget=count)
    factor = transition_factor(pullback_degree(lam, instance.epsilon, instance.delta),
                               frame.chart, chart_to, frame.x, frame.field)
    pairs = list(zip(here, there)) + [(here.witness(), there.witness())]
    verdicts = []
    for p, q in pairs:
        if p.selectors != q.selectors:
            raise PreconditionError('Coordinate streams disagree on their order.')
        verdicts.append(TransitionVerdict(p.value, q.value, factor, frame.field))
    return verdicts


class PsiValue(NamedTuple):
    """``Ψ(a, η) = (Δ(a, η), [x₀^r : ... : x_N^r])``."""
    delta: DeltaCoordinates
    z: tuple

    def to_json(self):
        f = self.delta.A.field
        return {
            'z': [f.to_json(c) for c in self.z],
            'delta': {
                'count': self.delta.total_count(),
                'witness': self.delta.witness().to_json(f),
            },
        }


@set_module_as('schurample')
def psi(
    instance: Instance,
    a: ParameterPoint,
    frame: FlagFrame,
    s: Union[JumpSequence, Partition, Sequence[int]],
    budget: Optional[int] = None,
) -> PsiValue:
    """The point ``Ψ(a, η)``; ``z`` is the coordinatewise ``r``-th power of ``x``."""
    delta = delta_coords(instance, a, frame, s, budget)
    z = tuple(c ** instance.r for c in frame.x)
    return PsiValue(delta, z)


class PsiVerdict(NamedTuple):
    """Contractions of the rows of ``A`` against ``z = x^r``."""
    contractions: tuple
    field: Field

    @property
    def passed(self) -> bool:
        return all(c == 0 for c in self.contractions)

    def to_json(self):
        return {'contractions': [self.field.to_json(c) for c in self.contractions], 'passed': self.passed}


def _tangency_failures(E: HomogPoly, frame: FlagFrame) -> List[str]:
    failed = []
    if E(frame.x) != 0:
        failed.append('E(a,x)=0')
    for i, v in enumerate(frame.vectors, start=1):
        if dir_derivative(E, frame.chart, frame.x, v, frame.field) != 0:
            failed.append(f'dE(x,v{i})=0')
    return failed


@set_module_as('schurample')
def verify_psi_in_Y(instance: Instance, a: ParameterPoint, frame: FlagFrame) -> PsiVerdict:
    """
    Check that ``Ψ`` maps a flag tangent to ``H_a = {E(a, .) = 0}`` into ``𝒴``.

    With ``z = x^r``, row 0 of ``A`` contracts to ``Σ_J α_J z^J = E(a, x)`` and
    row ``i`` to ``Σ_J θ_J(v_i) z^J = dE(x, v_i)``; both vanish on tangent frames.

    Raises
    ------
    FrameNotTangentError
        When ``E(a, x) ≠ 0`` or some ``dE(x, v_i) ≠ 0``; ``failed`` names them.
    """
    E = build_E(instance, a)
    failed = _tangency_failures(E, frame)
    if failed:
        raise FrameNotTangentError(failed)
    A = build_A(instance, a, frame)
    z = tuple(c ** instance.r for c in frame.x)
    weights = [monomial_value(J, z) for J in A.columns]
    contractions = tuple(
        sum((A.entries[row, col] * weights[col] for col in range(len(weights))), frame.field.zero)
        for row in range(A.shape[0])
    )
    return PsiVerdict(contractions, frame.field)


@set_module_as('schurample')
def tangent_frame(
    instance: Instance,
    rng: np.random.Generator,
    field: Field = QQ,
    height: Optional[int] = None,
    chart: int = 0,
    max_retries: Optional[int] = None,
) -> Tuple[ParameterPoint, FlagFrame]:
    """
    A random hypersurface ``H_a`` with a rational point and a tangent frame there.

    A random ``a`` and a random point ``x`` (all coordinates nonzero) are
    drawn; then ``a_{J₀}`` for the first multi-index is shifted by
    ``c·ξ_chart^ε`` with ``c`` chosen so that ``E(a, x) = 0``. The tangent
    vectors are random combinations of a basis of ``ker dE(x, .)``, which
    has dimension at least ``N - 1 >= k``.
    """
    height = environ.get('height') if height is None else height
    max_retries = environ.get('max_retries') if max_retries is None else max_retries
    n_vars = instance.n_vars
    a = random_parameter_point(instance, rng, field, height)
    x = tuple(field.one if i == chart else field.random_nonzero(rng, height) for i in range(n_vars))

    J0 = instance.multi_indices[0]
    value = build_E(instance, a)(x)
    weight = x[chart] ** instance.epsilon * monomial_value(tuple((instance.r + 1) * j for j in J0), x)
    shift = [0] * n_vars
    shift[chart] = instance.epsilon
    correction = HomogPoly.monomial(tuple(shift), -field.div(value, weight))
    a = a.replace(J0, a[J0] + correction)

    E = build_E(instance, a)
    gradient = [E.partial(j)(x) for j in range(n_vars) if j != chart]
    kernel = nullspace([gradient], field)
    for _ in range(max_retries):
        vectors = []
        for _ in range(instance.k):
            coeffs = [field.random_element(rng, height) for _ in kernel]
            vectors.append(tuple(
                sum((c * b[p] for c, b in zip(coeffs, kernel)), field.zero) for p in range(instance.N)
            ))
        if is_independent(vectors, field):
            frame = FlagFrame(chart, x, vectors, field)
            failed = _tangency_failures(E, frame)
            if failed:
                raise FrameNotTangentError(failed)
            return a, frame
    raise SamplingError(f'No independent tangent vectors after {max_retries} draws.')


@set_module_as('schurample')
def transport_frame(frame: FlagFrame, chart: int) -> FlagFrame:
    """The same point and tangent vectors written in chart ``chart``."""
    return frame.transport(chart)


class ForgetfulVerdict(NamedTuple):
    """Whether two maximal-minor vectors agree up to one nonzero factor."""
    factor: object
    passed: bool
    field: Field

    def to_json(self):
        return {
            'factor': None if self.factor is None else self.field.to_json(self.factor),
            'passed': self.passed,
        }


@set_module_as('schurample')
def forgetful_check(
    instance: Instance,
    a: ParameterPoint,
    frame: FlagFrame,
    other: FlagFrame,
) -> ForgetfulVerdict:
    """
    The ``(k+1)``-minors of ``A`` depend only on ``(x, span(v₁, ..., v_k))``.

    ``other`` must describe the same point and the same ``k``-plane, possibly
    in another chart or basis; its minor vector must then be a nonzero
    multiple of the one of ``frame``.
    """
    field = frame.field
    if other.chart != frame.chart:
        other = other.transport(frame.chart)
    if other.x != frame.x:
        raise PreconditionError('The frames are not based at the same point.')
    if exact_rank(list(frame.vectors) + list(other.vectors), field) != instance.k:
        raise PreconditionError('The frames do not span the same k-plane.')
    first = [v for _, v in maximal_minors(build_A(instance, a, frame))]
    second = [v for _, v in maximal_minors(build_A(instance, a, other))]
    pivot = next((i for i, v in enumerate(second) if v != 0), None)
    if pivot is None:
        return ForgetfulVerdict(None, all(v == 0 for v in first), field)
    factor = field.div(first[pivot], second[pivot])
    passed = factor != 0 and all(p == factor * q for p, q in zip(first, second))
    return ForgetfulVerdict(factor, passed, field)
