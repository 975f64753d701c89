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

import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from ._errors import ChartDegeneracyError, PreconditionError
from ._linalg import rank as exact_rank, is_independent
from ._misc import set_module_as
from ._poly import (
    HomogPoly,
    MultiIndex,
    dir_derivative,
    enumerate_multi_indices,
    n_delta,
    transport_tangent,
    chart_point,
    monomial_value,
)
from ._scalar import Field, QQ

__all__ = [
    'Instance',
    'ParameterPoint',
    'FlagFrame',
    'RankMatrix',
    'build_E',
    'alpha',
    'theta',
    'build_A',
    'random_parameter_point',
]


@dataclass(frozen=True)
class Instance:
    """
    Shape of the universal family of hypersurfaces

    .. math::

        E(a, ξ) = \\sum_{|J| = δ} a_J(ξ) \\, ξ^{(r+1)J},

    with ``a_J`` homogeneous of degree ``ε``, together with the flag size
    ``k = s₁`` used to build ``A(a; x, v₁, ..., v_k)``.

    Parameters
    ----------
    N : int
        Dimension of ``P^N``.
    k : int
        Number of tangent vectors, ``1 <= k <= N - 1``. ``k = 0`` describes
        the family of hypersurfaces alone, without flags.
    delta : int
        ``δ >= 1``.
    epsilon : int
        ``ε >= 1``.
    r : int
        ``r >= 0``; ``r = 0`` is accepted with a warning.
    """
    __module__ = 'schurample'

    N: int
    k: int
    delta: int
    epsilon: int
    r: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise PreconditionError(f'N must be positive, got {self.N}.')
        if self.k != 0 and not 1 <= self.k <= self.N - 1:
            raise PreconditionError(f'k must satisfy 1 <= k <= N-1, got k={self.k}, N={self.N}.')
        if self.delta < 1:
            raise PreconditionError(f'δ must be at least 1, got {self.delta}.')
        if self.epsilon < 1:
            raise PreconditionError(f'ε must be at least 1, got {self.epsilon}.')
        if self.r < 0:
            raise PreconditionError(f'r must be non-negative, got {self.r}.')
        if self.r == 0:
            warnings.warn('r = 0 lies outside the range r >= 1 used for the Plücker construction.',
                          UserWarning, stacklevel=3)

    @property
    def n_vars(self) -> int:
        return self.N + 1

    @property
    def degree(self) -> int:
        """Degree ``ε + (r+1)δ`` of ``E(a, .)``."""
        return self.epsilon + (self.r + 1) * self.delta

    @property
    def n_columns(self) -> int:
        """``N_δ``, the number of columns of ``A``."""
        return n_delta(self.N, self.delta)

    @property
    def multi_indices(self) -> Tuple[MultiIndex, ...]:
        return enumerate_multi_indices(self.N, self.delta)

    def to_json(self):
        return {'N': self.N, 'k': self.k, 'delta': self.delta, 'epsilon': self.epsilon, 'r': self.r}


class ParameterPoint:
    """
    A point ``a = (a_J)_{|J| = δ}`` of ``S = H⁰(O(ε))^{N_δ}``.

    Parameters
    ----------
    instance : Instance
        The family the point belongs to.
    coefficients : mapping
        ``{J: a_J}``; missing ``J`` are zero.
    """
    __module__ = 'schurample'

    def __init__(self, instance: Instance, coefficients: Mapping[MultiIndex, HomogPoly] = None):
        self.instance = instance
        index = set(instance.multi_indices)
        coeffs: Dict[MultiIndex, HomogPoly] = {}
        for J, P in (coefficients or {}).items():
            J = tuple(J)
            if J not in index:
                raise PreconditionError(f'{J} is not a multi-index of length {instance.delta} '
                                        f'in {instance.n_vars} variables.')
            if not isinstance(P, HomogPoly):
                raise TypeError(f'Should be instance of HomogPoly. But we got {type(P)}')
            if P.n_vars != instance.n_vars or P.degree != instance.epsilon:
                raise PreconditionError(f'a_{J} must be homogeneous of degree {instance.epsilon} '
                                        f'in {instance.n_vars} variables.')
            coeffs[J] = P
        self._coeffs = coeffs

    @classmethod
    def zeros(cls, instance: Instance) -> 'ParameterPoint':
        return cls(instance)

    def __getitem__(self, J: MultiIndex) -> HomogPoly:
        J = tuple(J)
        if J in self._coeffs:
            return self._coeffs[J]
        return HomogPoly.zero(self.instance.n_vars, self.instance.epsilon)

    def items(self) -> Iterable[Tuple[MultiIndex, HomogPoly]]:
        for J in self.instance.multi_indices:
            yield J, self[J]

    def replace(self, J: MultiIndex, P: HomogPoly) -> 'ParameterPoint':
        coeffs = dict(self._coeffs)
        coeffs[tuple(J)] = P
        return ParameterPoint(self.instance, coeffs)

    def is_zero(self) -> bool:
        return all(P.is_zero() for P in self._coeffs.values())

    def to_json(self, field: Field = QQ):
        return {
            'instance': self.instance.to_json(),
            'a': [{'J': list(J), 'poly': P.to_json(field)} for J, P in self.items() if not P.is_zero()],
        }


@set_module_as('schurample')
def random_parameter_point(
    instance: Instance,
    rng: np.random.Generator,
    field: Field = QQ,
    height: int = 100
) -> ParameterPoint:
    """Draw every coefficient of every ``a_J`` independently."""
    return ParameterPoint(instance, {
        J: HomogPoly.random(instance.n_vars, instance.epsilon, rng, field, height)
        for J in instance.multi_indices
    })


class FlagFrame:
    """
    A point ``x`` of ``P^N`` with ``k`` tangent vectors, written in one affine chart.

    Parameters
    ----------
    chart : int
        The chart ``i``; ``x_i`` must be 1.
    x : sequence
        Homogeneous coordinates of the point.
    vectors : sequence of sequences
        ``v₁, ..., v_k`` in the ``N`` affine coordinates ``(ξ_j/ξ_i)_{j≠i}``,
        in increasing order of ``j``.
    field : Field
        Field of the coordinates.

    Raises
    ------
    PreconditionError
        If ``x_i ≠ 1``, the shapes disagree, or the vectors are dependent.
    """
    __module__ = 'schurample'

    def __init__(self, chart: int, x: Sequence, vectors: Sequence[Sequence], field: Field = QQ):
        chart = int(chart)
        x = tuple(field(v) for v in x)
        if not 0 <= chart < len(x):
            raise PreconditionError(f'Chart {chart} out of range for a point with {len(x)} coordinates.')
        if x[chart] != 1:
            raise PreconditionError(f'The chart coordinate x_{chart} must be 1, got {x[chart]}.')
        vectors = tuple(tuple(field(c) for c in v) for v in vectors)
        if len(vectors) == 0:
            raise PreconditionError('A frame needs at least one tangent vector.')
        for v in vectors:
            if len(v) != len(x) - 1:
                raise PreconditionError(f'Tangent vector {v} must have {len(x) - 1} coordinates.')
        if not is_independent(vectors, field):
            raise PreconditionError('Degenerate frame: the tangent vectors are linearly dependent.')
        self.chart = chart
        self.x = x
        self.vectors = vectors
        self.field = field

    @classmethod
    def from_point(cls, chart: int, x: Sequence, vectors: Sequence[Sequence], field: Field = QQ) -> 'FlagFrame':
        """Normalize an arbitrary representative of ``x`` to the chart first."""
        return cls(chart, chart_point(x, chart, field), vectors, field)

    @property
    def N(self) -> int:
        return len(self.x) - 1

    @property
    def k(self) -> int:
        return len(self.vectors)

    def transport(self, chart: int) -> 'FlagFrame':
        """The same point and tangent vectors written in another chart."""
        if self.x[chart] == 0:
            raise ChartDegeneracyError(f'Point {self.x} lies at infinity of chart {chart}.')
        vectors = [transport_tangent(self.x, v, self.chart, chart, self.field) for v in self.vectors]
        return FlagFrame(chart, chart_point(self.x, chart, self.field), vectors, self.field)

    def to_json(self):
        f = self.field
        return {
            'chart': self.chart,
            'x': [f.to_json(c) for c in self.x],
            'v': [[f.to_json(c) for c in v] for v in self.vectors],
        }

    def __repr__(self):
        return f'FlagFrame(chart={self.chart}, x={self.x}, vectors={self.vectors})'


class RankMatrix:
    """
    The ``(k+1) × N_δ`` matrix ``A(a; x, v₁, ..., v_k)``.

    Row 0 holds ``α_J(a, x)`` and row ``i`` holds ``θ_J(a, x, v_i)``; columns
    follow :func:`enumerate_multi_indices`.
    """
    __module__ = 'schurample'

    def __init__(self, entries: np.ndarray, columns: Sequence[MultiIndex], field: Field = QQ):
        self.entries = entries
        self.columns = tuple(columns)
        self.field = field
        self._column_index = {J: i for i, J in enumerate(self.columns)}

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def column_of(self, J: MultiIndex) -> int:
        try:
            return self._column_index[tuple(J)]
        except KeyError:
            raise PreconditionError(f'{J} is not a column of A.') from None

    def rank(self) -> int:
        return exact_rank(self.entries, self.field)

    def is_full_rank(self) -> bool:
        return self.rank() == self.entries.shape[0]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries.flat)

    def to_json(self):
        return {
            'columns': [list(J) for J in self.columns],
            'rows': [[self.field.to_json(v) for v in row] for row in self.entries],
        }


def _check_point(a: ParameterPoint):
    if not isinstance(a, ParameterPoint):
        raise TypeError(f'Should be instance of ParameterPoint. But we got {type(a)}')


@set_module_as('schurample')
def build_E(instance: Instance, a: ParameterPoint) -> HomogPoly:
    """``E(a, .) = Σ_J a_J · ξ^{(r+1)J}``, homogeneous of degree ``ε + (r+1)δ``."""
    _check_point(a)
    if a.instance != instance:
        raise PreconditionError(f'Parameter point belongs to {a.instance}, not {instance}.')
    E = HomogPoly.zero(instance.n_vars, instance.degree)
    for J, aJ in a.items():
        if aJ.is_zero():
            continue
        E = E + aJ * HomogPoly.monomial(tuple((instance.r + 1) * j for j in J))
    return E


@set_module_as('schurample')
def alpha(a: ParameterPoint, J: MultiIndex, x: Sequence):
    """``α_J(a, x) = a_J(x) · x^J``"""
    _check_point(a)
    J = tuple(J)
    if sum(J) != a.instance.delta:
        raise PreconditionError(f'|J| must be {a.instance.delta}, got {J}.')
    aJ = a[J]
    if aJ.is_zero():
        return 0
    return aJ(x) * monomial_value(J, x)


@set_module_as('schurample')
def theta(a: ParameterPoint, J: MultiIndex, frame: FlagFrame, i: int):
    """
    ``θ_J(a, x, v_i) = x^J · da_J(v_i) + (r+1) · a_J(x) · dξ^J(v_i)``,
    derivatives taken on the chart of the frame.

    ``i`` counts tangent vectors from 1.
    """
    _check_point(a)
    J = tuple(J)
    if sum(J) != a.instance.delta:
        raise PreconditionError(f'|J| must be {a.instance.delta}, got {J}.')
    if not 1 <= i <= frame.k:
        raise PreconditionError(f'Row index must be in 1..{frame.k}, got {i}.')
    aJ = a[J]
    if aJ.is_zero():
        return frame.field.zero
    v = frame.vectors[i - 1]
    xJ = monomial_value(J, frame.x)
    d_aJ = dir_derivative(aJ, frame.chart, frame.x, v, frame.field)
    d_xJ = dir_derivative(HomogPoly.monomial(J), frame.chart, frame.x, v, frame.field)
    return xJ * d_aJ + (a.instance.r + 1) * aJ(frame.x) * d_xJ


@set_module_as('schurample')
def build_A(instance: Instance, a: ParameterPoint, frame: FlagFrame) -> RankMatrix:
    """
    The matrix ``A(a; x, v₁, ..., v_k)`` with rows ``(α_J)`` and ``(θ_J(v_i))``.

    Condition ``(*)`` holds at the frame exactly when the result has rank ``k+1``.
    """
    _check_point(a)
    if frame.k != instance.k or frame.N != instance.N:
        raise PreconditionError(f'Frame of shape (N={frame.N}, k={frame.k}) does not match {instance}.')
    columns = instance.multi_indices
    entries = np.empty((instance.k + 1, len(columns)), dtype=object)
    entries[...] = frame.field.zero
    for col, J in enumerate(columns):
        if a[J].is_zero():
            continue
        entries[0, col] = alpha(a, J, frame.x)
        for i in range(1, instance.k + 1):
            entries[i, col] = theta(a, J, frame, i)
    return RankMatrix(entries, columns, frame.field)
