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

import functools
from typing import Dict, Mapping, NamedTuple, Sequence, Tuple, Union

import numpy as np

from ._errors import ChartDegeneracyError, PreconditionError
from ._misc import binomial, set_module_as
from ._scalar import Field, QQ

__all__ = [
    'MultiIndex',
    'Chart',
    'HomogPoly',
    'enumerate_multi_indices',
    'n_delta',
    'support',
    'monomial_value',
    'eval_poly',
    'dir_derivative',
    'transition_factor',
    'chart_point',
    'affine_coordinates',
    'lift_tangent',
    'transport_tangent',
]

MultiIndex = Tuple[int, ...]
Point = Sequence


class Chart(NamedTuple):
    """The affine chart ``V_i = {ξ_i ≠ 0}`` of ``P^N``, with ``ξ_i`` set to 1."""
    index: int


ChartLike = Union[Chart, int]


def _chart(chart: ChartLike) -> int:
    return chart.index if isinstance(chart, Chart) else int(chart)


@functools.lru_cache(maxsize=256)
def _multi_indices(n_vars: int, degree: int) -> Tuple[MultiIndex, ...]:
    if n_vars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in _multi_indices(n_vars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@set_module_as('schurample')
def enumerate_multi_indices(N: int, delta: int) -> Tuple[MultiIndex, ...]:
    """
    All exponent vectors ``J = (j₀, ..., j_N)`` with ``|J| = δ``.

    The order is graded lexicographic, decreasing: ``ξ₀^δ`` comes first and
    ``ξ_N^δ`` last. This order is also the column order of ``A(a; x, v)``
    and the term order of serialized polynomials.
    """
    if N < 0 or delta < 0:
        raise PreconditionError(f'Need N >= 0 and δ >= 0, got N={N}, δ={delta}.')
    return _multi_indices(N + 1, delta)


@set_module_as('schurample')
def n_delta(N: int, delta: int) -> int:
    """``N_δ = dim H⁰(P^N, O(δ)) = C(N+δ, N)``."""
    if N < 1 or delta < 0:
        raise PreconditionError(f'Need N >= 1 and δ >= 0, got N={N}, δ={delta}.')
    return binomial(N + delta, N)


def support(J: MultiIndex) -> Tuple[int, ...]:
    """``[J] = {i : j_i ≠ 0}``"""
    return tuple(i for i, j in enumerate(J) if j != 0)


def monomial_value(J: MultiIndex, x: Point):
    """``x^J = ∏ x_i^{j_i}``"""
    value = 1
    for xi, ji in zip(x, J):
        if ji:
            value = value * xi ** ji
    return value


class HomogPoly:
    """
    A sparse homogeneous polynomial in ``N+1`` variables ``ξ₀, ..., ξ_N``.

    Terms are stored as a mapping from exponent tuple to coefficient; zero
    coefficients are never stored, so ``terms`` is empty exactly for the zero
    polynomial. Coefficients may be ``Fraction``/``int`` or prime-field
    elements, but must not be mixed.

    Parameters
    ----------
    n_vars : int
        Number of homogeneous variables, ``N + 1``.
    degree : int
        Total degree shared by every term.
    terms : mapping, optional
        ``{exponents: coefficient}``.

    Examples
    --------
    >>> P = HomogPoly(3, 2, {(1, 1, 0): 1, (0, 0, 2): 1})   # ξ₀ξ₁ + ξ₂²
    >>> P((2, 3, 1))
    7
    """
    __module__ = 'schurample'
    __slots__ = ('n_vars', 'degree', 'terms', '_partials')

    def __init__(self, n_vars: int, degree: int, terms: Mapping[MultiIndex, object] = None):
        if n_vars < 1 or degree < 0:
            raise PreconditionError(f'Invalid polynomial shape: n_vars={n_vars}, degree={degree}.')
        self.n_vars = n_vars
        self.degree = degree
        clean: Dict[MultiIndex, object] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n_vars or any(e < 0 for e in exp):
                raise PreconditionError(f'Bad exponent {exp} for {n_vars} variables.')
            if sum(exp) != degree:
                raise PreconditionError(f'Term {exp} has degree {sum(exp)}, expected {degree}.')
            if coeff != 0:
                clean[exp] = coeff
        self.terms = clean
        self._partials = {}

    # ---- constructors ----

    @classmethod
    def zero(cls, n_vars: int, degree: int) -> 'HomogPoly':
        return cls(n_vars, degree)

    @classmethod
    def monomial(cls, exponents: MultiIndex, coeff=1) -> 'HomogPoly':
        """``coeff · ξ^J``"""
        exponents = tuple(exponents)
        return cls(len(exponents), sum(exponents), {exponents: coeff})

    @classmethod
    def coordinate(cls, n_vars: int, i: int) -> 'HomogPoly':
        """The linear form ``ξ_i``."""
        exp = [0] * n_vars
        exp[i] = 1
        return cls.monomial(tuple(exp))

    @classmethod
    def random(
        cls,
        n_vars: int,
        degree: int,
        rng: np.random.Generator,
        field: Field = QQ,
        height: int = 100,
    ) -> 'HomogPoly':
        """A dense polynomial whose coefficients are random field elements of bounded height."""
        return cls(n_vars, degree, {
            J: field.random_element(rng, height)
            for J in _multi_indices(n_vars, degree)
        })

    # ---- evaluation ----

    def __call__(self, x: Point):
        if len(x) != self.n_vars:
            raise PreconditionError(f'Point has {len(x)} coordinates, expected {self.n_vars}.')
        return sum((c * monomial_value(J, x) for J, c in self.terms.items()), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def partial(self, j: int) -> 'HomogPoly':
        """``∂P/∂ξ_j``, of degree ``d - 1`` (degree 0 stays 0 and yields the zero polynomial)."""
        if j in self._partials:
            return self._partials[j]
        if self.degree == 0:
            return HomogPoly(self.n_vars, 0)
        terms = {}
        for J, c in self.terms.items():
            if J[j]:
                K = J[:j] + (J[j] - 1,) + J[j + 1:]
                terms[K] = terms.get(K, 0) + c * J[j]
        out = HomogPoly(self.n_vars, self.degree - 1, terms)
        self._partials[j] = out
        return out

    # ---- arithmetic ----

    def _check_compatible(self, other: 'HomogPoly'):
        if self.n_vars != other.n_vars or self.degree != other.degree:
            raise PreconditionError(
                f'Cannot add polynomials of shape ({self.n_vars}, {self.degree}) '
                f'and ({other.n_vars}, {other.degree}).'
            )

    def __add__(self, other: 'HomogPoly') -> 'HomogPoly':
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for J, c in other.terms.items():
            terms[J] = terms.get(J, 0) + c
        return HomogPoly(self.n_vars, self.degree, terms)

    def __neg__(self) -> 'HomogPoly':
        return HomogPoly(self.n_vars, self.degree, {J: -c for J, c in self.terms.items()})

    def __sub__(self, other: 'HomogPoly') -> 'HomogPoly':
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> 'HomogPoly':
        if isinstance(other, HomogPoly):
            if self.n_vars != other.n_vars:
                raise PreconditionError('Cannot multiply polynomials in different variables.')
            terms = {}
            for J, a in self.terms.items():
                for K, b in other.terms.items():
                    L = tuple(j + k for j, k in zip(J, K))
                    terms[L] = terms.get(L, 0) + a * b
            return HomogPoly(self.n_vars, self.degree + other.degree, terms)
        return HomogPoly(self.n_vars, self.degree, {J: c * other for J, c in self.terms.items()})

    def __rmul__(self, other) -> 'HomogPoly':
        return self.__mul__(other)

    def __pow__(self, n: int) -> 'HomogPoly':
        out = HomogPoly.monomial((0,) * self.n_vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (self.n_vars, self.degree, self.terms) == (other.n_vars, other.degree, other.terms)

    def __hash__(self):
        return hash((self.n_vars, self.degree, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __repr__(self):
        if not self.terms:
            return f'HomogPoly(0, degree={self.degree})'
        pieces = []
        for J in sorted(self.terms, reverse=True):
            mono = '·'.join(f'ξ{i}' + (f'^{j}' if j > 1 else '') for i, j in enumerate(J) if j) or '1'
            pieces.append(f'({self.terms[J]})·{mono}')
        return 'HomogPoly(' + ' + '.join(pieces) + ')'

    # ---- serialization ----

    def to_json(self, field: Field = QQ) -> dict:
        """``{"degree": d, "terms": [{"exp": [...], "num": "...", "den": "..."}]}`` in graded-lex order."""
        terms = []
        for J in sorted(self.terms, reverse=True):
            entry = {'exp': list(J)}
            entry.update(field.to_json(self.terms[J]))
            terms.append(entry)
        return {'degree': self.degree, 'terms': terms}

    @classmethod
    def from_json(cls, data: dict, n_vars: int = None, field: Field = QQ) -> 'HomogPoly':
        terms = {tuple(t['exp']): field.from_json(t) for t in data['terms']}
        if n_vars is None:
            if not terms:
                raise PreconditionError('n_vars is required to decode the zero polynomial.')
            n_vars = len(next(iter(terms)))
        return cls(n_vars, int(data['degree']), terms)


@set_module_as('schurample')
def eval_poly(P: HomogPoly, x: Point):
    """``Σ_J coeff_J · x^J``"""
    return P(x)


@set_module_as('schurample')
def chart_point(x: Point, chart: ChartLike, field: Field = QQ) -> tuple:
    """The representative of ``[x]`` with ``x_chart = 1``."""
    i = _chart(chart)
    if x[i] == 0:
        raise ChartDegeneracyError(f'Point {tuple(x)} lies at infinity of chart {i}.')
    return tuple(field.div(xj, x[i]) for xj in x)


def affine_coordinates(x: Point, chart: ChartLike, field: Field = QQ) -> tuple:
    """``(x_j / x_i)_{j ≠ i}``, the coordinates of ``x`` in chart ``i``."""
    i = _chart(chart)
    xn = chart_point(x, i, field)
    return tuple(xj for j, xj in enumerate(xn) if j != i)


def lift_tangent(v: Sequence, chart: ChartLike) -> tuple:
    """Insert ``0`` at the chart position, turning chart coordinates into a homogeneous vector."""
    i = _chart(chart)
    v = tuple(v)
    return v[:i] + (0,) + v[i:]


@set_module_as('schurample')
def dir_derivative(P: HomogPoly, chart: ChartLike, x: Point, v: Sequence, field: Field = QQ):
    """
    Derivative of the dehomogenization of ``P`` on a chart, at ``x``, along ``v``.

    Setting ``ξ_i = 1`` turns ``P`` into a polynomial ``p`` in the ``N`` affine
    coordinates; the result is ``Σ_{j≠i} ∂_j p(y) v_j`` with ``y`` the affine
    coordinates of ``x``.

    Parameters
    ----------
    P : HomogPoly
        The polynomial.
    chart : Chart or int
        The chart index ``i``.
    x : sequence
        Homogeneous coordinates of the point, with ``x_i ≠ 0``.
    v : sequence
        Tangent vector in the ``N`` affine coordinates of the chart.

    Raises
    ------
    ChartDegeneracyError
        If ``x_i = 0``.
    """
    i = _chart(chart)
    if len(v) != P.n_vars - 1:
        raise PreconditionError(f'Tangent vector has {len(v)} coordinates, expected {P.n_vars - 1}.')
    xn = chart_point(x, i, field)
    if P.degree == 0 or P.is_zero():
        return field.zero
    w = lift_tangent(v, i)
    total = field.zero
    for j in range(P.n_vars):
        if j != i and w[j] != 0:
            total = total + P.partial(j)(xn) * w[j]
    return total


@set_module_as('schurample')
def transition_factor(d: int, chart_from: ChartLike, chart_to: ChartLike, x: Point, field: Field = QQ):
    """
    ``g = (x_to / x_from)^d``, so that ``P_from(x) = g · P_to(x)`` for any degree ``d`` section.
    """
    i, j = _chart(chart_from), _chart(chart_to)
    if x[i] == 0 or x[j] == 0:
        raise ChartDegeneracyError(f'Point {tuple(x)} is not in both charts {i} and {j}.')
    return field.div(x[j], x[i]) ** d


@set_module_as('schurample')
def transport_tangent(
    x: Point,
    v: Sequence,
    chart_from: ChartLike,
    chart_to: ChartLike,
    field: Field = QQ
) -> tuple:
    """
    Express a tangent vector given in chart ``i`` in the coordinates of chart ``i'``.

    With ``y`` the representative of ``x`` normalized in chart ``i`` and ``w``
    the lift of ``v`` (``w_i = 0``), the exact Jacobian of ``y ↦ y / y_{i'}`` gives

    .. math::

        v'_j = \\frac{w_j y_{i'} - y_j w_{i'}}{y_{i'}^2}, \\qquad j \\neq i'.
    """
    i, j = _chart(chart_from), _chart(chart_to)
    if i == j:
        return tuple(v)
    y = chart_point(x, i, field)
    if y[j] == 0:
        raise ChartDegeneracyError(f'Point {tuple(x)} lies at infinity of chart {j}.')
    w = lift_tangent(v, i)
    denom = y[j] * y[j]
    return tuple(field.div(w[m] * y[j] - y[m] * w[j], denom) for m in range(len(y)) if m != j)

