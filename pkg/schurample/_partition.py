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
from collections import Counter
from typing import Dict, Iterator, NamedTuple, Sequence, Tuple, Union

from ._errors import PreconditionError
from ._misc import binomial, set_module_as

__all__ = [
    'Partition',
    'JumpSequence',
    'OptimalityReport',
    'conjugate',
    'jump_sequence',
    'ampleness_weight',
    'normalized_ampleness_weight',
    'br_vanishes',
    'optimality_audit',
    'schur_dim',
    'ssyt_count',
    'quotient_upper_bound',
    'flag_dim',
    'grassmannian_total_dim',
    'ample_regime',
    'partitions_of',
    'partitions_up_to',
]


class Partition:
    """
    An integer partition ``λ = (λ₁ ≥ ... ≥ λₖ > 0)``, stored densely as its parts.

    Partitions are immutable, hashable and compare by their parts. The number
    of parts ``k`` is also the first value of the jump sequence.

    Parameters
    ----------
    parts : sequence of int
        Weakly decreasing, strictly positive integers.

    Examples
    --------
    >>> lam = Partition([5, 3, 3, 1])
    >>> lam.conjugate()
    Partition(4, 3, 3, 1, 1)
    >>> Partition.parse('2,1')
    Partition(2, 1)
    """
    __module__ = 'schurample'
    __slots__ = ('_parts',)

    def __init__(self, parts: Sequence[int]):
        parts = tuple(parts)
        if len(parts) == 0:
            raise PreconditionError('A partition needs at least one part.')
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int):
                raise TypeError(f'Partition parts must be integers. But we got {type(p)}')
            if p <= 0:
                raise PreconditionError(f'Partition parts must be positive, got {parts}.')
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PreconditionError(f'Partition parts must be weakly decreasing, got {parts}.')
        self._parts = parts

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        """Parse a comma separated list such as ``'3,1,1'``."""
        try:
            parts = [int(t) for t in text.replace(' ', '').split(',') if t != '']
        except ValueError:
            raise PreconditionError(f'Cannot parse partition from {text!r}.') from None
        return cls(parts)

    @classmethod
    def from_multiplicities(cls, multiplicities: Dict[int, int]) -> 'Partition':
        """Build ``λ`` from a ``{part: multiplicity}`` mapping."""
        parts = []
        for part in sorted(multiplicities, reverse=True):
            mult = multiplicities[part]
            if mult < 0:
                raise PreconditionError(f'Negative multiplicity {mult} for part {part}.')
            parts.extend([part] * mult)
        return cls(parts)

    def to_multiplicities(self) -> Dict[int, int]:
        return dict(sorted(Counter(self._parts).items(), reverse=True))

    @property
    def parts(self) -> Tuple[int, ...]:
        return self._parts

    @property
    def length(self) -> int:
        """Number of parts, the ``k`` of the flag construction."""
        return len(self._parts)

    @property
    def size(self) -> int:
        """``|λ|``"""
        return sum(self._parts)

    def conjugate(self) -> 'Partition':
        return conjugate(self)

    def scale(self, m: int) -> 'Partition':
        """The partition ``m·λ``."""
        if m < 1:
            raise PreconditionError(f'Scale factor must be positive, got {m}.')
        return Partition([m * p for p in self._parts])

    def gcd(self) -> int:
        return math.gcd(*self._parts)

    def primitive(self) -> 'Partition':
        """``λ / gcd(λ)``; Schur powers of ``λ`` and ``pλ`` are ample together."""
        g = self.gcd()
        return Partition([p // g for p in self._parts])

    def __getitem__(self, item):
        return self._parts[item]

    def __iter__(self):
        return iter(self._parts)

    def __len__(self):
        return len(self._parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self._parts == other._parts
        return NotImplemented

    def __hash__(self):
        return hash(('Partition', self._parts))

    def __repr__(self):
        return f'Partition({", ".join(map(str, self._parts))})'

    def __str__(self):
        return ','.join(map(str, self._parts))

    def to_json(self):
        return list(self._parts)


class JumpSequence(NamedTuple):
    """
    The jump sequence ``s = (s₁ > ... > s_t)`` of a partition.

    ``values`` are the distinct part lengths of the conjugate partition and
    ``multiplicities`` the number of times each of them occurs, so that
    ``λ* = (s₁^{b₁}, ..., s_t^{b_t})``.
    """
    values: Tuple[int, ...]
    multiplicities: Tuple[int, ...]

    @property
    def k(self) -> int:
        return self.values[0]

    @property
    def t(self) -> int:
        return len(self.values)

    @property
    def plus(self) -> Tuple[int, ...]:
        """``s₊ = (s₁+1, ..., s_t+1)``, the minor sizes at each level."""
        return tuple(s + 1 for s in self.values)

    def to_json(self):
        return {'values': list(self.values), 'multiplicities': list(self.multiplicities)}


class OptimalityReport(NamedTuple):
    """Result of :func:`optimality_audit`."""
    N: int
    c: int
    partition: Partition
    multiples: Tuple[int, ...]
    violations: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0

    def to_json(self):
        return {
            'N': self.N,
            'c': self.c,
            'partition': self.partition.to_json(),
            'multiples': list(self.multiples),
            'violations': list(self.violations),
            'passed': self.passed,
        }


def _as_partition(lam: Union[Partition, Sequence[int]]) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


@set_module_as('schurample')
def conjugate(lam: Union[Partition, Sequence[int]]) -> Partition:
    """
    Transpose the Young diagram: ``λ*_j = #{i | λ_i ≥ j}``.

    Examples
    --------
    >>> conjugate(Partition([5, 3, 3, 1]))
    Partition(4, 3, 3, 1, 1)
    """
    lam = _as_partition(lam)
    return Partition([sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1)])


@set_module_as('schurample')
def jump_sequence(lam: Union[Partition, Sequence[int]]) -> JumpSequence:
    """
    The indices ``i`` where ``λ_i > λ_{i+1}`` (with ``λ_{k+1} = 0``), in
    decreasing order, together with the multiplicities ``b_i`` of each value
    among the parts of ``λ*``.
    """
    lam = _as_partition(lam)
    parts = lam.parts + (0,)
    values = tuple(i for i in range(len(lam), 0, -1) if parts[i - 1] > parts[i])
    # b_i = λ_{s_i} - λ_{s_{i-1}}, reading λ_{s_0} as 0
    multiplicities = []
    previous = 0
    for s in values:
        multiplicities.append(parts[s - 1] - previous)
        previous = parts[s - 1]
    return JumpSequence(values, tuple(multiplicities))


@set_module_as('schurample')
def ampleness_weight(lam: Union[Partition, Sequence[int]]) -> int:
    """
    The weight ``|λ*₊| = 2λ₁ + λ₂ + ... + λₖ``.

    It multiplies the twist ``ε+δ`` in the pullback of the Plücker line bundle
    and enters every effective degree bound.
    """
    lam = _as_partition(lam)
    return lam.size + lam[0]


@set_module_as('schurample')
def normalized_ampleness_weight(lam: Union[Partition, Sequence[int]]) -> int:
    """``(2λ₁ + λ₂ + ... + λₖ) / gcd(λ)``, the weight of the primitive partition."""
    return ampleness_weight(_as_partition(lam).primitive())


@set_module_as('schurample')
def br_vanishes(N: int, c: int, lam: Union[Partition, Sequence[int]]) -> bool:
    """
    The vanishing criterion for symmetric differentials on complete intersections.

    For a smooth complete intersection ``X`` of codimension ``c`` in ``P^N``,
    ``H⁰(X, S^λ Ω_X) = 0`` as soon as ``λ*₁ + ... + λ*_c < N - c``.
    Missing parts of ``λ*`` count as zero.

    Parameters
    ----------
    N : int
        Dimension of the ambient projective space.
    c : int
        Codimension, ``1 <= c <= N``.
    lam : Partition
        The Schur partition.

    Returns
    -------
    bool
        Whether the inequality holds.
    """
    if not 1 <= c <= N:
        raise PreconditionError(f'Codimension must satisfy 1 <= c <= N, got c={c}, N={N}.')
    star = conjugate(lam).parts
    return sum(star[:c]) < N - c


@set_module_as('schurample')
def optimality_audit(
    N: int,
    c: int,
    lam: Union[Partition, Sequence[int]],
    m_max: int
) -> OptimalityReport:
    """
    Check that ``S^{mλ} Ω_X`` has no sections for every ``c <= m <= m_max``.

    Below the ample regime, i.e. when ``(k+1)c < N``, the multiples ``mλ`` with
    ``m >= c`` satisfy ``λ*₁ + ... + λ*_c = ck < N - c``, so no Schur power of
    those shapes can be ample. The audit evaluates the criterion for each
    multiple and lists the failing ones.

    Raises
    ------
    PreconditionError
        If ``(k+1)c >= N``; the shape then lies in the ample regime.
    """
    lam = _as_partition(lam)
    k = lam.length
    if (k + 1) * c >= N:
        raise PreconditionError(
            f'(k+1)c = {(k + 1) * c} >= N = {N}: the partition {lam} lies in the ample regime.'
        )
    multiples = tuple(range(c, m_max + 1))
    violations = tuple(m for m in multiples if not br_vanishes(N, c, lam.scale(m)))
    return OptimalityReport(N, c, lam, multiples, violations)


@set_module_as('schurample')
def schur_dim(lam: Union[Partition, Sequence[int]], n: int) -> int:
    """
    Rank of ``S^λ`` applied to an ``n``-dimensional space, by the hook-content formula

    .. math::

        \\dim S^λ(k^n) = \\prod_{(i, j) \\in λ} \\frac{n + j - i}{h(i, j)}.

    Returns 0 when ``λ`` has more than ``n`` parts.

    Examples
    --------
    >>> schur_dim([2, 1], 2)
    2
    """
    lam = _as_partition(lam)
    if lam.length > n:
        return 0
    star = conjugate(lam).parts
    numerator = 1
    denominator = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            numerator *= n + j - i
            denominator *= (row - j - 1) + (star[j] - i - 1) + 1
    return numerator // denominator


@set_module_as('schurample')
def ssyt_count(lam: Union[Partition, Sequence[int]], n: int) -> int:
    """
    Count semistandard Young tableaux of shape ``λ`` with entries in ``1..n``
    by exhaustive filling. Slow; used to cross-check :func:`schur_dim`.
    """
    lam = _as_partition(lam)
    if lam.length > n:
        return 0

    def rows(length, upper, previous):
        # weakly increasing rows, strictly larger than the row above
        def fill(j, low):
            if j == length:
                yield ()
                return
            start = max(low, previous[j] + 1 if previous is not None else 1)
            for value in range(start, upper + 1):
                for rest in fill(j + 1, value):
                    yield (value,) + rest

        return fill(0, 1)

    def count(i, previous):
        if i == lam.length:
            return 1
        return sum(count(i + 1, row) for row in rows(lam[i], n, previous))

    return count(0, None)


@set_module_as('schurample')
def quotient_upper_bound(lam: Union[Partition, Sequence[int]], n: int) -> Tuple[int, int, bool]:
    """
    Dimension shadow of the surjection
    ``⊗_i S^{b_i}(Λ^{s_i} E) → S^λ E`` for ``rank E = n``.

    Returns
    -------
    lhs : int
        ``schur_dim(λ, n)``.
    rhs : int
        ``∏_i dim S^{b_i}(Λ^{s_i} k^n)``.
    ok : bool
        ``lhs <= rhs``.
    """
    lam = _as_partition(lam)
    s = jump_sequence(lam)
    if s.k > n:
        raise PreconditionError(f'Jump sequence {s.values} does not fit in dimension {n}.')
    lhs = schur_dim(lam, n)
    rhs = 1
    for value, mult in zip(s.values, s.multiplicities):
        wedge = binomial(n, value)
        rhs *= binomial(wedge + mult - 1, mult)
    return lhs, rhs, lhs <= rhs


@set_module_as('schurample')
def flag_dim(s: Union[JumpSequence, Sequence[int]], n: int) -> int:
    """
    Dimension of the variety of flags ``V ⊃ F₁ ⊃ ... ⊃ F_t`` with
    ``dim F_i = s_i`` in an ``n``-dimensional space ``V``.

    Computed as the tower of Grassmannian fibrations
    ``Σ_i s_i (s_{i-1} - s_i)`` with ``s₀ = n``.
    """
    values = tuple(s.values if isinstance(s, JumpSequence) else s)
    if len(values) == 0:
        raise PreconditionError('Empty jump sequence.')
    if any(values[i] <= values[i + 1] for i in range(len(values) - 1)) or values[-1] <= 0:
        raise PreconditionError(f'Jump sequence must be strictly decreasing and positive, got {values}.')
    if values[0] > n - 1:
        raise PreconditionError(f'Flag type {values} requires s₁ <= n-1 = {n - 1}.')
    total = 0
    previous = n
    for value in values:
        total += value * (previous - value)
        previous = value
    return total


@set_module_as('schurample')
def grassmannian_total_dim(N: int, k: int) -> int:
    """Dimension ``N + k(N-k)`` of the bundle of ``k``-planes in ``T P^N``."""
    return N + k * (N - k)


@set_module_as('schurample')
def ample_regime(N: int, c: int, lam: Union[Partition, Sequence[int]]) -> str:
    """
    ``'ample-possible'`` when ``c(k+1) >= N``, where the ampleness theorem
    applies in large degree, ``'vanishing'`` otherwise.
    """
    lam = _as_partition(lam)
    return 'ample-possible' if c * (lam.length + 1) >= N else 'vanishing'


@set_module_as('schurample')
def partitions_of(n: int) -> Iterator[Partition]:
    """
    All partitions of ``n`` in reverse lexicographic order, starting with ``(n)``.
    """
    if n < 1:
        return

    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    for parts in gen(n, n):
        yield Partition(parts)


@set_module_as('schurample')
def partitions_up_to(n_max: int) -> Iterator[Partition]:
    """All partitions of ``1, 2, ..., n_max``."""
    for n in range(1, n_max + 1):
        yield from partitions_of(n)

