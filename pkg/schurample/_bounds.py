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
Effective degree bounds, evaluated with Python integers only.

Every quantity here is an exact ``int`` (or a ``Fraction`` where a quotient is
reported); nothing is ever converted to ``float``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from ._errors import PreconditionError
from ._misc import scientific, set_module_as
from ._partition import Partition, ampleness_weight, grassmannian_total_dim

__all__ = [
    'BoundLedger',
    'validate_ledger',
    'theorem_params',
    'nakayama_quotient',
    'nakayama_m',
    'corollary_bound',
    'CorollaryLedger',
    'corollary_ledger',
    'decompose_degree',
    'CoupPlan',
    'coup_product_plan',
    'HyperbolicityBounds',
    'hyperbolicity_bounds',
    'infinitesimal_hyperbolicity_bound',
    'ExceptionalAudit',
    'audit_exceptional_dimension',
]

VARIANTS = ('corollary', 'intro')


def _as_partition(lam: Union[Partition, Sequence[int]]) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _check_codimension(N: int, c: int, k: int):
    if c < 1 or N < 1:
        raise PreconditionError(f'Need N >= 1 and c >= 1, got N={N}, c={c}.')
    if k > N - 1:
        raise PreconditionError(f'λ has {k} parts, at most N - 1 = {N - 1} are allowed.')
    if c * (k + 1) < N:
        raise PreconditionError(f'Codimension condition fails: c(k+1) = {c * (k + 1)} < N = {N}.')


def _as_tuple(values, c: int, name: str) -> Tuple[int, ...]:
    values = tuple(int(v) for v in values)
    if len(values) != c:
        raise PreconditionError(f'Expected {c} values for {name}, got {len(values)}.')
    return values


@dataclass(frozen=True)
class BoundLedger:
    """
    The parameters of the main effective bound for ``c`` hypersurfaces.

    Parameters
    ----------
    N, c : int
        Ambient dimension and number of equations.
    partition : Partition
        ``λ``; ``k`` is its number of parts.
    deltas, ms, epsilons : tuple of int
        ``δ_i``, ``m_i`` and ``ε_i`` for ``i = 1, ..., c``.
    r : int
        The common exponent.
    """
    __module__ = 'schurample'

    N: int
    c: int
    partition: Partition
    deltas: Tuple[int, ...]
    ms: Tuple[int, ...]
    epsilons: Tuple[int, ...]
    r: int

    @property
    def k(self) -> int:
        return self.partition.length

    @property
    def weight(self) -> int:
        return ampleness_weight(self.partition)

    @property
    def threshold(self) -> int:
        """``|λ*₊| Σ_p m_p(ε_p + δ_p)``, which ``r`` must exceed."""
        return self.weight * sum(m * (e + d) for m, e, d in zip(self.ms, self.epsilons, self.deltas))

    @property
    def u(self) -> int:
        return self.r - self.threshold

    @property
    def degrees(self) -> Tuple[int, ...]:
        """``d_i = δ_i(r+1) + ε_i``"""
        return tuple(d * (self.r + 1) + e for d, e in zip(self.deltas, self.epsilons))

    def validate(self) -> List[str]:
        """Names of the violated invariants; empty when the ledger is admissible."""
        violations = []
        if self.c * (self.k + 1) < self.N:
            violations.append('c(k+1) >= N')
        for name, values in (('deltas', self.deltas), ('ms', self.ms), ('epsilons', self.epsilons)):
            if len(values) != self.c:
                violations.append(f'len({name}) == c')
        floor = grassmannian_total_dim(self.N, self.k)
        product = math.prod(d ** (self.k + 1) for d in self.deltas)
        for i, (d, m, e) in enumerate(zip(self.deltas, self.ms, self.epsilons), start=1):
            if d < floor:
                violations.append(f'delta_{i} >= N+k(N-k)')
            if m * d < product:
                violations.append(f'm_{i} >= prod(delta_j^(k+1))/delta_{i}')
            if e < 1:
                violations.append(f'epsilon_{i} >= 1')
        if self.u <= 0:
            violations.append('u > 0')
        return violations

    def to_json(self):
        return {
            'N': self.N,
            'c': self.c,
            'lambda': self.partition.to_json(),
            'k': self.k,
            'weight': self.weight,
            'deltas': [str(d) for d in self.deltas],
            'ms': [str(m) for m in self.ms],
            'epsilons': [str(e) for e in self.epsilons],
            'r': str(self.r),
            'u': str(self.u),
            'degrees': [str(d) for d in self.degrees],
            'degrees_approx': [scientific(d) for d in self.degrees],
        }


@set_module_as('schurample')
def validate_ledger(ledger: BoundLedger) -> List[str]:
    """Re-check every invariant of ``ledger``."""
    if not isinstance(ledger, BoundLedger):
        raise TypeError(f'Should be instance of BoundLedger. But we got {type(ledger)}')
    return ledger.validate()


@set_module_as('schurample')
def nakayama_quotient(deltas: Sequence[int], k: int, i: int) -> Fraction:
    """``∏_j δ_j^{k+1} / δ_i`` as an exact rational; ``i`` counts from 1."""
    deltas = tuple(int(d) for d in deltas)
    if any(d < 1 for d in deltas):
        raise PreconditionError(f'All δ_j must be positive, got {deltas}.')
    if not 1 <= i <= len(deltas):
        raise PreconditionError(f'Index i must be in 1..{len(deltas)}, got {i}.')
    return Fraction(math.prod(d ** (k + 1) for d in deltas), deltas[i - 1])


@set_module_as('schurample')
def nakayama_m(deltas: Sequence[int], k: int, i: int) -> int:
    """
    The smallest admissible ``m_i``: ``∏_j δ_j^{k+1} / δ_i``, rounded up when not integral.

    Examples
    --------
    >>> nakayama_m((2, 3), 1, 1)
    18
    """
    q = nakayama_quotient(deltas, k, i)
    return -(-q.numerator // q.denominator)


@set_module_as('schurample')
def theorem_params(
    N: int,
    c: int,
    lam: Union[Partition, Sequence[int]],
    deltas: Optional[Sequence[int]] = None,
    ms: Optional[Sequence[int]] = None,
    epsilons: Optional[Sequence[int]] = None,
    r: Optional[int] = None,
) -> BoundLedger:
    """
    Fill the parameters of the main bound with their minimal admissible values.

    Defaults are ``δ_i = N + k(N-k)``, ``m_i`` from :func:`nakayama_m`,
    ``ε_i = 1`` and ``r`` one more than the threshold. Any of them may be
    overridden; the result is re-validated.

    Raises
    ------
    PreconditionError
        If ``c(k+1) < N``, ``k > N-1`` or the overrides violate an invariant.
    """
    lam = _as_partition(lam)
    k = lam.length
    _check_codimension(N, c, k)
    floor = grassmannian_total_dim(N, k)
    deltas = (floor,) * c if deltas is None else _as_tuple(deltas, c, 'deltas')
    if ms is None:
        ms = tuple(nakayama_m(deltas, k, i) for i in range(1, c + 1))
    else:
        ms = _as_tuple(ms, c, 'ms')
    epsilons = (1,) * c if epsilons is None else _as_tuple(epsilons, c, 'epsilons')
    if r is None:
        weight = ampleness_weight(lam)
        r = weight * sum(m * (e + d) for m, e, d in zip(ms, epsilons, deltas)) + 1
    ledger = BoundLedger(N, c, lam, deltas, ms, epsilons, int(r))
    violations = ledger.validate()
    if violations:
        raise PreconditionError(f'Infeasible parameters, violated: {", ".join(violations)}.')
    return ledger


def _corollary_exponent(c: int, k: int, variant: str) -> int:
    if variant not in VARIANTS:
        raise PreconditionError(f'Unknown bound variant {variant!r}, expected one of {VARIANTS}.')
    return c * (k + 1) + (1 if variant == 'corollary' else 0)


@set_module_as('schurample')
def corollary_bound(N: int, c: int, lam: Union[Partition, Sequence[int]], variant: str = 'corollary') -> int:
    """
    ``(1 + 2c|λ*₊|(N + k(N-k))^e)²`` with ``e = c(k+1) + 1``.

    ``λ`` is first divided by the gcd of its parts, as ``S^λ`` and ``S^{pλ}``
    are ample together. ``variant='intro'`` uses ``e = c(k+1)``.

    Examples
    --------
    >>> corollary_bound(5, 2, (1, 1)) == 233846053 ** 2
    True
    """
    lam = _as_partition(lam).primitive()
    k = lam.length
    _check_codimension(N, c, k)
    e = _corollary_exponent(c, k, variant)
    delta = grassmannian_total_dim(N, k)
    return (1 + 2 * c * ampleness_weight(lam) * delta ** e) ** 2


class CorollaryLedger(NamedTuple):
    """The fixed parameter choice behind :func:`corollary_bound`."""
    delta: int
    m: int
    r: int
    d: int
    bound: int
    ledger: BoundLedger

    @property
    def u(self) -> int:
        return self.ledger.u

    def to_json(self):
        return {
            'delta': str(self.delta),
            'm': str(self.m),
            'r': str(self.r),
            'd': str(self.d),
            'u': str(self.u),
            'bound': str(self.bound),
            'bound_approx': scientific(self.bound),
            'bound_digits': len(str(self.bound)),
            'ledger': self.ledger.to_json(),
        }


@set_module_as('schurample')
def corollary_ledger(N: int, c: int, lam: Union[Partition, Sequence[int]]) -> CorollaryLedger:
    """
    ``δ = N + k(N-k)``, ``m = δ^{c(k+1)-1}``, ``r = 2c|λ*₊|δ^{c(k+1)} - 1``,
    ``d = δ(r+1)`` and ``bound = (1+d)²``, for the primitive ``λ``.
    """
    lam = _as_partition(lam).primitive()
    k = lam.length
    _check_codimension(N, c, k)
    delta = grassmannian_total_dim(N, k)
    m = delta ** (c * (k + 1) - 1)
    r = 2 * c * ampleness_weight(lam) * delta ** (c * (k + 1)) - 1
    d = delta * (r + 1)
    ledger = BoundLedger(N, c, lam, (delta,) * c, (m,) * c, (1,) * c, r)
    return CorollaryLedger(delta, m, r, d, (1 + d) ** 2, ledger)


@set_module_as('schurample')
def decompose_degree(d: int, d0: int) -> Tuple[int, int]:
    """
    Write ``d0 = p(d+1) + q(d+2)`` with ``p, q >= 0``.

    ``q = d0 mod (d+1)`` and ``p = (d0 - q)/(d+1) - q``; both are non-negative
    as soon as ``d0 >= d(d+1)``.

    Examples
    --------
    >>> decompose_degree(3, 17)
    (3, 1)
    """
    if d < 1:
        raise PreconditionError(f'Need d >= 1, got {d}.')
    if d0 < d * (d + 1):
        raise PreconditionError(f'd0 = {d0} is below d(d+1) = {d * (d + 1)}.')
    q = d0 % (d + 1)
    p = (d0 - q) // (d + 1) - q
    return p, q


class CoupPlan(NamedTuple):
    """
    Degrees of the factors of one equation: ``p`` factors of degree ``d+1``
    and ``q`` of degree ``d+2``, kept run-length encoded.
    """
    degree: int
    d: int
    p: int
    q: int

    @property
    def factors(self) -> Tuple[Tuple[int, int], ...]:
        """``((d+1, p), (d+2, q))`` as ``(degree, count)`` pairs."""
        return (self.d + 1, self.p), (self.d + 2, self.q)

    @property
    def total(self) -> int:
        return sum(deg * count for deg, count in self.factors)

    def to_json(self):
        return {
            'degree': str(self.degree),
            'p': str(self.p),
            'q': str(self.q),
            'factors': [{'degree': str(deg), 'count': str(count)} for deg, count in self.factors],
        }


@set_module_as('schurample')
def coup_product_plan(
    N: int,
    c: int,
    lam: Union[Partition, Sequence[int]],
    degrees: Sequence[int],
) -> List[CoupPlan]:
    """
    Split each degree ``d_i`` into factors of degree ``d+1`` and ``d+2``, with
    ``d = δ(r+1)`` from :func:`corollary_ledger`.

    Raises
    ------
    PreconditionError
        If some ``d_i < d(d+1)``.
    """
    d = corollary_ledger(N, c, lam).d
    degrees = _as_tuple(degrees, c, 'degrees')
    plans = []
    for di in degrees:
        p, q = decompose_degree(d, di)
        plans.append(CoupPlan(di, d, p, q))
    return plans


class HyperbolicityBounds(NamedTuple):
    """Earlier degree bounds for hyperbolicity against the Schur-power route."""
    N: int
    d_N: int
    d_N_prime: Optional[int]
    majorant: Optional[int]

    @property
    def improves(self) -> Optional[bool]:
        """``d_N' < d_N``"""
        return None if self.d_N_prime is None else self.d_N_prime < self.d_N

    @property
    def within_majorant(self) -> Optional[bool]:
        """``d_N' <= ⌊2(N+1)((N-2)/2)^{2N+2}⌋``"""
        return None if self.d_N_prime is None else self.d_N_prime <= self.majorant

    def to_json(self):
        def opt(v):
            return None if v is None else str(v)

        return {
            'N': self.N,
            'd_N': str(self.d_N),
            'd_N_approx': scientific(self.d_N),
            'd_N_prime': opt(self.d_N_prime),
            'd_N_prime_approx': None if self.d_N_prime is None else scientific(self.d_N_prime),
            'majorant': opt(self.majorant),
            'improves': self.improves,
            'within_majorant': self.within_majorant,
        }


@set_module_as('schurample')
def hyperbolicity_bounds(N: int) -> HyperbolicityBounds:
    """
    ``d_N = (N+1)^{2N+6}`` and, for ``N >= 3``,
    ``d_N' = 4(h+1)(N + h(N-h))^{N+1}`` with ``h = ⌈N/2 - 1⌉``.

    The comparison with the claimed majorant ``2(N+1)((N-2)/2)^{2N+2}`` is
    report-only; it does not hold for small ``N``.
    """
    if N < 1:
        raise PreconditionError(f'Need N >= 1, got {N}.')
    d_N = (N + 1) ** (2 * N + 6)
    if N < 3:
        return HyperbolicityBounds(N, d_N, None, None)
    h = (N - 1) // 2
    d_N_prime = 4 * (h + 1) * (N + h * (N - h)) ** (N + 1)
    majorant = math.floor(2 * (N + 1) * Fraction(N - 2, 2) ** (2 * N + 2))
    return HyperbolicityBounds(N, d_N, d_N_prime, majorant)


@set_module_as('schurample')
def infinitesimal_hyperbolicity_bound(N: int, c: int, k: int) -> int:
    """
    Degrees above this value give ``k``-infinitesimally hyperbolic generic
    complete intersections: :func:`corollary_bound` for ``λ = (1^k)``.
    """
    if k < 1:
        raise PreconditionError(f'Need k >= 1, got {k}.')
    return corollary_bound(N, c, (1,) * k)


class ExceptionalAudit(NamedTuple):
    """The two inequalities that keep the exceptional locus out of generic intersections."""
    N: int
    k: int
    deltas: Tuple[int, ...]
    delta_ok: bool
    stratum_violations: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.delta_ok and not self.stratum_violations

    def to_json(self):
        return {
            'N': self.N,
            'k': self.k,
            'deltas': [str(d) for d in self.deltas],
            'delta_ok': self.delta_ok,
            'stratum_violations': list(self.stratum_violations),
            'passed': self.passed,
        }


@set_module_as('schurample')
def audit_exceptional_dimension(N: int, k: int, deltas: Sequence[int]) -> ExceptionalAudit:
    """
    Check ``min δ_p >= N + k(N-k)`` and ``N + k(N-k) >= k₀ + k(N-k)`` for every
    stratum dimension ``1 <= k₀ <= N``.
    """
    if not 1 <= k <= N - 1:
        raise PreconditionError(f'Need 1 <= k <= N-1, got k={k}, N={N}.')
    deltas = tuple(int(d) for d in deltas)
    if not deltas:
        raise PreconditionError('Need at least one δ.')
    total = grassmannian_total_dim(N, k)
    violations = tuple(k0 for k0 in range(1, N + 1) if total < k0 + k * (N - k))
    return ExceptionalAudit(N, k, deltas, min(deltas) >= total, violations)
