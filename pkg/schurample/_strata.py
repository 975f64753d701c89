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
Stratification of ``P^N`` by vanishing coordinates and the rank of ``φ_η``.

``M_I`` is the set of points whose vanishing coordinates are exactly those in
``I``. Over ``M_I``, ``Σ(I, I')`` collects the frames whose tangent vectors are
killed by ``dξ_i`` exactly for ``i ∈ I'``.
"""

import itertools
import logging
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from . import _environ as environ
from ._errors import PreconditionError, SamplingError, SizeBudgetError
from ._linalg import is_independent, rank as exact_rank
from ._misc import binomial, set_module_as
from ._poly import HomogPoly, MultiIndex, enumerate_multi_indices, support
from ._scalar import Field, QQ
from ._universal import FlagFrame, Instance, ParameterPoint, build_A

__all__ = [
    'StratumLabel',
    'stratum_labels',
    'on_stratum',
    'in_sigma',
    'sample_frame',
    'sample_sigma',
    'sigma_dimension',
    'sampler_parameter_count',
    'rank_formula',
    'open_set_display',
    'PhiEtaMatrix',
    'phi_eta_matrix',
    'RestrictionCheck',
    'restriction_check',
    'restriction_rank',
    'RankOracleCell',
    'rank_oracle_grid',
    'classify_block',
    'StarReport',
    'check_star',
    'OpenSetAudit',
    'audit_open_set_inequalities',
]

logger = logging.getLogger(__name__)


class StratumLabel:
    """
    The pair ``(I, I')`` indexing ``M_I`` and ``Σ(I, I')``.

    Parameters
    ----------
    N : int
        Dimension of ``P^N``; indices live in ``{0, ..., N}``.
    I : iterable of int
        Vanishing coordinates, ``|I| < N``.
    I_prime : iterable of int, optional
        Subset of ``I``; ``None`` when only ``M_I`` matters.
    """
    __module__ = 'schurample'

    def __init__(self, N: int, I: Iterable[int], I_prime: Optional[Iterable[int]] = None):
        I = tuple(sorted(set(int(i) for i in I)))
        if any(not 0 <= i <= N for i in I):
            raise PreconditionError(f'Indices of I must lie in 0..{N}, got {I}.')
        if len(I) >= N:
            raise PreconditionError(f'Unsatisfiable stratum: |I| = {len(I)} must be smaller than N = {N}.')
        if I_prime is not None:
            I_prime = tuple(sorted(set(int(i) for i in I_prime)))
            if not set(I_prime) <= set(I):
                raise PreconditionError(f"I' = {I_prime} must be a subset of I = {I}.")
        self.N = N
        self.I = I
        self.I_prime = I_prime

    @property
    def k0(self) -> int:
        """``dim M_I = N - |I|``"""
        return self.N - len(self.I)

    @property
    def k1(self) -> int:
        """``N - |I'|``; equals ``N`` when ``I'`` is not given."""
        return self.N - len(self.I_prime or ())

    @property
    def chart(self) -> int:
        """The first coordinate not in ``I``, used as the sampling chart."""
        return next(i for i in range(self.N + 1) if i not in self.I)

    def __eq__(self, other):
        if not isinstance(other, StratumLabel):
            return NotImplemented
        return (self.N, self.I, self.I_prime) == (other.N, other.I, other.I_prime)

    def __hash__(self):
        return hash((self.N, self.I, self.I_prime))

    def __repr__(self):
        return f'StratumLabel(N={self.N}, I={self.I}, I_prime={self.I_prime})'

    def to_json(self):
        return {'I': list(self.I), 'Iprime': None if self.I_prime is None else list(self.I_prime)}


@set_module_as('schurample')
def stratum_labels(N: int, k: Optional[int] = None) -> List[StratumLabel]:
    """
    All labels with ``|I| < N`` in a fixed order (by size, then lexicographic).

    Without ``k`` only ``I`` is set. With ``k`` every ``I' ⊆ I`` with
    ``k₁ = N - |I'| >= k`` is listed as well.
    """
    labels = []
    for size in range(N):
        for I in itertools.combinations(range(N + 1), size):
            if k is None:
                labels.append(StratumLabel(N, I))
                continue
            for size_prime in range(size + 1):
                if N - size_prime < k:
                    continue
                for I_prime in itertools.combinations(I, size_prime):
                    labels.append(StratumLabel(N, I, I_prime))
    return labels


def _affine_position(j: int, chart: int) -> int:
    # homogeneous index j (≠ chart) to its position among the chart coordinates
    return j if j < chart else j - 1


@set_module_as('schurample')
def on_stratum(x: Sequence, I: Iterable[int]) -> bool:
    """``x ∈ M_I``: ``x_i = 0`` exactly for ``i ∈ I``."""
    I = set(I)
    return all((x[i] == 0) == (i in I) for i in range(len(x)))


@set_module_as('schurample')
def in_sigma(frame: FlagFrame, label: StratumLabel) -> bool:
    """
    ``η ∈ Σ(I, I')``: ``x ∈ M_I`` and, for ``i ∈ I``, all ``dξ_i(x, v_j)``
    vanish exactly when ``i ∈ I'``.
    """
    if not on_stratum(frame.x, label.I):
        return False
    I_prime = set(label.I_prime or ())
    for i in label.I:
        position = _affine_position(i, frame.chart)
        killed = all(v[position] == 0 for v in frame.vectors)
        if killed != (i in I_prime):
            return False
    return True


def _sample_point(label: StratumLabel, rng, field: Field, height: int) -> tuple:
    chart = label.chart
    x = []
    for i in range(label.N + 1):
        if i in label.I:
            x.append(field.zero)
        elif i == chart:
            x.append(field.one)
        else:
            x.append(field.random_nonzero(rng, height))
    return tuple(x)


def _free_positions(label: StratumLabel) -> Tuple[int, ...]:
    """Chart positions a tangent vector of ``Σ(I, I')`` may use."""
    chart = label.chart
    blocked = {_affine_position(i, chart) for i in (label.I_prime or ())}
    return tuple(p for p in range(label.N) if p not in blocked)


@set_module_as('schurample')
def sample_frame(
    instance: Instance,
    label: StratumLabel,
    rng: np.random.Generator,
    field: Field = QQ,
    height: Optional[int] = None,
    max_retries: Optional[int] = None,
) -> FlagFrame:
    """
    A frame with ``x ∈ M_I`` and ``k`` generic independent tangent vectors.
    """
    height = environ.get('height') if height is None else height
    max_retries = environ.get('max_retries') if max_retries is None else max_retries
    x = _sample_point(label, rng, field, height)
    for _ in range(max_retries):
        vectors = [[field.random_element(rng, height) for _ in range(label.N)] for _ in range(instance.k)]
        if is_independent(vectors, field):
            return FlagFrame(label.chart, x, vectors, field)
    raise SamplingError(f'No independent tangent vectors after {max_retries} draws for {label}.')


@set_module_as('schurample')
def sample_sigma(
    instance: Instance,
    label: StratumLabel,
    rng: np.random.Generator,
    field: Field = QQ,
    height: Optional[int] = None,
    max_retries: Optional[int] = None,
) -> FlagFrame:
    """
    A random frame of ``Σ(I, I')``.

    The point has random nonzero coordinates off ``I``. The tangent vectors
    have zero entries at the ``I'`` coordinates and random entries elsewhere;
    a draw is kept once the vectors are independent and every ``i ∈ I \\ I'``
    is seen by some ``v_j``. Membership is re-verified with :func:`in_sigma`.

    Raises
    ------
    PreconditionError
        If ``I'`` is missing or ``k₁ < k``.
    SamplingError
        If ``max_retries`` draws were all degenerate.
    """
    if label.I_prime is None:
        raise PreconditionError(f"Sampling Σ(I, I') requires I' in {label}.")
    if label.k1 < instance.k:
        raise PreconditionError(f'k₁ = {label.k1} is smaller than k = {instance.k}.')
    height = environ.get('height') if height is None else height
    max_retries = environ.get('max_retries') if max_retries is None else max_retries
    x = _sample_point(label, rng, field, height)
    free = _free_positions(label)
    for attempt in range(max_retries):
        vectors = []
        for _ in range(instance.k):
            v = [field.zero] * label.N
            for p in free:
                v[p] = field.random_element(rng, height)
            vectors.append(v)
        if not is_independent(vectors, field):
            continue
        frame = FlagFrame(label.chart, x, vectors, field)
        if in_sigma(frame, label):
            return frame
        logger.debug('rejected draw %d for %r', attempt, label)
    raise SamplingError(f'No frame of {label} after {max_retries} draws.')


@set_module_as('schurample')
def sigma_dimension(N: int, k: int, label: StratumLabel) -> int:
    """``dim Σ(I, I') = k₀ + k(k₁ - k)``"""
    return label.k0 + k * (label.k1 - k)


@set_module_as('schurample')
def sampler_parameter_count(N: int, k: int, label: StratumLabel) -> int:
    """
    Number of free parameters of :func:`sample_sigma`, modulo changes of basis
    of the tangent vectors: point coordinates plus ``k·(#free positions) - k²``.
    """
    point = sum(1 for i in range(N + 1) if i not in label.I and i != label.chart)
    return point + k * len(_free_positions(label)) - k * k


@set_module_as('schurample')
def rank_formula(k: int, k0: int, k1: int, delta: int) -> int:
    """
    ``rank φ_η = (k+1)·C(k₀+δ, k₀) + (k₁-k₀)·C(k₀+δ-1, k₀)`` on ``Σ(I, I')``.
    """
    if not 1 <= k0 <= k1 or delta < 1:
        raise PreconditionError(f'Need 1 <= k0 <= k1 and δ >= 1, got k0={k0}, k1={k1}, δ={delta}.')
    return (k + 1) * binomial(k0 + delta, k0) + (k1 - k0) * binomial(k0 + delta - 1, k0)


class PhiEtaMatrix:
    """
    Matrix of the linear map ``φ_η : S → (k^{k+1})^{N_δ}, a ↦ A(a; η)``.

    Columns are indexed by ``(J, m)`` where ``a_J = ξ^m`` runs through the
    monomial basis of ``H⁰(O(ε))``; rows by ``(J, row of A)``. Both follow
    :func:`enumerate_multi_indices` for ``J``.
    """
    __module__ = 'schurample'

    def __init__(self, entries: np.ndarray, blocks: Sequence[MultiIndex], n_rows_block: int,
                 n_cols_block: int, field: Field = QQ):
        self.entries = entries
        self.blocks = tuple(blocks)
        self.n_rows_block = n_rows_block
        self.n_cols_block = n_cols_block
        self.field = field
        self._block_index = {J: b for b, J in enumerate(self.blocks)}

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def _rows(self, J) -> slice:
        b = self._block_index[tuple(J)]
        return slice(b * self.n_rows_block, (b + 1) * self.n_rows_block)

    def _cols(self, J) -> slice:
        b = self._block_index[tuple(J)]
        return slice(b * self.n_cols_block, (b + 1) * self.n_cols_block)

    def block(self, J: MultiIndex) -> np.ndarray:
        return self.entries[self._rows(J), self._cols(J)]

    def block_rank(self, J: MultiIndex) -> int:
        return exact_rank(self.block(J), self.field)

    def off_block_nonzeros(self) -> int:
        mask = np.ones(self.entries.shape, dtype=bool)
        for J in self.blocks:
            mask[self._rows(J), self._cols(J)] = False
        return int(sum(1 for v in self.entries[mask] if v != 0))

    def is_block_diagonal(self) -> bool:
        return self.off_block_nonzeros() == 0

    def rows_rank(self, blocks: Iterable[MultiIndex]) -> int:
        """Rank of the rows belonging to the given blocks."""
        blocks = [tuple(J) for J in blocks]
        if self.is_block_diagonal():
            return sum(self.block_rank(J) for J in blocks)
        if not blocks:
            return 0
        rows = np.concatenate([self.entries[self._rows(J), :] for J in blocks], axis=0)
        return exact_rank(rows, self.field)

    def rank(self) -> int:
        """Exact rank; block ranks are added once the off-block part is verified to vanish."""
        if self.is_block_diagonal():
            return sum(self.block_rank(J) for J in self.blocks)
        return exact_rank(self.entries, self.field)


@set_module_as('schurample')
def phi_eta_matrix(instance: Instance, frame: FlagFrame, budget: Optional[int] = None) -> PhiEtaMatrix:
    """
    The explicit matrix of ``φ_η`` at the frame ``η``.

    Each column is obtained by evaluating :func:`build_A` on one basis vector
    of ``S``, so the block-diagonal shape is observed, not assumed.

    Raises
    ------
    SizeBudgetError
        If the matrix would hold more than ``budget`` entries
        (default: the ``phi_budget`` setting).
    """
    budget = environ.get('phi_budget') if budget is None else budget
    blocks = instance.multi_indices
    monomials = enumerate_multi_indices(instance.N, instance.epsilon)
    n_rows_block = instance.k + 1
    n_cols_block = len(monomials)
    shape = (n_rows_block * len(blocks), n_cols_block * len(blocks))
    if shape[0] * shape[1] > budget:
        raise SizeBudgetError(f'φ_η would have {shape[0] * shape[1]} entries, above the budget {budget}.')
    entries = np.empty(shape, dtype=object)
    entries[...] = frame.field.zero
    for b, J in enumerate(blocks):
        for q, m in enumerate(monomials):
            a = ParameterPoint(instance, {J: HomogPoly.monomial(m, frame.field.one)})
            A = build_A(instance, a, frame).entries
            # A is (k+1) x N_δ; row (J', i) of φ_η is entry (i, J') of A
            entries[:, b * n_cols_block + q] = A.T.reshape(-1)
    return PhiEtaMatrix(entries, blocks, n_rows_block, n_cols_block, frame.field)


class RestrictionCheck(NamedTuple):
    """Rank of the rows of ``φ_η`` surviving the restriction to ``P(k_I)``."""
    rank: int
    expected: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.expected


@set_module_as('schurample')
def restriction_check(phi: PhiEtaMatrix, label: StratumLabel, k: int, delta: int) -> RestrictionCheck:
    """
    Compose ``φ_η`` with the restriction to ``{ξ_i = 0, i ∈ I}``: only the blocks
    with ``[J] ∩ I = ∅`` survive, and the composite is onto
    ``H⁰(O(δ))^{k+1}`` exactly when their rank is ``(k+1)·C(k₀+δ, k₀)``.
    """
    expected = (k + 1) * binomial(label.k0 + delta, label.k0)
    return RestrictionCheck(restriction_rank(phi, label), expected)


@set_module_as('schurample')
def restriction_rank(phi: PhiEtaMatrix, label: StratumLabel) -> int:
    """Rank of the rows of ``φ_η`` whose block ``J`` avoids ``I``."""
    I = set(label.I)
    return phi.rows_rank([J for J in phi.blocks if not set(support(J)) & I])


@set_module_as('schurample')
def classify_block(J: MultiIndex, label: StratumLabel, k: int) -> int:
    """
    Expected rank of the ``J`` block of ``φ_η`` for ``η ∈ Σ(I, I')``.

    ``k+1`` when ``[J] ∩ I = ∅``; 1 when ``[J] ∩ I = {i}`` with ``j_i = 1``
    and ``i ∈ I \\ I'``; 0 otherwise. Without ``I'`` the vectors are generic,
    i.e. ``I' = ∅``.
    """
    hit = [i for i in support(J) if i in label.I]
    if not hit:
        return k + 1
    I_prime = set(label.I_prime or ())
    if len(hit) == 1 and J[hit[0]] == 1 and hit[0] not in I_prime:
        return 1
    return 0


class StarReport(NamedTuple):
    """Outcome of sampling condition ``(*, I)``; see :func:`check_star`."""
    label: StratumLabel
    samples: int
    full_rank: int
    counterexamples: Tuple[dict, ...]
    seed: int
    field: Field

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self):
        out = {
            'condition': 'star',
            'I': list(self.label.I),
            'Iprime': list(self.label.I_prime or ()),
            'samples': self.samples,
            'full_rank': self.full_rank,
            'counterexamples': list(self.counterexamples),
            'seed': self.seed,
            'field': self.field.label,
        }
        if self.field.probabilistic:
            out['prime'] = str(self.field.p)
        return out


@set_module_as('schurample')
def check_star(
    instance: Instance,
    a: ParameterPoint,
    label: StratumLabel,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    field: Field = QQ,
    height: Optional[int] = None,
) -> StarReport:
    """
    Look for frames over ``M_I`` where ``A(a; x, v)`` drops rank.

    Each sample draws its own generator from ``SeedSequence(seed).spawn``,
    so the report only depends on the seed. A report without
    counterexamples is evidence, never a proof, that ``a`` satisfies ``(*, I)``.

    Parameters
    ----------
    instance : Instance
        The family.
    a : ParameterPoint
        The parameter point under test.
    label : StratumLabel
        ``I`` (and optionally ``I'``, in which case frames come from
        :func:`sample_sigma`).
    samples : int, optional
        Number of frames; the ``samples`` setting by default.
    seed : int, optional
        Root seed; the ``seed`` setting by default.
    """
    samples = environ.get('samples') if samples is None else samples
    seed = environ.get('seed') if seed is None else seed
    if label.N != instance.N:
        raise PreconditionError(f'{label} does not live in P^{instance.N}.')
    sampler = sample_frame if label.I_prime is None else sample_sigma
    full = 0
    counterexamples = []
    for n, child in enumerate(np.random.SeedSequence(seed).spawn(samples)):
        rng = np.random.default_rng(child)
        frame = sampler(instance, label, rng, field, height)
        r = build_A(instance, a, frame).rank()
        if r == instance.k + 1:
            full += 1
        else:
            logger.info('sample %d of %r: rank %d < %d', n, label, r, instance.k + 1)
            counterexamples.append({'sample': n, 'rank': r, 'frame': frame.to_json()})
    logger.debug('%r: %d/%d full rank', label, full, samples)
    return StarReport(label, samples, full, tuple(counterexamples), seed, field)


class OpenSetAudit(NamedTuple):
    """Violations found by :func:`audit_open_set_inequalities`."""
    k: int
    delta: int
    report_only: bool
    checked: int
    display_violations: Tuple[dict, ...]
    zalpha_violations: Tuple[int, ...]
    helper_violations: Tuple[dict, ...]

    @property
    def passed(self) -> bool:
        return not (self.display_violations or self.zalpha_violations or self.helper_violations)

    def to_json(self):
        return {
            'k': self.k,
            'delta': self.delta,
            'report_only': self.report_only,
            'checked': self.checked,
            'display_violations': list(self.display_violations),
            'zalpha_violations': list(self.zalpha_violations),
            'helper_violations': list(self.helper_violations),
            'passed': self.passed,
        }


def _as_range(r: Union[int, Iterable[int]]) -> Tuple[int, ...]:
    return tuple(range(1, r + 1)) if isinstance(r, int) else tuple(r)


def open_set_display(k: int, delta: int, k0: int, k1: int) -> int:
    """
    ``(k+1)k₀ - C(k₀+δ, k₀) + k - k² + (k₁-k₀)(k - C(k₀+δ-1, k₀))``, the
    dimension excess whose negativity makes the bad locus miss a generic ``a``.
    """
    return ((k + 1) * k0 - binomial(k0 + delta, k0) + k - k * k
            + (k1 - k0) * (k - binomial(k0 + delta - 1, k0)))


@set_module_as('schurample')
def audit_open_set_inequalities(
    k: int,
    delta: int,
    k0_range: Union[int, Iterable[int]],
    k1_range: Union[int, Iterable[int]],
) -> OpenSetAudit:
    """
    Evaluate the numeric inequalities behind the genericity of ``(*)`` for ``δ >= k+1``.

    * :func:`open_set_display` is strictly negative for ``1 <= k₀ <= k₁``;
    * ``k₀ - C(k₀+δ, k₀) < 0`` when ``δ >= 2``;
    * ``C(n+M, n) >= nM`` on the range, strictly for ``n, M >= 2``.

    For ``δ < k+1`` the audit still runs but is flagged ``report_only``.
    """
    k0s, k1s = _as_range(k0_range), _as_range(k1_range)
    display, checked = [], 0
    for k0 in k0s:
        for k1 in k1s:
            if not 1 <= k0 <= k1:
                continue
            checked += 1
            value = open_set_display(k, delta, k0, k1)
            if value >= 0:
                display.append({'k0': k0, 'k1': k1, 'value': value})
    zalpha = tuple(k0 for k0 in k0s if delta >= 2 and k0 - binomial(k0 + delta, k0) >= 0)
    helper = []
    top = max(k0s + k1s) if (k0s or k1s) else 0
    for n in range(1, top + 1):
        for M in range(1, top + 1):
            lhs, rhs = binomial(n + M, n), n * M
            if lhs < rhs or (n >= 2 and M >= 2 and lhs == rhs):
                helper.append({'n': n, 'M': M, 'lhs': lhs, 'rhs': rhs})
    return OpenSetAudit(k, delta, delta < k + 1, checked, tuple(display), zalpha, tuple(helper))


class RankOracleCell(NamedTuple):
    """Explicit ranks of ``φ_η`` on one ``(k₀, k₁)`` cell against :func:`rank_formula`."""
    label: StratumLabel
    expected: int
    ranks: Tuple[int, ...]
    block_diagonal: bool

    @property
    def passed(self) -> bool:
        return self.block_diagonal and all(r == self.expected for r in self.ranks)

    def to_json(self):
        return {
            'I': list(self.label.I),
            'Iprime': list(self.label.I_prime or ()),
            'k0': self.label.k0,
            'k1': self.label.k1,
            'expected': self.expected,
            'ranks': list(self.ranks),
            'block_diagonal': self.block_diagonal,
            'passed': self.passed,
        }


@set_module_as('schurample')
def rank_oracle_grid(
    instance: Instance,
    frames: int = 10,
    seed: Optional[int] = None,
    field: Field = QQ,
    height: Optional[int] = None,
    budget: Optional[int] = None,
) -> List[RankOracleCell]:
    """
    Compare ``rank φ_η`` with :func:`rank_formula` on every admissible ``(k₀, k₁)``.

    One label represents each cell (the first one :func:`stratum_labels`
    lists); ``frames`` frames of ``Σ(I, I')`` are drawn for it.
    """
    seed = environ.get('seed') if seed is None else seed
    representatives = {}
    for label in stratum_labels(instance.N, instance.k):
        representatives.setdefault((label.k0, label.k1), label)
    cells = []
    streams = np.random.SeedSequence(seed).spawn(len(representatives))
    for (k0, k1), child in zip(sorted(representatives), streams):
        label = representatives[(k0, k1)]
        expected = rank_formula(instance.k, k0, k1, instance.delta)
        ranks, diagonal = [], True
        for grandchild in child.spawn(frames):
            frame = sample_sigma(instance, label, np.random.default_rng(grandchild), field, height)
            phi = phi_eta_matrix(instance, frame, budget)
            diagonal = diagonal and phi.is_block_diagonal()
            ranks.append(phi.rank())
        cell = RankOracleCell(label, expected, tuple(ranks), diagonal)
        if not cell.passed:
            logger.info('rank oracle mismatch on %r: %s vs %d', label, ranks, expected)
        cells.append(cell)
    return cells
