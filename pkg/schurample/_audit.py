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
Seeded verification suites behind ``schurample verify``.

Every check returns a :class:`Verdict`. A check draws its randomness from
``SeedSequence(seed).spawn``, one child per sample, so that a verdict is a
function of its arguments only.
"""

import itertools
import logging
import warnings
from typing import Callable, Dict, NamedTuple, Optional, Tuple

import numpy as np

from . import _environ as environ
from ._bounds import audit_exceptional_dimension, hyperbolicity_bounds
from ._errors import PreconditionError, RankDeficiencyError
from ._misc import jsonable
from ._partition import Partition, flag_dim, grassmannian_total_dim, optimality_audit, partitions_up_to
from ._plucker import (
    PluckerSelector,
    cocycle_check,
    delta_transition_check,
    minor_transition_check,
    tangent_frame,
    verify_psi_in_Y,
)
from ._poly import HomogPoly
from ._scalar import Field, get_field
from ._strata import (
    StratumLabel,
    audit_open_set_inequalities,
    check_star,
    rank_oracle_grid,
    sample_frame,
    sampler_parameter_count,
    sigma_dimension,
    stratum_labels,
)
from ._universal import Instance, ParameterPoint, random_parameter_point

__all__ = [
    'CHECKS',
    'Verdict',
    'run_check',
]

logger = logging.getLogger(__name__)


class Verdict(NamedTuple):
    """
    Outcome of one verification suite.

    ``passed`` is ``False`` as soon as one counterexample was recorded in
    ``failures``; ``samples`` counts the configurations that were examined.
    """
    name: str
    passed: bool
    samples: int
    failures: Tuple[dict, ...]
    details: dict
    seed: int
    field: Field

    def to_json(self):
        out = {
            'check': self.name,
            'passed': self.passed,
            'samples': self.samples,
            'failures': jsonable(list(self.failures)),
            'details': jsonable(self.details),
            'seed': self.seed,
            'field': self.field.label,
        }
        if self.field.probabilistic:
            out['prime'] = str(self.field.p)
        return out


def _child_seed(child: np.random.SeedSequence) -> int:
    return int(child.generate_state(1, dtype=np.uint32)[0])


def _instance(params: dict, **defaults) -> Instance:
    values = dict(defaults)
    values.update({k: params[k] for k in ('N', 'k', 'delta', 'epsilon', 'r') if params.get(k) is not None})
    return Instance(values['N'], values['k'], values['delta'], values['epsilon'], values.get('r', 1))


def _star_at_point(instance, a, children, field, samples, height):
    failures, per_label = [], []
    for label, child in zip(stratum_labels(instance.N), children):
        report = check_star(instance, a, label, samples, _child_seed(child), field, height)
        per_label.append({'I': list(label.I), 'full_rank': report.full_rank, 'samples': report.samples})
        failures.extend(dict(c, I=list(label.I)) for c in report.counterexamples)
    return failures, per_label


def _star_parameters(instance, child, field, height, zero):
    if zero:
        return ParameterPoint.zeros(instance)
    return random_parameter_point(instance, np.random.default_rng(child), field, height)


_STAR_GRIDS = {
    'small': dict(N=(2, 3), k=(1,)),
    'full': dict(N=(2, 3, 4), k=(1, 2)),
}


def _check_star(seed, field, samples, height, params):
    zero = bool(params.get('zero_params'))
    grid, points = params.get('grid'), params.get('points')
    if grid is None and points is None:
        instance = _instance(params, N=3, k=1, delta=2, epsilon=1)
        n_labels = len(stratum_labels(instance.N))
        children = np.random.SeedSequence(seed).spawn(n_labels + 1)
        a = _star_parameters(instance, children[0], field, height, zero)
        failures, per_label = _star_at_point(instance, a, children[1:], field, samples, height)
        return samples * n_labels, failures, {'instance': instance.to_json(), 'labels': per_label}

    # sweep: `points` parameter points per instance, degree δ = k + 1
    grid = grid or 'full'
    if grid not in _STAR_GRIDS:
        raise PreconditionError(f'Unknown grid {grid!r}, expected one of {sorted(_STAR_GRIDS)}.')
    points = 20 if points is None else points
    if points < 1:
        raise PreconditionError(f'Need at least one parameter point, got {points}.')
    cfg = _STAR_GRIDS[grid]
    instances = [
        Instance(N, k, k + 1, params.get('epsilon') or 1, params.get('r') or 1)
        for N, k in itertools.product(cfg['N'], cfg['k'])
        if k <= N - 1
    ]
    failures, rows, total = [], [], 0
    for instance, inst_child in zip(instances, np.random.SeedSequence(seed).spawn(len(instances))):
        n_labels = len(stratum_labels(instance.N))
        for p, child in enumerate(inst_child.spawn(points)):
            children = child.spawn(n_labels + 1)
            a = _star_parameters(instance, children[0], field, height, zero)
            found, per_label = _star_at_point(instance, a, children[1:], field, samples, height)
            total += samples * n_labels
            rows.append({'instance': instance.to_json(), 'point': p,
                         'full_rank': sum(row['full_rank'] for row in per_label)})
            if found:
                logger.info('%r, point %d: %d counterexamples', instance, p, len(found))
                parameters = a.to_json(field)
                failures.extend(dict(c, instance=instance.to_json(), point=p, parameters=parameters)
                                for c in found)
    return total, failures, {'grid': grid, 'points': points, 'cells': rows}


_GRIDS = {
    'small': dict(N=(2, 3), k=(1,), delta=(2,), epsilon=(1,), frames=2),
    'full': dict(N=(2, 3, 4), k=(1, 2), delta=(2, 3), epsilon=(1, 2), frames=10),
}


def _check_rank_oracle(seed, field, samples, height, params):
    grid = params.get('grid') or 'small'
    if grid not in _GRIDS:
        raise PreconditionError(f'Unknown grid {grid!r}, expected one of {sorted(_GRIDS)}.')
    cfg = _GRIDS[grid]
    frames = samples if params.get('samples_given') else cfg['frames']
    instances = [
        Instance(N, k, delta, epsilon)
        for N, k, delta, epsilon in itertools.product(cfg['N'], cfg['k'], cfg['delta'], cfg['epsilon'])
        if k <= N - 1
    ]
    children = np.random.SeedSequence(seed).spawn(len(instances))
    failures, cells, total = [], [], 0
    for instance, child in zip(instances, children):
        for cell in rank_oracle_grid(instance, frames, _child_seed(child), field, height, params.get('budget')):
            row = dict(cell.to_json(), instance=instance.to_json())
            cells.append(row)
            total += len(cell.ranks)
            if not cell.passed:
                failures.append(row)
    return total, failures, {'grid': grid, 'cells': cells}


def _random_point(rng, n_vars, field, height):
    return tuple(field.random_nonzero(rng, height) for _ in range(n_vars))


def _check_cocycle(seed, field, samples, height, params):
    failures = []
    for n, child in enumerate(np.random.SeedSequence(seed).spawn(samples)):
        rng = np.random.default_rng(child)
        N = params.get('N') or int(rng.integers(1, 4))
        l = params.get('l') or int(rng.integers(1, 5))
        d = int(rng.integers(1, 4))
        sections = [HomogPoly.random(N + 1, d, rng, field, height) for _ in range(l)]
        chart_from, chart_to = (int(i) for i in rng.choice(N + 1, size=2, replace=False))
        x = _random_point(rng, N + 1, field, height)
        vectors = [[field.random_element(rng, height) for _ in range(N)] for _ in range(l - 1)]
        verdict = cocycle_check(sections, chart_from, chart_to, x, vectors, field)
        if not verdict.passed:
            logger.info('cocycle sample %d failed', n)
            failures.append({'sample': n, 'N': N, 'l': l, 'degree': d, 'verdict': verdict.to_json()})
    return samples, failures, {}


def _check_psi_in_y(seed, field, samples, height, params):
    instance = _instance(params, N=2, k=1, delta=2, epsilon=1)
    failures = []
    for n, child in enumerate(np.random.SeedSequence(seed).spawn(samples)):
        rng = np.random.default_rng(child)
        a, frame = tangent_frame(instance, rng, field, height)
        verdict = verify_psi_in_Y(instance, a, frame)
        if not verdict.passed:
            failures.append({'sample': n, 'frame': frame.to_json(), 'verdict': verdict.to_json()})
    return samples, failures, {'instance': instance.to_json()}


def _check_minor_transition(seed, field, samples, height, params):
    instance = _instance(params, N=2, k=1, delta=2, epsilon=1)
    l = params.get('l') or instance.k + 1
    if not 1 <= l <= instance.k + 1:
        raise PreconditionError(f'Minor size must be in 1..{instance.k + 1}, got {l}.')
    lam = Partition((2,) + (1,) * (instance.k - 1))
    label = StratumLabel(instance.N, ())
    failures, skipped = [], 0
    for n, child in enumerate(np.random.SeedSequence(seed).spawn(samples)):
        rng = np.random.default_rng(child)
        a = random_parameter_point(instance, rng, field, height)
        frame = sample_frame(instance, label, rng, field, height)
        chart_to = int(rng.integers(1, instance.N + 1))
        picks = sorted(int(i) for i in rng.choice(instance.n_columns, size=l, replace=False))
        sel = PluckerSelector([instance.multi_indices[p] for p in picks])
        minor = minor_transition_check(instance, a, sel, frame.chart, chart_to, frame.x, frame.vectors, field)
        if not minor.passed:
            failures.append({'sample': n, 'kind': 'minor', 'verdict': minor.to_json()})
        try:
            products = delta_transition_check(instance, a, frame, lam, chart_to, count=3)
        except RankDeficiencyError:
            skipped += 1
            logger.debug('sample %d: frame outside the (*) locus, product law skipped', n)
            continue
        for verdict in products:
            if not verdict.passed:
                failures.append({'sample': n, 'kind': 'product', 'verdict': verdict.to_json()})
    return samples, failures, {'instance': instance.to_json(), 'l': l, 'lambda': lam.to_json(),
                               'product_skipped': skipped}


def _check_dims(seed, field, samples, height, params):
    failures, checked = [], 0
    for k in range(1, 5):
        audit = audit_open_set_inequalities(k, k + 1, 12, 12)
        checked += audit.checked
        if not audit.passed:
            failures.append({'audit': 'open-set', **audit.to_json()})
    for N in range(2, 5):
        for k in range(1, N):
            for label in stratum_labels(N, k):
                checked += 1
                if sigma_dimension(N, k, label) != sampler_parameter_count(N, k, label):
                    failures.append({'audit': 'sigma-dimension', 'N': N, 'k': k, **label.to_json()})
            checked += 1
            if flag_dim((k,), N) + N != grassmannian_total_dim(N, k):
                failures.append({'audit': 'grassmannian', 'N': N, 'k': k})
            exceptional = audit_exceptional_dimension(N, k, (grassmannian_total_dim(N, k),))
            checked += 1
            if not exceptional.passed:
                failures.append({'audit': 'exceptional', **exceptional.to_json()})
    for lam in partitions_up_to(6):
        for N in range(2, 9):
            c = 1
            while c * (lam.length + 1) < N:
                report = optimality_audit(N, c, lam, c + 3)
                checked += 1
                if not report.passed:
                    failures.append({'audit': 'optimality', **report.to_json()})
                c += 1
    for N in range(10, 201):
        checked += 1
        if not hyperbolicity_bounds(N).improves:
            failures.append({'audit': 'hyperbolicity', 'N': N})
    return checked, failures, {}


CHECKS: Dict[str, Callable] = {
    'star': _check_star,
    'rank-oracle': _check_rank_oracle,
    'cocycle': _check_cocycle,
    'psi-in-Y': _check_psi_in_y,
    'minor-transition': _check_minor_transition,
    'dims': _check_dims,
}


def run_check(
    name: str,
    seed: Optional[int] = None,
    field=None,
    samples: Optional[int] = None,
    height: Optional[int] = None,
    **params
) -> Verdict:
    """
    Run one verification suite.

    Parameters
    ----------
    name : str
        One of ``star``, ``rank-oracle``, ``cocycle``, ``psi-in-Y``,
        ``minor-transition`` and ``dims``.
    seed : int, optional
        Root seed, resolved through :func:`schurample.environ.resolve_seed`.
    field : str, int or Field, optional
        Scalar field; the ``field`` setting by default.
    samples : int, optional
        Sample count; the ``samples`` setting by default.
    height : int, optional
        Coefficient height; the ``height`` setting by default.
    **params
        Instance parameters (``N``, ``k``, ``delta``, ``epsilon``, ``r``,
        ``l``), ``grid`` for the rank oracle and the ``star`` sweep, ``points``
        (parameter points per instance) and ``zero_params`` for ``star``
        and ``budget`` for the size guard.
    """
    if name not in CHECKS:
        raise PreconditionError(f'Unknown check {name!r}, expected one of {sorted(CHECKS)}.')
    seed = environ.resolve_seed(seed)
    field = get_field(field)
    if field.probabilistic:
        warnings.warn(f'Results over {field.name} are probabilistic: ranks may drop modulo p.',
                      UserWarning, stacklevel=2)
    params['samples_given'] = samples is not None
    samples = environ.get('samples') if samples is None else samples
    height = environ.get('height') if height is None else height
    logger.info('running %s with seed %d over %s', name, seed, field.name)
    count, failures, details = CHECKS[name](seed, field, samples, height, params)
    verdict = Verdict(name, not failures, count, tuple(failures), details, seed, field)
    logger.info('%s: %d examined, %d failures', name, count, len(failures))
    return verdict
