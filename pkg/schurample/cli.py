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
Command line front end.

Exit codes: 0 when every check passed, 1 when a counterexample was found,
2 on invalid input. Results go to stdout, diagnostics to stderr.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import _environ as environ
from ._audit import CHECKS, run_check
from ._bounds import coup_product_plan, corollary_bound, corollary_ledger, hyperbolicity_bounds, theorem_params
from ._errors import SchurAmpleError
from ._misc import canonical_json, jsonable, scientific
from ._partition import (
    Partition,
    ample_regime,
    br_vanishes,
    conjugate,
    optimality_audit,
    quotient_upper_bound,
    schur_dim,
)

__all__ = ['main', 'build_parser']

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2

logger = logging.getLogger(__name__)


def _bounds(args) -> Tuple[dict, bool]:
    lam = Partition.parse(args.partition)
    bound = corollary_bound(args.N, args.c, lam)
    out = {
        'N': args.N,
        'c': args.c,
        'lambda': lam.to_json(),
        'primitive': lam.primitive().to_json(),
        'bound': str(bound),
        'bound_approx': scientific(bound),
        'bound_digits': len(str(bound)),
        'plan': [p.to_json() for p in coup_product_plan(args.N, args.c, lam, (bound,) * args.c)],
    }
    if args.intro_variant:
        intro = corollary_bound(args.N, args.c, lam, variant='intro')
        out['intro_variant'] = {'bound': str(intro), 'bound_approx': scientific(intro)}
    if args.ledger:
        out['ledger'] = theorem_params(args.N, args.c, lam.primitive()).to_json()
        out['corollary_ledger'] = corollary_ledger(args.N, args.c, lam).to_json()
    return out, True


def _verify(args) -> Tuple[dict, bool]:
    params = {
        'N': args.N,
        'k': args.k,
        'delta': args.delta,
        'epsilon': args.epsilon,
        'r': args.r,
        'l': args.l,
        'grid': args.grid,
        'points': args.points,
        'zero_params': args.zero_params,
        'budget': args.budget,
    }
    verdict = run_check(args.check, seed=args.seed, field=args.field, samples=args.samples,
                        height=args.height, **params)
    return verdict.to_json(), verdict.passed


def _vanishing(args) -> Tuple[dict, bool]:
    lam = Partition.parse(args.partition)
    regime = ample_regime(args.N, args.c, lam)
    out = {
        'N': args.N,
        'c': args.c,
        'lambda': lam.to_json(),
        'conjugate': conjugate(lam).to_json(),
        'vanishes': br_vanishes(args.N, args.c, lam),
        'regime': regime,
    }
    passed = True
    if args.audit is not None and regime == 'vanishing':
        report = optimality_audit(args.N, args.c, lam, args.audit)
        out['audit'] = report.to_json()
        passed = report.passed
    return out, passed


def _hyperbolicity(args) -> Tuple[dict, bool]:
    return hyperbolicity_bounds(args.N).to_json(), True


def _schur_dim(args) -> Tuple[dict, bool]:
    lam = Partition.parse(args.partition)
    lhs, rhs, ok = quotient_upper_bound(lam, args.n)
    out = {
        'lambda': lam.to_json(),
        'n': args.n,
        'schur_dim': str(schur_dim(lam, args.n)),
        'quotient_bound': {'lhs': str(lhs), 'rhs': str(rhs), 'ok': ok},
    }
    return out, ok


COMMANDS: Dict[str, Callable] = {
    'bounds': _bounds,
    'verify': _verify,
    'vanishing': _vanishing,
    'hyperbolicity': _hyperbolicity,
    'schur-dim': _schur_dim,
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help='Root seed (default: $SCHUR_AMPLE_SEED, then the configuration, then 0).')
    common.add_argument('--format', choices=('json', 'table'), default=None,
                        help='Output format (default: json).')
    common.add_argument('--config', default=None, help='JSON file with default settings.')
    common.add_argument('--field', default=None, help="Scalar field: 'Q' or a prime above 2^20.")
    common.add_argument('--height', type=int, default=None, help='Height bound of random rationals.')
    common.add_argument('--budget', type=int, default=None, help='Entry budget of the explicit φ_η matrices.')
    common.add_argument('-v', '--verbose', action='store_true', help='Log progress to stderr.')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='schurample',
        description='Exact checks and effective bounds for ample Schur powers of cotangent bundles.',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('bounds', parents=[common], help='Effective degree bound for generic complete intersections.')
    p.add_argument('N', type=int)
    p.add_argument('c', type=int)
    p.add_argument('partition', help='Comma separated parts, e.g. 1,1.')
    p.add_argument('--intro-variant', action='store_true', help='Also report the bound with exponent c(k+1).')
    p.add_argument('--ledger', action='store_true', help='Also report the parameter ledgers.')

    p = sub.add_parser('verify', parents=[common], help='Run a seeded verification suite.')
    p.add_argument('check', choices=sorted(CHECKS))
    p.add_argument('--N', type=int, default=None)
    p.add_argument('--k', type=int, default=None)
    p.add_argument('--delta', type=int, default=None)
    p.add_argument('--epsilon', type=int, default=None)
    p.add_argument('--r', type=int, default=None)
    p.add_argument('--l', type=int, default=None, help='Number of sections, or the minor size.')
    p.add_argument('--grid', choices=('small', 'full'), default=None,
                   help='Instance grid of rank-oracle, or of the star sweep.')
    p.add_argument('--points', type=int, default=None,
                   help='Parameter points per instance in the star sweep (default: 20).')
    p.add_argument('--samples', type=int, default=None)
    p.add_argument('--zero-params', action='store_true', help='Use the zero parameter point.')

    p = sub.add_parser('vanishing', parents=[common], help='Vanishing criterion for Schur powers.')
    p.add_argument('N', type=int)
    p.add_argument('c', type=int)
    p.add_argument('partition')
    p.add_argument('--audit', type=int, default=None, metavar='M_MAX',
                   help='Check the multiples c..M_MAX in the sub-critical regime.')

    p = sub.add_parser('hyperbolicity', parents=[common], help='Compare degree bounds for hyperbolicity.')
    p.add_argument('N', type=int)

    p = sub.add_parser('schur-dim', parents=[common], help='Rank of a Schur power of an n-dimensional space.')
    p.add_argument('partition')
    p.add_argument('n', type=int)
    return parser


def _flatten(data, prefix: str = '') -> List[Tuple[str, str]]:
    if isinstance(data, dict):
        rows = []
        for key in sorted(data):
            rows.extend(_flatten(data[key], f'{prefix}.{key}' if prefix else str(key)))
        return rows
    if isinstance(data, list) and data and all(isinstance(v, dict) for v in data):
        rows = []
        for i, v in enumerate(data):
            rows.extend(_flatten(v, f'{prefix}[{i}]'))
        return rows
    text = data if isinstance(data, str) else json.dumps(data)
    return [(prefix, text)]


def render_table(data: dict) -> str:
    """Two aligned columns of dotted keys and values."""
    rows = _flatten(jsonable(data))
    width = max((len(k) for k, _ in rows), default=0)
    return '\n'.join(f'{k.ljust(width)}  {v}' for k, v in rows)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        if args.config is not None:
            environ.load_config(args.config)
        output = args.format or environ.get('output')
        data, passed = COMMANDS[args.command](args)
    except (SchurAmpleError, ValueError, TypeError, OSError) as err:
        print(f'[error] {err}', file=sys.stderr)
        return EXIT_INPUT
    print(render_table(data) if output == 'table' else canonical_json(data))
    if not passed:
        logger.warning('%s: counterexample found', args.command)
        return EXIT_COUNTEREXAMPLE
    return EXIT_PASS


if __name__ == '__main__':
    sys.exit(main())
