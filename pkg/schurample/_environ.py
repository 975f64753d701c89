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
Run configuration shared by the samplers, the audits and the command line.

Values are stored in the global environment of :mod:`brainstate.environ`, so
they can be set once per process with :func:`set` or temporarily with
:func:`context`::

    >>> import schurample as sa
    >>> with sa.environ.context(seed=7, height=10):
    ...     sa.environ.get('seed')
    7
"""

import json
import os
from contextlib import contextmanager
from typing import Any, Dict, Optional

import brainstate

from ._errors import PreconditionError

__all__ = [
    'DEFAULTS',
    'SEED_ENV_VAR',
    'get',
    'set',
    'context',
    'load_config',
    'resolve_seed',
]

SEED_ENV_VAR = 'SCHUR_AMPLE_SEED'

DEFAULTS: Dict[str, Any] = {
    'seed': 0,
    'field': 'Q',
    'prime': 2_147_483_647,
    'height': 100,
    'samples': 100,
    'max_retries': 64,
    'phi_budget': 2_000_000,
    'delta_budget': 10_000,
    'output': 'json',
}

# brainstate keeps one flat namespace, so our keys carry a prefix
_PREFIX = 'schur_'


def _key(name: str) -> str:
    if name not in DEFAULTS:
        raise KeyError(f'Unknown setting {name!r}, available: {sorted(DEFAULTS)}')
    return _PREFIX + name


def get(name: str) -> Any:
    """Return the current value of a setting, falling back to :data:`DEFAULTS`."""
    return brainstate.environ.get(_key(name), default=DEFAULTS[name])


def set(**settings) -> None:
    """Set process-wide defaults."""
    brainstate.environ.set(**{_key(k): v for k, v in settings.items()})


@contextmanager
def context(**settings):
    """Temporarily override settings inside a ``with`` block."""
    with brainstate.environ.context(**{_key(k): v for k, v in settings.items()}):
        yield


def load_config(path: str) -> Dict[str, Any]:
    """
    Read a JSON configuration file and install its values with :func:`set`.

    Parameters
    ----------
    path : str
        A JSON object whose keys are a subset of :data:`DEFAULTS`.

    Returns
    -------
    dict
        The settings that were installed.
    """
    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise PreconditionError(f'Configuration file {path} must contain a JSON object.')
    unknown = [k for k in data if k not in DEFAULTS]
    if unknown:
        raise PreconditionError(f'Unknown configuration keys in {path}: {unknown}')
    set(**data)
    return data


def resolve_seed(seed: Optional[int] = None) -> int:
    """
    Pick the seed of a run: explicit value, then ``SCHUR_AMPLE_SEED``, then the
    configured default.
    """
    if seed is not None:
        return int(seed)
    text = os.environ.get(SEED_ENV_VAR)
    if text:
        try:
            return int(text)
        except ValueError:
            raise PreconditionError(f'{SEED_ENV_VAR} must be an integer, got {text!r}') from None
    return int(get('seed'))
