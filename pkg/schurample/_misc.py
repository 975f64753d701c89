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

import json
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.special import comb

__all__ = [
    'set_module_as',
    'binomial',
    'canonical_json',
    'jsonable',
    'scientific',
]

SAFE_INTEGER = 2 ** 53


def set_module_as(name: str):
    """
    A decorator factory to set the `__module__` attribute of a function.

    Public functions are defined in private modules and re-exported from the
    package root; the decorator makes them report the public location.

    Args:
        name (str): The module name to assign, usually ``'schurample'``.

    Returns:
        Callable: A decorator that modifies the `__module__` attribute of the function.
    """

    def decorator(fn):
        fn.__module__ = name
        return fn

    return decorator


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient ``C(n, k)``, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return int(comb(n, k, exact=True))


def jsonable(value: Any) -> Any:
    """
    Convert a value into plain JSON data.

    Integers beyond ``2**53`` become decimal strings so that no JSON consumer
    rounds them; rationals become ``{"num": ..., "den": ...}``.
    Objects with a ``to_json`` method are converted through it.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        value = int(value)
        return value if abs(value) < SAFE_INTEGER else str(value)
    if isinstance(value, Fraction):
        return {'num': str(value.numerator), 'den': str(value.denominator)}
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f'Cannot serialize object of type {type(value).__name__}.')


def canonical_json(data: Any) -> str:
    """Serialize with sorted keys so that equal reports are byte-identical."""
    return json.dumps(jsonable(data), sort_keys=True, indent=2, ensure_ascii=True)


def scientific(n: int, digits: int = 4) -> str:
    """
    Render a big integer as a rounded scientific approximation.

    The mantissa is rounded half-up from the decimal expansion, so no floating
    point value is ever formed.

    Examples
    --------
    >>> scientific(233846053 ** 2)
    '5.468e16'
    >>> scientific(12)
    '1.2e1'
    """
    if digits < 1:
        raise ValueError(f'digits must be positive, got {digits}.')
    sign = '-' if n < 0 else ''
    n = abs(n)
    text = str(n)
    exponent = len(text) - 1
    if len(text) > digits:
        drop = len(text) - digits
        head, rem = divmod(n, 10 ** drop)
        if 2 * rem >= 10 ** drop:
            head += 1
        text = str(head)
        if len(text) > digits:
            # rounding carried into a new leading digit
            exponent += 1
            text = text[:digits]
    mantissa = text.rstrip('0') or '0'
    if len(mantissa) == 1:
        return f'{sign}{mantissa}e{exponent}'
    return f'{sign}{mantissa[0]}.{mantissa[1:]}e{exponent}'
