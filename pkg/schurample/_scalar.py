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

from fractions import Fraction
from typing import Any, Union

import numpy as np
import sympy
from sympy.polys.domains import GF

from . import _environ as environ
from ._errors import PreconditionError

__all__ = [
    'Field',
    'RationalField',
    'PrimeField',
    'QQ',
    'get_field',
]

MIN_PRIME = 2 ** 20


class Field:
    """
    An exact scalar field.

    Elements are plain Python objects supporting ``+ - * /`` and ``==`` with
    each other and with ``int``; the field object converts foreign values,
    draws random elements and serializes them.
    """
    __module__ = 'schurample'

    name: str
    label: str
    probabilistic: bool = False

    def __call__(self, value: Any):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError(f'Division by zero in {self.name}.')
        return self(a) / self(b)

    def random_element(self, rng: np.random.Generator, height: int):
        raise NotImplementedError

    def random_nonzero(self, rng: np.random.Generator, height: int):
        while True:
            x = self.random_element(rng, height)
            if x != 0:
                return x

    def to_json(self, value) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f'{self.__class__.__name__}({self.name})'


class RationalField(Field):
    """
    The rationals, backed by :class:`fractions.Fraction`.

    Random elements are ``p/q`` with ``|p| <= height`` and ``1 <= q <= height``.
    """
    __module__ = 'schurample'

    name = 'Q'
    label = 'Q'
    probabilistic = False

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def random_element(self, rng: np.random.Generator, height: int) -> Fraction:
        num = int(rng.integers(-height, height + 1))
        den = int(rng.integers(1, height + 1))
        return Fraction(num, den)

    def to_json(self, value) -> dict:
        value = self(value)
        return {'num': str(value.numerator), 'den': str(value.denominator)}

    def from_json(self, data: dict) -> Fraction:
        return Fraction(int(data['num']), int(data['den']))


class PrimeField(Field):
    """
    The prime field ``F_p`` through :func:`sympy.polys.domains.GF`.

    Ranks over ``F_p`` can only drop compared to the rationals, so results are
    labeled probabilistic. ``p`` must be a prime larger than ``2**20``.
    """
    __module__ = 'schurample'

    label = 'Fp'
    probabilistic = True

    def __init__(self, p: int):
        if p <= MIN_PRIME:
            raise PreconditionError(f'Prime field requires p > 2^20, got {p}.')
        if not sympy.isprime(p):
            raise PreconditionError(f'{p} is not a prime.')
        self.p = int(p)
        self.domain = GF(self.p, symmetric=False)
        self.name = f'F{self.p}'

    def __call__(self, value: Any):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f'{value} has no image in {self.name}.')
            return self.domain(value.numerator) / self.domain(value.denominator)
        if isinstance(value, self.domain.dtype):
            return value
        return self.domain(int(value))

    def random_element(self, rng: np.random.Generator, height: int = None):
        return self.domain(int(rng.integers(0, self.p)))

    def to_json(self, value) -> dict:
        return {'num': str(self.domain.to_int(self(value))), 'den': '1'}

    def from_json(self, data: dict):
        return self(Fraction(int(data['num']), int(data['den'])))


QQ = RationalField()


def get_field(which: Union[str, int, Field, None] = None) -> Field:
    """
    Resolve ``'Q'``, a prime number (as ``int`` or text) or ``'Fp'`` (the
    configured default prime) to a :class:`Field`.
    """
    if which is None:
        which = environ.get('field')
    if isinstance(which, Field):
        return which
    if isinstance(which, str):
        text = which.strip()
        if text.upper() in ('Q', 'QQ'):
            return QQ
        if text.upper() in ('FP', 'F_P'):
            return PrimeField(int(environ.get('prime')))
        if text.upper().startswith('F'):
            text = text[1:]
        try:
            which = int(text)
        except ValueError:
            raise PreconditionError(f'Unknown field {which!r}; use "Q" or a prime.') from None
    return PrimeField(int(which))
