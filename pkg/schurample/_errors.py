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

from typing import Sequence

__all__ = [
    'SchurAmpleError',
    'PreconditionError',
    'ChartDegeneracyError',
    'RankDeficiencyError',
    'SizeBudgetError',
    'SamplingError',
    'FrameNotTangentError',
]


class SchurAmpleError(ValueError):
    """Base class of every error raised by ``schurample``."""
    __module__ = 'schurample'


class PreconditionError(SchurAmpleError):
    """An operation was called outside the parameter range where it is defined."""
    __module__ = 'schurample'


class ChartDegeneracyError(SchurAmpleError):
    """A point lies on the hyperplane at infinity of a requested affine chart."""
    __module__ = 'schurample'


class RankDeficiencyError(SchurAmpleError):
    """The matrix ``A(a; x, v)`` is not of maximal rank at the given frame."""
    __module__ = 'schurample'

    def __init__(self, message: str, rank: int = None, expected: int = None):
        super().__init__(message)
        self.rank = rank
        self.expected = expected


class SizeBudgetError(SchurAmpleError):
    """A materialized object would exceed the configured size budget."""
    __module__ = 'schurample'


class SamplingError(SchurAmpleError):
    """Random sampling kept drawing degenerate configurations."""
    __module__ = 'schurample'


class FrameNotTangentError(SchurAmpleError):
    """
    A flag frame is not tangent to the hypersurface ``E(a, .) = 0``.

    Attributes
    ----------
    failed : tuple of str
        The violated conditions, e.g. ``'E(a,x)=0'`` or ``'dE(x,v2)=0'``.
    """
    __module__ = 'schurample'

    def __init__(self, failed: Sequence[str]):
        self.failed = tuple(failed)
        super().__init__(f'Frame is not tangent to the hypersurface, failed: {", ".join(self.failed)}')
