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


__version__ = "0.0.2"

from . import _environ as environ
from ._audit import *
from ._bounds import *
from ._errors import *
from ._linalg import (
    rank,
    det,
    nullspace,
)
from ._misc import (
    canonical_json,
    scientific,
)
from ._partition import *
from ._plucker import *
from ._poly import *
from ._scalar import *
from ._strata import *
from ._universal import *
