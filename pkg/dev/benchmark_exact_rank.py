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

import time

import numpy as np

import schurample as sa
from schurample._linalg import rank as exact_rank


def benchmark(N=3, k=1, delta=2, epsilon=1):
    instance = sa.Instance(N, k, delta, epsilon)
    label = sa.StratumLabel(N, (), ())

    timings = {}
    for name in ('Q', 'F2147483647'):
        field = sa.get_field(name)
        frame = sa.sample_sigma(instance, label, np.random.default_rng(0), field, 100)
        phi = sa.phi_eta_matrix(instance, frame)

        n_round = 3
        t0 = time.time()
        for _ in range(n_round):
            blockwise = phi.rank()
        t1 = time.time()
        timings[f'{name} blockwise'] = (t1 - t0) / n_round

        t0 = time.time()
        full = exact_rank(phi.entries, field)
        t1 = time.time()
        timings[f'{name} full'] = t1 - t0
        assert blockwise == full

    text = ', '.join(f'{key} = {value:.6f}s' for key, value in timings.items())
    print(f'N = {N}, k = {k}, δ = {delta}, shape = {phi.shape}: {text}')


for N, delta in [(2, 2), (3, 2), (3, 3), (4, 3)]:
    benchmark(N=N, delta=delta)
