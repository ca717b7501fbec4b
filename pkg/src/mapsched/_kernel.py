"""Branch-and-bound inner loop of the exact solver.

The search state lives in caller-owned numpy arrays, indexed by depth, so
the loop can run in fixed-size chunks: the driver regains control between
chunks to check wall-clock budgets while node accounting stays exact and
deterministic.  One depth level covers at least one new pair, so depth is
bounded by the pair count and every per-depth row can be preallocated.

State layout (P = pair count, N = input count, z = reducer budget):

* ``members[d, r, v]``  membership flag of input v in reducer r at depth d
* ``loads[d, r]``       load of reducer r at depth d
* ``covered[d, p]``     coverage flag of required pair p at depth d
* ``k_stack[d]``        number of opened reducers at depth d
* ``pair_at[d]``        pair branched on at depth d
* ``branch[d]``         next branch to try at depth d (0..k existing, k = open new)
* ``ctrl``              [depth, phase, nodes expanded, status]

The kernel body is written in nopython-compatible Python.  With numba
installed, and unless the environment variable MAPSCHED_NO_JIT is set to
1/true/yes at import time, the compiled variant is selected; otherwise the
same function object runs under the plain interpreter on the same numpy
arrays.  Both paths execute identical logic and produce identical results.
"""

from __future__ import annotations

import os

RUNNING = 0  # chunk limit reached, search resumable
FOUND = 1  # covering assignment found at ctrl[0]'s depth
EXHAUSTED = 2  # no assignment with at most z reducers exists
NODE_BUDGET = 3  # node budget consumed before a verdict


def _run_chunk_impl(sizes, q, z, pair_a, pair_b, members, loads, covered,
                    k_stack, branch, pair_at, ctrl, chunk_limit, node_budget):
    """Advance the depth-first search by at most ``chunk_limit`` node
    expansions; final state and verdict are written back into ``ctrl``."""
    depth = ctrl[0]
    phase = ctrl[1]
    nodes = ctrl[2]
    n_pairs = pair_a.shape[0]
    steps = 0
    status = RUNNING
    while True:
        if phase == 0:
            # Expand the state at this depth: pick the first uncovered pair.
            nodes += 1
            steps += 1
            first = -1
            for p in range(n_pairs):
                if covered[depth, p] == 0:
                    first = p
                    break
            if first < 0:
                status = FOUND
                break
            pair_at[depth] = first
            branch[depth] = 0
            phase = 1
            if nodes >= node_budget:
                status = NODE_BUDGET
                break
            if steps >= chunk_limit:
                status = RUNNING
                break
        # Phase 1: place the picked pair into the next reducer that admits
        # it; existing reducers first, then (symmetry breaking) one fresh
        # reducer, opened only after all existing ones were tried.
        p = pair_at[depth]
        a = pair_a[p]
        b = pair_b[p]
        k = k_stack[depth]
        nxt = branch[depth]
        target = -1
        extra = 0
        while nxt <= k:
            if nxt < k:
                extra = 0
                if members[depth, nxt, a] == 0:
                    extra += sizes[a]
                if members[depth, nxt, b] == 0:
                    extra += sizes[b]
                if loads[depth, nxt] + extra <= q:
                    target = nxt
            else:
                extra = sizes[a] + sizes[b]
                if k < z and extra <= q:
                    target = k
            nxt += 1
            if target >= 0:
                break
        branch[depth] = nxt
        if target < 0:
            if depth == 0:
                status = EXHAUSTED
                break
            depth -= 1
            phase = 1
            continue
        nd = depth + 1
        members[nd, :, :] = members[depth, :, :]
        loads[nd, :] = loads[depth, :]
        covered[nd, :] = covered[depth, :]
        members[nd, target, a] = 1
        members[nd, target, b] = 1
        loads[nd, target] += extra
        if target == k:
            k_stack[nd] = k + 1
        else:
            k_stack[nd] = k
        for pp in range(n_pairs):
            if covered[nd, pp] == 0:
                if members[nd, target, pair_a[pp]] == 1 and members[nd, target, pair_b[pp]] == 1:
                    covered[nd, pp] = 1
        depth = nd
        phase = 0
    ctrl[0] = depth
    ctrl[1] = phase
    ctrl[2] = nodes
    ctrl[3] = status


run_chunk_py = _run_chunk_impl
run_chunk_jit = None


def _jit_disabled() -> bool:
    return os.environ.get("MAPSCHED_NO_JIT", "").strip().lower() in {"1", "true", "yes"}


if not _jit_disabled():
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        run_chunk_jit = njit(cache=True)(_run_chunk_impl)

# Selected implementation; the solver resolves this attribute per call, so
# benchmarks and tests may rebind it.
run_chunk = run_chunk_jit if run_chunk_jit is not None else run_chunk_py
USING_JIT = run_chunk is run_chunk_jit and run_chunk_jit is not None
