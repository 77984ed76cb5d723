"""Pure-numpy reference implementations of the hot enumeration kernels.

Everything operates on plain integer arrays:

* ``addm`` -- (m, m) addition table on canonical module-element indices
* ``smul`` -- (n, m) scalar-action table (ring element index, module index)
* submodule element sets -- sorted 1-d int32 arrays of module indices

The numba backend implements the same signatures with early-exit loops;
verdicts and witnesses must be bit-identical between the two.
"""

from __future__ import annotations

import numpy as np


def additive_closure(addm: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Smallest subset containing `seed` closed under the addition table.

    `seed` must contain the zero index (every caller includes it).
    """
    s = np.unique(np.asarray(seed, dtype=np.int32))
    while True:
        t = np.unique(addm[np.ix_(s, s)])
        if t.size == s.size:
            return t.astype(np.int32)
        s = t


def sum_of_submodules(addm: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Element set of A + B for submodules A, B (already closed, so one
    round of pairwise sums suffices)."""
    return np.unique(addm[np.ix_(a, b)]).astype(np.int32)


def coset_min_reps(addm: np.ndarray, sub: np.ndarray) -> np.ndarray:
    """For every module element i, the minimum index in the coset i + sub."""
    m = addm.shape[0]
    out = np.empty(m, dtype=np.int32)
    # chunk rows to bound the temporary at ~8 MB
    step = max(1, (1 << 22) // max(1, sub.size))
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        out[lo:hi] = addm[lo:hi][:, sub].min(axis=1)
    return out


def coset_reps(addm: np.ndarray, sub: np.ndarray) -> np.ndarray:
    """Minimal representatives of the cosets of `sub`, ascending.

    Greedy sweep: the smallest unvisited index opens a new coset; marking
    its coset costs |sub|, so the whole sweep is O(m)."""
    m = addm.shape[0]
    visited = np.zeros(m, dtype=bool)
    reps = []
    for i in range(m):
        if not visited[i]:
            reps.append(i)
            visited[addm[i, sub]] = True
    return np.array(reps, dtype=np.int32)


def enumerate_lattice(
    addm: np.ndarray,
    smul: np.ndarray,
    zero_idx: int,
    max_count: int,
) -> list[np.ndarray] | None:
    """The full submodule lattice: closure of {0} under joins with cyclics.

    A + Rx depends on x only through its coset mod A, so each submodule A
    only needs one join per coset of M/A (x = the minimal representative).
    Returns None when more than `max_count` submodules appear.
    """
    m = addm.shape[0]
    zero = np.array([zero_idx], dtype=np.int32)
    seen: dict[bytes, int] = {zero.tobytes(): 0}
    subs: list[np.ndarray] = [zero]
    i = 0
    while i < len(subs):
        a = subs[i]
        visited = np.zeros(m, dtype=bool)
        a_min = int(a[0])
        for x in range(m):
            if visited[x]:
                continue
            visited[addm[x, a]] = True
            if x == a_min:
                continue  # the coset of A itself
            rx = np.unique(smul[:, x])
            s = np.unique(addm[np.ix_(a, rx)]).astype(np.int32)
            key = s.tobytes()
            if key not in seen:
                seen[key] = len(subs)
                subs.append(s)
                if len(subs) > max_count:
                    return None
        i += 1
    subs.sort(key=lambda e: (e.size, e.tobytes()))
    return subs


def _colon_on_basis(smul: np.ndarray, basis: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Ring indices r with r * b in the masked set for every basis image b."""
    return np.flatnonzero(mask[smul[:, basis]].all(axis=1)).astype(np.int32)


def strongly_prime_witness(
    addm: np.ndarray,
    smul: np.ndarray,
    basis: np.ndarray,
    p_elems: np.ndarray,
    p_mask: np.ndarray,
    xreps: np.ndarray,
) -> tuple[int, int]:
    """First (x, y) in canonical order with x,y outside P and I_x y inside P.

    `xreps` are the canonical coset representatives of M/P that lie outside
    P, ascending.  Returns (-1, -1) when no witness exists (P strongly prime).
    """
    m = addm.shape[0]
    nx_mask = np.zeros(m, dtype=bool)
    for x in xreps:
        rx = np.unique(smul[:, x])
        nx = np.unique(addm[np.ix_(p_elems, rx)])
        nx_mask[nx] = True
        ideal = _colon_on_basis(smul, basis, nx_mask)
        nx_mask[nx] = False
        ok = p_mask[smul[np.ix_(ideal, xreps)]].all(axis=0)
        hits = np.flatnonzero(ok)
        if hits.size:
            return int(x), int(xreps[hits[0]])
    return -1, -1


def strongly_semiprime_witness(
    addm: np.ndarray,
    smul: np.ndarray,
    basis: np.ndarray,
    c_elems: np.ndarray,
    c_mask: np.ndarray,
    xreps: np.ndarray,
) -> int:
    """First x outside C with I_x x inside C, or -1 (C strongly semiprime)."""
    m = addm.shape[0]
    nx_mask = np.zeros(m, dtype=bool)
    for x in xreps:
        rx = np.unique(smul[:, x])
        nx = np.unique(addm[np.ix_(c_elems, rx)])
        nx_mask[nx] = True
        ideal = _colon_on_basis(smul, basis, nx_mask)
        nx_mask[nx] = False
        if c_mask[smul[ideal, x]].all():
            return int(x)
    return -1
