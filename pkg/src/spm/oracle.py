"""Naive definitional oracles.

Each predicate here quantifies over ALL of R and M with no coset
reduction and no generator shortcuts: the colon ideal is computed against
every module element, and submodule spans are closed by brute fixpoint.
These are deliberately slow and kept independent of the optimized
implementations; the test suite checks exact agreement, and failed
verdicts from the fast path are replayed through these definitions.
"""

from __future__ import annotations

import numpy as np

from .modules import FinModule, Submodule


def naive_colon_elems(M: FinModule, mask: np.ndarray) -> np.ndarray:
    """{r | r v in the masked set for EVERY v in M}."""
    return np.flatnonzero(mask[M.smul].all(axis=1)).astype(np.int32)


def naive_span(M: FinModule, gens) -> np.ndarray:
    """Closure of gens under addition and scalar action by brute fixpoint:
    every pairwise sum and every scalar multiple, repeated until stable."""
    s = np.unique(np.asarray(list(gens) + [M.zero_index], dtype=np.int32))
    while True:
        new = np.union1d(np.unique(M.addm[np.ix_(s, s)]), np.unique(M.smul[:, s]))
        if new.size == s.size:
            return new.astype(np.int32)
        s = new.astype(np.int32)


def _mask_of(M: FinModule, elems) -> np.ndarray:
    mask = np.zeros(M.order, dtype=bool)
    mask[np.asarray(list(elems), dtype=np.int32)] = True
    return mask


def naive_cyclic_colon(M: FinModule, n_elems: np.ndarray, x: int) -> np.ndarray:
    """I_x^N = (N + Rx : M), everything by brute force."""
    nx = naive_span(M, list(n_elems) + [x])
    return naive_colon_elems(M, _mask_of(M, nx))


def naive_is_prime(N: Submodule, M: FinModule):
    cmask = _mask_of_ring(M, naive_colon_elems(M, N.mask))
    for x in range(M.order):
        for r in range(M.ring.order):
            if N.mask[M.smul[r, x]] and not N.mask[x] and not cmask[r]:
                return False, (r, x)
    return True, None


def naive_is_semiprime(N: Submodule, M: FinModule):
    for x in range(M.order):
        for r in range(M.ring.order):
            r2 = int(M.ring.mul[r, r])
            if N.mask[M.smul[r2, x]] and not N.mask[M.smul[r, x]]:
                return False, (r, x)
    return True, None


def naive_is_strongly_prime(P: Submodule, M: FinModule):
    for x in range(M.order):
        if P.mask[x]:
            continue
        ideal = naive_cyclic_colon(M, P.elements, x)
        ok_y = P.mask[M.smul[ideal]].all(axis=0)
        for y in range(M.order):
            if not P.mask[y] and ok_y[y]:
                return False, (x, y)
    return True, None


def naive_is_strongly_semiprime(C: Submodule, M: FinModule):
    for x in range(M.order):
        if C.mask[x]:
            continue
        ideal = naive_cyclic_colon(M, C.elements, x)
        if C.mask[M.smul[ideal, x]].all():
            return False, (x,)
    return True, None


def _mask_of_ring(M: FinModule, elems) -> np.ndarray:
    mask = np.zeros(M.ring.order, dtype=bool)
    mask[np.asarray(list(elems), dtype=np.int32)] = True
    return mask


# -- witness replay -------------------------------------------------------

def replay_prime_witness(N: Submodule, M: FinModule, r: int, x: int) -> bool:
    cmask = _mask_of_ring(M, naive_colon_elems(M, N.mask))
    return bool(N.mask[M.smul[r, x]] and not N.mask[x] and not cmask[r])


def replay_semiprime_witness(N: Submodule, M: FinModule, r: int, x: int) -> bool:
    r2 = int(M.ring.mul[r, r])
    return bool(N.mask[M.smul[r2, x]] and not N.mask[M.smul[r, x]])


def replay_strongly_prime_witness(P: Submodule, M: FinModule, x: int, y: int) -> bool:
    if P.mask[x] or P.mask[y]:
        return False
    ideal = naive_cyclic_colon(M, P.elements, x)
    return bool(P.mask[M.smul[ideal, y]].all())


def replay_strongly_semiprime_witness(C: Submodule, M: FinModule, x: int) -> bool:
    if C.mask[x]:
        return False
    ideal = naive_cyclic_colon(M, C.elements, x)
    return bool(C.mask[M.smul[ideal, x]].all())
