"""Primality predicates for submodules and the objects derived from them:
the strongly prime spectrum, strongly prime radical, and strong heights.

All predicates apply to PROPER submodules only and raise
ImproperSubmoduleError otherwise.  False verdicts carry a canonical
witness (first violation in ascending index order, x-major).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .budgets import DEFAULT_BUDGETS, Budgets
from .errors import ImproperSubmoduleError, InvalidInput
from .modules import (
    FinModule,
    Submodule,
    colon,
    enumerate_submodules,
    whole_submodule,
)


@dataclass(frozen=True)
class PredicateResult:
    holds: bool
    witness: tuple | None  # (r, x), (x, y) or (x,) depending on the predicate

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class HeightResult:
    """value None means the height is undefined (no strongly prime above N)."""

    value: int | None
    witness_chain: tuple[Submodule, ...]

    @property
    def defined(self) -> bool:
        return self.value is not None


def _require_proper(N: Submodule, M: FinModule) -> None:
    if N.module is not M:
        raise InvalidInput("submodule belongs to a different module")
    if M.order == 1:
        raise ImproperSubmoduleError("the zero module has no proper submodules")
    if not N.is_proper():
        raise ImproperSubmoduleError("prime-type predicates require a proper submodule")


def is_prime(N: Submodule, M: FinModule) -> PredicateResult:
    """rx in N  =>  x in N or r in (N:M)."""
    _require_proper(N, M)
    cmask = colon(N, M).mask
    viol = N.mask[M.smul] & ~N.mask[None, :] & ~cmask[:, None]
    if not viol.any():
        return PredicateResult(True, None)
    x, r = map(int, np.argwhere(viol.T)[0])
    return PredicateResult(False, (r, x))


def is_semiprime(N: Submodule, M: FinModule) -> PredicateResult:
    """r^2 x in N  =>  rx in N."""
    _require_proper(N, M)
    n = M.ring.order
    sq = M.ring.mul[np.arange(n), np.arange(n)]
    viol = N.mask[M.smul[sq]] & ~N.mask[M.smul]
    if not viol.any():
        return PredicateResult(True, None)
    x, r = map(int, np.argwhere(viol.T)[0])
    return PredicateResult(False, (r, x))


def _outside_coset_reps(P: Submodule, M: FinModule) -> np.ndarray:
    reps = kernels.coset_reps(M.addm, P.elements)
    return reps[~P.mask[reps]]


def is_strongly_prime(P: Submodule, M: FinModule) -> PredicateResult:
    """(P + Rx : M) y <= P  =>  x in P or y in P.

    Both x and y run over coset representatives of M/P: the ideal
    (P+Rx:M) depends on x only mod P, and its product with any element of
    P already lies in P, so the subset test depends on y only mod P.
    """
    _require_proper(P, M)
    xreps = _outside_coset_reps(P, M)
    x, y = kernels.strongly_prime_witness(
        M.addm, M.smul, M.basis, P.elements, P.mask, xreps
    )
    if x < 0:
        return PredicateResult(True, None)
    return PredicateResult(False, (int(x), int(y)))


def is_strongly_semiprime(C: Submodule, M: FinModule) -> PredicateResult:
    """(C + Rx : M) x <= C  =>  x in C."""
    _require_proper(C, M)
    xreps = _outside_coset_reps(C, M)
    x = kernels.strongly_semiprime_witness(
        M.addm, M.smul, M.basis, C.elements, C.mask, xreps
    )
    if x < 0:
        return PredicateResult(True, None)
    return PredicateResult(False, (int(x),))


@dataclass(frozen=True)
class SSpecPoset:
    """All strongly prime submodules with their containment order."""

    module: FinModule
    nodes: tuple[Submodule, ...]
    leq: np.ndarray  # leq[i, j] iff nodes[i] <= nodes[j]

    def __len__(self):
        return len(self.nodes)

    def index_of(self, P: Submodule) -> int | None:
        key = P.key()
        for i, node in enumerate(self.nodes):
            if node.key() == key:
                return i
        return None


def s_spec(M: FinModule, budgets: Budgets = DEFAULT_BUDGETS) -> SSpecPoset:
    """The strongly prime spectrum, by exhaustive lattice filtering."""
    cache = getattr(M, "_sspec_cache", None)
    if cache is not None and cache[0] == budgets.max_submodules:
        return cache[1]
    nodes = []
    if M.order > 1:
        for sub in enumerate_submodules(M, budgets):
            if sub.is_proper() and is_strongly_prime(sub, M):
                nodes.append(sub)
    nodes.sort(key=lambda s: (s.order, s.key()))
    k = len(nodes)
    leq = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            leq[i, j] = a <= b
    poset = SSpecPoset(M, tuple(nodes), leq)
    M._sspec_cache = (budgets.max_submodules, poset)
    return poset


def s_rad(N: Submodule, M: FinModule, budgets: Budgets = DEFAULT_BUDGETS) -> Submodule:
    """Intersection of strongly primes containing N; M itself when none do."""
    if N.module is not M:
        raise InvalidInput("submodule belongs to a different module")
    poset = s_spec(M, budgets)
    containing = [P for P in poset.nodes if N <= P]
    if not containing:
        return whole_submodule(M)
    mask = np.logical_and.reduce([P.mask for P in containing])
    return Submodule(M, np.flatnonzero(mask).astype(np.int32))


def strongly_minimal_primes(
    N: Submodule, M: FinModule, budgets: Budgets = DEFAULT_BUDGETS
) -> list[Submodule]:
    """Minimal elements of {P strongly prime | N <= P}."""
    if N.module is not M:
        raise InvalidInput("submodule belongs to a different module")
    poset = s_spec(M, budgets)
    containing = [P for P in poset.nodes if N <= P]
    return [P for P in containing if not any(Q < P for Q in containing)]


def _chain_heights(poset: SSpecPoset) -> tuple[np.ndarray, np.ndarray]:
    """Longest-chain length ending at each node, plus a predecessor table.

    Nodes are sorted by order, so every strict predecessor comes earlier.
    """
    k = len(poset.nodes)
    h = np.zeros(k, dtype=np.int64)
    pred = np.full(k, -1, dtype=np.int64)
    for j in range(k):
        for i in range(j):
            if poset.leq[i, j] and poset.nodes[i].order < poset.nodes[j].order:
                if h[i] + 1 > h[j]:
                    h[j] = h[i] + 1
                    pred[j] = i
    return h, pred


def s_ht_prime(
    P: Submodule, M: FinModule, budgets: Budgets = DEFAULT_BUDGETS
) -> HeightResult:
    """Longest strictly increasing chain in S-Spec ending at P."""
    poset = s_spec(M, budgets)
    idx = poset.index_of(P)
    if idx is None:
        raise InvalidInput("submodule is not strongly prime")
    h, pred = _chain_heights(poset)
    chain = []
    j = idx
    while j >= 0:
        chain.append(poset.nodes[j])
        j = int(pred[j])
    chain.reverse()
    return HeightResult(int(h[idx]), tuple(chain))


def s_ht(N: Submodule, M: FinModule, budgets: Budgets = DEFAULT_BUDGETS) -> HeightResult:
    """min of s_ht_prime over the strongly minimal primes over N;
    undefined (value None) when no strongly prime contains N."""
    mins = strongly_minimal_primes(N, M, budgets)
    if not mins:
        return HeightResult(None, ())
    best: HeightResult | None = None
    for P in mins:
        r = s_ht_prime(P, M, budgets)
        if best is None or r.value < best.value:
            best = r
    return best
