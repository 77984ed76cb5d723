"""Finite modules over a FiniteRing, presented as subquotients R^k / D.

Elements are length-k vectors of ring element indices; each coset of the
relation submodule D is represented by its lexicographically minimal
vector (equivalently the minimal mixed-radix code).  Canonical elements
are indexed 0..order-1, and the lazily built tables

* ``addm`` (order, order)  -- addition on canonical indices
* ``smul`` (|R|, order)    -- scalar action on canonical indices

turn every predicate into an exhaustive index loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .budgets import DEFAULT_BUDGETS, Budgets, BudgetExceeded
from .errors import InvalidInput
from .rings import (
    FiniteRing,
    Ideal,
    Localization,
    MultSet,
    _minimal_generators,
    complement_multset,
    localize_ring,
    maximal_ideals,
)

_MAX_AMBIENT = 1 << 22  # hard guard so a typo'd rank fails fast


class FinModule:
    """A finite module over a finite commutative ring, as R^rank / D."""

    def __init__(self, ring: FiniteRing, rank: int, relations=()):
        if rank < 0:
            raise InvalidInput("rank must be >= 0")
        n = ring.order
        ambient = n**rank
        if ambient > _MAX_AMBIENT:
            raise BudgetExceeded("ambient-size", _MAX_AMBIENT, ambient)
        self.ring = ring
        self.rank = rank
        self.pows = (n ** np.arange(rank)).astype(np.int64)
        self.ambient_size = int(ambient)
        rels = []
        for v in relations:
            v = tuple(int(c) for c in v)
            if len(v) != rank:
                raise InvalidInput(f"relation vector {v} has length != rank {rank}")
            for c in v:
                if not 0 <= c < n:
                    raise InvalidInput(f"relation coefficient {c} out of range")
            rels.append(v)
        self.relations = tuple(rels)
        rel_codes = self._relation_closure()
        self.relation_elements = rel_codes  # codes of D, sorted
        if rel_codes.size == 1 and rel_codes[0] == self._zero_code():
            rep = np.arange(ambient, dtype=np.int64)
        else:
            rep = self._coset_minima(rel_codes)
        self.codes = np.unique(rep)
        if self.codes.size * rel_codes.size != ambient:
            raise AssertionError("coset sizes do not partition the ambient module")
        self.index_map = np.searchsorted(self.codes, rep).astype(np.int32)
        self.vecs = self._decode(self.codes)

    # -- encoding ---------------------------------------------------------

    def _zero_code(self) -> int:
        z = np.full(self.rank, self.ring.zero, dtype=np.int64)
        return int(z @ self.pows)

    def _encode(self, vecs: np.ndarray) -> np.ndarray:
        return np.asarray(vecs, dtype=np.int64) @ self.pows

    def _decode(self, codes: np.ndarray) -> np.ndarray:
        n = self.ring.order
        out = np.empty((len(codes), self.rank), dtype=np.int32)
        rem = np.asarray(codes, dtype=np.int64).copy()
        for i in range(self.rank):
            out[:, i] = rem % n
            rem //= n
        return out

    def _relation_closure(self) -> np.ndarray:
        """Codes of D = the submodule of R^rank spanned by the relations."""
        zero = self._zero_code()
        if not self.relations:
            return np.array([zero], dtype=np.int64)
        rel = np.array(self.relations, dtype=np.int32)
        gens = self.ring.mul[:, rel].reshape(-1, self.rank)  # all scalar multiples
        gvecs = np.unique(np.concatenate([gens, self._decode([zero])]), axis=0)
        s_codes = np.unique(self._encode(gvecs))
        while True:
            svecs = self._decode(s_codes)
            sums = self.ring.add[svecs[:, None, :], gvecs[None, :, :]]
            new = np.unique(
                np.concatenate([s_codes, self._encode(sums.reshape(-1, self.rank))])
            )
            if new.size == s_codes.size:
                return new
            s_codes = new

    def _coset_minima(self, rel_codes: np.ndarray) -> np.ndarray:
        dvecs = self._decode(rel_codes)
        dd = rel_codes.size
        rep = np.empty(self.ambient_size, dtype=np.int64)
        step = max(1, (1 << 21) // max(1, dd * max(1, self.rank)))
        for lo in range(0, self.ambient_size, step):
            hi = min(self.ambient_size, lo + step)
            vecs = self._decode(np.arange(lo, hi))
            sums = self.ring.add[vecs[:, None, :], dvecs[None, :, :]]
            rep[lo:hi] = self._encode(sums.reshape(-1, self.rank)).reshape(hi - lo, dd).min(axis=1)
        return rep

    # -- structure --------------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.codes.size)

    @cached_property
    def zero_index(self) -> int:
        return int(self.index_map[self._zero_code()])

    @cached_property
    def basis(self) -> np.ndarray:
        """Canonical indices of the images of the standard basis of R^rank."""
        codes = self.ring.one * self.pows
        return self.index_map[codes.astype(np.int64)].astype(np.int32)

    @property
    def _table_dtype(self):
        return np.int16 if self.order <= 32767 else np.int32

    @cached_property
    def addm(self) -> np.ndarray:
        m = self.order
        if self.rank == 0:
            return np.zeros((1, 1), dtype=self._table_dtype)
        out = np.empty((m, m), dtype=self._table_dtype)
        step = max(1, (1 << 22) // max(1, m * max(1, self.rank)))
        for lo in range(0, m, step):
            hi = min(m, lo + step)
            sums = self.ring.add[self.vecs[lo:hi, None, :], self.vecs[None, :, :]]
            out[lo:hi] = self.index_map[
                self._encode(sums.reshape(-1, self.rank)).reshape(hi - lo, m)
            ]
        return out

    @cached_property
    def smul(self) -> np.ndarray:
        if self.rank == 0:
            return np.zeros((self.ring.order, 1), dtype=np.int32)
        prods = self.ring.mul[:, self.vecs]  # (n, m, rank)
        n, m = prods.shape[0], prods.shape[1]
        return self.index_map[self._encode(prods.reshape(-1, self.rank)).reshape(n, m)].astype(
            np.int32
        )

    @cached_property
    def neg(self) -> np.ndarray:
        return self.index_map[self._encode(self.ring.neg[self.vecs])].astype(np.int32)

    def elem(self, vector) -> "ModElem":
        vector = tuple(int(c) for c in vector)
        if len(vector) != self.rank:
            raise InvalidInput(f"vector {vector} has length != rank {self.rank}")
        for c in vector:
            if not 0 <= c < self.ring.order:
                raise InvalidInput(f"coefficient {c} out of range for {self.ring.label}")
        return ModElem(self, int(self.index_map[self._encode([vector])[0]]))

    def elem_index(self, vector) -> int:
        return self.elem(vector).index

    def __repr__(self):
        return f"FinModule({self.ring.label}^{self.rank}/{len(self.relation_elements)} rels, order={self.order})"


@dataclass(frozen=True)
class ModElem:
    module: FinModule
    index: int

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.module.vecs[self.index])

    def __repr__(self):
        return f"ModElem{self.vector}"


class Submodule:
    """A submodule: full closed element set (canonical indices) + generators."""

    def __init__(self, module: FinModule, elements: np.ndarray, generators=None):
        self.module = module
        self.elements = np.unique(np.asarray(elements, dtype=np.int32))
        self.elements.setflags(write=False)
        self._generators = None if generators is None else tuple(int(g) for g in generators)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = self._greedy_generators()
        return self._generators

    def _greedy_generators(self) -> tuple[int, ...]:
        M = self.module
        gens: list[int] = []
        have = np.array([M.zero_index], dtype=np.int32)
        for x in self.elements:
            pos = np.searchsorted(have, x)
            if pos < have.size and have[pos] == x:
                continue
            gens.append(int(x))
            seed = np.unique(np.concatenate([have, np.unique(M.smul[:, x])]))
            have = kernels.additive_closure(M.addm, seed.astype(np.int32))
            if have.size == self.elements.size:
                break
        return tuple(gens)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.module.order, dtype=bool)
        m[self.elements] = True
        m.setflags(write=False)
        return m

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def key(self) -> bytes:
        return self.elements.tobytes()

    def is_proper(self) -> bool:
        return self.order < self.module.order

    def __contains__(self, index: int) -> bool:
        return bool(self.mask[index])

    def __le__(self, other: "Submodule") -> bool:
        return bool(other.mask[self.elements].all())

    def __lt__(self, other: "Submodule") -> bool:
        return self.order < other.order and self <= other

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.module is other.module
            and np.array_equal(self.elements, other.elements)
        )

    def __hash__(self):
        return hash((id(self.module), self.key()))

    def __repr__(self):
        return f"Submodule(size={self.order} of order-{self.module.order} module)"


def make_free(R: FiniteRing, k: int) -> FinModule:
    """The free module R^k (k = 0 gives the zero module)."""
    return FinModule(R, k, ())


def zero_submodule(M: FinModule) -> Submodule:
    return Submodule(M, [M.zero_index], generators=())


def whole_submodule(M: FinModule) -> Submodule:
    return Submodule(M, np.arange(M.order, dtype=np.int32), generators=tuple(int(b) for b in M.basis))


def submodule_generate(M: FinModule, gens) -> Submodule:
    """Smallest submodule containing the given elements (indices or ModElem)."""
    idx = [g.index if isinstance(g, ModElem) else int(g) for g in gens]
    for g in idx:
        if not 0 <= g < M.order:
            raise InvalidInput(f"element index {g} out of range")
    if not idx:
        return zero_submodule(M)
    seed = np.unique(np.concatenate([M.smul[:, idx].ravel(), [M.zero_index]]))
    elems = kernels.additive_closure(M.addm, seed.astype(np.int32))
    return Submodule(M, elems, generators=idx)


def quotient(M: FinModule, N: Submodule) -> tuple[FinModule, np.ndarray]:
    """M/N together with the projection (index array M -> M/N)."""
    if N.module is not M:
        raise InvalidInput("submodule belongs to a different module")
    rels = M.relations + tuple(tuple(int(c) for c in M.vecs[i]) for i in N.elements)
    Q = FinModule(M.ring, M.rank, rels)
    if Q.order * N.order != M.order:
        raise AssertionError("quotient order mismatch")
    proj = Q.index_map[M._encode(M.vecs)].astype(np.int32)
    return Q, proj


def _colon_of_mask(M: FinModule, mask: np.ndarray) -> Ideal:
    """{r in R | r * b in the masked submodule for every basis image b}."""
    R = M.ring
    if M.rank == 0:
        rs = np.arange(R.order, dtype=np.int32)
    else:
        rs = np.flatnonzero(mask[M.smul[:, M.basis]].all(axis=1)).astype(np.int32)
    return Ideal(R, rs, _minimal_generators(R, rs))


def colon(N: Submodule, M: FinModule) -> Ideal:
    """The colon ideal (N : M) = {r | rM <= N}."""
    if N.module is not M:
        raise InvalidInput("submodule belongs to a different module")
    return _colon_of_mask(M, N.mask)


def colon_cyclic(N: Submodule, x, M: FinModule) -> Ideal:
    """The ideal (N + Rx : M)."""
    if N.module is not M:
        raise InvalidInput("submodule belongs to a different module")
    xi = x.index if isinstance(x, ModElem) else int(x)
    rx = np.unique(M.smul[:, xi]).astype(np.int32)
    nx = kernels.sum_of_submodules(M.addm, N.elements, rx)
    mask = np.zeros(M.order, dtype=bool)
    mask[nx] = True
    return _colon_of_mask(M, mask)


def enumerate_submodules(M: FinModule, budgets: Budgets = DEFAULT_BUDGETS) -> list[Submodule]:
    """The complete submodule lattice (all joins of cyclic submodules)."""
    budgets.check_module_order(M.order)
    cache = getattr(M, "_lattice_cache", None)
    if cache is not None and cache[0] == budgets.max_submodules:
        if cache[1] is None:  # remembered failure: don't re-enumerate
            raise BudgetExceeded(
                "max-submodules", budgets.max_submodules, f"> {budgets.max_submodules}"
            )
        return cache[1]
    subs = kernels.enumerate_lattice(M.addm, M.smul, M.zero_index, budgets.max_submodules)
    if subs is None:
        M._lattice_cache = (budgets.max_submodules, None)
        raise BudgetExceeded("max-submodules", budgets.max_submodules, f"> {budgets.max_submodules}")
    result = [Submodule(M, s) for s in subs]
    M._lattice_cache = (budgets.max_submodules, result)
    return result


def _maximal_among(subs: list[Submodule]) -> list[Submodule]:
    out = []
    for s in subs:
        if not any(s.order < t.order and s <= t for t in subs):
            out.append(s)
    out.sort(key=lambda s: s.key())
    return out


def maximal_submodules(M: FinModule, budgets: Budgets = DEFAULT_BUDGETS) -> list[Submodule]:
    """Maximal elements among proper submodules.

    Computed per maximal ideal m of R: every maximal submodule contains mM
    for exactly one m (the annihilator of the simple quotient), so the
    maximal submodules are the pullbacks of the maximal subspaces of the
    vector space M/mM.  Cross-checked against plain lattice filtering in
    the test suite.
    """
    budgets.check_module_order(M.order)
    cache = getattr(M, "_maximal_cache", None)
    if cache is not None:
        return cache
    if M.order == 1:
        M._maximal_cache = []
        return []
    seen: dict[bytes, Submodule] = {}
    for mi in maximal_ideals(M.ring):
        if mi.elements.size and M.rank > 0:
            seed = np.unique(M.smul[np.ix_(mi.elements, M.basis)].ravel())
            seed = np.unique(np.concatenate([seed, [M.zero_index]]))
        else:
            seed = np.array([M.zero_index])
        mm = kernels.additive_closure(M.addm, seed.astype(np.int32))
        mm_sub = Submodule(M, mm)
        V, proj = quotient(M, mm_sub)
        lat = [s for s in enumerate_submodules(V, budgets) if s.is_proper()]
        for s in _maximal_among(lat):
            pre = np.flatnonzero(s.mask[proj]).astype(np.int32)
            cand = Submodule(M, pre)
            seen.setdefault(cand.key(), cand)
    result = sorted(seen.values(), key=lambda s: s.key())
    M._maximal_cache = result
    return result


@dataclass(frozen=True)
class ModuleLocalization:
    """Result of inverting a multiplicative set on a module."""

    source: FinModule
    module: FinModule          # M / T over the localized ring
    proj: np.ndarray           # index array M -> localized module
    ring_loc: Localization
    torsion: Submodule         # T = {x | u x = 0 for some u in U}
    degenerate: bool


def localize_module(M: FinModule, U: MultSet) -> ModuleLocalization:
    """M/T over U^-1 R with T = {x | some u in U kills x}.

    Postcondition (checked): scalar action by each localized u is
    bijective on the result.
    """
    if U.ring is not M.ring:
        raise InvalidInput("multiplicative set belongs to a different ring")
    loc = localize_ring(M.ring, U)
    killed = (M.smul[U.elements, :] == M.zero_index).any(axis=0)
    t_elems = np.flatnonzero(killed).astype(np.int32)
    torsion = Submodule(M, t_elems)
    imap = loc.ring_map.image
    rels = [tuple(int(c) for c in imap[np.array(v, dtype=np.int32)]) for v in M.relations]
    rels += [tuple(int(c) for c in imap[M.vecs[i]]) for i in t_elems]
    Mq = FinModule(loc.ring, M.rank, rels)
    proj = Mq.index_map[Mq._encode(imap[M.vecs])].astype(np.int32)
    for u in U.elements:
        acted = Mq.smul[int(imap[u])]
        if np.unique(acted).size != Mq.order:
            raise AssertionError("localization postcondition failed: scalar not bijective")
    return ModuleLocalization(M, Mq, proj, loc, torsion, loc.degenerate)


def image_submodule(N: Submodule, loc: ModuleLocalization) -> Submodule:
    """The image U^-1 N in the localized module (projection of N)."""
    elems = np.unique(loc.proj[N.elements])
    return Submodule(loc.module, elems)


def preimage_submodule(Q: Submodule, loc: ModuleLocalization) -> Submodule:
    """{x in M | proj(x) in Q}."""
    if Q.module is not loc.module:
        raise InvalidInput("submodule does not live in the localized module")
    pre = np.flatnonzero(Q.mask[loc.proj]).astype(np.int32)
    return Submodule(loc.source, pre)


@dataclass(frozen=True)
class FlatnessResult:
    flat: bool
    certificate: tuple[dict, ...]
    skipped: tuple[str, ...]

    def __bool__(self):
        return self.flat


def min_generators_local(M: FinModule) -> int:
    """Minimal number of generators of M over a local ring (Nakayama)."""
    mis = maximal_ideals(M.ring)
    if len(mis) != 1:
        raise InvalidInput("ring is not local")
    mi = mis[0]
    if M.order == 1:
        return 0
    if mi.elements.size and M.rank > 0:
        seed = np.unique(M.smul[np.ix_(mi.elements, M.basis)].ravel())
        seed = np.unique(np.concatenate([seed, [M.zero_index]]))
    else:
        seed = np.array([M.zero_index])
    mm = kernels.additive_closure(M.addm, seed.astype(np.int32))
    v_order = M.order // mm.size
    q = M.ring.order // len(mi)
    g = 0
    t = 1
    while t < v_order:
        t *= q
        g += 1
    if t != v_order:
        raise AssertionError("M/mM is not a vector-space power of the residue field")
    return g


def is_flat(M: FinModule, budgets: Budgets = DEFAULT_BUDGETS) -> FlatnessResult:
    """Free at every localization at a maximal ideal (checked by counting)."""
    cert = []
    skipped = []
    flat = True
    for mi in maximal_ideals(M.ring):
        U = complement_multset(M.ring, mi)
        if U is None:
            skipped.append(f"complement of maximal ideal {list(mi.generators)} not multiplicatively closed")
            continue
        mloc = localize_module(M, U)
        g = min_generators_local(mloc.module)
        free = mloc.module.order == mloc.ring_loc.ring.order**g
        cert.append(
            {
                "maximal_ideal": [int(x) for x in mi.generators],
                "min_generators": g,
                "local_module_order": mloc.module.order,
                "local_ring_order": mloc.ring_loc.ring.order,
                "free": bool(free),
            }
        )
        flat = flat and free
    return FlatnessResult(flat, tuple(cert), tuple(skipped))
