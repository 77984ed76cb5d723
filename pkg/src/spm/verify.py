"""Corpus generation and statement-by-statement verification.

Every verifier emits VerificationReport records (claim id, instance
descriptor, pass/fail/skipped verdict, optional counterexample witness,
timing).  A fail verdict always carries a witness that replays to a
violation through the raw definitions.  Budget exhaustion and failed
hypotheses turn into "skipped(...)" verdicts, never silent omissions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import primes
from .budgets import DEFAULT_BUDGETS, Budgets, BudgetExceeded
from .errors import InvalidInput
from .modules import (
    FinModule,
    Submodule,
    colon,
    complement_multset,
    enumerate_submodules,
    image_submodule,
    is_flat,
    localize_module,
    make_free,
    maximal_submodules,
    submodule_generate,
)
from .oracle import naive_cyclic_colon
from .rings import (
    FiniteRing,
    Ideal,
    MultSet,
    _ideal_lattice,
    make_poly_quotient,
    make_product,
    make_zmod,
    saturate,
    validate_ring,
)

CLAIMS = (
    "prop-1.1",
    "ex-1.2",
    "prop-1.3",
    "thm-1.5",
    "cor-1.6",
    "thm-1.7",
    "thm-2.3",
    "thm-2.3-lemma-colon-chain",
    "thm-2.3-lemma-dim1",
    "thm-2.3-lemma-localization",
    "antichain",
    "sspec-max",
    "maxring-shadow",
)


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    instance: str
    verdict: str  # "pass" | "fail" | "skipped(<reason>)"
    witness: dict | None
    millis: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "instance": self.instance,
            "verdict": self.verdict,
            "witness": self.witness,
            "millis": round(self.millis, 3),
        }


class _Skip(Exception):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


def _timed(claim: str, instance: str, fn) -> VerificationReport:
    """Run fn (returns a witness dict on failure, None on pass)."""
    t0 = time.perf_counter()
    try:
        witness = fn()
        verdict = "pass" if witness is None else "fail"
    except BudgetExceeded as e:
        verdict, witness = f"skipped(budget:{e.budget})", None
    except _Skip as s:
        verdict, witness = f"skipped({s.reason})", None
    return VerificationReport(claim, instance, verdict, witness, (time.perf_counter() - t0) * 1e3)


def _vec(M: FinModule, idx: int) -> list[int]:
    return [int(c) for c in M.vecs[int(idx)]]


def _sub_desc(N: Submodule) -> dict:
    return {
        "generators": [_vec(N.module, g) for g in N.generators],
        "size": N.order,
    }


def module_descriptor(M: FinModule) -> str:
    base = f"{M.ring.label}^{M.rank}"
    if M.relations:
        rels = ";".join(str(list(v)) for v in M.relations)
        return f"{base}/<{rels}>"
    return base


def multset_descriptor(U: MultSet) -> str:
    return "U={" + ",".join(str(int(u)) for u in U.elements) + "}"


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusConfig:
    zmod_orders: tuple[int, ...] = tuple(range(2, 17)) + (25, 27, 32)
    product_order_bound: int = 36
    # (base n, little-endian monic modulus): F4, F8, F9, GR(4,2), Z/2[x]/(x^2)
    poly_rings: tuple[tuple[int, tuple[int, ...]], ...] = (
        (2, (1, 1, 1)),
        (2, (1, 1, 0, 1)),
        (3, (1, 0, 1)),
        (4, (1, 1, 1)),
        (2, (0, 0, 1)),
    )
    max_free_rank: int = 2  # ranks 1..max get free modules and cyclic quotients
    extra_rank: int = 3  # one more free rank where |R|^rank fits the budget
    random_triples: int = 50
    budgets: Budgets = DEFAULT_BUDGETS


@dataclass
class Corpus:
    rings: list[FiniteRing]
    modules: list[tuple[int, FinModule, str]]  # (ring index, module, descriptor)
    budgets: Budgets


def build_corpus(config: CorpusConfig = CorpusConfig()) -> Corpus:
    budgets = config.budgets
    rings: list[FiniteRing] = [make_zmod(n) for n in config.zmod_orders]
    a = 2
    while a * a <= config.product_order_bound:
        for b in range(a, config.product_order_bound // a + 1):
            rings.append(make_product([make_zmod(a), make_zmod(b)]))
        a += 1
    for base_n, coeffs in config.poly_rings:
        rings.append(make_poly_quotient(make_zmod(base_n), list(coeffs)))
    for R in rings:
        v = validate_ring(R)
        if not v.ok:
            raise AssertionError(f"corpus ring {R.label} fails axioms: {v.failures}")

    modules: list[tuple[int, FinModule, str]] = []
    for ri, R in enumerate(rings):
        frees: dict[int, FinModule] = {}
        for k in range(1, config.max_free_rank + 1):
            if R.order**k > budgets.max_module_order:
                continue
            M = make_free(R, k)
            frees[k] = M
            modules.append((ri, M, module_descriptor(M)))
        if (
            config.extra_rank > config.max_free_rank
            and R.order**config.extra_rank <= budgets.max_module_order
        ):
            M = make_free(R, config.extra_rank)
            modules.append((ri, M, module_descriptor(M)))
        # quotients of the low-rank free modules by cyclic relation submodules
        for k, F in sorted(frees.items()):
            seen: set[bytes] = set()
            for x in range(F.order):
                d = np.unique(F.smul[:, x])
                if d.size == 1 or d.size == F.order:
                    continue  # duplicate of the free module / the zero module
                key = d.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                Q = FinModule(R, k, [_vec(F, x)])
                modules.append((ri, Q, module_descriptor(Q)))
    return Corpus(rings, modules, budgets)


def canonical_multsets(R: FiniteRing) -> list[MultSet]:
    """The three families used for the localization theorem: {1},
    saturations of singletons, and complements of maximal ideals."""
    out: dict[bytes, MultSet] = {}
    for a in range(R.order):
        U = saturate(R, [a])
        out.setdefault(U.key(), U)
    from .rings import maximal_ideals

    for mi in maximal_ideals(R):
        U = complement_multset(R, mi)
        if U is not None:
            out.setdefault(U.key(), U)
    return sorted(out.values(), key=lambda u: (len(u), u.key()))


# ---------------------------------------------------------------------------
# per-module memoization shared by the verifiers


class _ModuleCtx:
    """Memo holder for one module: node colon ideals and localization cores."""

    def __init__(self, M: FinModule, desc: str, budgets: Budgets):
        self.M = M
        self.desc = desc
        self.budgets = budgets
        self._node_colons: list[Ideal] | None = None
        self._cores: dict[tuple[bytes, bytes], dict] = {}
        self._thm15: dict[bytes, tuple[VerificationReport, VerificationReport]] = {}

    def poset(self) -> primes.SSpecPoset:
        return primes.s_spec(self.M, self.budgets)

    def node_colons(self) -> list[Ideal]:
        if self._node_colons is None:
            self._node_colons = [colon(P, self.M) for P in self.poset().nodes]
        return self._node_colons


def _thm15_core(ctx: _ModuleCtx, loc) -> dict:
    """The part of the localization check that depends on U only through
    the kernel/torsion pair: S-Spec of the localized module, the images of
    the nodes upstairs, set equality, and the order-isomorphism check."""
    key = (loc.ring_loc.kernel.elements.tobytes(), loc.torsion.elements.tobytes())
    hit = ctx._cores.get(key)
    if hit is not None:
        return hit
    M, Mq = ctx.M, loc.module
    poset = ctx.poset()
    # when the localization leaves every table bit-identical, its lattice
    # and predicates coincide with M's, so S-Spec can be reused verbatim
    same = (
        Mq.order == M.order
        and np.array_equal(loc.proj, np.arange(M.order))
        and int(Mq.zero_index) == int(M.zero_index)
        and np.array_equal(Mq.basis, M.basis)
        and np.array_equal(Mq.addm, M.addm)
        and np.array_equal(Mq.smul, M.smul)
    )
    if same:
        lhs_keys = {P.key() for P in poset.nodes}
    else:
        lhs_keys = {P.key() for P in primes.s_spec(Mq, ctx.budgets).nodes}
    images = [image_submodule(P, loc) for P in poset.nodes]
    survivors = [i for i, img in enumerate(images) if img.order < Mq.order]
    rhs_keys = {images[i].key() for i in survivors}

    witness = None
    if lhs_keys != rhs_keys:
        witness = {
            "part": "set-equality",
            "only_downstairs": len(lhs_keys - rhs_keys),
            "only_upstairs": sorted(
                _sub_desc(poset.nodes[i])["generators"]
                for i in survivors
                if images[i].key() not in lhs_keys
            ),
        }

    cor16 = None
    for ii, i in enumerate(survivors):
        for j in survivors[ii + 1 :]:
            if images[i].key() == images[j].key():
                cor16 = {
                    "part": "injectivity",
                    "P": _sub_desc(poset.nodes[i]),
                    "Q": _sub_desc(poset.nodes[j]),
                }
                break
            up = bool(poset.leq[i, j]), bool(poset.leq[j, i])
            down = images[i] <= images[j], images[j] <= images[i]
            if up != down:
                cor16 = {
                    "part": "order-isomorphism",
                    "P": _sub_desc(poset.nodes[i]),
                    "Q": _sub_desc(poset.nodes[j]),
                    "upstairs": list(up),
                    "downstairs": list(down),
                }
                break
        if cor16 is not None:
            break
    if cor16 is None and witness is not None:
        cor16 = {"part": "not-surjective", "detail": witness}

    core = {
        "witness": witness,
        "cor16": cor16,
        "images_full": [img.order == Mq.order for img in images],
    }
    ctx._cores[key] = core
    return core


# ---------------------------------------------------------------------------
# verifiers (single-instance operations)


def verify_thm_1_5(
    M: FinModule,
    U: MultSet,
    budgets: Budgets = DEFAULT_BUDGETS,
    _ctx: _ModuleCtx | None = None,
    _desc: str | None = None,
) -> list[VerificationReport]:
    """Localization correspondence plus the order-isomorphism corollary.

    Returns two reports (claims "thm-1.5" and "cor-1.6") for the instance.
    """
    ctx = _ctx or _ModuleCtx(M, _desc or module_descriptor(M), budgets)
    hit = ctx._thm15.get(U.key())
    if hit is not None:
        return list(hit)
    instance = f"{ctx.desc};{multset_descriptor(U)}"
    state: dict = {}

    def main():
        loc = localize_module(M, U)
        if loc.degenerate:
            raise _Skip("degenerate")
        core = _thm15_core(ctx, loc)
        if core["witness"] is not None:
            state["cor16"] = core["cor16"]
            return dict(core["witness"])
        state["cor16"] = core["cor16"]
        # finitely generated form: U^-1 P = U^-1 M  iff  (P:M) meets U
        umask = np.zeros(M.ring.order, dtype=bool)
        umask[U.elements] = True
        for P, cP, full in zip(ctx.poset().nodes, ctx.node_colons(), core["images_full"]):
            meets = bool(umask[cP.elements].any())
            if meets != full:
                return {
                    "part": "colon-characterization",
                    "P": _sub_desc(P),
                    "colon_meets_U": meets,
                    "image_is_whole": bool(full),
                }
        return None

    rep = _timed("thm-1.5", instance, main)
    if rep.verdict.startswith("skipped"):
        rep16 = VerificationReport("cor-1.6", instance, rep.verdict, None, 0.0)
    else:
        w16 = state.get("cor16")
        rep16 = VerificationReport(
            "cor-1.6", instance, "pass" if w16 is None else "fail", w16, rep.millis
        )
    ctx._thm15[U.key()] = (rep, rep16)
    return [rep, rep16]


def verify_example_1_2(
    R: FiniteRing,
    prime_ideal: Ideal,
    budgets: Budgets = DEFAULT_BUDGETS,
    _module: FinModule | None = None,
) -> VerificationReport:
    """The pair (p, p) inside R^2: prime, but neither strongly prime nor
    strongly semiprime, with (1,0) accepted as a witness for both failures."""
    if prime_ideal.ring is not R:
        raise InvalidInput("ideal belongs to a different ring")
    R1 = make_free(R, 1)
    if not prime_ideal.is_proper() or not primes.is_prime(
        Submodule(R1, prime_ideal.elements), R1
    ):
        raise InvalidInput("ideal is not a prime ideal of the ring")
    instance = f"{R.label};p=<{sorted(int(g) for g in prime_ideal.generators)}>"

    def main():
        M = _module if _module is not None else make_free(R, 2)
        both_in = prime_ideal.mask[M.vecs].all(axis=1)
        N = Submodule(M, np.flatnonzero(both_in).astype(np.int32))
        if primes.is_prime(N, M).holds is False:
            return {"part": "primeness", "witness": primes.is_prime(N, M).witness}
        sp = primes.is_strongly_prime(N, M)
        if sp.holds:
            return {"part": "should-not-be-strongly-prime"}
        ssp = primes.is_strongly_semiprime(N, M)
        if ssp.holds:
            return {"part": "should-not-be-strongly-semiprime"}
        # the element (1,0) must itself be a valid witness for both failures
        e10 = M.elem((R.one, R.zero)).index
        if N.mask[e10]:
            return {"part": "(1,0)-landed-inside-N"}
        ideal = naive_cyclic_colon(M, N.elements, e10)
        if not N.mask[M.smul[ideal, e10]].all():
            return {"part": "(1,0)-not-a-witness", "ideal": [int(r) for r in ideal]}
        return None

    return _timed("ex-1.2", instance, main)


def verify_thm_2_3(
    M: FinModule, gens, budgets: Budgets = DEFAULT_BUDGETS
) -> list[VerificationReport]:
    """Single-instance generalized-principal-ideal bound plus the three
    internal lemma checks.  `gens` are element indices or ModElems."""
    desc = module_descriptor(M)
    N = submodule_generate(M, gens)
    instance = f"{desc};gens={[_vec(M, g.index if hasattr(g, 'index') else g) for g in gens]}"
    if not N.is_proper():
        raise InvalidInput("generated submodule is not proper")
    ctx = _ModuleCtx(M, desc, budgets)
    reports = []
    state: dict = {}

    def bound():
        flat = is_flat(M, budgets)
        if not flat.flat:
            raise _Skip("hypothesis")
        r = primes.s_ht(N, M, budgets)
        state["ht"] = r
        if r.defined and r.value > len(list(gens)):
            return {"s_ht": r.value, "n": len(list(gens))}
        return None

    reports.append(_timed("thm-2.3", instance, bound))
    if reports[0].verdict.startswith("skipped"):
        for claim in ("thm-2.3-lemma-colon-chain", "thm-2.3-lemma-dim1", "thm-2.3-lemma-localization"):
            reports.append(VerificationReport(claim, instance, reports[0].verdict, None, 0.0))
        return reports
    reports.append(_timed("thm-2.3-lemma-colon-chain", instance, lambda: _lemma_colon_chain(ctx)))
    reports.append(_timed("thm-2.3-lemma-dim1", instance, lambda: _lemma_dim1(ctx)))

    def lemma_loc():
        r = state.get("ht")
        if r is None or not r.defined:
            raise _Skip("vacuous")
        P = r.witness_chain[-1]
        cP = colon(P, M)
        U = complement_multset(M.ring, cP)
        if U is None:
            return {"part": "complement-not-multiplicative", "P": _sub_desc(P)}
        sub = verify_thm_1_5(M, U, budgets, _ctx=ctx)
        for rep in sub:
            if rep.failed:
                return {"part": rep.claim, "detail": rep.witness}
        return None

    reports.append(_timed("thm-2.3-lemma-localization", instance, lemma_loc))
    return reports


def _lemma_colon_chain(ctx: _ModuleCtx):
    """Strict containments in S-Spec force strict containments of colons."""
    poset = ctx.poset()
    colons = ctx.node_colons()
    k = len(poset.nodes)
    for i in range(k):
        for j in range(k):
            if i != j and poset.leq[i, j]:
                ci, cj = colons[i], colons[j]
                if not (len(ci) < len(cj) and cj.mask[ci.elements].all()):
                    return {
                        "P0": _sub_desc(poset.nodes[i]),
                        "P1": _sub_desc(poset.nodes[j]),
                        "colon_sizes": [len(ci), len(cj)],
                    }
    return None


def _lemma_dim1(ctx: _ModuleCtx):
    """|M/P| = |R/(P:M)| for every strongly prime P (dimension-one quotient)."""
    M = ctx.M
    for P, cP in zip(ctx.poset().nodes, ctx.node_colons()):
        if M.order * len(cP) != M.ring.order * P.order:
            return {
                "P": _sub_desc(P),
                "module_quotient": M.order // P.order,
                "ring_quotient": M.ring.order // len(cP),
            }
    return None


# ---------------------------------------------------------------------------
# per-module verifiers used by run_all


def _prop11_module(ctx: _ModuleCtx):
    M, budgets = ctx.M, ctx.budgets
    node_keys = {P.key() for P in ctx.poset().nodes}
    for sub in enumerate_submodules(M, budgets):
        if sub.is_proper() and sub.key() in node_keys:
            res = primes.is_prime(sub, M)
            if not res.holds:
                return {
                    "part": "strongly-prime-implies-prime",
                    "N": _sub_desc(sub),
                    "witness": {"r": res.witness[0], "x": _vec(M, res.witness[1])},
                }
    for N in maximal_submodules(M, budgets):
        if N.key() not in node_keys:
            res = primes.is_strongly_prime(N, M)
            return {
                "part": "maximal-implies-strongly-prime",
                "N": _sub_desc(N),
                "witness": None
                if res.witness is None
                else {"x": _vec(M, res.witness[0]), "y": _vec(M, res.witness[1])},
            }
    return None


def _thm17_module(ctx: _ModuleCtx, stats: dict, exploratory: list):
    """Strongly semiprime submodules equal their strongly prime radical.

    Also measures (without asserting) the converse and whether radicals
    are strongly semiprime, as exploratory output.
    """
    M, budgets = ctx.M, ctx.budgets
    node_masks = [P.mask for P in ctx.poset().nodes]
    nonvacuous = 0
    converse_failures = 0
    first_converse = None
    for C in enumerate_submodules(M, budgets):
        if not C.is_proper():
            continue
        res = primes.is_strongly_semiprime(C, M)
        containing = [mk for mk in node_masks if mk[C.elements].all()]
        if containing:
            rad_size = int(np.logical_and.reduce(containing).sum())
        else:
            rad_size = M.order
        rad_equals_C = rad_size == C.order  # C <= rad always holds
        if res.holds:
            nonvacuous += 1
            if not rad_equals_C:
                return {
                    "C": _sub_desc(C),
                    "srad_size": rad_size,
                    "containing_nodes": len(containing),
                }
        elif rad_equals_C:
            converse_failures += 1
            if first_converse is None:
                first_converse = {"C": _sub_desc(C), "ssp_witness": _vec(M, res.witness[0])}
    stats["thm17_nonvacuous"] = stats.get("thm17_nonvacuous", 0) + nonvacuous
    if converse_failures:
        exploratory.append(
            {
                "claim": "explore-thm-1.7-converse",
                "instance": ctx.desc,
                "note": "intersection of strongly primes that is not strongly semiprime "
                "(equivalently an s-rad fixed point that fails the predicate); "
                "the paper does not assert this converse",
                "count": converse_failures,
                "example": first_converse,
            }
        )
    return None


def _antichain_module(ctx: _ModuleCtx):
    poset = ctx.poset()
    h, _ = primes._chain_heights(poset)
    k = len(poset.nodes)
    for i in range(k):
        for j in range(k):
            if i != j and poset.leq[i, j]:
                return {
                    "part": "containment-edge",
                    "P0": _sub_desc(poset.nodes[i]),
                    "P1": _sub_desc(poset.nodes[j]),
                }
    if k and int(h.max()) != 0:
        return {"part": "nonzero-height", "max_height": int(h.max())}
    return None


def _sspec_max_module(ctx: _ModuleCtx):
    node_keys = {P.key() for P in ctx.poset().nodes}
    max_keys = {N.key() for N in maximal_submodules(ctx.M, ctx.budgets)}
    if node_keys != max_keys:
        return {
            "strongly_prime_not_maximal": len(node_keys - max_keys),
            "maximal_not_strongly_prime": len(max_keys - node_keys),
        }
    return None


def _maxring_shadow_module(ctx: _ModuleCtx):
    if ctx.M.order > 1 and len(ctx.poset().nodes) == 0:
        return {"part": "no-strongly-prime-submodule", "order": ctx.M.order}
    return None


def _pattern_value(patt: bytes, poset: primes.SSpecPoset, h: np.ndarray, cache: dict):
    """s-ht of any submodule whose set of containing nodes is `patt`
    (a packbits bitmask): min height over the minimal containing nodes.
    None when no node contains it (s-ht undefined)."""
    hit = cache.get(patt, -2)
    if hit != -2:
        return hit
    idxs = [i for i in range(len(poset.nodes)) if patt[i >> 3] >> (7 - (i & 7)) & 1]
    if not idxs:
        val = None
    else:
        minimal = [i for i in idxs if not any(j != i and poset.leq[j, i] for j in idxs)]
        val = min(int(h[i]) for i in minimal)
    cache[patt] = val
    return val


def _thm23_module(ctx: _ModuleCtx, rng: np.random.Generator, n_triples: int, stats: dict):
    """Bulk bound check: all generator lists of size <= 2, exactly.

    The containing strongly primes of closure(gens) are exactly the nodes
    containing every generator (closure is the smallest submodule through
    the gens), so s-ht of each instance is a function of the per-element
    node-membership pattern; patterns are enumerated exhaustively and the
    random size-3 sample is cross-checked through the real s_ht path.
    """
    M, budgets = ctx.M, ctx.budgets
    flat = is_flat(M, budgets)
    if not flat.flat:
        raise _Skip("hypothesis")
    poset = ctx.poset()
    h, _ = primes._chain_heights(poset)
    k, m = len(poset.nodes), M.order
    cache: dict[bytes, int | None] = {}

    if k:
        B = np.stack([P.mask for P in poset.nodes])  # (k, m)
        packed = np.packbits(B, axis=0)  # (ceil(k/8), m)
        cols = packed.T.copy()
        uniq_cols, first_idx = np.unique(cols, axis=0, return_index=True)
        # n = 0: the zero submodule sits inside every node
        val0 = _pattern_value(np.packbits(np.ones(k, dtype=bool)).tobytes(), poset, h, cache)
        if val0 is not None and val0 > 0:
            return {"n": 0, "gens": [], "s_ht": val0}
        # n = 1: one pattern per distinct membership column
        for ci in range(uniq_cols.shape[0]):
            val = _pattern_value(uniq_cols[ci].tobytes(), poset, h, cache)
            if val is not None and val > 1:
                return {"n": 1, "gens": [_vec(M, first_idx[ci])], "s_ht": val}
        # n = 2: patterns are pairwise ANDs of distinct columns
        nc, kb = uniq_cols.shape
        step = max(1, (1 << 27) // max(1, nc * kb))
        for lo in range(0, nc, step):
            hi = min(nc, lo + step)
            pp = uniq_cols[lo:hi, None, :] & uniq_cols[None, :, :]  # (c, nc, kb)
            flatp = pp.reshape(-1, kb)
            uu, ff = np.unique(flatp, axis=0, return_index=True)
            for row, fi in zip(uu, ff):
                val = _pattern_value(row.tobytes(), poset, h, cache)
                if val is not None and val > 2:
                    i = int(first_idx[lo + fi // nc])
                    j = int(first_idx[fi % nc])
                    return {"n": 2, "gens": [_vec(M, i), _vec(M, j)], "s_ht": val}
        stats["thm23_distinct_single_patterns"] = stats.get(
            "thm23_distinct_single_patterns", 0
        ) + int(nc)
    # random size-3 generator lists, through the real machinery
    for _ in range(n_triples):
        idxs = [int(v) for v in rng.integers(0, m, size=3)]
        r = primes.s_ht(submodule_generate(M, idxs), M, budgets)
        if k:
            patt = cols[idxs[0]] & cols[idxs[1]] & cols[idxs[2]]
            expected = _pattern_value(patt.tobytes(), poset, h, cache)
        else:
            expected = None
        if (r.value is None) != (expected is None) or (
            r.value is not None and (r.value != expected or r.value > 3)
        ):
            return {
                "n": 3,
                "gens": [_vec(M, i) for i in idxs],
                "s_ht": r.value,
                "pattern_value": expected,
            }
    stats["thm23_instances"] = stats.get("thm23_instances", 0) + n_triples
    return None


def _lemma_localization_bulk(ctx: _ModuleCtx):
    """Localize at R minus (P:M) for every node P; the correspondence must
    hold there (this is the reduction step of the height-bound proof)."""
    seen: set[bytes] = set()
    for P, cP in zip(ctx.poset().nodes, ctx.node_colons()):
        if cP.elements.tobytes() in seen:
            continue
        seen.add(cP.elements.tobytes())
        U = complement_multset(ctx.M.ring, cP)
        if U is None:
            return {"part": "complement-not-multiplicative", "P": _sub_desc(P)}
        for rep in verify_thm_1_5(ctx.M, U, ctx.budgets, _ctx=ctx):
            if rep.failed:
                return {"part": rep.claim, "U": multset_descriptor(U), "detail": rep.witness}
    return None


# ---------------------------------------------------------------------------
# corpus-level drivers


def verify_prop_1_1(corpus: Corpus) -> list[VerificationReport]:
    return [
        _timed("prop-1.1", desc, lambda c=_ModuleCtx(M, desc, corpus.budgets): _prop11_module(c))
        for _, M, desc in corpus.modules
    ]


def verify_thm_1_7(corpus: Corpus) -> list[VerificationReport]:
    stats: dict = {}
    exploratory: list = []
    return [
        _timed(
            "thm-1.7",
            desc,
            lambda c=_ModuleCtx(M, desc, corpus.budgets): _thm17_module(c, stats, exploratory),
        )
        for _, M, desc in corpus.modules
    ]


def _is_field(R: FiniteRing) -> bool:
    from .rings import maximal_ideals

    mis = maximal_ideals(R)
    return len(mis) == 1 and len(mis[0]) == 1


@dataclass
class ReportBundle:
    reports: list[VerificationReport]
    exploratory: list[dict]
    stats: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.reports:
            out["fail" if r.failed else "pass" if r.passed else "skipped"] += 1
        return out

    def to_json(self) -> list[dict]:
        return [r.as_dict() for r in sorted(self.reports, key=lambda r: (r.claim, r.instance))]


def run_all(
    config: CorpusConfig = CorpusConfig(),
    claims: tuple[str, ...] | None = None,
    corpus: Corpus | None = None,
) -> ReportBundle:
    """Build the corpus and run every verifier over every applicable
    instance.  Deterministic for a fixed config.  Pass a prebuilt corpus
    to share per-module caches across several filtered runs."""
    want = set(claims) if claims is not None else set(CLAIMS)
    unknown = want - set(CLAIMS)
    if unknown:
        raise InvalidInput(f"unknown claim id(s): {sorted(unknown)}")
    if corpus is None:
        corpus = build_corpus(config)
    budgets = corpus.budgets
    reports: list[VerificationReport] = []
    exploratory: list[dict] = []
    stats: dict = {"modules": len(corpus.modules), "rings": len(corpus.rings)}

    multsets = [canonical_multsets(R) for R in corpus.rings]

    for ri, M, desc in corpus.modules:
        ctx = _ModuleCtx(M, desc, budgets)
        if "prop-1.1" in want:
            reports.append(_timed("prop-1.1", desc, lambda: _prop11_module(ctx)))
        if "thm-1.7" in want:
            reports.append(_timed("thm-1.7", desc, lambda: _thm17_module(ctx, stats, exploratory)))
        if "antichain" in want:
            reports.append(_timed("antichain", desc, lambda: _antichain_module(ctx)))
        if "sspec-max" in want:
            reports.append(_timed("sspec-max", desc, lambda: _sspec_max_module(ctx)))
        if "maxring-shadow" in want:
            reports.append(_timed("maxring-shadow", desc, lambda: _maxring_shadow_module(ctx)))
        if "prop-1.3" in want and _is_field(corpus.rings[ri]):
            reports.append(_timed("prop-1.3", desc, lambda: _sspec_max_module(ctx)))
        if "thm-1.5" in want or "cor-1.6" in want:
            for U in multsets[ri]:
                for rep in verify_thm_1_5(M, U, budgets, _ctx=ctx):
                    if rep.claim in want:
                        reports.append(rep)
        if "thm-2.3" in want:
            rng = np.random.default_rng(budgets.seed)
            reports.append(
                _timed("thm-2.3", desc, lambda: _thm23_module(ctx, rng, config.random_triples, stats))
            )
            if reports[-1].verdict.startswith("skipped"):
                v = reports[-1].verdict
                for claim in (
                    "thm-2.3-lemma-colon-chain",
                    "thm-2.3-lemma-dim1",
                    "thm-2.3-lemma-localization",
                ):
                    reports.append(VerificationReport(claim, desc, v, None, 0.0))
            else:
                reports.append(
                    _timed("thm-2.3-lemma-colon-chain", desc, lambda: _lemma_colon_chain(ctx))
                )
                reports.append(_timed("thm-2.3-lemma-dim1", desc, lambda: _lemma_dim1(ctx)))
                reports.append(
                    _timed(
                        "thm-2.3-lemma-localization", desc, lambda: _lemma_localization_bulk(ctx)
                    )
                )

    if "ex-1.2" in want:
        for ri, R in enumerate(corpus.rings):
            R1 = make_free(R, 1)
            R2 = next(
                (M for rj, M, _ in corpus.modules if rj == ri and M.rank == 2 and not M.relations),
                None,
            )
            for ideal in _ideal_lattice(R):
                if not ideal.is_proper():
                    continue
                if not primes.is_prime(Submodule(R1, ideal.elements), R1).holds:
                    continue
                reports.append(verify_example_1_2(R, ideal, budgets, _module=R2))

    reports.sort(key=lambda r: (r.claim, r.instance))
    return ReportBundle(reports, exploratory, stats)
