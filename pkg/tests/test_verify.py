import json

import numpy as np
import pytest

import spm
from spm import oracle, primes, verify
from spm.verify import (
    CLAIMS,
    CorpusConfig,
    build_corpus,
    canonical_multsets,
    run_all,
    verify_example_1_2,
    verify_thm_1_5,
    verify_thm_2_3,
)


SMALL = CorpusConfig(
    zmod_orders=(2, 3, 4, 6),
    product_order_bound=6,
    poly_rings=((2, (1, 1, 1)),),
    max_free_rank=2,
    extra_rank=2,
    random_triples=5,
)


@pytest.fixture(scope="module")
def small_bundle():
    return run_all(SMALL)


class TestRunAll:
    def test_small_corpus_is_clean(self, small_bundle):
        assert small_bundle.ok
        counts = small_bundle.counts()
        assert counts["fail"] == 0 and counts["pass"] > 500

    def test_every_claim_is_exercised(self, small_bundle):
        seen = {r.claim for r in small_bundle.reports}
        assert seen == set(CLAIMS)

    def test_skip_reasons_are_the_documented_ones(self, small_bundle):
        reasons = {
            r.verdict for r in small_bundle.reports if r.verdict.startswith("skipped")
        }
        assert reasons <= {"skipped(degenerate)", "skipped(hypothesis)"}
        assert "skipped(degenerate)" in reasons  # 0 in U occurs in the corpus
        assert "skipped(hypothesis)" in reasons  # non-flat modules occur too

    def test_verdict_grammar_and_fields(self, small_bundle):
        for r in small_bundle.reports:
            d = r.as_dict()
            assert set(d) == {"claim", "instance", "verdict", "witness", "millis"}
            assert d["verdict"] == "pass" or d["verdict"].startswith("skipped(")
            assert d["millis"] >= 0
            json.dumps(d)  # JSON-serializable

    def test_deterministic(self, small_bundle):
        # everything except wall-clock timings must reproduce exactly
        def strip(bundle):
            return [
                {k: v for k, v in d.items() if k != "millis"}
                for d in bundle.to_json()
            ]

        again = run_all(SMALL)
        assert strip(small_bundle) == strip(again)

    def test_claim_filter(self):
        bundle = run_all(SMALL, claims=("antichain",))
        assert {r.claim for r in bundle.reports} == {"antichain"}
        assert bundle.ok

    def test_unknown_claim_rejected(self):
        with pytest.raises(spm.InvalidInput):
            run_all(SMALL, claims=("thm-9.9",))

    def test_nonvacuity_stats(self, small_bundle):
        assert small_bundle.stats["thm17_nonvacuous"] > 0
        assert small_bundle.stats["modules"] > 50


class TestFaultInjection:
    def test_broken_predicate_is_caught_with_replayable_witness(self, monkeypatch):
        # Claim every proper submodule is strongly prime.  The s-spec of each
        # module then contains non-prime nodes, which the checks must flag.
        monkeypatch.setattr(
            primes,
            "is_strongly_prime",
            lambda N, M, budgets=None: primes.PredicateResult(True, None),
        )
        tiny = CorpusConfig(
            zmod_orders=(4,),
            product_order_bound=0,
            poly_rings=(),
            max_free_rank=1,
            extra_rank=1,
            random_triples=2,
        )
        bundle = run_all(tiny, claims=("prop-1.1",))
        assert not bundle.ok
        hit = next(
            r
            for r in bundle.failures
            if r.instance == "Z/4^1"
            and r.witness
            and r.witness.get("part") == "strongly-prime-implies-prime"
        )
        # replay the embedded primality counterexample through the raw definition
        M = spm.make_free(spm.make_zmod(4), 1)
        N = spm.submodule_generate(
            M, [M.elem(tuple(g)).index for g in hit.witness["N"]["generators"]]
        )
        w = hit.witness["witness"]
        assert oracle.replay_prime_witness(N, M, w["r"], M.elem(tuple(w["x"])).index)

    def test_budget_exhaustion_becomes_skip(self):
        cfg = CorpusConfig(
            zmod_orders=(4,),
            product_order_bound=0,
            poly_rings=(),
            max_free_rank=2,
            extra_rank=2,
            random_triples=2,
            budgets=spm.Budgets(max_submodules=3),
        )
        bundle = run_all(cfg, claims=("antichain",))
        assert bundle.ok  # skips are not failures
        verdicts = {r.verdict for r in bundle.reports}
        assert "skipped(budget:max-submodules)" in verdicts


class TestSingleInstanceVerifiers:
    def test_thm_1_5_worked_example(self, z6_mod):
        U = spm.saturate(z6_mod.ring, [3])
        thm, cor = verify_thm_1_5(z6_mod, U)
        assert thm.claim == "thm-1.5" and thm.passed and thm.witness is None
        assert cor.claim == "cor-1.6" and cor.passed

    def test_thm_1_5_degenerate(self, z4):
        M = spm.make_free(z4, 1)
        thm, cor = verify_thm_1_5(M, spm.saturate(z4, [2]))  # 0 in sat(2)
        assert thm.verdict == "skipped(degenerate)"
        assert cor.verdict == "skipped(degenerate)"

    def test_example_1_2(self, z4):
        rep = verify_example_1_2(z4, spm.ideal_generate(z4, [2]))
        assert rep.passed and rep.witness is None
        assert rep.instance == "Z/4;p=<[2]>"

    def test_example_1_2_rejects_non_prime(self, z6):
        with pytest.raises(spm.InvalidInput):
            verify_example_1_2(z6, spm.ideal_generate(z6, []))  # (0) not prime in Z/6

    def test_thm_2_3_bound(self, z4_sq):
        M, _ = z4_sq
        reports = verify_thm_2_3(M, [M.elem((2, 0)).index])
        assert len(reports) == 4
        assert all(r.passed for r in reports)
        # the bound itself, recomputed independently of the verifier
        ht = spm.s_ht(spm.submodule_generate(M, [M.elem((2, 0)).index]), M)
        assert ht.defined and ht.value <= 1

    def test_thm_2_3_non_flat_is_hypothesis_skip(self, z4):
        M = spm.FinModule(z4, 1, [(2,)])  # Z/2 over Z/4: not flat
        reports = verify_thm_2_3(M, [M.zero_index])
        assert all(r.verdict == "skipped(hypothesis)" for r in reports)

    def test_thm_2_3_rejects_whole_module(self, z6_mod):
        with pytest.raises(spm.InvalidInput):
            verify_thm_2_3(z6_mod, [z6_mod.elem((1,)).index])


class TestCorpusShape:
    def test_default_sizes(self):
        corpus = build_corpus()
        assert len(corpus.rings) == 60
        assert len(corpus.modules) == 4896

    def test_multset_families(self, z6):
        fams = canonical_multsets(z6)
        keys = {tuple(int(u) for u in U.elements) for U in fams}
        assert (1,) in keys
        assert (1, 3) in keys  # saturation of {3}
        assert (1, 2, 4) in keys  # complement of the maximal ideal (3)
        # deduped: saturations of 2 and 4 coincide
        assert len(fams) == len(keys)
