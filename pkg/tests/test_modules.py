import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import spm
from spm.modules import quotient

from conftest import ideal_elems, sub_by_gens, sub_vecs


class TestConstruction:
    def test_free_orders(self, z4, z6):
        assert spm.make_free(z4, 2).order == 16
        assert spm.make_free(z6, 1).order == 6
        assert spm.make_free(spm.make_zmod(2), 0).order == 1

    def test_quotient_by_cyclic_relation(self, z6):
        M = spm.FinModule(z6, 1, [(2,)])
        assert M.order == 2  # Z/6 / (2)

    def test_lagrange_guard(self, z4):
        M = spm.FinModule(z4, 2, [(2, 0)])
        assert M.order * len(M.relation_elements) == 16

    def test_relation_length_checked(self, z4):
        with pytest.raises(spm.InvalidInput):
            spm.FinModule(z4, 2, [(1, 0, 0)])

    def test_reduce_constant_on_cosets(self, z4):
        M = spm.FinModule(z4, 2, [(2, 0)])
        dvecs = M._decode(M.relation_elements)
        for code in range(M.ambient_size):
            v = M._decode(np.array([code]))[0]
            coset = M._encode(z4.add[v[None, :], dvecs])
            # reduce maps the whole coset to one representative, the minimum
            reps = {int(M.index_map[c]) for c in coset}
            assert reps == {int(M.index_map[code])}
            assert M.codes[M.index_map[code]] == coset.min()


class TestSubmodules:
    def test_generate_z6(self, z6_mod):
        N = sub_by_gens(z6_mod, [(2,)])
        assert sub_vecs(N) == [(0,), (2,), (4,)]

    def test_generate_cyclic_in_square(self, z4_sq):
        M, _ = z4_sq
        N = sub_by_gens(M, [(2, 0)])
        assert sub_vecs(N) == [(0, 0), (2, 0)]

    def test_generate_empty(self, z6_mod):
        assert spm.submodule_generate(z6_mod, []).order == 1

    def test_closure_is_closed(self, z4_sq):
        M, N = z4_sq
        assert N.mask[M.addm[np.ix_(N.elements, N.elements)]].all()
        assert N.mask[M.smul[:, N.elements]].all()

    def test_lagrange(self, z4_sq):
        M, _ = z4_sq
        for x in range(M.order):
            N = spm.submodule_generate(M, [x])
            assert M.order % N.order == 0

    def test_generators_regenerate(self, z4_sq):
        M, N = z4_sq
        again = spm.submodule_generate(M, list(N.generators))
        assert again == N


class TestQuotient:
    def test_z6_mod_two(self, z6_mod):
        Q, proj = quotient(z6_mod, sub_by_gens(z6_mod, [(2,)]))
        assert Q.order == 2
        assert proj[z6_mod.zero_index] == Q.zero_index

    def test_by_zero_is_identity_sized(self, z4_sq):
        M, _ = z4_sq
        Q, proj = quotient(M, spm.zero_submodule(M))
        assert Q.order == M.order

    def test_by_whole_is_zero_module(self, z4_sq):
        M, _ = z4_sq
        Q, _ = quotient(M, spm.whole_submodule(M))
        assert Q.order == 1

    def test_counting(self, z6_mod):
        for N in spm.enumerate_submodules(z6_mod):
            Q, _ = quotient(z6_mod, N)
            assert Q.order * N.order == z6_mod.order


class TestColon:
    def test_z6_example(self, z6_mod):
        I = spm.colon(sub_by_gens(z6_mod, [(2,)]), z6_mod)
        assert ideal_elems(I) == [0, 2, 4]

    def test_whole_module(self, z4_sq):
        M, _ = z4_sq
        assert len(spm.colon(spm.whole_submodule(M), M)) == 4

    def test_example_1_2_value(self, z4_sq):
        M, N = z4_sq
        assert ideal_elems(spm.colon(N, M)) == [0, 2]

    def test_cyclic_z6(self, z6_mod):
        I = spm.colon_cyclic(spm.zero_submodule(z6_mod), z6_mod.elem((3,)), z6_mod)
        assert ideal_elems(I) == [0, 3]

    def test_cyclic_with_x_in_n(self, z6_mod):
        N = sub_by_gens(z6_mod, [(2,)])
        I = spm.colon_cyclic(N, z6_mod.elem((4,)), z6_mod)
        assert ideal_elems(I) == ideal_elems(spm.colon(N, z6_mod))

    def test_cyclic_paper_instance(self, z4_sq):
        M, N = z4_sq
        I = spm.colon_cyclic(N, M.elem((1, 0)), M)
        assert ideal_elems(I) == [0, 2]

    def test_colon_times_m_inside_n(self, z4_sq):
        M, _ = z4_sq
        for N in spm.enumerate_submodules(M):
            I = spm.colon(N, M)
            assert N.mask[M.smul[I.elements, :]].all()

    def test_coset_invariance(self, z4_sq):
        M, N = z4_sq
        for x in range(M.order):
            for d in N.elements:
                x2 = int(M.addm[x, d])
                a = spm.colon_cyclic(N, x, M)
                b = spm.colon_cyclic(N, x2, M)
                assert np.array_equal(a.elements, b.elements)


class TestLattice:
    def test_f2_square(self):
        M = spm.make_free(spm.make_zmod(2), 2)
        assert len(spm.enumerate_submodules(M)) == 5

    def test_z6(self, z6_mod):
        subs = spm.enumerate_submodules(z6_mod)
        assert sorted(s.order for s in subs) == [1, 2, 3, 6]

    def test_zero_module(self, z4):
        M = spm.make_free(z4, 0)
        assert len(spm.enumerate_submodules(M)) == 1

    def test_closed_under_meet_and_join(self, z4_sq):
        M, _ = z4_sq
        subs = spm.enumerate_submodules(M)
        keys = {s.key() for s in subs}
        for a in subs:
            for b in subs:
                meet = np.intersect1d(a.elements, b.elements).astype(np.int32)
                assert meet.tobytes() in keys
                join = spm.submodule_generate(M, np.concatenate([a.elements, b.elements]))
                assert join.key() in keys

    def test_budget_failure_is_loud_and_named(self):
        M = spm.make_free(spm.make_zmod(2), 4)
        tight = spm.Budgets(max_submodules=10)
        with pytest.raises(spm.BudgetExceeded) as exc:
            spm.enumerate_submodules(M, tight)
        assert exc.value.budget == "max-submodules"
        # the failure is remembered: the second call must not re-enumerate
        with pytest.raises(spm.BudgetExceeded):
            spm.enumerate_submodules(M, tight)

    def test_module_order_budget(self):
        M = spm.make_free(spm.make_zmod(2), 4)
        with pytest.raises(spm.BudgetExceeded) as exc:
            spm.enumerate_submodules(M, spm.Budgets(max_module_order=8))
        assert exc.value.budget == "max-module-order"


class TestMaximalSubmodules:
    def test_f2_square_lines(self):
        M = spm.make_free(spm.make_zmod(2), 2)
        assert [s.order for s in spm.maximal_submodules(M)] == [2, 2, 2]

    def test_z4_over_itself(self, z4):
        M = spm.make_free(z4, 1)
        (N,) = spm.maximal_submodules(M)
        assert sub_vecs(N) == [(0,), (2,)]

    def test_zero_module_has_none(self, z4):
        assert spm.maximal_submodules(spm.make_free(z4, 0)) == []

    def test_cross_check_against_lattice_filter(self, z6, z4):
        gr = spm.make_poly_quotient(spm.make_zmod(4), [1, 1, 1])
        mods = [
            spm.make_free(z6, 2),
            spm.make_free(z4, 2),
            spm.FinModule(z6, 2, [(2, 3)]),
            spm.make_free(gr, 1),
        ]
        for M in mods:
            subs = [s for s in spm.enumerate_submodules(M) if s.is_proper()]
            plain = sorted(
                (s.key() for s in subs if not any(s < t for t in subs)),
            )
            fast = sorted(s.key() for s in spm.maximal_submodules(M))
            assert plain == fast


class TestModuleLocalization:
    def test_z6_at_three(self, z6_mod):
        loc = spm.localize_module(z6_mod, spm.saturate(z6_mod.ring, [3]))
        assert loc.module.order == 2
        assert sub_vecs(loc.torsion) == [(0,), (2,), (4,)]

    def test_at_one_is_identity(self, z6_mod):
        loc = spm.localize_module(z6_mod, spm.saturate(z6_mod.ring, [1]))
        assert loc.module.order == 6
        assert np.array_equal(loc.proj, np.arange(6))

    def test_z6_at_two(self, z6_mod):
        loc = spm.localize_module(z6_mod, spm.saturate(z6_mod.ring, [2]))
        assert loc.module.order == 3

    def test_torsion_matches_brute_force(self, z4_sq):
        M, _ = z4_sq
        for seed in range(1, 4):
            U = spm.saturate(M.ring, [seed])
            loc = spm.localize_module(M, U)
            brute = [
                x
                for x in range(M.order)
                if any(M.smul[u, x] == M.zero_index for u in U.elements)
            ]
            assert list(loc.torsion.elements) == brute

    def test_scalar_action_bijective(self, z6_mod):
        U = spm.saturate(z6_mod.ring, [3])
        loc = spm.localize_module(z6_mod, U)
        for u in U.elements:
            img = loc.ring_loc.ring_map(int(u))
            assert np.unique(loc.module.smul[img]).size == loc.module.order

    def test_image_and_preimage(self, z6_mod):
        U = spm.saturate(z6_mod.ring, [3])
        loc = spm.localize_module(z6_mod, U)
        two = sub_by_gens(z6_mod, [(2,)])
        assert spm.image_submodule(two, loc).order == 1  # (2) dies
        assert spm.image_submodule(spm.whole_submodule(z6_mod), loc).order == 2
        zero_down = spm.zero_submodule(loc.module)
        pre = spm.preimage_submodule(zero_down, loc)
        assert sub_vecs(pre) == [(0,), (2,), (4,)]


class TestFlatness:
    def test_free_is_flat(self, z4):
        assert spm.is_flat(spm.make_free(z4, 2)).flat

    def test_residue_field_not_flat(self, z4):
        M = spm.FinModule(z4, 1, [(2,)])  # Z/2 over Z/4
        res = spm.is_flat(M)
        assert not res.flat
        (c,) = res.certificate
        assert c["min_generators"] == 1 and c["local_module_order"] == 2

    def test_z6_is_flat(self, z6_mod):
        res = spm.is_flat(z6_mod)
        assert res.flat and len(res.certificate) == 2

    def test_min_generators_local(self, z4):
        assert spm.min_generators_local(spm.make_free(z4, 2)) == 2
        assert spm.min_generators_local(spm.FinModule(z4, 1, [(2,)])) == 1
        assert spm.min_generators_local(spm.make_free(z4, 0)) == 0

    def test_min_generators_rejects_non_local(self, z6):
        with pytest.raises(spm.InvalidInput):
            spm.min_generators_local(spm.make_free(z6, 1))


@settings(deadline=None, max_examples=40)
@given(
    n=st.integers(2, 9),
    rank=st.integers(1, 2),
    data=st.data(),
)
def test_colon_cyclic_coset_invariance_property(n, rank, data):
    R = spm.make_zmod(n)
    M = spm.make_free(R, rank)
    gens = data.draw(st.lists(st.integers(0, M.order - 1), max_size=2))
    N = spm.submodule_generate(M, gens)
    if not N.is_proper():
        return
    x = data.draw(st.integers(0, M.order - 1))
    shift = data.draw(st.sampled_from([int(e) for e in N.elements]))
    x2 = int(M.addm[x, shift])
    a = spm.colon_cyclic(N, x, M)
    b = spm.colon_cyclic(N, x2, M)
    assert np.array_equal(a.elements, b.elements)


@settings(deadline=None, max_examples=40)
@given(n=st.integers(2, 9), data=st.data())
def test_quotient_counting_property(n, data):
    R = spm.make_zmod(n)
    M = spm.make_free(R, 2)
    gens = data.draw(st.lists(st.integers(0, M.order - 1), max_size=2))
    N = spm.submodule_generate(M, gens)
    Q, proj = quotient(M, N)
    assert Q.order * N.order == M.order
    assert np.unique(proj).size == Q.order
