import numpy as np
import pytest

import spm


@pytest.fixture(scope="session")
def z4():
    return spm.make_zmod(4)


@pytest.fixture(scope="session")
def z6():
    return spm.make_zmod(6)


@pytest.fixture(scope="session")
def z6_mod(z6):
    return spm.make_free(z6, 1)


@pytest.fixture(scope="session")
def z4_sq(z4):
    """(Z/4)^2 with N = (2) x (2): the worked non-strongly-prime instance."""
    M = spm.make_free(z4, 2)
    N = spm.submodule_generate(M, [M.elem((2, 0)).index, M.elem((0, 2)).index])
    return M, N


def sub_by_gens(M, vectors):
    return spm.submodule_generate(M, [M.elem(v).index for v in vectors])


def ideal_elems(I):
    return [int(e) for e in I.elements]


def sub_vecs(N):
    return sorted(tuple(int(c) for c in N.module.vecs[i]) for i in N.elements)
