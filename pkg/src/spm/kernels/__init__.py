"""Hot-loop kernels with two interchangeable backends.

The numba backend is used when available; set SPM_BACKEND=numpy to force
the pure-numpy fallback (or SPM_BACKEND=numba to fail hard if numba is
missing).  Both backends produce identical results and witnesses.
"""

from __future__ import annotations

import os

_requested = os.environ.get("SPM_BACKEND", "auto").lower()

if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"SPM_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import numpy_backend as _impl

    BACKEND = "numpy"
else:
    try:
        from . import numba_backend as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import numpy_backend as _impl

        BACKEND = "numpy"

additive_closure = _impl.additive_closure
sum_of_submodules = _impl.sum_of_submodules
coset_min_reps = _impl.coset_min_reps
coset_reps = _impl.coset_reps
enumerate_lattice = _impl.enumerate_lattice
strongly_prime_witness = _impl.strongly_prime_witness
strongly_semiprime_witness = _impl.strongly_semiprime_witness
