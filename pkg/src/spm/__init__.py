"""Finite commutative rings, finite modules, and strongly prime submodules.

Public API re-exports; see README for the CLI and the verification suite.
"""

from .budgets import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .errors import ImproperSubmoduleError, InvalidInput, SpmError
from .kernels import BACKEND
from .modules import (
    FinModule,
    FlatnessResult,
    ModElem,
    ModuleLocalization,
    Submodule,
    colon,
    colon_cyclic,
    enumerate_submodules,
    image_submodule,
    is_flat,
    localize_module,
    make_free,
    maximal_submodules,
    min_generators_local,
    preimage_submodule,
    quotient,
    submodule_generate,
    whole_submodule,
    zero_submodule,
)
from .primes import (
    HeightResult,
    PredicateResult,
    SSpecPoset,
    is_prime,
    is_semiprime,
    is_strongly_prime,
    is_strongly_semiprime,
    s_ht,
    s_ht_prime,
    s_rad,
    s_spec,
    strongly_minimal_primes,
)
from .rings import (
    FiniteRing,
    Ideal,
    Localization,
    MultSet,
    RingMap,
    complement_multset,
    ideal_generate,
    localize_ring,
    make_poly_quotient,
    make_product,
    make_zmod,
    maximal_ideals,
    saturate,
    validate_ring,
)

__version__ = "0.1.0"
