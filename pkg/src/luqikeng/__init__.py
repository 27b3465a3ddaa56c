"""Certified analysis of zeros of the Bergman kernel of Fock-Bargmann-Hartogs domains."""

from .combin import eulerian_number, eulerian_polynomial, pochhammer, stirling2
from .exactalg import (
    EndpointRootError,
    IntPolynomial,
    RationalInterval,
    SturmChain,
    annulus_bounds,
    is_square_free,
    isolate_real_roots,
    poly_gcd,
    refine_root,
    sturm_chain,
    sturm_count,
)
from .lukeng import (
    AnmIndex,
    CapExceededError,
    InterlacingReport,
    LuQiKengVerdict,
    M0Certificate,
    Relation,
    anm_closed,
    anm_recurrence,
    anm_series_oracle,
    compute_m0,
    conjecture_probe,
    cross_recurrence_check,
    f_nearest,
    is_lu_qi_keng,
    largest_root,
    theorem_suite,
    verify_interlacing,
)

__version__ = "0.1.0"
