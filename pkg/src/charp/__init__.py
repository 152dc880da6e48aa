"""Ideal closures in characteristic p: Frobenius powers and roots, closure
oracles, minimal reductions, cl-spread and the special part of tight closure."""

from .ring_core import (
    PrimeField, MonomialOrder, PolyRing, Polynomial, RingPresentation, PrimePower,
    canonical_form, frobenius_pow, RingError,
)
from .ringfile import parse_ring_file, parse_polynomial, ParseError
from .groebner import (
    Ideal, groebner_basis, membership, colon, intersect, ideal_equal, min_gens,
    BudgetExceeded, step_budget,
)
from .frobenius import (
    bracket_power, frobenius_root, frobenius_closure, f_membership, FrobeniusChain, ChainError,
)
from .verdict import Verdict, IN, OUT, UNKNOWN
from .closures import (
    get_closure, CLOSURE_NAMES, IdentityClosure, FrobeniusClosure, IntegralBoundedClosure,
    NewtonClosure, integral_member_bounded, tc_evidence, colon_profile, closure_axiom_audit,
    ClosureAxiomError,
)
from .nakayama import (
    is_reduction, nakayama_audit, minimize_reduction, independence, strong_independence,
    enumerate_minimal_reductions, spread_consistency_audit, NakayamaViolation,
)
from .special_part import (
    sptc_stage, sptc_member, sptc_approx_ideal, sp_lemma_audit, decomposition_check,
)

__version__ = "0.1.0"
