"""Finitely presented graded algebras over GF(p), skew polynomial/series
arithmetic, and exact one-sided annihilators in bounded slices."""

from .algebra import (
    Bounds, GeneratorId, Presentation, RingElem, check_basis_claim, decompose_components,
    enumerate_basis, format_element, format_word, multiply, normal_form,
)
from .annihilator import (
    AnnQuery, alpha_compatibility_check, annihilator, armendariz_check, is_faithful_upto,
    strong_armendariz_check, zip_witness_search,
)
from .dsl import evaluate, parse_expression, parse_presentation
from .errors import *  # noqa: F401,F403
from .linalg import Slice, SubspaceBasis
from .report import CheckReport
from .skew import (
    Endomorphism, SkewPoly, TruncSeries, apply_endomorphism, coefficient_set, endomorphism_from_dsl,
    phi_extend, psi_restrict, shift_endomorphism, skew_mul_poly, skew_mul_series,
)

__version__ = "0.1.0"
