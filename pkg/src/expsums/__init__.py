"""Exact exponential sums over finite fields and verification of dimension/purity bounds."""
from .charsum import BudgetExceeded, TraceHistogram, char_sum, exponential_sum, extension_sums, trace_histogram
from .cycint import CycInt
from .ff_arith import FieldDescriptor, FieldElement, build_field, embed, enumerate_field, frobenius, trace_to_prime
from .mpoly import QQ, MultiPoly, parse
from .singular import (
    GermData,
    ProjectivePoint,
    detect_weights,
    germ_at,
    is_isolated,
    milnor_number,
    milnor_orlik,
    singular_points,
)
from .verifier import (
    VerificationReport,
    check_hypotheses,
    critical_locus_finite,
    dimension_via_chi,
    euler_singular_top_form,
    euler_smooth_fiber,
    predicted_dimension,
    recover_eigenvalues,
    transversal_hyperplane,
    verify,
    verify_bound,
)

__version__ = "0.1.0"
