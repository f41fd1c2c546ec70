"""homolab: exact homological invariants of Artinian standard graded
algebras over prime fields, with vanishing and Gorenstein certificates."""

from .errors import (
    CodimNotThree,
    HomolabError,
    InconsistentSystem,
    LinearFormsPresent,
    NonHomogeneousIdeal,
    NotArtinian,
    ParseError,
    ValidationError,
    ZeroModule,
)
from .linalg import Matrix, PrimeField
from .poly import DEGREVLEX, Polynomial, TermOrder, parse_polynomial
from .groebner import buchberger, normal_form, s_polynomial
from .quotient import QuotientAlgebra
from .modules import GradedModule, direct_sum, tensor, ulrich_index
from .resolution import BettiTable, Resolution, limit_ratio, rational_fit, resolve
from .homology import bass_numbers, canonical_module, ext, matlis_dual, tor
from .invariants import RingInvariants, asserted_invariants, ring_invariants
from .koszul import (
    KoszulHomology,
    TorAlgebraClass,
    classify_codim3,
    detect_embedded_deformation,
    koszul_homology,
)
from .criteria import (
    Certificate,
    GGEvidence,
    certify_auslander_reiten,
    certify_trivial_vanishing,
    compare_threshold,
    gg_evidence,
    gorenstein_tests,
    growth_threshold,
    verify_growth_bounds,
    verify_ratio_bounds,
)

__version__ = "0.1.0"
