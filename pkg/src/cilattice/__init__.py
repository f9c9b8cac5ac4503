"""Exact complete-intersection tests for positive lattices and semigroups."""

from .binomials import BinomialPresentation, CharacterAssignment, emit_binomial, presentation_report
from .errors import *  # noqa: F401,F403
from .geometry import extreme_rays, is_positive, positive_grading, positivity_witness
from .gluing import (
    EXACT,
    Leaf,
    Mode,
    Node,
    Verdict,
    basis_from_certificate,
    check_certificate,
    ci_decide,
    gluing_search,
    gluing_vector,
    p_power,
    stci_decide,
    verify_certificate,
)
from .linalg import (
    IntMatrix,
    Lattice,
    hnf,
    index_p_power,
    lattice_intersection,
    lattice_sum,
    quotient_invariants,
    restrict,
    saturate_full,
    saturate_p,
    smith_form,
    snf,
)
from .mixed import (
    FmsDecomposition,
    block_compose,
    fms_decompose,
    is_mixed,
    is_mixed_dominating,
    is_mixed_dominating_fast,
    random_mixed_dominating,
)
from .semigroups import (
    SemigroupPresentation,
    associated_semigroup,
    cone_report,
    has_no_invertibles,
    kernel_lattice,
    semigroup_gluing_check,
)

__version__ = "0.1.0"
