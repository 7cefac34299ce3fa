"""Exact toolkit for freeness and near-freeness of plane curves and line
arrangements, decided through minimal-degree Jacobian syzygies."""

from .arrangement import (
    LineArrangement,
    SingularPoint,
    WeakCombinatorics,
    catalog,
    catalog_names,
    defining_polynomial,
    deform_triple_point,
    delete_line,
    load_lines,
    milnor_number,
    parse_lines,
    singular_points,
    tjurina_drop_check,
    transform,
    weak_combinatorics,
)
from .classify import (
    CandidateRecord,
    CandidateStatus,
    ExclusionConfig,
    classify_all,
    check_combinatorics,
    default_exclusions,
    enumerate_candidates,
    has_integer_root,
    mdr_window,
    schonheim_u3,
    t3_lower_bound,
)
from .criteria import (
    AnalysisReport,
    MdrResult,
    Verdict,
    VerdictKind,
    analyze_curve,
    eta,
    mdr,
    relation_matrix,
    verdict,
)
from .field import OMEGA, ONE, ZERO, FieldTag, Scalar, format_scalar, parse_scalar
from .linalg import ExactMatrix, kernel_basis, rank
from .poly import (
    LinearForm,
    Poly,
    divide_exact,
    format_poly,
    graded_basis,
    parse_poly,
    product_of_forms,
)

__version__ = "0.1.0"
