"""Exact computations with t-extensions of finitely generated abelian groups.

A t-extension is a short exact sequence 0 -> A -> B -> C -> 0 that
stays exact after restricting every group to its torsion subgroup.
This package classifies extensions, decides the t property, computes
Hom/Ext/Pext and the t-subgroup of Ext in closed form, cross-checks
everything against a brute-force cocycle oracle, transports results
through finite Pontryagin duality, and ships executable property
suites for the underlying theory.

All arithmetic is exact (arbitrary-precision integers and rationals).
The Smith normal form kernel runs compiled when the optional extension
module built from ``_snfcore.pyx`` is available and falls back to pure
Python otherwise; set ``TOREXT_PURE=1`` to force the fallback.
"""

from ._kernels import BACKEND
from .duality import CyclicFraction, DualGroup, dual_extension, dual_group, dual_morphism
from .extcalc import (
    ExtElement,
    ExtGroup,
    ExtTSubgroup,
    ext_group,
    ext_t_subgroup,
    ext_t_via_free_quotient,
    ext_t_via_torsion_targets,
    fg_t_injective,
    fg_t_projective,
    hom_group,
    induced_pullback,
    induced_pushforward,
    pext_group,
    pure_splits_certificate,
    t_injective_counterexample,
    t_projective_counterexample,
)
from .extensions import (
    Extension,
    TorsionSequence,
    are_equivalent,
    baer_sum,
    classify,
    direct_sum_ext,
    extension_from_lift_data,
    find_retraction,
    is_pure_extension,
    is_t_extension,
    make_extension,
    pullback,
    pushout,
    realize,
    split_extension,
    splits,
    torsion_sequence,
)
from .fgabelian import (
    DirectSum,
    Element,
    FgGroup,
    Morphism,
    canonical_from_orders,
    canonicalize,
    cokernel,
    direct_sum,
    format_group,
    image,
    is_pure,
    kernel,
    left_inverse,
    parse_group,
    pure_witness,
    torsion_subgroup,
)
from .intmat import (
    ExactnessError,
    GroupParseError,
    IntMatrix,
    InvalidInputError,
    ResourceLimitError,
    SnfDecomposition,
    TorextError,
    UnsupportedInputError,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
    solve_integer,
)
from .oracle import (
    Cocycle,
    class_count,
    class_group,
    class_of_table,
    cocycle_to_extension,
    enumerate_classes,
    oracle_equivalent,
    oracle_t_classes,
)
from .theorems import SuiteReport, replay, run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # errors
    "TorextError",
    "InvalidInputError",
    "ExactnessError",
    "ResourceLimitError",
    "UnsupportedInputError",
    "GroupParseError",
    # integer matrices
    "IntMatrix",
    "SnfDecomposition",
    "smith_normal_form",
    "hermite_normal_form",
    "solve_integer",
    "kernel_basis",
    # groups
    "FgGroup",
    "Element",
    "Morphism",
    "DirectSum",
    "canonicalize",
    "canonical_from_orders",
    "parse_group",
    "format_group",
    "direct_sum",
    "kernel",
    "image",
    "cokernel",
    "torsion_subgroup",
    "left_inverse",
    "is_pure",
    "pure_witness",
    # extensions
    "Extension",
    "TorsionSequence",
    "make_extension",
    "split_extension",
    "torsion_sequence",
    "is_t_extension",
    "pushout",
    "pullback",
    "direct_sum_ext",
    "baer_sum",
    "classify",
    "realize",
    "extension_from_lift_data",
    "are_equivalent",
    "splits",
    "find_retraction",
    "is_pure_extension",
    # ext calculus
    "ExtGroup",
    "ExtElement",
    "ExtTSubgroup",
    "ext_group",
    "ext_t_subgroup",
    "pext_group",
    "hom_group",
    "induced_pushforward",
    "induced_pullback",
    "ext_t_via_torsion_targets",
    "ext_t_via_free_quotient",
    "fg_t_projective",
    "fg_t_injective",
    "t_projective_counterexample",
    "t_injective_counterexample",
    "pure_splits_certificate",
    # oracle
    "Cocycle",
    "enumerate_classes",
    "class_count",
    "class_group",
    "cocycle_to_extension",
    "class_of_table",
    "oracle_t_classes",
    "oracle_equivalent",
    # duality
    "CyclicFraction",
    "DualGroup",
    "dual_group",
    "dual_morphism",
    "dual_extension",
    # suites
    "SuiteReport",
    "run_suite",
    "replay",
    "suite_names",
]
