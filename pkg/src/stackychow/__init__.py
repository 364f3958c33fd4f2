"""Exact Chow ring presentations for toric Deligne-Mumford stacks.

The package computes, from a stacky fan and an equivariant vector bundle on
it, the box of the fan, the integral Chow ring of the associated stack, and
generators-and-relations presentations of the inertial Chow rings attached to
the orbifold, virtual, bundle-twisted and asymptotic products.
"""

from stackychow.lattice import (
    AbGroup,
    AbElement,
    IntMatrix,
    SnfDecomposition,
    coker,
    quotient,
    smith_normal_form,
    solve_integer,
    solve_rational_nonneg,
)
from stackychow.gradedpoly import (
    Elimination,
    EqualityWitness,
    GradedPieceReport,
    Poly,
    RingPresentation,
    eliminate,
    format_poly,
    hilbert_table,
    ideal_equal_up_to,
)
from stackychow.stackyfan import (
    BoxElement,
    DoubleBox,
    GroupElement,
    StackyFan,
    weighted_projective_fan,
)
from stackychow.charring import (
    CharacterData,
    character_data,
    linear_ideal,
    minimal_nonfaces,
    sector_ideal,
    sr_ideal,
    sr_ring,
)
from stackychow.inertial import (
    Bundle,
    KClass,
    MINUS_INFINITY,
    ORBIFOLD,
    PLUS_INFINITY,
    ProductKind,
    StarCalculator,
    VIRTUAL,
    age,
    associativity_witnesses,
    asymptotic_stabilization_witnesses,
    b_minus,
    b_plus,
    br_ideal,
    cr_ideal,
    inertial_presentation,
    log_restriction,
    log_restriction_phases,
    log_trace,
    log_trace_phases,
    q_vector,
    sector_labels,
    star_product,
    twist,
    v_minus,
    v_plus,
)

__all__ = [
    "AbGroup",
    "AbElement",
    "IntMatrix",
    "SnfDecomposition",
    "coker",
    "quotient",
    "smith_normal_form",
    "solve_integer",
    "solve_rational_nonneg",
    "Elimination",
    "EqualityWitness",
    "GradedPieceReport",
    "Poly",
    "RingPresentation",
    "eliminate",
    "format_poly",
    "hilbert_table",
    "ideal_equal_up_to",
    "BoxElement",
    "DoubleBox",
    "GroupElement",
    "StackyFan",
    "weighted_projective_fan",
    "CharacterData",
    "character_data",
    "linear_ideal",
    "minimal_nonfaces",
    "sector_ideal",
    "sr_ideal",
    "sr_ring",
    "Bundle",
    "KClass",
    "MINUS_INFINITY",
    "ORBIFOLD",
    "PLUS_INFINITY",
    "ProductKind",
    "StarCalculator",
    "VIRTUAL",
    "age",
    "associativity_witnesses",
    "asymptotic_stabilization_witnesses",
    "b_minus",
    "b_plus",
    "br_ideal",
    "cr_ideal",
    "inertial_presentation",
    "log_restriction",
    "log_restriction_phases",
    "log_trace",
    "log_trace_phases",
    "q_vector",
    "sector_labels",
    "star_product",
    "twist",
    "v_minus",
    "v_plus",
]

__version__ = "0.1.0"
