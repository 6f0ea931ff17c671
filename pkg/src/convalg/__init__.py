"""Exact convolution algebras of finite elementary abelian 2-group actions.

The package realizes a finite set with an action of E = GF(2)^n from a
stabilizer/multiplicity description, builds the associated convolution
algebra over the rationals on its canonical orbit-label basis, and verifies
its structure exactly: associativity, the unit, the transpose
antiautomorphism, natural-number structure constants, semisimplicity, right
ideals with positive action matrices, generator spans, dimension formulas,
containment under the shift-group preorder, shift isomorphisms, and the
ten-line module catalog in rank two.
"""

from .algebra import (
    BasisLabel,
    ConvolutionAlgebra,
    Element,
    product_multiplicity,
)
from .catalog import (
    CatalogLine,
    CatalogResult,
    ContainmentReport,
    PreorderVerdict,
    catalog_rank_two,
    ideal_dimension_formula,
    preorder_leq,
    verify_containment,
)
from .checks import ALL_CHECK_IDS, CheckResult, run_checks
from .errors import (
    ConvalgError,
    InternalCheckError,
    InvalidInputError,
    ParseError,
    PositivityError,
    PreconditionError,
    ResourceLimitError,
)
from .esets import (
    ESet,
    ESetSpec,
    OrbitSpec,
    PairOrbit,
    ShiftedPairOrbit,
    realize,
    zero_sum_triple_count,
)
from .gf2 import (
    LinearForm,
    Subspace,
    all_subspaces,
    complement,
    fiber,
    forms_on,
    format_vector,
    full_space,
    intersect,
    parse_vector,
    span,
    span_of_strings,
    subspace_sum,
    zero_form,
    zero_subspace,
)
from .ideals import (
    IdealBasis,
    IdealBasisEntry,
    action_matrices,
    action_matrix,
    check_generator_span,
    generator_span,
    ideal_basis,
    partition_structure,
    verify_right_ideal,
)
from .instances import (
    ParsedInstance,
    algebra_dimension,
    load_instance,
    random_spec,
    spec_from_dict,
    spec_to_dict,
)
from .modules import (
    QuotientModule,
    ShiftIsomorphismReport,
    SpannedModule,
    character,
    characters_additive,
    intertwiner,
    is_simple,
    isomorphic,
    module_sum,
    quotient_module,
    shift_isomorphism,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_CHECK_IDS",
    "BasisLabel",
    "CatalogLine",
    "CatalogResult",
    "CheckResult",
    "ContainmentReport",
    "ConvalgError",
    "ConvolutionAlgebra",
    "ESet",
    "ESetSpec",
    "Element",
    "IdealBasis",
    "IdealBasisEntry",
    "InternalCheckError",
    "InvalidInputError",
    "LinearForm",
    "OrbitSpec",
    "PairOrbit",
    "ParseError",
    "ParsedInstance",
    "PositivityError",
    "PreconditionError",
    "PreorderVerdict",
    "QuotientModule",
    "ResourceLimitError",
    "ShiftIsomorphismReport",
    "ShiftedPairOrbit",
    "SpannedModule",
    "Subspace",
    "action_matrices",
    "action_matrix",
    "algebra_dimension",
    "all_subspaces",
    "catalog_rank_two",
    "character",
    "characters_additive",
    "check_generator_span",
    "complement",
    "fiber",
    "forms_on",
    "format_vector",
    "full_space",
    "generator_span",
    "ideal_basis",
    "ideal_dimension_formula",
    "intersect",
    "intertwiner",
    "is_simple",
    "isomorphic",
    "load_instance",
    "module_sum",
    "parse_vector",
    "partition_structure",
    "preorder_leq",
    "product_multiplicity",
    "quotient_module",
    "random_spec",
    "realize",
    "run_checks",
    "shift_isomorphism",
    "span",
    "span_of_strings",
    "spec_from_dict",
    "spec_to_dict",
    "subspace_sum",
    "verify_containment",
    "verify_right_ideal",
    "zero_form",
    "zero_subspace",
    "zero_sum_triple_count",
]
