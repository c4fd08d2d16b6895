"""Groupoid cardinality, groupoid-valued species, and exact combinatorial
interpretations of hypergeometric series with positive rational parameters."""

from .errors import (
    CompositionRequiresZeroConstant,
    CompositionRequiresZeroFree,
    ExprParseError,
    HyperspeciesError,
    InvalidGroupoid,
    NonPositiveLowerParameter,
    OrderMismatch,
    RationalParseError,
    ResourceLimitExceeded,
    UnknownBuiltin,
)
from .groupoid import (
    CardinalityReport,
    Cyclic,
    Discrete,
    DisjointUnion,
    Empty,
    ExplicitGroupoid,
    GroupoidExpr,
    Product,
    Unit,
    cardinality_explicit,
    cardinality_expr,
    disjoint_union,
    iso_classes,
    parse_groupoid_expr,
    product,
    realize,
    validate,
)
from .hyper import (
    HyperParams,
    TripleObject,
    VerificationReport,
    alt_pochhammer_groupoid,
    explicit_H_objects,
    functorial_pochhammer,
    parse_species,
    species_H,
    species_H_lower,
    species_H_upper,
    verify_theorem,
    zbar_chain,
)
from .rationals import (
    binomial,
    format_rational,
    hyper_coefficient,
    parse_rational,
    pochhammer_step,
)
from .series import EgfSeries, hypergeometric_series
from .species import Species, builtin_species, species_value, valuation

__version__ = "0.1.0"
