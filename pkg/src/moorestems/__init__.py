"""Exact calculator for finitely generated abelian groups, two-term exact
couples with alpha.beta = 2, and the stable homotopy stems (degrees 0..7) of
Moore spaces."""

from .fga import (
    AbelianGroup,
    GroupElement,
    GroupHom,
    IntMatrix,
    direct_sum,
    hom_group,
    n_torsion,
    quotient_by_n,
    smith_normal_form,
)
from .functors import ext, ext_realize, lambda_iso_check, lambda_map, tensor, tor
from .exact_couples import (
    CoupleMorphism,
    ExactCouple,
    morphism_group,
    parse_couple,
    serialize_couple,
    validate,
)
from .moore import (
    MooreSpace,
    STABLE_STEMS,
    StemTable,
    canonical_couple,
    homotopy_classes,
    normalize,
    pushout,
    stable_stem,
    stem_table,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CoupleMorphism",
    "ExactCouple",
    "GroupElement",
    "GroupHom",
    "IntMatrix",
    "MooreSpace",
    "STABLE_STEMS",
    "StemTable",
    "canonical_couple",
    "direct_sum",
    "ext",
    "ext_realize",
    "hom_group",
    "homotopy_classes",
    "lambda_iso_check",
    "lambda_map",
    "morphism_group",
    "n_torsion",
    "normalize",
    "parse_couple",
    "pushout",
    "quotient_by_n",
    "serialize_couple",
    "smith_normal_form",
    "stable_stem",
    "stem_table",
    "tensor",
    "tor",
    "validate",
]
