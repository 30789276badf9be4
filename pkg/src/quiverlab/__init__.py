"""quiverlab: quiver mutation, class enumeration, and structural type recognition."""

from .canonical import are_isomorphic, canonical_key, key_to_quiver
from .classify import (
    Certificate,
    TypeVerdict,
    classify,
    connecting_vertices,
    find_central_cycles,
    is_type_a,
    is_type_d,
    is_type_d_affine,
)
from .core import (
    FAMILIES,
    Quiver,
    QuiverError,
    SeedSpec,
    from_matrix,
    make_quiver,
    mutate,
    mutate_seq,
    parse_quiver_text,
    permute,
    quiver_to_text,
    seed,
    seeds,
)
from .enumeration import (
    ClassRegistry,
    EnumLimits,
    MutationClass,
    build_registry,
    enumerate_class,
    member,
    subsample,
)

__all__ = [
    "FAMILIES",
    "Quiver",
    "QuiverError",
    "SeedSpec",
    "Certificate",
    "TypeVerdict",
    "ClassRegistry",
    "EnumLimits",
    "MutationClass",
    "are_isomorphic",
    "build_registry",
    "canonical_key",
    "classify",
    "connecting_vertices",
    "enumerate_class",
    "find_central_cycles",
    "from_matrix",
    "is_type_a",
    "is_type_d",
    "is_type_d_affine",
    "key_to_quiver",
    "make_quiver",
    "member",
    "mutate",
    "mutate_seq",
    "parse_quiver_text",
    "permute",
    "quiver_to_text",
    "seed",
    "seeds",
    "subsample",
]
