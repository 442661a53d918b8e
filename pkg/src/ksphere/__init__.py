"""Exact equivariant K-group computations for involution spheres of finite groups."""

from .cyclotomic import Cyclotomic, CyclotomicRing, get_ring
from .groups import (
    ConjugacyClasses,
    GroupSpec,
    GroupSpecError,
    GroupTable,
    LambdaSpec,
    LambdaSpecError,
    OrderLimitError,
    SignHomomorphism,
    SubgroupEmbedding,
    build_group,
    build_sign_hom,
    conjugacy_classes,
    coset_representatives,
    enumerate_sign_homs,
    kernel_embedding,
)
from .characters import (
    CharacterTable,
    CharacterTheoryError,
    ClassFunction,
    OrbitData,
    VirtualCharacter,
    character_table,
    conjugate_twist,
    g_orbits_on_irr,
    induce,
    inner_product,
    restrict,
    tensor_product,
)
from .ktheory import (
    IdealPresentation,
    KElement,
    KGroupPresentation,
    k_group_s1_lambda,
    k_group_s_lambda,
    module_action,
    rank_splitting_report,
    ring_product,
)

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "CyclotomicRing",
    "get_ring",
    "GroupSpec",
    "GroupTable",
    "ConjugacyClasses",
    "SignHomomorphism",
    "SubgroupEmbedding",
    "LambdaSpec",
    "GroupSpecError",
    "OrderLimitError",
    "LambdaSpecError",
    "build_group",
    "build_sign_hom",
    "conjugacy_classes",
    "coset_representatives",
    "enumerate_sign_homs",
    "kernel_embedding",
    "CharacterTable",
    "CharacterTheoryError",
    "ClassFunction",
    "OrbitData",
    "VirtualCharacter",
    "character_table",
    "conjugate_twist",
    "g_orbits_on_irr",
    "induce",
    "inner_product",
    "restrict",
    "tensor_product",
    "IdealPresentation",
    "KElement",
    "KGroupPresentation",
    "k_group_s1_lambda",
    "k_group_s_lambda",
    "module_action",
    "rank_splitting_report",
    "ring_product",
]
