"""SU(2) 有限子群、特征标表与暴力验证"""

from mckay_dual.groups.su2group import (
    Abelianization, ConjugacyClass, FiniteSubgroup, GroupElement, QuotientGroup,
    abelianization, center, center_quotient_check, conjugacy_classes, expected_order,
    generate, group_axioms_check, group_order_check, power_map, quotient_by_center_pm1,
    special_trace_check, unitarity_check,
)
from mckay_dual.groups.characters import (
    CharacterTable, character_orthogonality_check, character_table, defining_character,
    det_character, det_character_row, tensor_multiplicities,
)
from mckay_dual.groups.oracle import oracle_equivalence

__all__ = [
    "Abelianization", "ConjugacyClass", "FiniteSubgroup", "GroupElement", "QuotientGroup",
    "abelianization", "center", "center_quotient_check", "conjugacy_classes", "expected_order",
    "generate", "group_axioms_check", "group_order_check", "power_map", "quotient_by_center_pm1",
    "special_trace_check", "unitarity_check",
    "CharacterTable", "character_orthogonality_check", "character_table", "defining_character",
    "det_character", "det_character_row", "tensor_multiplicities",
    "oracle_equivalence",
]
