"""McKay对应、对偶McKay对应与行列式公式"""

from mckay_dual.correspondence.mckay import (
    McKayGraph, McKayResult, VertexIrrepBijection, match_affine, mckay_correspondence,
    mckay_graph, mckay_isomorphism_check,
)
from mckay_dual.correspondence.dual import (
    DualLabeling, MumfordRepresentatives, SpecialTriple, alternate_ordering, canonical_ordering,
    dual_labeling, find_mumford_representatives, find_special_triple, mumford_check,
    verify_presentation_relations, verify_dual_correspondence,
)
from mckay_dual.correspondence.fourier import (
    FourierMatrix, ProbeResult, abelianization_check, cartan_fourier_matrix,
    central_transform_order_probe, cyclic_fourier, det_formula_check, determinant_fourier_matrix,
)

__all__ = [
    "McKayGraph", "McKayResult", "VertexIrrepBijection", "match_affine", "mckay_correspondence",
    "mckay_graph", "mckay_isomorphism_check",
    "DualLabeling", "MumfordRepresentatives", "SpecialTriple", "alternate_ordering",
    "canonical_ordering", "dual_labeling", "find_mumford_representatives", "find_special_triple",
    "mumford_check", "verify_presentation_relations", "verify_dual_correspondence",
    "FourierMatrix", "ProbeResult", "abelianization_check", "cartan_fourier_matrix",
    "central_transform_order_probe", "cyclic_fourier", "det_formula_check",
    "determinant_fourier_matrix",
]
