"""分圆域精确运算与ADE图代数"""

from mckay_dual.algebra.cyclotomic import (
    CyclotomicNumber, embed_complex, euler_phi, golden_ratio, imaginary_unit, root_of_unity,
    sqrt2, sqrt5,
)
from mckay_dual.algebra.dynkin import (
    AffineDiagram, CartanData, Diagram, DiagramType, Family, InverseBoundReport, NeumannReport,
    affine_extend, build_diagram, cartan, connection_index_gcd_check, discriminant_exponent,
    highest_root, inverse_bound_check, neumann_convergence, neumann_series_check, parse_type, root_system,
    walk_count_check,
)

__all__ = [
    "CyclotomicNumber", "embed_complex", "euler_phi", "golden_ratio", "imaginary_unit",
    "root_of_unity", "sqrt2", "sqrt5",
    "AffineDiagram", "CartanData", "Diagram", "DiagramType", "Family", "InverseBoundReport",
    "NeumannReport", "affine_extend", "build_diagram", "cartan", "connection_index_gcd_check",
    "discriminant_exponent", "highest_root", "inverse_bound_check", "neumann_convergence", "neumann_series_check",
    "parse_type", "root_system", "walk_count_check",
]
