"""
McKay对应验证库

为每个ADE类型构造SU(2)的有限子群，验证McKay对应（顶点 ↔ 不可约表示）、
对偶McKay对应（顶点 ↔ 非平凡共轭类），以及连接两者的行列式公式
"""

from mckay_dual.algebra import DiagramType, build_diagram, cartan, parse_type
from mckay_dual.common import VerificationConfig, VerificationReport
from mckay_dual.groups import character_table, generate

__version__ = "0.1.0"

__all__ = [
    "DiagramType", "build_diagram", "cartan", "parse_type",
    "VerificationConfig", "VerificationReport",
    "character_table", "generate",
]
