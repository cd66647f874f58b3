"""
公共组件包

包含：
- 验证配置
- 检查结果与验证报告
- 异常定义
"""

from .config import VerificationConfig
from .errors import (
    McKayError,
    InvalidDiagramError,
    FieldArithmeticError,
    VerificationError,
)
from .reporting import (
    ReportSection,
    CheckResult,
    VerificationReport,
    CheckRegistry,
)

__all__ = [
    "VerificationConfig",
    "McKayError",
    "InvalidDiagramError",
    "FieldArithmeticError",
    "VerificationError",
    "ReportSection",
    "CheckResult",
    "VerificationReport",
    "CheckRegistry",
]
