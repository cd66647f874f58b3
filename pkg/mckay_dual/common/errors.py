"""
异常定义模块

库函数只抛出异常，由CLI统一转换为退出码或失败的检查项
"""

from typing import Any, Optional


class McKayError(Exception):
    """本项目所有异常的基类"""


class InvalidDiagramError(McKayError, ValueError):
    """图类型、秩或类型描述串不合法"""


class FieldArithmeticError(McKayError, ArithmeticError):
    """分圆域运算错误（除零、阶数为零等）"""


class VerificationError(McKayError):
    """
    验证失败

    参数:
        message: 错误描述
        check: 失败的检查项名称
        witness: 反例或定位信息（需可JSON序列化）
    """

    def __init__(self, message: str, check: str = "", witness: Optional[Any] = None):
        super().__init__(message)
        self.check = check
        self.witness = witness
