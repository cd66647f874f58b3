"""
pytest公共配置

将项目根目录添加到Python路径中，并提供按类型缓存的群与对应结果
"""

import sys
from pathlib import Path

import pytest

# 将项目根目录添加到Python路径中
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from mckay_dual.algebra.dynkin import DiagramType, Family
from mckay_dual.groups.su2group import generate


def make_type(text: str) -> DiagramType:
    """'E8' / 'D5' / 'A3' → DiagramType"""
    return DiagramType(Family(text[0]), int(text[1:]))


@pytest.fixture(scope="session")
def group_of():
    """按类型名取群（generate本身有缓存）"""
    def factory(text: str):
        return generate(make_type(text))
    return factory
