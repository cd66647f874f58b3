"""
暴力验证测试模块
"""

import pytest

from mckay_dual.groups.oracle import (
    brute_force_abelianization, brute_force_center, brute_force_classes, oracle_equivalence,
)


@pytest.mark.parametrize("text", ["A1", "A5", "D4", "D7", "E6", "E7"])
def test_oracle_agrees(text, group_of):
    """测试暴力重算与主实现一致"""
    result = oracle_equivalence(group_of(text))
    assert result.passed, result.witness


def test_oracle_skips_large_groups(group_of):
    """|G| > 48 时不适用"""
    result = oracle_equivalence(group_of("E8"))
    assert result.passed
    assert result.witness["applicable"] is False


def test_oracle_limit_override(group_of):
    result = oracle_equivalence(group_of("D12"), limit=40)
    assert result.passed
    assert result.witness == {"order": 40}


def test_brute_force_quaternion_group(group_of):
    """Q8：5个共轭类，中心阶2，交换化为 Z2×Z2"""
    table = group_of("D4").mult_table
    assert len(brute_force_classes(table)) == 5
    assert len(brute_force_center(table)) == 2
    assert brute_force_abelianization(table) == (4, 2)
