"""
暴力验证模块

只使用乘法表，逐元素重新计算共轭类、中心和交换化，与主实现的结果比较。
这里刻意不复用主实现的任何中间结果（逆元表、元素阶、共轭类划分）
"""

import math
from typing import FrozenSet, List, Set, Tuple

import numpy as np

from mckay_dual.common.reporting import CheckResult
from mckay_dual.groups.su2group import FiniteSubgroup, abelianization, center, conjugacy_classes

ORACLE_LIMIT = 48


def _identity(table: np.ndarray) -> int:
    size = table.shape[0]
    for e in range(size):
        if all(table[e, h] == h for h in range(size)):
            return e
    raise ValueError("乘法表中没有单位元")


def _inverses(table: np.ndarray, identity: int) -> List[int]:
    size = table.shape[0]
    return [next(h for h in range(size) if table[g, h] == identity) for g in range(size)]


def brute_force_classes(table: np.ndarray) -> Set[FrozenSet[int]]:
    size = table.shape[0]
    inverse = _inverses(table, _identity(table))
    classes = set()
    for g in range(size):
        classes.add(frozenset(int(table[table[x, g], inverse[x]]) for x in range(size)))
    return classes


def brute_force_center(table: np.ndarray) -> Set[int]:
    size = table.shape[0]
    return {g for g in range(size) if all(table[g, h] == table[h, g] for h in range(size))}


def brute_force_abelianization(table: np.ndarray) -> Tuple[int, int]:
    """返回 (|G^{ab}|, G^{ab} 的指数)"""
    size = table.shape[0]
    identity = _identity(table)
    inverse = _inverses(table, identity)

    subgroup = {identity}
    for a in range(size):
        for b in range(size):
            subgroup.add(int(table[table[table[a, b], inverse[a]], inverse[b]]))
    # 反复相乘直到集合稳定
    while True:
        grown = {int(table[x, y]) for x in subgroup for y in subgroup}
        if grown <= subgroup:
            break
        subgroup |= grown

    exponent = 1
    for g in range(size):
        current, k = g, 1
        while current not in subgroup:
            current = int(table[current, g])
            k += 1
        exponent = exponent * k // math.gcd(exponent, k)
    return size // len(subgroup), exponent


def oracle_equivalence(group: FiniteSubgroup, limit: int = ORACLE_LIMIT) -> CheckResult:
    """
    暴力重算结果与主实现比较

    参数:
        group: 有限群
        limit: 只在 |G| <= limit 时运行

    返回:
        CheckResult对象，群阶超过上限时记为不适用
    """
    name = "oracle_equivalence"
    if group.order > limit:
        return CheckResult.not_applicable(name, f"|G| = {group.order} > {limit}")

    table = group.mult_table
    mismatches = []
    if brute_force_classes(table) != {frozenset(c.members) for c in conjugacy_classes(group)}:
        mismatches.append("classes")
    if brute_force_center(table) != set(center(group)):
        mismatches.append("center")
    if brute_force_abelianization(table) != tuple(abelianization(group)):
        mismatches.append("abelianization")
    return CheckResult(name, not mismatches, deviation=float(len(mismatches)),
                       witness={"mismatches": mismatches} if mismatches else {"order": group.order})
