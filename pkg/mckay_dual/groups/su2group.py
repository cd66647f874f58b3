"""
SU(2) 有限子群构造模块

每个ADE类型对应的二元多面体群（循环群、二元二面体群、二元四面体/八面体/二十面体群）
都用分圆域上的精确 2×2 矩阵生成。生成过程是从单位元出发的广度优先闭包，
乘法表由Cayley图上的生成元路径精确推出，不涉及任何浮点运算
"""

import logging
import math
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from mckay_dual.algebra.cyclotomic import (
    CyclotomicNumber, golden_ratio, imaginary_unit, root_of_unity,
)
from mckay_dual.algebra.dynkin import DiagramType, Family
from mckay_dual.common.errors import VerificationError
from mckay_dual.common.reporting import CheckResult

logger = logging.getLogger(__name__)

Entries = Tuple[CyclotomicNumber, CyclotomicNumber, CyclotomicNumber, CyclotomicNumber]

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 48


@dataclass(frozen=True)
class GroupElement:
    """
    SU(2) 中的元素 [[a, b], [c, d]]

    四个矩阵元位于同一个分圆域 Q(ζ_N) 中
    """
    m: Entries

    @classmethod
    def from_quaternion(cls, a: CyclotomicNumber, b: CyclotomicNumber,
                        c: CyclotomicNumber, d: CyclotomicNumber) -> "GroupElement":
        """四元数 a + bi + cj + dk 对应的矩阵 [[a+bi, c+di], [-c+di, a-bi]]"""
        i = imaginary_unit(a.order)
        return cls((a + b * i, c + d * i, -c + d * i, a - b * i))

    @classmethod
    def identity(cls, order: int) -> "GroupElement":
        one, zero = CyclotomicNumber.one(order), CyclotomicNumber.zero(order)
        return cls((one, zero, zero, one))

    @classmethod
    def diagonal(cls, value: CyclotomicNumber) -> "GroupElement":
        zero = CyclotomicNumber.zero(value.order)
        return cls((value, zero, zero, value.inverse()))

    @property
    def order_of_field(self) -> int:
        return self.m[0].order

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b, c, d = self.m
        e, f, g, h = other.m
        return GroupElement((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-x for x in self.m))

    def lift(self, order: int) -> "GroupElement":
        return GroupElement(tuple(x.lift(order) for x in self.m))

    def det(self) -> CyclotomicNumber:
        a, b, c, d = self.m
        return a * d - b * c

    def trace(self) -> CyclotomicNumber:
        return self.m[0] + self.m[3]

    def conjugate_transpose(self) -> "GroupElement":
        a, b, c, d = self.m
        return GroupElement((a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate()))

    def is_identity(self) -> bool:
        a, b, c, d = self.m
        return a == 1 and d == 1 and b.is_zero() and c.is_zero()

    def key(self) -> Tuple[Fraction, ...]:
        """去重用的规范键：四个矩阵元的规范坐标拼接"""
        return tuple(c for entry in self.m for c in entry.coeffs)

    def to_complex(self) -> np.ndarray:
        return np.array([[complex(self.m[0]), complex(self.m[1])],
                         [complex(self.m[2]), complex(self.m[3])]])


@dataclass(frozen=True)
class ConjugacyClass:
    """共轭类：成员下标、代表元（最小下标）、元素阶、迹"""
    index: int
    members: Tuple[int, ...]
    representative: int
    element_order: int
    trace: CyclotomicNumber

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(eq=False)
class FiniteSubgroup:
    """
    SU(2) 的有限子群

    elements[0] 是单位元；mult_table[g, h] 是 g·h 的下标；
    minus_one 是 -I 的下标（A_n 且 n+1 为奇数时为 None）
    """
    type: DiagramType
    field_order: int
    elements: Tuple[GroupElement, ...]
    generators: Tuple[int, ...]
    mult_table: np.ndarray
    inverse_table: np.ndarray
    minus_one: Optional[int]
    element_orders: np.ndarray
    classes: List[ConjugacyClass] = field(default_factory=list)
    class_of: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def multiply(self, g: int, h: int) -> int:
        return int(self.mult_table[g, h])

    def inverse(self, g: int) -> int:
        return int(self.inverse_table[g])

    def product(self, indices: Iterable[int]) -> int:
        result = self.identity
        for g in indices:
            result = int(self.mult_table[result, g])
        return result

    def power(self, g: int, k: int) -> int:
        """g^k，k 可以为负"""
        k %= int(self.element_orders[g])
        result = self.identity
        for _ in range(k):
            result = int(self.mult_table[result, g])
        return result

    def commutes(self, g: int, h: int) -> bool:
        return self.mult_table[g, h] == self.mult_table[h, g]

    def conjugate(self, g: int, x: int) -> int:
        """x g x^{-1}"""
        return int(self.mult_table[self.mult_table[x, g], self.inverse_table[x]])

    def class_index(self, g: int) -> int:
        return int(self.class_of[g])

    def subgroup_generated(self, indices: Iterable[int]) -> Set[int]:
        """由给定元素生成的子群"""
        gens = list(dict.fromkeys(int(g) for g in indices))
        found = {self.identity}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = int(self.mult_table[g, s])
                if h not in found:
                    found.add(h)
                    queue.append(h)
        return found

    def generates(self, indices: Iterable[int]) -> bool:
        return len(self.subgroup_generated(indices)) == self.order

    def identity_class(self) -> int:
        return self.class_index(self.identity)

    def minus_one_class(self) -> Optional[int]:
        return None if self.minus_one is None else self.class_index(self.minus_one)


# ========== 生成元 ==========

def expected_order(diagram_type: DiagramType) -> int:
    """A_n → n+1，D_n → 4n-8，E6 → 24，E7 → 48，E8 → 120"""
    if diagram_type.family is Family.A:
        return diagram_type.rank + 1
    if diagram_type.family is Family.D:
        return 4 * diagram_type.rank - 8
    return {6: 24, 7: 48, 8: 120}[diagram_type.rank]


def field_order(diagram_type: DiagramType) -> int:
    """矩阵元所在分圆域的阶"""
    n = diagram_type.rank
    if diagram_type.family is Family.A:
        return 2 * (n + 1)
    if diagram_type.family is Family.D:
        return math.lcm(4, 2 * (n - 2))
    return 20 if n == 8 else 8


def generator_matrices(diagram_type: DiagramType) -> List[GroupElement]:
    """
    各类型的标准四元数生成元

    参数:
        diagram_type: 图类型

    返回:
        生成元矩阵列表，全部位于 Q(ζ_N)，N = field_order(diagram_type)
    """
    order = field_order(diagram_type)
    zero = CyclotomicNumber.zero(order)
    one = CyclotomicNumber.one(order)
    half = Fraction(1, 2)
    n = diagram_type.rank

    # n 为偶数时 Q(ζ_{2(n+1)}) 不含 i
    if diagram_type.family is Family.A:
        return [GroupElement.diagonal(root_of_unity(order, order // (n + 1)))]

    quaternion_i = GroupElement.from_quaternion(zero, one, zero, zero)
    quaternion_j = GroupElement.from_quaternion(zero, zero, one, zero)

    if diagram_type.family is Family.D:
        rotation = GroupElement.diagonal(root_of_unity(order, order // (2 * (n - 2))))
        return [rotation, quaternion_j]

    tetrahedral = GroupElement.from_quaternion(one * half, one * half, one * half, one * half)
    if n == 6:
        return [quaternion_i, quaternion_j, tetrahedral]
    if n == 7:
        # (1 + i)/√2 = diag(ζ_8, ζ_8^{-1})
        octahedral = GroupElement.diagonal(root_of_unity(order, order // 8))
        return [quaternion_i, quaternion_j, tetrahedral, octahedral]

    # E8: (τ + τ^{-1} i + j)/2，τ^{-1} = τ - 1
    tau = golden_ratio(order)
    icosahedral = GroupElement.from_quaternion(tau * half, (tau - 1) * half, one * half, zero)
    return [quaternion_i, quaternion_j, icosahedral]


# ========== 构造 ==========

class SubgroupBuilder:
    """
    有限子群构造器

    从单位元出发做广度优先闭包，记录每个元素右乘各生成元的结果，
    再沿生成元路径推出完整乘法表
    """

    def __init__(self, diagram_type: DiagramType, closure_cap: int = 1000, debug: bool = False):
        self.diagram_type = diagram_type
        self.closure_cap = closure_cap
        self.debug = debug

    def build(self) -> FiniteSubgroup:
        start = time.perf_counter()
        order = field_order(self.diagram_type)
        generators = generator_matrices(self.diagram_type)

        elements, right, parents = self._closure(order, generators)
        self.log(f"闭包完成: {len(elements)} 个元素")

        table = self._multiplication_table(right, parents)
        inverse = np.argmax(table == 0, axis=1).astype(np.int64)
        minus_key = (-GroupElement.identity(order)).key()
        minus_one = next((g for g, e in enumerate(elements) if e.key() == minus_key), None)

        group = FiniteSubgroup(
            type=self.diagram_type,
            field_order=order,
            elements=tuple(elements),
            generators=tuple(right[0]),
            mult_table=table,
            inverse_table=inverse,
            minus_one=minus_one,
            element_orders=_element_orders(table),
        )
        group.classes, group.class_of = _partition_classes(group)

        expected = expected_order(self.diagram_type)
        if group.order != expected:
            raise VerificationError(
                f"{self.diagram_type.label} 的群阶为 {group.order}，应为 {expected}",
                "group_order",
                {"found": group.order, "expected": expected},
            )
        self.log(f"{self.diagram_type.label}: |G| = {group.order}，"
                 f"{group.class_count} 个共轭类，用时 {(time.perf_counter() - start) * 1000:.1f} ms")
        return group

    def _closure(self, order: int, generators: Sequence[GroupElement]):
        identity = GroupElement.identity(order)
        elements = [identity]
        index: Dict[Tuple[Fraction, ...], int] = {identity.key(): 0}
        parents: List[Tuple[int, int]] = [(0, -1)]
        right: List[List[int]] = []

        queue = deque([0])
        while queue:
            g = queue.popleft()
            row = []
            for s, generator in enumerate(generators):
                product = elements[g] * generator
                key = product.key()
                if key not in index:
                    if len(elements) >= self.closure_cap:
                        raise VerificationError(
                            f"{self.diagram_type.label} 的闭包超过上限 {self.closure_cap}，生成元可能有误",
                            "group_order",
                            {"cap": self.closure_cap},
                        )
                    index[key] = len(elements)
                    elements.append(product)
                    parents.append((g, s))
                    queue.append(index[key])
                row.append(index[key])
            right.append(row)
        return elements, right, parents

    @staticmethod
    def _multiplication_table(right: List[List[int]], parents: List[Tuple[int, int]]) -> np.ndarray:
        right_products = np.array(right, dtype=np.int64)
        size = len(right)
        table = np.zeros((size, size), dtype=np.int64)
        table[:, 0] = np.arange(size)
        # h = parent(h)·s，因此 g·h = (g·parent(h))·s
        for h in range(1, size):
            parent, s = parents[h]
            table[:, h] = right_products[table[:, parent], s]
        return table

    def log(self, message: str):
        if self.debug:
            logger.debug(f"[{time.strftime('%H:%M:%S')}][SubgroupBuilder] {message}")


def _element_orders(table: np.ndarray) -> np.ndarray:
    size = table.shape[0]
    orders = np.zeros(size, dtype=np.int64)
    for g in range(size):
        current, k = g, 1
        while current != 0:
            current = table[current, g]
            k += 1
        orders[g] = k
    return orders


def _partition_classes(group: FiniteSubgroup) -> Tuple[List[ConjugacyClass], np.ndarray]:
    table, inverse = group.mult_table, group.inverse_table
    class_of = np.full(group.order, -1, dtype=np.int64)
    classes: List[ConjugacyClass] = []
    for g in range(group.order):
        if class_of[g] >= 0:
            continue
        orbit = np.unique(table[table[:, g], inverse])
        class_of[orbit] = len(classes)
        classes.append(ConjugacyClass(
            index=len(classes),
            members=tuple(int(x) for x in orbit),
            representative=int(orbit[0]),
            element_order=int(group.element_orders[g]),
            trace=group.elements[g].trace(),
        ))
    return classes, class_of


@lru_cache(maxsize=None)
def _generate_cached(diagram_type: DiagramType, closure_cap: int) -> FiniteSubgroup:
    return SubgroupBuilder(diagram_type, closure_cap=closure_cap).build()


def generate(diagram_type: DiagramType, closure_cap: int = 1000, debug: bool = False) -> FiniteSubgroup:
    """
    生成类型对应的有限子群（结果按类型缓存）

    参数:
        diagram_type: 图类型
        closure_cap: 闭包元素数上限，超过说明生成元有误
        debug: 是否输出构造日志

    返回:
        FiniteSubgroup对象，已划分共轭类
    """
    if debug:
        return SubgroupBuilder(diagram_type, closure_cap=closure_cap, debug=True).build()
    return _generate_cached(diagram_type, closure_cap)


# ========== 结构查询 ==========

def conjugacy_classes(group: FiniteSubgroup) -> List[ConjugacyClass]:
    """共轭类列表，单位元所在的类排在第一位"""
    return group.classes


def center(group: FiniteSubgroup) -> List[int]:
    return [c.representative for c in group.classes if c.size == 1]


def power_map(group: FiniteSubgroup, class_index: int, k: int) -> int:
    """g^k 所在共轭类的下标，g 为该类的代表元"""
    representative = group.classes[class_index].representative
    return group.class_index(group.power(representative, k))


@dataclass(eq=False)
class QuotientGroup:
    """
    商群 H = G/{±I}

    coset_of[g] 是 g 所在陪集的下标，representatives[a] 是陪集 a 的最小下标代表元
    """
    order: int
    mult_table: np.ndarray
    coset_of: np.ndarray
    representatives: Tuple[int, ...]

    def element_order(self, a: int) -> int:
        current, k = a, 1
        while current != 0:
            current = int(self.mult_table[current, a])
            k += 1
        return k

    def is_group(self) -> bool:
        table = self.mult_table
        size = self.order
        if not np.array_equal(table[0], np.arange(size)) or not np.array_equal(table[:, 0], np.arange(size)):
            return False
        for row in table:
            if len(set(row.tolist())) != size:
                return False
        return True

    def generates(self, indices: Iterable[int]) -> bool:
        gens = list(indices)
        found = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = int(self.mult_table[a, s])
                if b not in found:
                    found.add(b)
                    queue.append(b)
        return len(found) == self.order


def quotient_by_center_pm1(group: FiniteSubgroup) -> QuotientGroup:
    """
    按 {±I} 取商

    -I 不在群中时（A_n，n+1 为奇数）商映射是同构

    返回:
        QuotientGroup对象，乘法表经过良定性检验
    """
    coset_of = np.full(group.order, -1, dtype=np.int64)
    representatives: List[int] = []
    for g in range(group.order):
        if coset_of[g] >= 0:
            continue
        coset_of[g] = len(representatives)
        if group.minus_one is not None:
            coset_of[group.multiply(g, group.minus_one)] = len(representatives)
        representatives.append(g)

    reps = np.array(representatives, dtype=np.int64)
    table = coset_of[group.mult_table[np.ix_(reps, reps)]]
    # 良定性：换用另一个代表元，乘积所在陪集不变
    if not np.array_equal(coset_of[group.mult_table], table[np.ix_(coset_of, coset_of)]):
        raise VerificationError("商群乘法不是良定的", "center_quotient")
    return QuotientGroup(len(representatives), table, coset_of, tuple(representatives))


class Abelianization(NamedTuple):
    """G^{ab} 的阶与指数"""
    order: int
    exponent: int


def commutator_subgroup(group: FiniteSubgroup) -> Set[int]:
    """所有换位子 [a, b] = a b a^{-1} b^{-1} 生成的子群"""
    table, inverse = group.mult_table, group.inverse_table
    ab = table
    ab_inv_a = table[ab, inverse[:, None]]
    commutators = table[ab_inv_a, inverse[None, :]]
    return group.subgroup_generated(np.unique(commutators).tolist())


def abelianization(group: FiniteSubgroup) -> Abelianization:
    """
    用换位子群和商群计算交换化

    返回:
        (G^{ab} 的阶, G^{ab} 的指数)
    """
    subgroup = commutator_subgroup(group)
    quotient_order = group.order // len(subgroup)
    exponent = 1
    for g in range(group.order):
        current, k = g, 1
        while current not in subgroup:
            current = group.multiply(current, g)
            k += 1
        exponent = math.lcm(exponent, k)
    return Abelianization(quotient_order, exponent)


# ========== 检查 ==========

def group_order_check(group: FiniteSubgroup) -> CheckResult:
    expected = expected_order(group.type)
    return CheckResult(
        name="group_order",
        passed=group.order == expected,
        deviation=float(abs(group.order - expected)),
        witness={"order": group.order, "expected": expected},
    )


def group_axioms_check(group: FiniteSubgroup, samples: int = 100000, seed: int = 0) -> CheckResult:
    """
    检验乘法表定义了一个群

    单位元与逆元逐一检验；结合律在 |G| <= 48 时穷举，否则随机抽样
    """
    table, inverse = group.mult_table, group.inverse_table
    size = group.order
    everything = np.arange(size)
    name = "group_axioms"

    if not (np.array_equal(table[0], everything) and np.array_equal(table[:, 0], everything)):
        return CheckResult(name, False, witness={"failure": "identity"})
    if not np.array_equal(inverse[inverse], everything):
        return CheckResult(name, False, witness={"failure": "inverse_involution"})
    if np.any(table[everything, inverse] != 0):
        return CheckResult(name, False, witness={"failure": "inverse"})

    if size <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        left = table[table]
        right = table[everything[:, None, None], table[None, :, :]]
        bad = np.argwhere(left != right)
        checked = size ** 3
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, size, size=(3, samples))
        bad_mask = table[table[a, b], c] != table[a, table[b, c]]
        bad = np.stack([a[bad_mask], b[bad_mask], c[bad_mask]], axis=1)
        checked = samples

    if len(bad):
        return CheckResult(name, False, witness={"failure": "associativity",
                                                 "triple": [int(v) for v in bad[0]]})
    return CheckResult(name, True, witness={
        "associativity": "exhaustive" if size <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT else "sampled",
        "triples": int(checked),
    })


def unitarity_check(group: FiniteSubgroup) -> CheckResult:
    """每个元素精确满足 det = 1 且 U·U* = I"""
    for g, element in enumerate(group.elements):
        if element.det() != 1:
            return CheckResult("unitarity", False, witness={"element": g, "failure": "det"})
        if not (element * element.conjugate_transpose()).is_identity():
            return CheckResult("unitarity", False, witness={"element": g, "failure": "unitary"})
    return CheckResult("unitarity", True, witness={"elements": group.order})


def class_equation_check(group: FiniteSubgroup) -> bool:
    sizes = [c.size for c in group.classes]
    return sum(sizes) == group.order and all(group.order % s == 0 for s in sizes)


def center_quotient_check(group: FiniteSubgroup) -> CheckResult:
    """
    中心与商群 H = G/{±I}

    D/E 的中心为 {±I}，A 型群可交换；-I ∈ G 当且仅当 |G| 为偶数
    """
    quotient = quotient_by_center_pm1(group)
    central = center(group)
    if group.type.family is Family.A:
        center_ok = len(central) == group.order
    else:
        center_ok = group.minus_one is not None and sorted(central) == sorted([0, group.minus_one])
    parity_ok = (group.minus_one is not None) == (group.order % 2 == 0)
    expected_h = group.order // 2 if group.minus_one is not None else group.order
    passed = center_ok and parity_ok and quotient.order == expected_h and quotient.is_group()
    return CheckResult("center_quotient", passed, witness={
        "center_order": len(central),
        "quotient_order": quotient.order,
        "contains_minus_one": group.minus_one is not None,
    })


def special_trace_check(group: FiniteSubgroup, g: int, m: int, tolerance: float = 1e-9) -> bool:
    """阶为 2m 的元素 g，其 k 次幂的迹嵌入为 2cos(πk/m)，k = 1..m"""
    if group.element_orders[g] != 2 * m:
        return False
    for k in range(1, m + 1):
        value = complex(group.elements[group.power(g, k)].trace())
        if abs(value - 2 * math.cos(math.pi * k / m)) > tolerance:
            return False
    return True
