"""
行列式公式与Fourier变换模块

比较两种 r×r 矩阵：由行列式特征标得到的 det(g_j, R_k)，
以及由逆Cartan矩阵得到的 exp(-2πi (C^{-1})_{jk})；
并检验交换化的指数等于连接指数，以及中心函数变换的有限阶探测
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from mckay_dual.algebra.dynkin import (
    DiagramType, Family, build_diagram, cartan, connection_index_gcd_check, discriminant_exponent,
)
from mckay_dual.common.reporting import CheckResult
from mckay_dual.correspondence.dual import DualLabeling, dual_labeling, find_special_triple
from mckay_dual.correspondence.mckay import McKayResult, mckay_correspondence
from mckay_dual.groups.characters import character_table, det_character
from mckay_dual.groups.su2group import FiniteSubgroup, abelianization, generate

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class FourierMatrix:
    """
    r×r 相位矩阵，行按对偶标记的顶点 j、列按McKay对应的顶点 k 编号

    source 为 "determinant" 或 "cartan"
    """
    F: np.ndarray
    source: str
    automorphism: Optional[Tuple[int, ...]] = None

    def modulus_deviation(self) -> float:
        if self.F.size == 0:
            return 0.0
        return float(np.max(np.abs(np.abs(self.F) - 1.0)))


def _phase(value: Fraction) -> complex:
    reduced = value - math.floor(value)
    return cmath.exp(-2j * math.pi * float(reduced))


@lru_cache(maxsize=None)
def cartan_fourier_matrix(diagram_type: DiagramType) -> FourierMatrix:
    """exp(-2πi (C^{-1})_{jk})，相位按精确有理数模1约化后计算"""
    data = cartan(diagram_type)
    size = data.rank
    F = np.array([[_phase(data.inverse_entry(j, k)) for k in range(size)] for j in range(size)])
    return FourierMatrix(F, "cartan")


def determinant_fourier_matrix(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult,
                               automorphism: Optional[Tuple[int, ...]] = None) -> FourierMatrix:
    """
    det(g_j, R_k)

    参数:
        group: 有限群
        labeling: 对偶标记
        mckay: McKay对应结果（特征标表已按仿射顶点排序）
        automorphism: 作用在不可约表示一侧的图自同构，默认为恒等

    返回:
        FourierMatrix对象
    """
    size = len(labeling.mapping)
    automorphism = automorphism or tuple(range(size))
    F = np.array([
        [det_character(mckay.table, group, automorphism[k] + 1, labeling.mapping[j]) for k in range(size)]
        for j in range(size)
    ], dtype=complex)
    return FourierMatrix(F, "determinant", automorphism)


def det_formula_check(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult,
                      tolerance: float = 1e-8) -> CheckResult:
    """
    max |det(g_j, R_k) - exp(-2πi (C^{-1})_{jk})|

    先用恒等对应比较；不通过时依次尝试图的其他自同构，报告使之成立的那一个
    """
    expected = cartan_fourier_matrix(group.type).F
    diagram = build_diagram(group.type)
    best: Optional[Tuple[float, Tuple[int, ...], Tuple[int, int]]] = None
    for automorphism in diagram.automorphisms():
        matrix = determinant_fourier_matrix(group, labeling, mckay, automorphism)
        difference = np.abs(matrix.F - expected)
        worst = np.unravel_index(int(np.argmax(difference)), difference.shape)
        deviation = float(difference[worst])
        if best is None or deviation < best[0]:
            best = (deviation, automorphism, (int(worst[0]), int(worst[1])))
        if deviation <= tolerance and matrix.modulus_deviation() <= tolerance:
            break

    deviation, automorphism, worst = best
    identity = automorphism == tuple(range(diagram.size))
    return CheckResult(
        name="det_formula",
        passed=deviation <= tolerance,
        deviation=deviation,
        witness={"automorphism": "identity" if identity else list(automorphism),
                 "worst_pair": list(worst)},
    )


def root_of_unity_order_check(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult,
                              tolerance: float = 1e-8) -> bool:
    """行列式一侧的每个元素都是 det C 次单位根"""
    index = cartan(group.type).connection_index
    matrix = determinant_fourier_matrix(group, labeling, mckay)
    return bool(np.max(np.abs(matrix.F ** index - 1.0)) <= tolerance)


def abelianization_check(group: FiniteSubgroup, diagram_type: Optional[DiagramType] = None) -> CheckResult:
    """
    交换化与连接指数

    |G^{ab}| = det C，且 G^{ab} 的指数等于 C^{-1} 分母的最小公倍数。
    后者在 det(C)·C^{-1} 各元素的最大公约数为1时就是 det C；
    D_n（n 为偶数）时该公约数为2，G^{ab} = Z/2 × Z/2，指数为2
    """
    diagram_type = diagram_type or group.type
    quotient = abelianization(group)
    index = cartan(diagram_type).connection_index
    expected_exponent = discriminant_exponent(diagram_type)
    cyclic = connection_index_gcd_check(diagram_type)
    passed = (quotient.order == index and quotient.exponent == expected_exponent
              and cyclic == (expected_exponent == index))
    return CheckResult(
        name="abelianization_exponent",
        passed=passed,
        deviation=float(abs(quotient.exponent - expected_exponent) + abs(quotient.order - index)),
        witness={
            "order": quotient.order,
            "exponent": quotient.exponent,
            "connection_index": index,
            "exponent_equals_connection_index": quotient.exponent == index,
        },
    )


# ========== 循环群的Fourier矩阵 ==========

@dataclass(eq=False)
class CyclicFourierResult:
    """A_n 的行列式矩阵与 exp(-2πi jk/(n+1)) 的比较结果"""
    matrix: FourierMatrix
    orientation: str
    deviation: float


def classical_fourier_matrix(n: int) -> np.ndarray:
    """F_{jk} = exp(-2πi jk/(n+1))，j, k = 1..n"""
    indices = np.arange(1, n + 1)
    return np.exp(-2j * np.pi * np.outer(indices, indices) / (n + 1))


def compare_cyclic(matrix: FourierMatrix, n: int) -> CyclicFourierResult:
    """恒等或反射 k ↦ n+1-k 下与经典Fourier矩阵比较"""
    classical = classical_fourier_matrix(n)
    identity = float(np.max(np.abs(matrix.F - classical)))
    reversal = float(np.max(np.abs(matrix.F[:, ::-1] - classical)))
    if identity <= reversal:
        return CyclicFourierResult(matrix, "identity", identity)
    return CyclicFourierResult(matrix, "reversal", reversal)


def cyclic_fourier(n: int) -> CyclicFourierResult:
    """
    构造 A_n 的行列式矩阵并与经典Fourier矩阵比较

    参数:
        n: 秩（群阶为 n+1）

    返回:
        CyclicFourierResult对象
    """
    group = generate(DiagramType(Family.A, n))
    triple = find_special_triple(group)
    labeling = dual_labeling(group, group.type, triple)
    mckay = mckay_correspondence(group, character_table(group))
    return compare_cyclic(determinant_fourier_matrix(group, labeling, mckay), n)


def cyclic_fourier_check(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult,
                         tolerance: float = 1e-8) -> CheckResult:
    if group.type.family is not Family.A:
        return CheckResult.not_applicable("cyclic_fourier", "只适用于A型")
    result = compare_cyclic(determinant_fourier_matrix(group, labeling, mckay), group.type.rank)
    return CheckResult("cyclic_fourier", result.deviation <= tolerance, deviation=result.deviation,
                       witness={"orientation": result.orientation})


# ========== 中心函数变换的有限阶探测 ==========

@dataclass
class ProbeResult:
    """T^p ≈ 标量·I 的最小 p，不存在时 order 为 None"""
    order: Optional[int]
    max_power: int
    size: int

    @property
    def label(self) -> str:
        return str(self.order) if self.order is not None else "exceeds bound"


def central_transform_matrix(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult) -> np.ndarray:
    """
    (r+1)×(r+1) 酉化特征标矩阵 T_{jk} = χ_{v_k}(C_j)·sqrt(|C_j|/|G|)

    第0行为单位元所在的类，第0列为 v_0 对应的平凡表示
    """
    rows = [group.identity_class()] + list(labeling.mapping)
    sizes = np.array([group.classes[c].size for c in rows], dtype=float)
    values = mckay.table.values[:, rows].T
    return values * np.sqrt(sizes / group.order)[:, None]


def central_transform_order_probe(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult,
                                  max_power: int = 10000, tolerance: float = 1e-6) -> ProbeResult:
    """
    探测 T 的有限阶

    参数:
        max_power: 最多计算到 T^max_power
        tolerance: 判定 T^p 为标量矩阵的容差

    返回:
        ProbeResult对象
    """
    T = central_transform_matrix(group, labeling, mckay)
    size = T.shape[0]
    power = T.copy()
    for p in range(1, max_power + 1):
        scalar = power[0, 0]
        if np.max(np.abs(power - scalar * np.eye(size))) <= tolerance:
            return ProbeResult(p, max_power, size)
        power = power @ T
    return ProbeResult(None, max_power, size)


def central_transform_probe_check(group: FiniteSubgroup, labeling: DualLabeling, mckay: McKayResult,
                                  max_power: int = 10000, tolerance: float = 1e-6) -> CheckResult:
    """仅作记录，总是通过"""
    result = central_transform_order_probe(group, labeling, mckay, max_power, tolerance)
    T = central_transform_matrix(group, labeling, mckay)
    unitary = float(np.max(np.abs(T.conj().T @ T - np.eye(result.size))))
    return CheckResult("central_transform_probe", True, deviation=unitary,
                       witness={"order": result.label, "max_power": max_power, "informational": True})
