"""
特征标表模块

用Burnside类和方法计算特征标表：类和结构常数矩阵的随机线性组合只有单重特征值，
其右特征向量就是中心特征 ω_χ，再按列正交关系恢复 χ。
同时提供定义表示的特征标、张量积重数和行列式特征标（Newton恒等式）
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from mckay_dual.common.errors import VerificationError
from mckay_dual.common.reporting import CheckResult
from mckay_dual.groups.su2group import FiniteSubgroup, power_map

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 8


@dataclass(eq=False)
class CharacterTable:
    """
    特征标表

    values[a, j] 是第a个不可约特征标在第j个共轭类上的值
    """
    values: np.ndarray
    dims: Tuple[int, ...]
    class_sizes: Tuple[int, ...]
    group_order: int

    @property
    def irrep_count(self) -> int:
        return self.values.shape[0]

    @property
    def trivial_index(self) -> int:
        """唯一的平凡特征标（所有值为1）所在的行"""
        trivial = [a for a in range(self.irrep_count)
                   if np.allclose(self.values[a], 1.0, atol=1e-9)]
        if len(trivial) != 1:
            raise VerificationError("特征标表中平凡特征标不唯一", "character_orthogonality", len(trivial))
        return trivial[0]

    def inner_product(self, chi: np.ndarray, psi: np.ndarray) -> complex:
        """(1/|G|) Σ_j |C_j| χ(g_j) conj(ψ(g_j))"""
        sizes = np.array(self.class_sizes, dtype=float)
        return complex(np.sum(sizes * chi * np.conj(psi)) / self.group_order)

    def orthogonality_deviation(self) -> Tuple[float, float]:
        """(行正交偏差, 列正交偏差)"""
        sizes = np.array(self.class_sizes, dtype=float)
        rows = (self.values * sizes) @ self.values.conj().T / self.group_order
        row_deviation = float(np.max(np.abs(rows - np.eye(self.irrep_count))))
        columns = self.values.conj().T @ self.values
        column_deviation = float(np.max(np.abs(columns - np.diag(self.group_order / sizes))))
        return row_deviation, column_deviation

    def reindexed(self, order: Sequence[int]) -> "CharacterTable":
        """按给定的行顺序重排不可约表示"""
        order = list(order)
        return CharacterTable(
            values=self.values[order].copy(),
            dims=tuple(self.dims[a] for a in order),
            class_sizes=self.class_sizes,
            group_order=self.group_order,
        )


def _class_structure_constants(group: FiniteSubgroup) -> np.ndarray:
    """c[r, s, t] = #{x ∈ C_r : x^{-1} z_t ∈ C_s}，z_t 为第t类的代表元"""
    k = group.class_count
    constants = np.zeros((k, k, k), dtype=np.int64)
    class_of = group.class_of
    for t, conjugacy_class in enumerate(group.classes):
        z = conjugacy_class.representative
        partner = class_of[group.mult_table[group.inverse_table, z]]
        np.add.at(constants[:, :, t], (class_of, partner), 1)
    return constants


def _sort_key(dim: int, row: np.ndarray):
    return (dim, tuple((-round(v.real, 8), -round(v.imag, 8)) for v in row))


def _attempt(group: FiniteSubgroup, constants: np.ndarray, rng: np.random.Generator,
             tolerance: float) -> Optional[CharacterTable]:
    k = group.class_count
    sizes = np.array([c.size for c in group.classes], dtype=float)
    weights = rng.standard_normal(k)
    combined = np.tensordot(weights, constants.astype(float), axes=1)

    eigenvalues, eigenvectors = np.linalg.eig(combined)
    gaps = np.abs(eigenvalues[:, None] - eigenvalues[None, :]) + np.eye(k)
    if np.min(gaps) < 1e-6:
        return None

    identity_class = group.identity_class()
    rows, dims = [], []
    for i in range(k):
        omega = eigenvectors[:, i] / eigenvectors[identity_class, i]
        norm = np.sum(np.abs(omega) ** 2 / sizes)
        dim_value = np.sqrt(group.order / norm)
        dim = int(round(dim_value))
        if dim < 1 or abs(dim_value - dim) > 1e-6:
            return None
        dims.append(dim)
        rows.append(dim * omega / sizes)

    order = sorted(range(k), key=lambda i: _sort_key(dims[i], rows[i]))
    table = CharacterTable(
        values=np.array([rows[i] for i in order]),
        dims=tuple(dims[i] for i in order),
        class_sizes=tuple(int(s) for s in sizes),
        group_order=group.order,
    )
    if max(table.orthogonality_deviation()) > tolerance or sum(d * d for d in table.dims) != group.order:
        return None
    return table


def character_table(group: FiniteSubgroup, tolerance: float = 1e-9, seed: int = 20240601) -> CharacterTable:
    """
    计算特征标表

    参数:
        group: 已划分共轭类的有限群
        tolerance: 正交关系容差
        seed: 随机线性组合的种子，失败时依次使用 seed+1, seed+2, …

    返回:
        CharacterTable对象，行按 (维数, 字典序) 排列，平凡特征标在第一行
    """
    constants = _class_structure_constants(group)
    for attempt in range(MAX_ATTEMPTS):
        table = _attempt(group, constants, np.random.default_rng(seed + attempt), tolerance)
        if table is not None:
            logger.debug("%s 的特征标表在第 %d 次尝试时得到", group.type.label, attempt + 1)
            return table
        logger.debug("%s 的第 %d 次同时对角化失败，重试", group.type.label, attempt + 1)
    raise VerificationError(
        f"{group.type.label} 的特征标表在 {MAX_ATTEMPTS} 次尝试后仍未满足正交关系",
        "character_orthogonality",
        {"attempts": MAX_ATTEMPTS},
    )


def defining_character(group: FiniteSubgroup) -> np.ndarray:
    """二维定义表示 E 的特征标：各类代表元矩阵的迹"""
    return np.array([complex(c.trace) for c in group.classes])


def tensor_multiplicities(group: FiniteSubgroup, table: CharacterTable, irrep: int,
                          tolerance: float = 1e-6) -> np.ndarray:
    """
    R_a ⊗ E 分解中各不可约表示的重数

    参数:
        group: 有限群
        table: 特征标表
        irrep: 不可约表示 a 的下标
        tolerance: 取整容差

    返回:
        整数向量 (a_{aj})_j
    """
    product = table.values[irrep] * defining_character(group)
    raw = np.array([table.inner_product(product, table.values[j]) for j in range(table.irrep_count)])
    rounded = np.rint(raw.real).astype(np.int64)
    deviation = np.max(np.abs(raw - rounded))
    if deviation > tolerance:
        raise VerificationError(
            f"R_{irrep} ⊗ E 的重数不是整数（偏差 {deviation:.2e}）",
            "mckay_isomorphism",
            {"irrep": irrep, "deviation": float(deviation)},
        )
    return rounded


def det_character(table: CharacterTable, group: FiniteSubgroup, irrep: int, class_index: int) -> complex:
    """
    det(g_j, R_k)：由幂和 p_m = χ_k(g_j^m) 经Newton恒等式得到初等对称函数 e_d

    m·e_m = Σ_{i=1}^{m} (-1)^{i-1} e_{m-i} p_i
    """
    d = table.dims[irrep]
    power_sums = [table.values[irrep, power_map(group, class_index, m)] for m in range(1, d + 1)]
    elementary = [1.0 + 0j]
    for m in range(1, d + 1):
        total = sum((-1) ** (i - 1) * elementary[m - i] * power_sums[i - 1] for i in range(1, m + 1))
        elementary.append(total / m)
    return complex(elementary[d])


def det_character_row(table: CharacterTable, group: FiniteSubgroup, irrep: int) -> np.ndarray:
    return np.array([det_character(table, group, irrep, j) for j in range(group.class_count)])


def is_degree_one_character(row: np.ndarray, group: FiniteSubgroup, tolerance: float = 1e-8) -> bool:
    """类函数 row 在群上是乘法的：row(gh) = row(g)row(h)"""
    on_elements = row[group.class_of]
    products = on_elements[group.mult_table]
    expected = on_elements[:, None] * on_elements[None, :]
    return bool(np.max(np.abs(products - expected)) <= tolerance
                and np.max(np.abs(np.abs(on_elements) - 1.0)) <= tolerance)


def inverse_conjugation_deviation(table: CharacterTable, group: FiniteSubgroup) -> float:
    """max |χ(g^{-1}) - conj χ(g)|"""
    inverse_classes = [group.class_index(group.inverse(c.representative)) for c in group.classes]
    return float(np.max(np.abs(table.values[:, inverse_classes] - np.conj(table.values))))


def character_orthogonality_check(table: CharacterTable, group: FiniteSubgroup,
                                  tolerance: float = 1e-9) -> CheckResult:
    row_deviation, column_deviation = table.orthogonality_deviation()
    conjugation = inverse_conjugation_deviation(table, group)
    dims_ok = sum(d * d for d in table.dims) == group.order
    try:
        trivial: Optional[int] = table.trivial_index
    except VerificationError:
        trivial = None
    deviation = max(row_deviation, column_deviation, conjugation)
    return CheckResult(
        name="character_orthogonality",
        passed=deviation <= tolerance and dims_ok and trivial is not None,
        deviation=deviation,
        witness={
            "row": row_deviation,
            "column": column_deviation,
            "dims": sorted(table.dims),
            "sum_of_squares": sum(d * d for d in table.dims),
        },
    )


def dims_multiset(table: CharacterTable) -> List[int]:
    return sorted(table.dims)
