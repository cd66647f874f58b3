"""
ADE图组合与Cartan矩阵精确代数模块

包括：图的邻接结构与分支分解、Cartan矩阵及其逆（分数无关的Bareiss消元）、
根系、最高根、标记、仿射扩张，以及逆矩阵的下界与Neumann级数检验
"""

import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
import sympy
from networkx.algorithms.isomorphism import GraphMatcher

from mckay_dual.common.errors import InvalidDiagramError, VerificationError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

_TYPE_PATTERN = re.compile(r"^\s*([ADEade])\s*:\s*(-?\d+)\s*$")


class Family(Enum):
    """ADE图族"""
    A = "A"
    D = "D"
    E = "E"


@dataclass(frozen=True)
class DiagramType:
    """
    单纯连接的Coxeter-Dynkin图类型

    A_n (n >= 1)，D_n (n >= 4)，E_n (n = 6, 7, 8)。
    D_3 与 A_3 同构，因此不单独提供
    """
    family: Family
    rank: int

    def __post_init__(self):
        if not isinstance(self.family, Family):
            try:
                object.__setattr__(self, "family", Family(str(self.family).upper()))
            except ValueError:
                raise InvalidDiagramError(f"未知的图族: {self.family!r}")
        if self.family is Family.A and self.rank < 1:
            raise InvalidDiagramError(f"A_n 要求 n >= 1，当前为 {self.rank}")
        if self.family is Family.D and self.rank < 4:
            raise InvalidDiagramError(
                f"D_n 要求 n >= 4，当前为 {self.rank}（D_3 与 A_3 相同，请使用 A:3）"
            )
        if self.family is Family.E and self.rank not in (6, 7, 8):
            raise InvalidDiagramError(f"E_n 只支持 n = 6, 7, 8，当前为 {self.rank}")

    @property
    def label(self) -> str:
        return f"{self.family.value}{self.rank}"

    @property
    def spec(self) -> str:
        return f"{self.family.value}:{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DiagramType":
        """
        解析类型描述串

        参数:
            text: 形如 "A:3"、"D:7"、"E:8" 的字符串

        返回:
            DiagramType对象
        """
        match = _TYPE_PATTERN.match(text)
        if not match:
            raise InvalidDiagramError(f"无法解析的类型描述: {text!r}（格式应为 A:<n>、D:<n> 或 E:6|7|8）")
        return cls(Family(match.group(1).upper()), int(match.group(2)))

    @staticmethod
    def sweep() -> List["DiagramType"]:
        """--all 展开的类型列表：A1..A12、D4..D12、E6、E7、E8"""
        types = [DiagramType(Family.A, n) for n in range(1, 13)]
        types += [DiagramType(Family.D, n) for n in range(4, 13)]
        types += [DiagramType(Family.E, n) for n in (6, 7, 8)]
        return types

    def __str__(self) -> str:
        return self.label


def parse_type(text: str) -> DiagramType:
    return DiagramType.parse(text)


@dataclass(frozen=True)
class Diagram:
    """
    有限型ADE图

    顶点编号约定：A_n 从左到右；D/E 先是最长分支从末端走向中心（不含中心），
    然后是中心顶点，再依次是其余分支（都从末端开始）。
    branches 中每条分支从末端开始、以中心顶点结束
    """
    type: DiagramType
    adjacency: np.ndarray
    names: Tuple[str, ...]
    ends: Tuple[int, ...]
    center: Optional[int] = None
    branches: Tuple[Tuple[int, ...], ...] = ()

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def branch_lengths(self) -> Tuple[int, ...]:
        """各分支长度（含中心顶点），D_n 为 (n-2, 2, 2)，E_n 为 (n-3, 3, 2)"""
        return tuple(len(branch) for branch in self.branches)

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(i + 1, self.size)
                if self.adjacency[i, j]]

    def neighbors(self, vertex: int) -> List[int]:
        return [j for j in range(self.size) if self.adjacency[vertex, j]]

    def degree(self, vertex: int) -> int:
        return int(self.adjacency[vertex].sum())

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(self.edges())
        return graph

    def distance(self, i: int, j: int) -> int:
        return _distances(self.type)[i][j]

    def automorphisms(self) -> List[Tuple[int, ...]]:
        """图的全部自同构，恒等映射排在第一位"""
        return _automorphisms(self.type)

    def branch_of(self, vertex: int) -> List[int]:
        """包含该顶点的分支编号（中心顶点属于所有分支）"""
        return [b for b, branch in enumerate(self.branches) if vertex in branch]


def build_diagram(diagram_type: DiagramType) -> Diagram:
    """
    构造ADE图

    参数:
        diagram_type: 图类型

    返回:
        Diagram对象，D/E 类型带有分支分解
    """
    return _build_diagram(diagram_type)


@lru_cache(maxsize=None)
def _build_diagram(diagram_type: DiagramType) -> Diagram:
    if diagram_type.family is Family.A:
        n = diagram_type.rank
        adjacency = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            adjacency[i, i + 1] = adjacency[i + 1, i] = 1
        ends = (0,) if n == 1 else (0, n - 1)
        names = tuple(f"v{i + 1}" for i in range(n))
        return Diagram(diagram_type, adjacency, names, ends)

    if diagram_type.family is Family.D:
        lengths = (diagram_type.rank - 2, 2, 2)
    else:
        lengths = (diagram_type.rank - 3, 3, 2)

    m1, m2, m3 = lengths
    size = m1 + m2 + m3 - 2
    center = m1 - 1
    branch_one = tuple(range(m1))
    branch_two = tuple(range(m1, m1 + m2 - 1)) + (center,)
    branch_three = tuple(range(m1 + m2 - 1, size)) + (center,)
    branches = (branch_one, branch_two, branch_three)

    adjacency = np.zeros((size, size), dtype=np.int64)
    for branch in branches:
        for a, b in zip(branch, branch[1:]):
            adjacency[a, b] = adjacency[b, a] = 1

    names = tuple(f"v{i + 1}" for i in range(size))
    ends = tuple(branch[0] for branch in branches)
    diagram = Diagram(diagram_type, adjacency, names, ends, center, branches)
    _check_tree_shape(diagram)
    return diagram


def _check_tree_shape(diagram: Diagram) -> None:
    adjacency = diagram.adjacency
    if not np.array_equal(adjacency, adjacency.T) or np.any(np.diag(adjacency)):
        raise VerificationError("邻接矩阵必须对称且对角线为零", "diagram_shape", diagram.type.label)
    if len(diagram.edges()) != diagram.size - 1 or not nx.is_connected(diagram.graph()):
        raise VerificationError("有限型图必须是树", "diagram_shape", diagram.type.label)
    degree_three = [v for v in range(diagram.size) if diagram.degree(v) == 3]
    if degree_three != [diagram.center]:
        raise VerificationError("D/E 型图必须恰有一个三度顶点", "diagram_shape", diagram.type.label)


@lru_cache(maxsize=None)
def _distances(diagram_type: DiagramType) -> Dict[int, Dict[int, int]]:
    return dict(nx.all_pairs_shortest_path_length(build_diagram(diagram_type).graph()))


@lru_cache(maxsize=None)
def _automorphisms(diagram_type: DiagramType) -> List[Tuple[int, ...]]:
    diagram = build_diagram(diagram_type)
    graph = diagram.graph()
    found = []
    for mapping in GraphMatcher(graph, graph).isomorphisms_iter():
        found.append(tuple(mapping[v] for v in range(diagram.size)))
    identity = tuple(range(diagram.size))
    found.sort(key=lambda perm: (perm != identity, perm))
    return found


# ========== Cartan矩阵 ==========

def cartan_matrix(diagram_type: DiagramType) -> np.ndarray:
    """C = 2I - M（整数numpy矩阵）"""
    diagram = build_diagram(diagram_type)
    return 2 * np.eye(diagram.size, dtype=np.int64) - diagram.adjacency


@dataclass(frozen=True)
class AffineDiagram:
    """
    仿射图：在有限图上添加顶点 v_0

    adjacency 存储整数重数，A_1 的 v_0–v_1 边重数为 2
    """
    type: DiagramType
    adjacency: np.ndarray
    marks: Tuple[int, ...]
    attached: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.marks)

    def cartan(self) -> np.ndarray:
        return 2 * np.eye(self.size, dtype=np.int64) - self.adjacency

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for i in range(self.size):
            graph.add_node(i, mark=self.marks[i], root=(i == 0))
        for i in range(self.size):
            for j in range(i, self.size):
                if self.adjacency[i, j]:
                    graph.add_edge(i, j, weight=int(self.adjacency[i, j]))
        return graph


@dataclass(frozen=True)
class CartanData:
    """
    Cartan矩阵数据

    C 与 C_inverse 是精确的sympy矩阵；marks 为 m_0..m_r，m_0 = 1
    """
    type: DiagramType
    C: sympy.Matrix
    C_inverse: sympy.Matrix
    connection_index: int
    marks: Tuple[int, ...]
    affine_adjacency: np.ndarray
    highest_root: Vector

    @property
    def rank(self) -> int:
        return self.C.shape[0]

    def inverse_entry(self, i: int, j: int) -> Fraction:
        value = self.C_inverse[i, j]
        return Fraction(int(value.p), int(value.q))

    def inverse_float(self) -> np.ndarray:
        return np.array(self.C_inverse.tolist(), dtype=float)


def cartan(diagram_type: DiagramType) -> CartanData:
    """
    计算Cartan数据

    行列式与伴随矩阵都用Bareiss分数无关消元精确计算，
    随后验证 C·C^{-1} = I、正定性以及标记的核性质

    参数:
        diagram_type: 图类型

    返回:
        CartanData对象
    """
    return _cartan(diagram_type)


@lru_cache(maxsize=None)
def _cartan(diagram_type: DiagramType) -> CartanData:
    C = sympy.Matrix(cartan_matrix(diagram_type).tolist())
    size = C.shape[0]

    for k in range(1, size + 1):
        minor = C[:k, :k].det(method="bareiss")
        if minor <= 0:
            raise VerificationError(
                f"{diagram_type.label} 的Cartan矩阵不是正定的",
                "cartan_positive_definite",
                {"leading_minor": k, "value": int(minor)},
            )

    determinant = int(C.det(method="bareiss"))
    C_inverse = C.adjugate(method="bareiss") / determinant
    if C * C_inverse != sympy.eye(size):
        raise VerificationError(f"{diagram_type.label} 的 C·C^{{-1}} != I", "cartan_inverse")

    affine = affine_extend(diagram_type)
    return CartanData(
        type=diagram_type,
        C=C,
        C_inverse=C_inverse,
        connection_index=determinant,
        marks=affine.marks,
        affine_adjacency=affine.adjacency,
        highest_root=highest_root(diagram_type),
    )


# ========== 根系 ==========

def root_system(diagram_type: DiagramType) -> FrozenSet[Vector]:
    """
    用单反射 s_i(x) = x - (Cx)_i e_i 对单根做闭包，得到全部根（单根坐标）

    参数:
        diagram_type: 图类型

    返回:
        根向量集合
    """
    return _root_system(diagram_type)


@lru_cache(maxsize=None)
def _root_system(diagram_type: DiagramType) -> FrozenSet[Vector]:
    C = cartan_matrix(diagram_type)
    size = C.shape[0]
    simple = [tuple(int(i == k) for i in range(size)) for k in range(size)]

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new_roots = []
        for root in frontier:
            pairing = C @ np.array(root, dtype=np.int64)
            for i in range(size):
                if pairing[i] == 0:
                    continue
                image = list(root)
                image[i] -= int(pairing[i])
                image = tuple(image)
                if image not in roots:
                    roots.add(image)
                    new_roots.append(image)
        frontier = new_roots

    logger.debug("%s 的根系共 %d 个根", diagram_type.label, len(roots))
    return frozenset(roots)


def root_norm(diagram_type: DiagramType, root: Vector) -> int:
    """C 内积下的平方长度"""
    v = np.array(root, dtype=np.int64)
    return int(v @ cartan_matrix(diagram_type) @ v)


def highest_root(diagram_type: DiagramType) -> Vector:
    """
    最高根 θ：高度（坐标和）最大的根，θ + α_i 都不是根

    返回:
        θ 的单根坐标，等于标记 m_1..m_r
    """
    roots = root_system(diagram_type)
    theta = max(roots, key=sum)
    size = len(theta)
    for i in range(size):
        shifted = tuple(c + int(i == k) for k, c in enumerate(theta))
        if shifted in roots:
            raise VerificationError(
                f"{diagram_type.label} 的最高根选择错误", "highest_root", list(theta)
            )
    return theta


def affine_extend(diagram_type: DiagramType) -> AffineDiagram:
    """
    仿射扩张：v_0 与 v_i 相连当且仅当 (Cθ)_i != 0，重数为 (Cθ)_i

    返回:
        AffineDiagram对象，标记向量 (1, θ) 位于仿射Cartan矩阵的核中
    """
    return _affine_extend(diagram_type)


@lru_cache(maxsize=None)
def _affine_extend(diagram_type: DiagramType) -> AffineDiagram:
    diagram = build_diagram(diagram_type)
    C = cartan_matrix(diagram_type)
    theta = np.array(highest_root(diagram_type), dtype=np.int64)
    pairing = C @ theta

    size = diagram.size + 1
    adjacency = np.zeros((size, size), dtype=np.int64)
    adjacency[1:, 1:] = diagram.adjacency
    adjacency[0, 1:] = pairing
    adjacency[1:, 0] = pairing

    marks = (1,) + tuple(int(m) for m in theta)
    affine = AffineDiagram(
        type=diagram_type,
        adjacency=adjacency,
        marks=marks,
        attached=tuple(int(i) + 1 for i in np.nonzero(pairing)[0]),
    )
    kernel = affine.cartan() @ np.array(marks, dtype=np.int64)
    if np.any(kernel):
        raise VerificationError(
            f"{diagram_type.label} 的标记不在仿射Cartan矩阵的核中",
            "affine_marks",
            kernel.tolist(),
        )
    return affine


# ========== 逆矩阵的下界与级数 ==========

@dataclass
class InverseBoundReport:
    """
    逆Cartan矩阵下界 (C^{-1})_{ij} >= 2^{1-n}/3 的检验结果

    下界只对 i != j 的顶点对判定；对角线的松弛量只做记录
    """
    type: DiagramType
    strictly_positive: bool
    min_slack: Optional[Fraction]
    min_slack_pair: Optional[Tuple[int, int]]
    sharp_pairs: List[Tuple[int, int]] = field(default_factory=list)
    diagonal_min_slack: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return self.strictly_positive and (self.min_slack is None or self.min_slack >= 0)


def inverse_bound_check(diagram_type: DiagramType) -> InverseBoundReport:
    """
    检验 C^{-1} 的所有元素严格为正，以及按图距离的下界

    参数:
        diagram_type: 图类型

    返回:
        InverseBoundReport对象
    """
    data = cartan(diagram_type)
    diagram = build_diagram(diagram_type)
    size = diagram.size

    strictly_positive = all(data.inverse_entry(i, j) > 0 for i in range(size) for j in range(size))

    min_slack: Optional[Fraction] = None
    min_pair: Optional[Tuple[int, int]] = None
    sharp: List[Tuple[int, int]] = []
    diagonal: Optional[Fraction] = None
    for i in range(size):
        for j in range(size):
            distance = diagram.distance(i, j)
            bound = Fraction(2) ** (1 - distance) / 3
            slack = data.inverse_entry(i, j) - bound
            if i == j:
                diagonal = slack if diagonal is None else min(diagonal, slack)
                continue
            if slack == 0 and i < j:
                sharp.append((i, j))
            if min_slack is None or slack < min_slack:
                min_slack, min_pair = slack, (i, j)

    return InverseBoundReport(
        type=diagram_type,
        strictly_positive=strictly_positive,
        min_slack=min_slack,
        min_slack_pair=min_pair,
        sharp_pairs=sharp,
        diagonal_min_slack=diagonal,
    )


def _neumann_partial_sums(diagram_type: DiagramType) -> Iterator[np.ndarray]:
    """依次产生 (1/2)Σ_{n<N} 2^{-n} M^n，N = 1, 2, …"""
    diagram = build_diagram(diagram_type)
    half_adjacency = diagram.adjacency.astype(float) / 2.0
    term = np.eye(diagram.size)
    total = np.zeros_like(term)
    while True:
        total = total + term
        yield total / 2.0
        term = term @ half_adjacency


def neumann_series_check(diagram_type: DiagramType, terms: int) -> float:
    """
    截断Neumann级数与精确逆矩阵的最大偏差

    参数:
        diagram_type: 图类型
        terms: 级数项数（>= 1）

    返回:
        最大绝对偏差
    """
    if terms < 1:
        raise ValueError(f"级数项数至少为1，当前为 {terms}")
    exact = cartan(diagram_type).inverse_float()
    for count, partial in enumerate(_neumann_partial_sums(diagram_type), start=1):
        if count == terms:
            return float(np.max(np.abs(partial - exact)))
    raise AssertionError("unreachable")


@dataclass
class NeumannReport:
    """Neumann级数收敛情况"""
    type: DiagramType
    terms: int
    deviation: float
    tail_deviation: float
    monotone: bool
    terms_to_tolerance: Optional[int]
    spectral_radius: float

    @property
    def passed(self) -> bool:
        return self.monotone and self.terms_to_tolerance is not None and self.tail_consistent

    @property
    def tail_consistent(self) -> bool:
        return abs(self.deviation - self.tail_deviation) <= 1e-9


def neumann_convergence(diagram_type: DiagramType, terms: int, tolerance: float,
                        max_terms: int = 20000) -> NeumannReport:
    """
    检验级数的收敛性

    截断误差恰为 (M/2)^N C^{-1}，收敛速度由谱半径 2cos(π/h) 决定，
    因此除给定项数处的偏差外，还记录达到容差所需的项数

    参数:
        diagram_type: 图类型
        terms: 报告偏差时的项数
        tolerance: 收敛容差
        max_terms: 最多计算的项数

    返回:
        NeumannReport对象
    """
    diagram = build_diagram(diagram_type)
    exact = cartan(diagram_type).inverse_float()
    half_adjacency = diagram.adjacency.astype(float) / 2.0

    deviation_at_terms = float("nan")
    previous = math.inf
    monotone = True
    reached: Optional[int] = None
    for count, partial in enumerate(_neumann_partial_sums(diagram_type), start=1):
        deviation = float(np.max(np.abs(partial - exact)))
        if deviation > previous + 1e-12:
            monotone = False
        previous = deviation
        if count == terms:
            deviation_at_terms = deviation
        if reached is None and deviation <= tolerance:
            reached = count
        if count >= max(terms, max_terms) or (reached is not None and count >= terms):
            break

    tail = np.linalg.matrix_power(half_adjacency, terms) @ exact
    eigenvalues = np.linalg.eigvalsh(diagram.adjacency.astype(float)) if diagram.size else [0.0]
    return NeumannReport(
        type=diagram_type,
        terms=terms,
        deviation=deviation_at_terms,
        tail_deviation=float(np.max(np.abs(tail))),
        monotone=monotone,
        terms_to_tolerance=reached,
        spectral_radius=float(np.max(np.abs(eigenvalues))),
    )


# ========== 其他组合恒等式 ==========

def count_walks(diagram: Diagram, start: int, end: int, length: int) -> int:
    """暴力枚举长度为 length 的路径数"""
    if length == 0:
        return int(start == end)
    return sum(count_walks(diagram, nxt, end, length - 1) for nxt in diagram.neighbors(start))


def walk_count_check(diagram_type: DiagramType, max_length: int) -> bool:
    """(M^n)_{ij} 等于从 v_i 到 v_j 的长度为 n 的路径数"""
    diagram = build_diagram(diagram_type)
    power = np.eye(diagram.size, dtype=np.int64)
    for length in range(max_length + 1):
        for i in range(diagram.size):
            for j in range(diagram.size):
                if power[i, j] != count_walks(diagram, i, j, length):
                    return False
        power = power @ diagram.adjacency
    return True


def connection_index_gcd_check(diagram_type: DiagramType) -> bool:
    """整数 det(C)·(C^{-1})_{ij} 的最大公约数为1"""
    data = cartan(diagram_type)
    scaled = data.C_inverse * data.connection_index
    return math.gcd(*[int(v) for v in scaled]) == 1


def discriminant_exponent(diagram_type: DiagramType) -> int:
    """权格/根格的指数：C^{-1} 各元素分母的最小公倍数"""
    data = cartan(diagram_type)
    return math.lcm(*[int(v.q) for v in data.C_inverse])
