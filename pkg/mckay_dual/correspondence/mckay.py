"""
McKay对应模块

由张量积重数 R_i ⊗ E = ⊕ a_ij R_j 构造McKay图，
并用VF2多重图同构把仿射图的顶点与不可约表示一一对应
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher, numerical_edge_match

from mckay_dual.algebra.dynkin import DiagramType, Family, affine_extend, build_diagram
from mckay_dual.common.errors import VerificationError
from mckay_dual.common.reporting import CheckResult
from mckay_dual.groups.characters import CharacterTable, tensor_multiplicities
from mckay_dual.groups.su2group import FiniteSubgroup

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class McKayGraph:
    """McKay图：adjacency[i, j] 为 R_j 在 R_i ⊗ E 中的重数"""
    adjacency: np.ndarray
    dims: Tuple[int, ...]
    trivial_index: int

    @property
    def size(self) -> int:
        return self.adjacency.shape[0]

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for i in range(self.size):
            graph.add_node(i, mark=self.dims[i], root=(i == self.trivial_index))
        for i in range(self.size):
            for j in range(i, self.size):
                if self.adjacency[i, j]:
                    graph.add_edge(i, j, weight=int(self.adjacency[i, j]))
        return graph


@dataclass(frozen=True)
class VertexIrrepBijection:
    """仿射顶点 v_i ↦ 不可约表示下标 mapping[i]，v_0 ↦ 平凡表示"""
    mapping: Tuple[int, ...]

    def irrep_of(self, vertex: int) -> int:
        return self.mapping[vertex]

    def vertex_of(self, irrep: int) -> int:
        return self.mapping.index(irrep)


@dataclass(eq=False)
class McKayResult:
    """
    McKay对应的完整结果

    table 已按仿射顶点顺序重排：第i行是 v_i 对应的不可约表示
    """
    graph: McKayGraph
    bijection: VertexIrrepBijection
    table: CharacterTable
    candidates: int


def mckay_graph(group: FiniteSubgroup, table: CharacterTable, tolerance: float = 1e-6) -> McKayGraph:
    """
    构造McKay图

    参数:
        group: 有限群
        table: 特征标表
        tolerance: 重数取整容差

    返回:
        McKayGraph对象，已验证对称、无自环、加权度数为 2d_i
    """
    rows = [tensor_multiplicities(group, table, a, tolerance) for a in range(table.irrep_count)]
    adjacency = np.array(rows, dtype=np.int64)
    graph = McKayGraph(adjacency, table.dims, table.trivial_index)

    if not np.array_equal(adjacency, adjacency.T):
        raise VerificationError("McKay图的邻接矩阵不对称", "mckay_isomorphism", adjacency.tolist())
    if np.any(np.diag(adjacency)):
        raise VerificationError("McKay图出现自环", "mckay_isomorphism", np.diag(adjacency).tolist())
    if not weighted_degree_check(graph):
        raise VerificationError("McKay图的加权度数不等于 2d_i", "mckay_isomorphism", list(graph.dims))
    return graph


def weighted_degree_check(graph: McKayGraph) -> bool:
    """Σ_j a_ij d_j = 2 d_i"""
    dims = np.array(graph.dims, dtype=np.int64)
    return bool(np.array_equal(graph.adjacency @ dims, 2 * dims))


def _node_match(a: Dict, b: Dict) -> bool:
    return a["mark"] == b["mark"] and a["root"] == b["root"]


def all_affine_matches(diagram_type: DiagramType, graph: McKayGraph) -> List[Tuple[int, ...]]:
    """所有保持重数、标记=维数、v_0 ↦ 平凡表示的同构"""
    affine = affine_extend(diagram_type)
    matcher = GraphMatcher(
        affine.graph(), graph.graph(),
        node_match=_node_match,
        edge_match=numerical_edge_match("weight", 1),
    )
    return sorted(tuple(m[v] for v in range(affine.size)) for m in matcher.isomorphisms_iter())


def match_affine(group: FiniteSubgroup, table: CharacterTable, graph: McKayGraph) -> VertexIrrepBijection:
    """
    建立仿射顶点与不可约表示的双射

    A_n：令在生成元上取值 ζ_{n+1} 的表示对应 v_1，从而确定环的定向；
    D/E：在所有合法同构中取字典序最小者

    参数:
        group: 有限群
        table: 特征标表（未重排）
        graph: McKay图

    返回:
        VertexIrrepBijection对象
    """
    candidates = all_affine_matches(group.type, graph)
    if not candidates:
        raise VerificationError(
            f"{group.type.label} 的McKay图与仿射图不同构",
            "mckay_isomorphism",
            {"adjacency": graph.adjacency.tolist(), "dims": list(graph.dims)},
        )

    if group.type.family is Family.A and group.type.rank >= 2:
        generator_class = group.class_index(group.generators[0])
        zeta = cmath.exp(2j * math.pi / group.order)
        for mapping in candidates:
            if abs(table.values[mapping[1], generator_class] - zeta) < 1e-8:
                return VertexIrrepBijection(mapping)
        raise VerificationError(f"{group.type.label} 中找不到在生成元上取值 ζ 的表示", "mckay_isomorphism")

    return VertexIrrepBijection(candidates[0])


def mckay_correspondence(group: FiniteSubgroup, table: CharacterTable,
                         tolerance: float = 1e-6) -> McKayResult:
    """McKay图 + 双射 + 按仿射顶点重排的特征标表"""
    graph = mckay_graph(group, table, tolerance)
    bijection = match_affine(group, table, graph)
    candidates = len(all_affine_matches(group.type, graph))
    logger.debug("%s 的McKay同构共 %d 个候选，选用 %s", group.type.label, candidates, bijection.mapping)
    return McKayResult(graph, bijection, table.reindexed(bijection.mapping), candidates)


def finite_part_check(graph: McKayGraph, bijection: VertexIrrepBijection, diagram_type: DiagramType) -> bool:
    """去掉 v_0 的像后，剩下的图与有限图 Δ 同构"""
    remaining = graph.graph()
    remaining.remove_node(bijection.irrep_of(0))
    return nx.is_isomorphic(remaining, build_diagram(diagram_type).graph(),
                            edge_match=numerical_edge_match("weight", 1))


def mckay_isomorphism_check(result: McKayResult, diagram_type: DiagramType) -> CheckResult:
    affine = affine_extend(diagram_type)
    mapping = result.bijection.mapping
    carried = result.graph.adjacency[np.ix_(mapping, mapping)]
    adjacency_ok = np.array_equal(carried, affine.adjacency)
    dims_ok = tuple(result.graph.dims[a] for a in mapping) == affine.marks
    trivial_ok = mapping[0] == result.graph.trivial_index
    finite_ok = finite_part_check(result.graph, result.bijection, diagram_type)
    return CheckResult(
        name="mckay_isomorphism",
        passed=bool(adjacency_ok and dims_ok and trivial_ok and finite_ok),
        witness={
            "mapping": list(mapping),
            "marks": list(affine.marks),
            "candidates": result.candidates,
        },
    )
