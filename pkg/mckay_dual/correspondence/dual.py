"""
对偶McKay对应模块

寻找特殊三元组，把图的每个顶点标记为一个非平凡共轭类，
逐条验证顶点-共轭类对应的各项性质，并用回溯搜索Mumford代表元
"""

import itertools
import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from mckay_dual.algebra.dynkin import Diagram, DiagramType, Family, build_diagram
from mckay_dual.common.errors import VerificationError
from mckay_dual.common.reporting import CheckResult
from mckay_dual.groups.su2group import (
    FiniteSubgroup, power_map, quotient_by_center_pm1, special_trace_check,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpecialTriple:
    """
    特殊三元组

    D/E：x^{m1} = y^{m2} = z^{m3} = xyz = c，c = -I；
    A：x 为生成元，y = x^{-1}，z 与 c 为空
    """
    x: int
    y: int
    z: Optional[int]
    c: Optional[int]
    branch_orders: Tuple[int, ...]

    @property
    def branch_generators(self) -> Tuple[int, ...]:
        if self.z is None:
            return (self.x,)
        return (self.x, self.y, self.z)

    @property
    def exponents(self) -> Dict[str, int]:
        """实际实现的指数模式，例如 D_n 为 x^{n-2} = y^2 = z^2 = c"""
        names = ("x", "y", "z")
        return {names[b]: m for b, m in enumerate(self.branch_orders)}


@dataclass(frozen=True)
class DualLabeling:
    """顶点 ↦ 非平凡共轭类"""
    mapping: Tuple[int, ...]
    special_classes: Tuple[int, ...]
    central_class: Optional[int] = None

    def class_of_vertex(self, vertex: int) -> int:
        return self.mapping[vertex]

    def vertex_of_class(self, class_index: int) -> int:
        return self.mapping.index(class_index)


@dataclass
class MumfordRepresentatives:
    """
    Mumford代表元

    reps[v] 属于顶点 v 的共轭类；相邻顶点的代表元交换，
    且 rep(v)^2 等于邻点代表元按 ordering 顺序的乘积
    """
    ordering: Tuple[int, ...]
    reps: Tuple[int, ...]
    order_independent: bool = True
    nodes_explored: int = 0


# ========== 特殊三元组 ==========

def _candidates(group: FiniteSubgroup, m: int) -> List[int]:
    return [g for g in range(group.order) if special_trace_check(group, g, m)]


def find_special_triple(group: FiniteSubgroup, diagram_type: Optional[DiagramType] = None) -> SpecialTriple:
    """
    寻找特殊三元组

    按下标顺序扫描 (x, y)，令 z = (xy)^{-1}c，接受第一个满足全部关系、
    生成整个群、且诱导的顶点标记为双射的三元组

    参数:
        group: 有限群
        diagram_type: 图类型，默认取群的类型

    返回:
        SpecialTriple对象
    """
    diagram_type = diagram_type or group.type
    if diagram_type.family is Family.A:
        x = group.generators[0]
        return SpecialTriple(x=x, y=group.inverse(x), z=None, c=None,
                             branch_orders=(diagram_type.rank + 1,))

    if group.minus_one is None:
        raise VerificationError(f"{diagram_type.label} 中没有 -I", "dual_ends_special")
    diagram = build_diagram(diagram_type)
    m1, m2, m3 = diagram.branch_lengths
    c = group.minus_one

    third = set(_candidates(group, m3))
    examined = 0
    for x in _candidates(group, m1):
        for y in _candidates(group, m2):
            examined += 1
            z = group.multiply(group.inverse(group.multiply(x, y)), c)
            if z not in third:
                continue
            triple = SpecialTriple(x=x, y=y, z=z, c=c, branch_orders=(m1, m2, m3))
            if not presentation_relations_hold(group, triple) or not group.generates((x, y, z)):
                continue
            labeling = _branch_labeling(group, diagram, triple)
            if labeling is None:
                continue
            logger.debug("%s: 特殊三元组 (%d, %d, %d)，检查了 %d 对", diagram_type.label, x, y, z, examined)
            return triple

    raise VerificationError(
        f"{diagram_type.label} 中找不到特殊三元组",
        "dual_ends_special",
        {"branch_orders": [m1, m2, m3], "pairs_examined": examined},
    )


def presentation_relations_hold(group: FiniteSubgroup, triple: SpecialTriple) -> bool:
    """x^{m1} = y^{m2} = z^{m3} = xyz = c，c^2 = 1，c != 1"""
    if triple.z is None:
        return group.multiply(triple.x, triple.y) == group.identity
    c = triple.c
    m1, m2, m3 = triple.branch_orders
    return (group.power(triple.x, m1) == c and group.power(triple.y, m2) == c
            and group.power(triple.z, m3) == c
            and group.product((triple.x, triple.y, triple.z)) == c
            and c != group.identity and group.multiply(c, c) == group.identity)


def special_product_check(group: FiniteSubgroup, triple: SpecialTriple) -> bool:
    """D/E：g1 g2 g3 = -I；A：两端的代表元满足 g1 g2 = 1"""
    if triple.z is None:
        return group.multiply(triple.x, triple.y) == group.identity
    return group.product(triple.branch_generators) == group.minus_one


# ========== 顶点标记 ==========

def _branch_labeling(group: FiniteSubgroup, diagram: Diagram, triple: SpecialTriple) -> Optional[DualLabeling]:
    mapping = [-1] * diagram.size
    for branch, generator in zip(diagram.branches, triple.branch_generators):
        for k, vertex in enumerate(branch, start=1):
            class_index = group.class_index(group.power(generator, k))
            if mapping[vertex] not in (-1, class_index):
                return None
            mapping[vertex] = class_index

    identity_class = group.identity_class()
    if identity_class in mapping or len(set(mapping)) != diagram.size:
        return None
    return DualLabeling(
        mapping=tuple(mapping),
        special_classes=tuple(mapping[end] for end in diagram.ends),
        central_class=mapping[diagram.center],
    )


def dual_labeling(group: FiniteSubgroup, diagram_type: DiagramType, triple: SpecialTriple) -> DualLabeling:
    """
    顶点 ↦ 共轭类

    A_n：v_k ↦ x^k 所在的类；D/E：每条分支从末端起依次为 g, g^2, …, g^m = c

    参数:
        group: 有限群
        diagram_type: 图类型
        triple: 特殊三元组

    返回:
        DualLabeling对象
    """
    diagram = build_diagram(diagram_type)
    if diagram_type.family is Family.A:
        mapping = tuple(group.class_index(group.power(triple.x, k)) for k in range(1, diagram.size + 1))
        labeling = DualLabeling(mapping, tuple(mapping[end] for end in diagram.ends))
        if group.identity_class() in mapping or len(set(mapping)) != diagram.size:
            labeling = None
    else:
        labeling = _branch_labeling(group, diagram, triple)
    if labeling is None:
        raise VerificationError(f"{diagram_type.label} 的顶点标记不是双射", "dual_bijection")
    return labeling


# ========== 顶点-共轭类对应的各项性质 ==========

def _commuting_classes(group: FiniteSubgroup, i: int, j: int) -> bool:
    """C_i 与 C_j 中是否存在一对交换的元素"""
    first = np.array(group.classes[i].members)
    second = np.array(group.classes[j].members)
    table = group.mult_table
    return bool(np.any(table[np.ix_(first, second)] == table[np.ix_(second, first)].T))


def twin_branches(group: FiniteSubgroup, triple: SpecialTriple) -> List[Tuple[int, int]]:
    """末端共轭类互逆的分支对 (b1, b2)"""
    generators = triple.branch_generators
    twins = []
    for b1, b2 in itertools.combinations(range(len(generators)), 2):
        if group.class_index(group.inverse(generators[b1])) == group.class_index(generators[b2]):
            twins.append((b1, b2))
    return twins


def edge_predicate(group: FiniteSubgroup, labeling: DualLabeling) -> Set[Tuple[int, int]]:
    """
    {(i, j) : 存在 g_i ∈ C_i 与特殊类中的 u 交换，且 u·g_i ∈ C_j}

    g_i 取类代表元即可（共轭不改变结论）；乘积为单位元时不计，结果为无序对
    """
    special_members = sorted({u for c in set(labeling.special_classes) for u in group.classes[c].members})
    pairs: Set[Tuple[int, int]] = set()
    for i, class_index in enumerate(labeling.mapping):
        g = group.classes[class_index].representative
        for u in special_members:
            if not group.commutes(u, g):
                continue
            product_class = group.class_index(group.multiply(u, g))
            if product_class not in labeling.mapping:
                continue
            j = labeling.vertex_of_class(product_class)
            pairs.add((min(i, j), max(i, j)))
    return pairs


def verify_dual_correspondence(group: FiniteSubgroup, diagram_type: DiagramType, labeling: DualLabeling,
                               triple: SpecialTriple) -> List[CheckResult]:
    """
    逐条验证顶点-共轭类对应

    返回:
        依次为 dual_bijection, dual_ends_special, dual_center,
        dual_branch_progression, dual_branch_commuting, dual_edge_predicate
    """
    diagram = build_diagram(diagram_type)
    branched = diagram_type.family is not Family.A
    results = []

    # 双射
    nontrivial = set(range(group.class_count)) - {group.identity_class()}
    bijective = len(set(labeling.mapping)) == diagram.size and set(labeling.mapping) == nontrivial
    witness: Dict = {"mapping": list(labeling.mapping)}
    if branched and diagram.branch_lengths[1] >= 3:
        witness["x2_y2_conjugate"] = (group.class_index(group.power(triple.x, 2))
                                      == group.class_index(group.power(triple.y, 2)))
    results.append(CheckResult("dual_bijection", bijective, witness=witness))

    # 末端 ↦ 特殊类
    ends_ok = special_product_check(group, triple)
    if branched:
        for end, generator, m in zip(diagram.ends, triple.branch_generators, triple.branch_orders):
            ends_ok &= labeling.mapping[end] == group.class_index(generator)
            ends_ok &= special_trace_check(group, generator, m)
    else:
        ends_ok &= labeling.mapping[diagram.ends[0]] == group.class_index(triple.x)
        ends_ok &= labeling.mapping[diagram.ends[-1]] == group.class_index(triple.y)
    results.append(CheckResult("dual_ends_special", bool(ends_ok),
                               witness={"special_classes": list(labeling.special_classes)}))

    # 中心顶点 ↦ {-I}
    if branched:
        central = labeling.mapping[diagram.center]
        center_ok = central == group.minus_one_class() and group.classes[central].size == 1
        results.append(CheckResult("dual_center", center_ok,
                                   witness={"central_class": central, "size": group.classes[central].size}))
    else:
        results.append(CheckResult.not_applicable("dual_center", "A型图没有中心顶点"))

    # 分支上的几何级数
    results.append(_branch_progression(group, diagram, labeling, triple))

    # 交换代表元
    if branched:
        results.append(_branch_commuting(group, diagram, labeling, triple))
    else:
        results.append(CheckResult.not_applicable("dual_branch_commuting", "循环群中任意两元素交换"))

    # 边 ⇔ 与特殊类元素交换的平移
    computed = edge_predicate(group, labeling)
    edges = set(diagram.edges())
    results.append(CheckResult(
        "dual_edge_predicate",
        computed == edges,
        deviation=float(len(computed ^ edges)),
        witness={"missing": sorted(map(list, edges - computed)),
                 "extra": sorted(map(list, computed - edges))},
    ))
    return results


def _branch_progression(group: FiniteSubgroup, diagram: Diagram, labeling: DualLabeling,
                        triple: SpecialTriple) -> CheckResult:
    name = "dual_branch_progression"
    if triple.z is None:
        end_class = labeling.mapping[0]
        for k in range(1, diagram.size + 1):
            if labeling.mapping[k - 1] != power_map(group, end_class, k):
                return CheckResult(name, False, witness={"vertex": k - 1})
        closed = power_map(group, end_class, diagram.size + 1) == group.identity_class()
        return CheckResult(name, closed, witness={"order": diagram.size + 1})

    separated = True
    for branch, generator, m in zip(diagram.branches, triple.branch_generators, triple.branch_orders):
        end_class = labeling.mapping[branch[0]]
        for k, vertex in enumerate(branch, start=1):
            if labeling.mapping[vertex] != power_map(group, end_class, k):
                return CheckResult(name, False, witness={"vertex": vertex, "power": k})
        if power_map(group, end_class, m) != group.minus_one_class():
            return CheckResult(name, False, witness={"branch_end": branch[0], "power": m})
        separated &= trace_separation_check(group, generator, m)
    return CheckResult(name, separated, witness={"branch_lengths": list(diagram.branch_lengths),
                                                 "traces_distinct": separated})


def trace_separation_check(group: FiniteSubgroup, generator: int, m: int) -> bool:
    """g^k (k = 1..m) 的迹两两不同"""
    traces = [group.elements[group.power(generator, k)].trace() for k in range(1, m + 1)]
    return all(a != b for a, b in itertools.combinations(traces, 2))


def _branch_commuting(group: FiniteSubgroup, diagram: Diagram, labeling: DualLabeling,
                      triple: SpecialTriple) -> CheckResult:
    """
    C_i 与 C_j 有交换代表元 ⇔ 两顶点在同一分支上，或分别在一对末端类互逆的分支上
    """
    twins = twin_branches(group, triple)
    mismatches = []
    for i, j in itertools.combinations(range(diagram.size), 2):
        shared = set(diagram.branch_of(i)) & set(diagram.branch_of(j))
        expected = bool(shared) or any(
            (b1 in diagram.branch_of(i) and b2 in diagram.branch_of(j))
            or (b2 in diagram.branch_of(i) and b1 in diagram.branch_of(j))
            for b1, b2 in twins
        )
        found = _commuting_classes(group, labeling.mapping[i], labeling.mapping[j])
        if found != expected:
            mismatches.append([i, j, found])
    return CheckResult(
        "dual_branch_commuting",
        not mismatches,
        deviation=float(len(mismatches)),
        witness={"twin_branches": [list(t) for t in twins], "mismatches": mismatches[:5]},
    )


# ========== Mumford代表元 ==========

def canonical_ordering(diagram: Diagram, start: Optional[int] = None) -> Tuple[int, ...]:
    """
    前缀连通的顶点顺序：从最长分支末端出发，每次加入下标最小的相邻顶点

    参数:
        diagram: 图
        start: 起始顶点，默认为第一个末端

    返回:
        顶点排列
    """
    start = diagram.ends[0] if start is None else start
    ordering = [start]
    placed = {start}
    while len(ordering) < diagram.size:
        frontier = {w for v in placed for w in diagram.neighbors(v)} - placed
        nxt = min(frontier)
        ordering.append(nxt)
        placed.add(nxt)
    return tuple(ordering)


def alternate_ordering(diagram: Diagram) -> Tuple[int, ...]:
    """从最后一个末端出发的另一个前缀连通顺序"""
    return canonical_ordering(diagram, start=diagram.ends[-1])


def is_prefix_connected(diagram: Diagram, ordering: Tuple[int, ...]) -> bool:
    graph = diagram.graph()
    return all(nx.is_connected(graph.subgraph(ordering[:p])) for p in range(1, len(ordering) + 1))


class MumfordSearch:
    """
    Mumford代表元的回溯搜索

    按给定顺序为每个顶点选取类中的元素：必须与已放置的邻点交换；
    某顶点及其全部邻点放置完毕后立即检验 rep(v)^2 = Π rep(邻点)
    """

    def __init__(self, group: FiniteSubgroup, diagram: Diagram, labeling: DualLabeling,
                 ordering: Tuple[int, ...], debug: bool = False):
        self.group = group
        self.diagram = diagram
        self.labeling = labeling
        self.ordering = ordering
        self.debug = debug
        self.position = {v: p for p, v in enumerate(ordering)}
        self.neighbors = {v: sorted(diagram.neighbors(v), key=self.position.get)
                          for v in range(diagram.size)}
        self.ready: Dict[int, List[int]] = defaultdict(list)
        for v in range(diagram.size):
            self.ready[max(self.position[w] for w in [v] + self.neighbors[v])].append(v)
        self.reps = [-1] * diagram.size
        self.nodes = 0

    def run(self) -> MumfordRepresentatives:
        start = time.perf_counter()
        if not self._place(0):
            raise VerificationError(
                f"{self.group.type.label} 找不到Mumford代表元",
                "mumford_representatives",
                {"ordering": list(self.ordering), "nodes": self.nodes},
            )
        self.log(f"顺序 {self.ordering} 的搜索访问了 {self.nodes} 个节点，"
                 f"用时 {(time.perf_counter() - start) * 1000:.1f} ms")
        return MumfordRepresentatives(
            ordering=self.ordering,
            reps=tuple(self.reps),
            order_independent=self._order_independent(),
            nodes_explored=self.nodes,
        )

    def _relation_holds(self, v: int) -> bool:
        square = self.group.multiply(self.reps[v], self.reps[v])
        return square == self.group.product(self.reps[w] for w in self.neighbors[v])

    def _place(self, p: int) -> bool:
        if p == self.diagram.size:
            return self.group.generates(self.reps)
        v = self.ordering[p]
        for candidate in self.group.classes[self.labeling.mapping[v]].members:
            self.nodes += 1
            if any(self.reps[w] >= 0 and not self.group.commutes(candidate, self.reps[w])
                   for w in self.neighbors[v]):
                continue
            self.reps[v] = candidate
            if all(self._relation_holds(w) for w in self.ready[p]) and self._place(p + 1):
                return True
            self.reps[v] = -1
        return False

    def _order_independent(self) -> bool:
        """每个顶点的邻点乘积是否与相乘顺序无关"""
        for v in range(self.diagram.size):
            products = {self.group.product(perm)
                        for perm in itertools.permutations(self.reps[w] for w in self.neighbors[v])}
            if len(products) > 1:
                return False
        return True

    def log(self, message: str):
        if self.debug:
            logger.debug(f"[{time.strftime('%H:%M:%S')}][MumfordSearch] {message}")


def find_mumford_representatives(group: FiniteSubgroup, diagram: Diagram, labeling: DualLabeling,
                                 ordering: Tuple[int, ...], debug: bool = False) -> MumfordRepresentatives:
    return MumfordSearch(group, diagram, labeling, ordering, debug=debug).run()


def mumford_check(group: FiniteSubgroup, diagram: Diagram, labeling: DualLabeling,
                  debug: bool = False) -> CheckResult:
    """在规范顺序和另一顺序下分别搜索Mumford代表元"""
    found = {}
    try:
        for label, ordering in (("canonical", canonical_ordering(diagram)),
                                ("alternate", alternate_ordering(diagram))):
            result = find_mumford_representatives(group, diagram, labeling, ordering, debug=debug)
            found[label] = {
                "ordering": list(result.ordering),
                "reps": list(result.reps),
                "order_independent": result.order_independent,
            }
    except VerificationError as e:
        return CheckResult("mumford_representatives", False, witness=e.witness)
    return CheckResult("mumford_representatives", True, witness=found)


# ========== 商群中的表现关系 ==========

def verify_presentation_relations(group: FiniteSubgroup, triple: SpecialTriple,
                                  diagram_type: Optional[DiagramType] = None) -> CheckResult:
    """
    G 中：x^{m1} = y^{m2} = z^{m3} = xyz = c 且三元组生成 G；
    H = G/{±I} 中：h_j^{m_j} = 1，h1 h2 h3 = 1 且像生成 H
    """
    diagram_type = diagram_type or group.type
    quotient = quotient_by_center_pm1(group)
    images = [int(quotient.coset_of[g]) for g in triple.branch_generators]
    in_group = presentation_relations_hold(group, triple) and group.generates(triple.branch_generators)

    if triple.z is None:
        generates_h = quotient.generates(images)
        return CheckResult("presentation_relations", bool(in_group and generates_h),
                           witness={"quotient_order": quotient.order})

    relations_h = all(
        _quotient_power(quotient, h, m) == 0 for h, m in zip(images, triple.branch_orders)
    )
    product = quotient.mult_table[quotient.mult_table[images[0], images[1]], images[2]]
    orders = [quotient.element_order(h) for h in images]
    passed = in_group and relations_h and product == 0 and quotient.generates(images)
    return CheckResult("presentation_relations", bool(passed), witness={
        "quotient_orders": orders,
        "exponents": triple.exponents,
        "c_order": int(group.element_orders[triple.c]),
    })


def _quotient_power(quotient, h: int, k: int) -> int:
    result = 0
    for _ in range(k):
        result = int(quotient.mult_table[result, h])
    return result
