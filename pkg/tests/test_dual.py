"""
对偶McKay对应测试模块

测试特殊三元组、顶点标记、顶点-共轭类对应的各项性质、Mumford代表元与表现关系
"""

import pytest

from conftest import make_type
from mckay_dual.algebra.dynkin import build_diagram
from mckay_dual.common.errors import VerificationError
from mckay_dual.correspondence.dual import (
    DualLabeling, alternate_ordering, canonical_ordering, dual_labeling, edge_predicate,
    find_mumford_representatives, find_special_triple, is_prefix_connected, mumford_check,
    presentation_relations_hold, special_product_check, trace_separation_check, twin_branches,
    verify_dual_correspondence, verify_presentation_relations,
)

BRANCHED = ["D4", "D5", "D6", "D9", "E6", "E7", "E8"]
ALL_TYPES = ["A1", "A2", "A5"] + BRANCHED


def setup(text, group_of):
    group = group_of(text)
    t = make_type(text)
    triple = find_special_triple(group, t)
    return group, t, triple, dual_labeling(group, t, triple)


# ========== 特殊三元组测试 ==========

@pytest.mark.parametrize("text", BRANCHED)
def test_special_triple_relations(text, group_of):
    """测试 x^{m1} = y^{m2} = z^{m3} = xyz = -I 且三元组生成群"""
    group, t, triple, _ = setup(text, group_of)
    assert triple.c == group.minus_one
    assert triple.branch_orders == build_diagram(t).branch_lengths
    assert presentation_relations_hold(group, triple)
    assert special_product_check(group, triple)
    assert group.generates(triple.branch_generators)


def test_special_triple_orders_e8(group_of):
    """E8：特殊元素的阶为 10, 6, 4"""
    group, _, triple, _ = setup("E8", group_of)
    orders = [int(group.element_orders[g]) for g in triple.branch_generators]
    assert orders == [10, 6, 4]


def test_special_triple_exponents_d(group_of):
    """D_n：x^{n-2} = y^2 = z^2 = c"""
    _, _, triple, _ = setup("D6", group_of)
    assert triple.exponents == {"x": 4, "y": 2, "z": 2}


def test_special_pair_a(group_of):
    """A_n：两端的代表元互逆"""
    group, _, triple, _ = setup("A5", group_of)
    assert triple.z is None
    assert group.multiply(triple.x, triple.y) == group.identity
    assert special_product_check(group, triple)


def test_special_traces_separate_branch_powers(group_of):
    group, _, triple, _ = setup("E7", group_of)
    for generator, m in zip(triple.branch_generators, triple.branch_orders):
        assert trace_separation_check(group, generator, m)


# ========== 顶点标记测试 ==========

@pytest.mark.parametrize("text", ALL_TYPES)
def test_labeling_is_bijection(text, group_of):
    """测试顶点 ↦ 非平凡共轭类是双射"""
    group, t, _, labeling = setup(text, group_of)
    nontrivial = set(range(group.class_count)) - {group.identity_class()}
    assert set(labeling.mapping) == nontrivial
    assert len(labeling.mapping) == build_diagram(t).size


@pytest.mark.parametrize("text", BRANCHED)
def test_center_vertex_is_minus_one(text, group_of):
    group, t, _, labeling = setup(text, group_of)
    assert labeling.central_class == group.minus_one_class()
    assert labeling.mapping[build_diagram(t).center] == group.minus_one_class()


def test_a_labeling_follows_powers(group_of):
    """A_n：v_k ↦ x^k"""
    group, _, triple, labeling = setup("A5", group_of)
    for k, class_index in enumerate(labeling.mapping, start=1):
        assert class_index == group.class_index(group.power(triple.x, k))
    assert labeling.central_class is None


# ========== 对应性质测试 ==========

@pytest.mark.parametrize("text", ALL_TYPES)
def test_dual_correspondence_checks_pass(text, group_of):
    """测试顶点-共轭类对应的全部性质"""
    group, t, triple, labeling = setup(text, group_of)
    results = verify_dual_correspondence(group, t, labeling, triple)
    assert [r.name for r in results] == [
        "dual_bijection", "dual_ends_special", "dual_center",
        "dual_branch_progression", "dual_branch_commuting", "dual_edge_predicate",
    ]
    failed = [(r.name, r.witness) for r in results if not r.passed]
    assert not failed, failed


def test_center_not_applicable_for_a(group_of):
    group, t, triple, labeling = setup("A2", group_of)
    results = {r.name: r for r in verify_dual_correspondence(group, t, labeling, triple)}
    assert results["dual_center"].witness["applicable"] is False


@pytest.mark.parametrize("text,twins", [
    ("D4", []), ("D5", [(1, 2)]), ("D6", []), ("D9", [(1, 2)]),
    ("E6", [(0, 1)]), ("E7", []), ("E8", []),
])
def test_twin_branches(text, twins, group_of):
    """末端类互逆的分支对：E6 的两条长分支，D_n（n奇数）的两条短分支"""
    group, _, triple, _ = setup(text, group_of)
    assert twin_branches(group, triple) == twins


@pytest.mark.parametrize("text", ["A4", "D7", "E6", "E8"])
def test_edge_predicate_recovers_diagram(text, group_of):
    """测试由特殊类的平移恢复图的边"""
    group, t, _, labeling = setup(text, group_of)
    assert edge_predicate(group, labeling) == set(build_diagram(t).edges())


def test_broken_labeling_fails_bijection(group_of):
    """重复的顶点标记被检出"""
    group, t, triple, labeling = setup("D4", group_of)
    mapping = list(labeling.mapping)
    mapping[0] = mapping[2]
    broken = DualLabeling(tuple(mapping), labeling.special_classes, labeling.central_class)
    results = {r.name: r for r in verify_dual_correspondence(group, t, broken, triple)}
    assert not results["dual_bijection"].passed


# ========== 顶点顺序测试 ==========

@pytest.mark.parametrize("text", ["A1", "A6", "D4", "D8", "E6", "E7", "E8"])
def test_orderings_are_prefix_connected(text):
    """测试规范顺序与另一顺序都是前缀连通的排列"""
    diagram = build_diagram(make_type(text))
    for ordering in (canonical_ordering(diagram), alternate_ordering(diagram)):
        assert sorted(ordering) == list(range(diagram.size))
        assert is_prefix_connected(diagram, ordering)


def test_e8_orderings_differ():
    diagram = build_diagram(make_type("E8"))
    assert canonical_ordering(diagram) == (0, 1, 2, 3, 4, 6, 5, 7)
    assert alternate_ordering(diagram)[0] == 7
    assert canonical_ordering(diagram) != alternate_ordering(diagram)


def test_non_prefix_connected_ordering():
    diagram = build_diagram(make_type("A4"))
    assert not is_prefix_connected(diagram, (0, 2, 1, 3))


# ========== Mumford代表元测试 ==========

@pytest.mark.parametrize("text", ["A3", "D4", "D5", "E6", "E7"])
def test_mumford_representatives(text, group_of):
    """测试代表元满足 g_i^2 = 邻点乘积，且相邻代表元交换"""
    group, t, _, labeling = setup(text, group_of)
    diagram = build_diagram(t)
    ordering = canonical_ordering(diagram)
    result = find_mumford_representatives(group, diagram, labeling, ordering)
    position = {v: p for p, v in enumerate(ordering)}
    for v in range(diagram.size):
        rep = result.reps[v]
        assert group.class_index(rep) == labeling.mapping[v]
        neighbors = sorted(diagram.neighbors(v), key=position.get)
        assert group.multiply(rep, rep) == group.product(result.reps[w] for w in neighbors)
        for w in neighbors:
            assert group.commutes(rep, result.reps[w])
    assert group.generates(result.reps)
    assert result.nodes_explored > 0


def test_mumford_check_both_orderings(group_of):
    group, t, _, labeling = setup("E8", group_of)
    result = mumford_check(group, build_diagram(t), labeling)
    assert result.passed, result.witness
    assert set(result.witness) == {"canonical", "alternate"}


def test_mumford_search_fails_for_wrong_labeling(group_of):
    """把两个顶点的类对调后找不到代表元"""
    group, t, _, labeling = setup("E6", group_of)
    diagram = build_diagram(t)
    mapping = list(labeling.mapping)
    end, center = diagram.ends[2], diagram.center
    mapping[end], mapping[center] = mapping[center], mapping[end]
    swapped = DualLabeling(tuple(mapping), labeling.special_classes)
    with pytest.raises(VerificationError):
        find_mumford_representatives(group, diagram, swapped, canonical_ordering(diagram))
    assert not mumford_check(group, diagram, swapped).passed


# ========== 表现关系测试 ==========

@pytest.mark.parametrize("text", ALL_TYPES)
def test_presentation_relations(text, group_of):
    """测试 G 与 H = G/{±I} 中的表现关系"""
    group, t, triple, _ = setup(text, group_of)
    result = verify_presentation_relations(group, triple, t)
    assert result.passed, result.witness


def test_presentation_relations_e8_quotient_orders(group_of):
    """E8：像在 H（二十面体群）中的阶为 5, 3, 2"""
    group, t, triple, _ = setup("E8", group_of)
    result = verify_presentation_relations(group, triple, t)
    assert result.witness["quotient_orders"] == [5, 3, 2]
    assert result.witness["c_order"] == 2
