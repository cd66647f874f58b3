"""
ADE图与Cartan矩阵测试模块

测试图结构、Cartan矩阵、根系、标记、仿射扩张以及逆矩阵的下界与级数
"""

from fractions import Fraction

import numpy as np
import pytest

from conftest import make_type
from mckay_dual.algebra.dynkin import (
    DiagramType, Family, affine_extend, build_diagram, cartan, connection_index_gcd_check,
    discriminant_exponent, highest_root, inverse_bound_check, neumann_convergence,
    neumann_series_check, parse_type, root_norm, root_system, walk_count_check,
)
from mckay_dual.common.errors import InvalidDiagramError


# ========== 类型解析测试 ==========

def test_parse_type():
    """测试类型描述串解析"""
    assert parse_type("E:8") == DiagramType(Family.E, 8)
    assert parse_type(" d : 7 ") == DiagramType(Family.D, 7)
    assert parse_type("A:3").label == "A3"
    assert parse_type("A:3").spec == "A:3"


@pytest.mark.parametrize("text", ["E:9", "E:5", "D:3", "A:0", "A:-2", "B:3", "E8", ""])
def test_parse_type_rejects_invalid(text):
    """测试非法类型描述串"""
    with pytest.raises(InvalidDiagramError):
        parse_type(text)


def test_invalid_diagram_error_is_value_error():
    with pytest.raises(ValueError):
        DiagramType(Family.D, 2)


def test_sweep_types():
    """测试 --all 展开的类型列表"""
    sweep = DiagramType.sweep()
    assert len(sweep) == 24
    assert sweep[0].label == "A1"
    assert sweep[-1].label == "E8"
    assert all(t.family is not Family.D or t.rank >= 4 for t in sweep)


# ========== 图结构测试 ==========

@pytest.mark.parametrize("text,lengths", [
    ("D4", (2, 2, 2)), ("D7", (5, 2, 2)), ("E6", (3, 3, 2)), ("E7", (4, 3, 2)), ("E8", (5, 3, 2)),
])
def test_branch_lengths(text, lengths):
    """测试分支长度（含中心顶点）"""
    diagram = build_diagram(make_type(text))
    assert diagram.branch_lengths == lengths
    assert all(branch[-1] == diagram.center for branch in diagram.branches)
    assert diagram.degree(diagram.center) == 3


def test_e8_numbering():
    """测试E8的顶点编号：长分支从末端走向中心"""
    diagram = build_diagram(make_type("E8"))
    assert diagram.branches == ((0, 1, 2, 3, 4), (5, 6, 4), (7, 4))
    assert diagram.center == 4
    assert diagram.ends == (0, 5, 7)
    assert len(diagram.edges()) == 7


def test_a_diagram_is_path():
    diagram = build_diagram(make_type("A5"))
    assert diagram.edges() == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert diagram.center is None
    assert diagram.distance(0, 4) == 4


@pytest.mark.parametrize("text,count", [
    ("A1", 1), ("A2", 2), ("A7", 2), ("D4", 6), ("D5", 2), ("D10", 2), ("E6", 2), ("E7", 1), ("E8", 1),
])
def test_automorphism_count(text, count):
    """测试图自同构个数，恒等映射排在第一位"""
    diagram = build_diagram(make_type(text))
    automorphisms = diagram.automorphisms()
    assert len(automorphisms) == count
    assert automorphisms[0] == tuple(range(diagram.size))


# ========== Cartan矩阵测试 ==========

@pytest.mark.parametrize("text,index", [
    ("A1", 2), ("A4", 5), ("A12", 13), ("D4", 4), ("D9", 4), ("E6", 3), ("E7", 2), ("E8", 1),
])
def test_connection_index(text, index):
    """测试 det C"""
    assert cartan(make_type(text)).connection_index == index


def test_cartan_inverse_is_exact():
    """测试 C·C^{-1} = I（精确）"""
    data = cartan(make_type("E7"))
    product = data.C * data.C_inverse
    assert product == product.eye(7)
    assert data.inverse_entry(0, 0) == Fraction(3, 2)


def test_a_inverse_formula():
    """测试 A_n 逆矩阵的闭式 i(n+1-j)/(n+1)"""
    n = 6
    data = cartan(make_type(f"A{n}"))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            assert data.inverse_entry(i - 1, j - 1) == Fraction(i * (n + 1 - j), n + 1)


@pytest.mark.parametrize("text,count", [
    ("A1", 2), ("A3", 12), ("A8", 72), ("D4", 24), ("D5", 40), ("E6", 72), ("E7", 126), ("E8", 240),
])
def test_root_count(text, count):
    """测试根的个数"""
    roots = root_system(make_type(text))
    assert len(roots) == count


def test_roots_have_norm_two():
    t = make_type("E6")
    assert all(root_norm(t, root) == 2 for root in root_system(t))


def test_roots_are_sign_coherent():
    """每个根的坐标全非负或全非正"""
    for root in root_system(make_type("D6")):
        assert all(c >= 0 for c in root) or all(c <= 0 for c in root)


@pytest.mark.parametrize("text,theta", [
    ("E8", (2, 3, 4, 5, 6, 2, 4, 3)),
    ("E7", (1, 2, 3, 4, 2, 3, 2)),
    ("E6", (1, 2, 3, 1, 2, 2)),
    ("D4", (1, 2, 1, 1)),
    ("D6", (1, 2, 2, 2, 1, 1)),
    ("A4", (1, 1, 1, 1)),
])
def test_highest_root(text, theta):
    """测试最高根的坐标"""
    assert highest_root(make_type(text)) == theta


@pytest.mark.parametrize("text,total", [("E6", 11), ("E7", 17), ("E8", 29), ("D7", 11), ("A5", 5)])
def test_mark_sum_is_coxeter_number_minus_one(text, total):
    assert sum(cartan(make_type(text)).marks[1:]) == total


# ========== 仿射扩张测试 ==========

@pytest.mark.parametrize("text,attached", [
    ("A1", (1,)), ("A4", (1, 4)), ("D4", (2,)), ("D6", (2,)), ("E6", (6,)), ("E7", (5,)), ("E8", (1,)),
])
def test_affine_attachment(text, attached):
    """测试 v_0 的连接位置（仿射编号）"""
    assert affine_extend(make_type(text)).attached == attached


def test_affine_a1_double_edge():
    """测试 A_1 仿射图的二重边"""
    affine = affine_extend(make_type("A1"))
    assert affine.adjacency[0, 1] == 2
    assert affine.graph()[0][1]["weight"] == 2


@pytest.mark.parametrize("text", ["A1", "A6", "D5", "D8", "E6", "E7", "E8"])
def test_marks_in_affine_kernel(text):
    """测试标记向量位于仿射Cartan矩阵的核中"""
    affine = affine_extend(make_type(text))
    assert affine.marks[0] == 1
    assert not np.any(affine.cartan() @ np.array(affine.marks))


# ========== 下界与级数测试 ==========

@pytest.mark.parametrize("text", ["A1", "A2", "A9", "D4", "D7", "E6", "E7", "E8"])
def test_inverse_bound(text):
    """测试逆矩阵元素的按距离下界"""
    report = inverse_bound_check(make_type(text))
    assert report.strictly_positive
    assert report.passed, f"{text} 最小松弛量 {report.min_slack} 出现在 {report.min_slack_pair}"


def test_inverse_bound_sharp_for_a2():
    """A_2 的非对角元恰好取到下界"""
    report = inverse_bound_check(make_type("A2"))
    assert report.sharp_pairs == [(0, 1)]
    assert report.min_slack == 0


def test_inverse_bound_a1_has_no_pairs():
    report = inverse_bound_check(make_type("A1"))
    assert report.min_slack is None
    assert report.passed


def test_neumann_series_small_types():
    """测试小型图的级数在400项内达到容差"""
    for text in ("A1", "A3", "D4", "D5"):
        assert neumann_series_check(make_type(text), 400) <= 1e-8


def test_neumann_series_rejects_zero_terms():
    with pytest.raises(ValueError):
        neumann_series_check(make_type("A1"), 0)


@pytest.mark.parametrize("text", ["A12", "D12", "E8"])
def test_neumann_convergence_slow_types(text):
    """测试收敛较慢的类型：截断误差等于尾项，并最终达到容差"""
    report = neumann_convergence(make_type(text), 400, 1e-8)
    assert report.monotone
    assert report.tail_consistent
    assert report.terms_to_tolerance is not None
    assert report.passed
    assert report.spectral_radius < 2.0


def test_neumann_convergence_e8_needs_many_terms():
    """E8 在400项时尚未达到 1e-8"""
    report = neumann_convergence(make_type("E8"), 400, 1e-8)
    assert report.deviation > 1e-8
    assert report.terms_to_tolerance > 400


# ========== 其他恒等式测试 ==========

@pytest.mark.parametrize("text", ["A4", "D5", "E6"])
def test_walk_counts(text):
    """测试 (M^n)_{ij} 等于路径数"""
    assert walk_count_check(make_type(text), 6)


@pytest.mark.parametrize("text,expected", [
    ("A5", True), ("D5", True), ("D7", True), ("D4", False), ("D6", False),
    ("E6", True), ("E7", True), ("E8", True),
])
def test_connection_index_gcd(text, expected):
    """D_n (n偶数) 的判别群不是循环群"""
    assert connection_index_gcd_check(make_type(text)) is expected


@pytest.mark.parametrize("text,exponent", [
    ("A7", 8), ("D5", 4), ("D6", 2), ("D4", 2), ("E6", 3), ("E7", 2), ("E8", 1),
])
def test_discriminant_exponent(text, exponent):
    assert discriminant_exponent(make_type(text)) == exponent
