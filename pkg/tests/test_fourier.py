"""
行列式公式与Fourier变换测试模块
"""

import numpy as np
import pytest

from conftest import make_type
from mckay_dual.correspondence.dual import dual_labeling, find_special_triple
from mckay_dual.correspondence.fourier import (
    ProbeResult, abelianization_check, cartan_fourier_matrix, central_transform_matrix,
    central_transform_order_probe, central_transform_probe_check, classical_fourier_matrix,
    cyclic_fourier, cyclic_fourier_check, det_formula_check, determinant_fourier_matrix,
    root_of_unity_order_check,
)
from mckay_dual.correspondence.mckay import mckay_correspondence
from mckay_dual.groups.characters import character_table


def prepare(text, group_of):
    """群、对偶标记与McKay对应"""
    group = group_of(text)
    t = make_type(text)
    labeling = dual_labeling(group, t, find_special_triple(group, t))
    return group, labeling, mckay_correspondence(group, character_table(group))


# ========== 行列式公式测试 ==========

def test_cartan_side_e8_is_all_ones():
    """E8 的 C^{-1} 为整数矩阵"""
    F = cartan_fourier_matrix(make_type("E8")).F
    assert np.allclose(F, 1.0)


def test_cartan_side_is_unimodular():
    matrix = cartan_fourier_matrix(make_type("D7"))
    assert matrix.modulus_deviation() < 1e-12
    assert np.allclose(matrix.F ** 4, 1.0)


@pytest.mark.parametrize("text", ["A1", "A2", "A4", "A7", "D4", "D5", "D6", "D7", "E6", "E7", "E8"])
def test_det_formula(text, group_of):
    """det(g_j, R_k) = exp(-2πi (C^{-1})_{jk})"""
    group, labeling, mckay = prepare(text, group_of)
    result = det_formula_check(group, labeling, mckay)
    assert result.passed, result.witness
    assert result.deviation < 1e-8


def test_det_formula_a_uses_identity(group_of):
    group, labeling, mckay = prepare("A5", group_of)
    assert det_formula_check(group, labeling, mckay).witness["automorphism"] == "identity"


@pytest.mark.parametrize("text", ["D5", "E6", "E7"])
def test_determinants_are_roots_of_unity(text, group_of):
    """行列式都是 det C 次单位根"""
    group, labeling, mckay = prepare(text, group_of)
    assert root_of_unity_order_check(group, labeling, mckay)


def test_determinant_matrix_shape(group_of):
    group, labeling, mckay = prepare("E6", group_of)
    matrix = determinant_fourier_matrix(group, labeling, mckay)
    assert matrix.F.shape == (6, 6)
    assert matrix.modulus_deviation() < 1e-9
    assert matrix.source == "determinant"


# ========== 交换化测试 ==========

@pytest.mark.parametrize("text,cyclic", [
    ("A1", True), ("A6", True), ("D4", False), ("D5", True), ("D6", False), ("D9", True),
    ("E6", True), ("E7", True), ("E8", True),
])
def test_abelianization_and_connection_index(text, cyclic, group_of):
    """|G^{ab}| = det C；指数等于 det C 当且仅当交换化是循环群"""
    result = abelianization_check(group_of(text))
    assert result.passed, result.witness
    assert result.witness["order"] == result.witness["connection_index"]
    assert result.witness["exponent_equals_connection_index"] is cyclic


# ========== 循环群Fourier矩阵测试 ==========

def test_classical_fourier_matrix():
    F = classical_fourier_matrix(3)
    assert F.shape == (3, 3)
    assert np.isclose(F[0, 0], np.exp(-2j * np.pi / 4))


@pytest.mark.parametrize("n", [2, 3, 6, 11])
def test_cyclic_fourier_reversal(n):
    """A_n 的行列式矩阵在 k ↦ n+1-k 下等于经典Fourier矩阵"""
    result = cyclic_fourier(n)
    assert result.deviation < 1e-9
    assert result.orientation == "reversal"


def test_cyclic_fourier_a1():
    result = cyclic_fourier(1)
    assert result.deviation < 1e-9
    assert result.orientation == "identity"


def test_cyclic_fourier_check_not_applicable(group_of):
    group, labeling, mckay = prepare("E6", group_of)
    result = cyclic_fourier_check(group, labeling, mckay)
    assert result.passed
    assert result.witness["applicable"] is False


# ========== 中心函数变换探测测试 ==========

@pytest.mark.parametrize("text", ["A3", "D5", "E7", "E8"])
def test_central_transform_is_unitary(text, group_of):
    """T 是 (r+1)×(r+1) 酉矩阵"""
    group, labeling, mckay = prepare(text, group_of)
    T = central_transform_matrix(group, labeling, mckay)
    assert T.shape == (group.class_count, group.class_count)
    assert np.allclose(T.conj().T @ T, np.eye(group.class_count), atol=1e-9)


def test_probe_a1_order_two(group_of):
    group, labeling, mckay = prepare("A1", group_of)
    assert central_transform_order_probe(group, labeling, mckay).order == 2


@pytest.mark.parametrize("text", ["A2", "A4", "A8"])
def test_probe_cyclic_order_four(text, group_of):
    """循环群的 T 是酉DFT，阶为4"""
    group, labeling, mckay = prepare(text, group_of)
    assert central_transform_order_probe(group, labeling, mckay).order == 4


def test_probe_check_is_informational(group_of):
    group, labeling, mckay = prepare("E7", group_of)
    result = central_transform_probe_check(group, labeling, mckay, max_power=200)
    assert result.passed
    assert result.witness["informational"] is True
    assert result.deviation < 1e-9


def test_probe_label():
    assert ProbeResult(None, 10, 3).label == "exceeds bound"
    assert ProbeResult(4, 10, 3).label == "4"
