"""
公共组件测试模块

测试验证配置、检查结果、验证报告与检查注册表
"""

import json

import pytest

from mckay_dual.common.config import VerificationConfig
from mckay_dual.common.errors import InvalidDiagramError, McKayError, VerificationError
from mckay_dual.common.reporting import (
    CheckRegistry, CheckResult, ReportSection, VerificationReport,
)


# ========== 配置测试 ==========

def test_config_defaults():
    """测试默认容差与上限"""
    config = VerificationConfig()
    assert config.construction_tolerance == 1e-9
    assert config.integrality_tolerance == 1e-6
    assert config.phase_tolerance == 1e-8
    assert config.neumann_terms == 400
    assert config.max_probe_power == 10000
    assert config.closure_cap == 1000
    assert config.tolerances() == {
        "construction": 1e-9,
        "integrality": 1e-6,
        "phase": 1e-8,
        "probe": 1e-6,
    }


def test_config_rejects_invalid_values():
    """测试非法配置值"""
    with pytest.raises(ValueError):
        VerificationConfig(phase_tolerance=0.0)
    with pytest.raises(ValueError):
        VerificationConfig(jobs=0)


def test_config_from_env(monkeypatch):
    """测试从环境变量读取配置"""
    monkeypatch.setenv("MCKAY_SEED", "7")
    monkeypatch.setenv("MCKAY_MAX_PROBE_POWER", "50")
    monkeypatch.setenv("MCKAY_DEBUG", "true")
    config = VerificationConfig.from_env()
    assert config.seed == 7
    assert config.max_probe_power == 50
    assert config.debug is True


def test_config_from_env_invalid(monkeypatch):
    """测试无法解析的环境变量"""
    monkeypatch.setenv("MCKAY_JOBS", "many")
    with pytest.raises(ValueError, match="MCKAY_JOBS"):
        VerificationConfig.from_env()


def test_config_overrides_ignore_none():
    """测试覆盖时忽略None"""
    config = VerificationConfig().with_overrides(phase_tolerance=1e-7, jobs=None)
    assert config.phase_tolerance == 1e-7
    assert config.jobs == 1


# ========== 异常测试 ==========

def test_error_hierarchy():
    """测试异常层次"""
    assert issubclass(InvalidDiagramError, ValueError)
    assert issubclass(InvalidDiagramError, McKayError)
    error = VerificationError("失败", check="group_order", witness={"order": 3})
    assert error.check == "group_order"
    assert error.witness == {"order": 3}


# ========== 报告测试 ==========

def test_report_section_parse():
    """测试报告章节解析"""
    assert ReportSection.parse("all") == list(ReportSection)
    assert ReportSection.parse("dual") == [ReportSection.DUAL]
    with pytest.raises(ValueError):
        ReportSection.parse("plots")


def test_not_applicable_check_passes():
    """测试不适用的检查按通过记录"""
    result = CheckResult.not_applicable("dual_center", "A型")
    assert result.passed
    assert result.witness["applicable"] is False


def test_report_status_and_duplicates():
    """测试总体状态与重复检查"""
    report = VerificationReport(type="A:1", group_order=2, class_count=2)
    report.add(CheckResult("group_order", True))
    assert report.passed
    report.add(CheckResult("unitarity", False, deviation=1.0))
    assert not report.passed
    with pytest.raises(ValueError):
        report.add(CheckResult("group_order", True))


def test_report_json_keys_and_text_verdicts():
    """测试JSON键顺序以及文本与JSON判定一致"""
    report = VerificationReport(type="E:8", group_order=120, class_count=9,
                                tolerances=VerificationConfig().tolerances())
    report.add(CheckResult("group_order", True, witness={"order": 120}))
    report.add(CheckResult("det_formula", False, deviation=0.5))
    data = json.loads(report.to_json())
    assert list(data)[:5] == ["type", "group_order", "class_count", "passed", "checks"]
    assert data["checks"][1] == {"name": "det_formula", "pass": False, "deviation": 0.5, "witness": None}
    text = report.to_text()
    assert "[FAIL] det_formula" in text
    assert "[ok  ] group_order" in text
    assert VerificationReport.from_json(report.to_json()).passed == report.passed


def test_report_stage_timing():
    """测试阶段计时"""
    report = VerificationReport(type="A:1", group_order=2, class_count=2)
    with report.stage("build"):
        pass
    assert report.timings["build"] >= 0.0


def test_registry_runs_sections_in_order():
    """测试注册表按章节顺序运行"""
    registry = CheckRegistry()

    @registry.register(ReportSection.FOURIER)
    def late(value):
        return [CheckResult("late", True, witness=value)]

    @registry.register(ReportSection.GROUPS)
    def early(value):
        return [CheckResult("early", True, witness=value)]

    results = registry.run([ReportSection.FOURIER, ReportSection.GROUPS], 3)
    assert [r.name for r in results] == ["early", "late"]
    assert registry.run([ReportSection.DUAL], 3) == []
