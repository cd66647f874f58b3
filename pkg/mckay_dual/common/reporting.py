"""
验证报告模块

定义检查结果与验证报告的数据结构，以及按报告章节注册检查函数的注册表。
报告可以序列化为JSON或人类可读的文本，两者包含相同的判定结果
"""

import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Any, Callable, Dict, Iterator, List, Optional

logger = logging.getLogger(__name__)


class ReportSection(Enum):
    """报告章节枚举"""
    GROUPS = auto()       # 群构造与Cartan矩阵
    CHARACTERS = auto()   # 特征标表
    MCKAY = auto()        # McKay对应
    DUAL = auto()         # 对偶McKay对应
    FOURIER = auto()      # 行列式公式与Fourier变换

    @classmethod
    def parse(cls, name: str) -> List["ReportSection"]:
        """将命令行中的章节名解析为章节列表，'all' 表示全部章节"""
        name = name.strip().lower()
        if name == "all":
            return list(cls)
        try:
            return [cls[name.upper()]]
        except KeyError:
            choices = ", ".join(s.name.lower() for s in cls)
            raise ValueError(f"未知的报告章节: {name}（可选: {choices}, all）")


@dataclass
class CheckResult:
    """
    单项检查结果

    包含:
    - 检查名称
    - 是否通过
    - 数值偏差（没有数值意义时为0）
    - 见证信息：失败时的反例，或通过时的关键数据
    """
    name: str
    passed: bool
    deviation: float = 0.0
    witness: Any = None

    @classmethod
    def not_applicable(cls, name: str, reason: str) -> "CheckResult":
        """对当前类型不适用的检查，按通过记录"""
        return cls(name=name, passed=True, deviation=0.0,
                   witness={"applicable": False, "reason": reason})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "deviation": float(self.deviation),
            "witness": self.witness,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckResult":
        return cls(
            name=data["name"],
            passed=data["pass"],
            deviation=data.get("deviation", 0.0),
            witness=data.get("witness"),
        )


@dataclass
class VerificationReport:
    """
    单个图类型的验证报告

    总体状态是所有检查结果的逻辑与
    """
    type: str
    group_order: int
    class_count: int
    checks: List[CheckResult] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, check: CheckResult) -> None:
        """添加检查结果，同名检查只允许出现一次"""
        if any(existing.name == check.name for existing in self.checks):
            raise ValueError(f"检查项 {check.name} 重复出现")
        self.checks.append(check)

    def check(self, name: str) -> CheckResult:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """记录某个阶段的耗时（毫秒）"""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round((time.perf_counter() - start) * 1000.0, 3)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典，键顺序固定"""
        return {
            "type": self.type,
            "group_order": self.group_order,
            "class_count": self.class_count,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "tolerances": dict(self.tolerances),
            "timings_ms": dict(self.timings),
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        return cls(
            type=data["type"],
            group_order=data["group_order"],
            class_count=data.get("class_count", 0),
            checks=[CheckResult.from_dict(c) for c in data.get("checks", [])],
            timings=data.get("timings_ms", {}),
            tolerances=data.get("tolerances", {}),
            elapsed_ms=data.get("elapsed_ms", 0.0),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, json_str: str) -> "VerificationReport":
        return cls.from_dict(json.loads(json_str))

    def to_text(self) -> str:
        """生成人类可读的文本报告"""
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"== {self.type}: |G| = {self.group_order}, "
            f"{self.class_count} classes [{status}]",
        ]
        for item in self.checks:
            mark = "ok  " if item.passed else "FAIL"
            line = f"  [{mark}] {item.name:<28} deviation={item.deviation:.3e}"
            if not item.passed or self._is_informative(item.witness):
                line += f"  witness={json.dumps(item.witness)}"
            lines.append(line)
        lines.append(f"  elapsed: {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)

    @staticmethod
    def _is_informative(witness: Any) -> bool:
        return isinstance(witness, dict) and len(json.dumps(witness)) <= 160


CheckFunction = Callable[..., List[CheckResult]]


class CheckRegistry:
    """
    检查函数注册表

    每个报告章节注册若干检查函数，运行时按章节顺序依次调用
    """

    def __init__(self):
        self._handlers: Dict[ReportSection, List[CheckFunction]] = {
            section: [] for section in ReportSection
        }

    def register(self, section: ReportSection) -> Callable[[CheckFunction], CheckFunction]:
        """装饰器：把检查函数注册到指定章节"""
        def decorator(func: CheckFunction) -> CheckFunction:
            self._handlers[section].append(func)
            return func
        return decorator

    def handlers(self, section: ReportSection) -> List[CheckFunction]:
        return list(self._handlers[section])

    def run(self, sections: List[ReportSection], *args: Any, **kwargs: Any) -> List[CheckResult]:
        """按章节顺序运行所有检查函数，收集结果"""
        results: List[CheckResult] = []
        for section in ReportSection:
            if section not in sections:
                continue
            for handler in self._handlers[section]:
                logger.debug("运行检查 %s/%s", section.name.lower(), handler.__name__)
                results.extend(handler(*args, **kwargs))
        return results
