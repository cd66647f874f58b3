"""
验证配置模块

所有容差、随机种子和搜索上限集中在一个数据类中，
可以通过环境变量（.env文件）或命令行参数覆盖
"""

import os
from dataclasses import dataclass, asdict, replace
from typing import Any, Dict

from dotenv import load_dotenv


@dataclass(frozen=True)
class VerificationConfig:
    """McKay对应验证配置"""
    # 容差
    construction_tolerance: float = 1e-9   # 特征标表构造、正交关系
    integrality_tolerance: float = 1e-6    # 张量积重数取整
    phase_tolerance: float = 1e-8          # 单位模长、相位比较
    probe_tolerance: float = 1e-6          # 中心函数变换的有限阶探测

    # 搜索与迭代上限
    neumann_terms: int = 400
    max_probe_power: int = 10000
    closure_cap: int = 1000
    associativity_samples: int = 100000

    # 其他
    seed: int = 20240601
    jobs: int = 1
    debug: bool = False

    def __post_init__(self):
        for name in ("construction_tolerance", "integrality_tolerance",
                     "phase_tolerance", "probe_tolerance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} 必须为正数，当前为 {getattr(self, name)}")
        for name in ("neumann_terms", "max_probe_power", "closure_cap", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} 必须至少为1，当前为 {getattr(self, name)}")

    @classmethod
    def from_env(cls) -> "VerificationConfig":
        """
        从环境变量创建配置

        支持的变量: MCKAY_PHASE_TOLERANCE, MCKAY_MAX_PROBE_POWER,
        MCKAY_SEED, MCKAY_JOBS, MCKAY_DEBUG

        返回:
            VerificationConfig对象
        """
        load_dotenv()

        overrides: Dict[str, Any] = {}
        parsers = {
            "MCKAY_PHASE_TOLERANCE": ("phase_tolerance", float),
            "MCKAY_MAX_PROBE_POWER": ("max_probe_power", int),
            "MCKAY_SEED": ("seed", int),
            "MCKAY_JOBS": ("jobs", int),
        }
        for env_name, (field_name, parse) in parsers.items():
            raw = os.environ.get(env_name)
            if raw is None or raw == "":
                continue
            try:
                overrides[field_name] = parse(raw)
            except ValueError:
                raise ValueError(f"环境变量 {env_name} 的值无法解析: {raw!r}")

        debug = os.environ.get("MCKAY_DEBUG", "")
        if debug:
            overrides["debug"] = debug.lower() in ("1", "true", "yes", "on")

        return cls(**overrides)

    def with_overrides(self, **kwargs: Any) -> "VerificationConfig":
        """返回覆盖了部分字段的新配置，值为None的字段保持不变"""
        changes = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **changes)

    def tolerances(self) -> Dict[str, float]:
        """报告中回显的有效容差"""
        return {
            "construction": self.construction_tolerance,
            "integrality": self.integrality_tolerance,
            "phase": self.phase_tolerance,
            "probe": self.probe_tolerance,
        }

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
