"""
McKay对应验证命令行

对每个图类型构造有限群、特征标表以及两种对应，按报告章节运行检查，
把报告以文本或JSON格式写到标准输出。日志与进度条写到标准错误

使用方法：
python -m mckay_dual --type E:8 --report all --format json
python -m mckay_dual --all --jobs 4
"""

import argparse
import asyncio
import functools
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import cached_property
from typing import Callable, List, Optional, Sequence

from tqdm import tqdm

from mckay_dual.algebra.dynkin import (
    DiagramType, build_diagram, cartan, inverse_bound_check, neumann_convergence, parse_type,
)
from mckay_dual.common.config import VerificationConfig
from mckay_dual.common.errors import InvalidDiagramError, McKayError
from mckay_dual.common.reporting import CheckRegistry, CheckResult, ReportSection, VerificationReport
from mckay_dual.correspondence.dual import (
    DualLabeling, SpecialTriple, dual_labeling, find_special_triple, mumford_check,
    verify_presentation_relations, verify_dual_correspondence,
)
from mckay_dual.correspondence.fourier import (
    abelianization_check, central_transform_probe_check, cyclic_fourier_check, det_formula_check,
)
from mckay_dual.correspondence.mckay import McKayResult, mckay_correspondence, mckay_isomorphism_check
from mckay_dual.groups.characters import CharacterTable, character_orthogonality_check, character_table
from mckay_dual.groups.oracle import oracle_equivalence
from mckay_dual.groups.su2group import (
    FiniteSubgroup, center_quotient_check, generate, group_axioms_check, group_order_check,
    unitarity_check,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

registry = CheckRegistry()

# 检查内部抛出后记为失败项的异常；numpy 的 LinAlgError 是 ValueError 的子类
CHECK_ERRORS = (McKayError, ArithmeticError, ValueError)


class VerificationPipeline:
    """
    单个图类型的验证流水线

    群、特征标表和各对应按需构造并缓存，供各章节的检查共享
    """

    def __init__(self, diagram_type: DiagramType, config: VerificationConfig):
        self.diagram_type = diagram_type
        self.config = config

    @cached_property
    def group(self) -> FiniteSubgroup:
        return generate(self.diagram_type, closure_cap=self.config.closure_cap, debug=self.config.debug)

    @cached_property
    def table(self) -> CharacterTable:
        return character_table(self.group, self.config.construction_tolerance, self.config.seed)

    @cached_property
    def mckay(self) -> McKayResult:
        return mckay_correspondence(self.group, self.table, self.config.integrality_tolerance)

    @cached_property
    def triple(self) -> SpecialTriple:
        return find_special_triple(self.group, self.diagram_type)

    @cached_property
    def labeling(self) -> DualLabeling:
        return dual_labeling(self.group, self.diagram_type, self.triple)


def guarded(*names: str) -> Callable:
    """检查函数抛出 CHECK_ERRORS 中的异常时，把它负责的每一项记为失败"""
    def decorator(func: Callable[[VerificationPipeline], List[CheckResult]]):
        @functools.wraps(func)
        def wrapper(pipeline: VerificationPipeline) -> List[CheckResult]:
            try:
                return func(pipeline)
            except CHECK_ERRORS as e:
                logger.warning("%s: %s: %s", pipeline.diagram_type.label, type(e).__name__, e)
                witness = {
                    "error": str(e),
                    "kind": type(e).__name__,
                    "check": getattr(e, "check", ""),
                    "detail": getattr(e, "witness", None),
                }
                return [CheckResult(name, False, witness=witness) for name in names]
        return wrapper
    return decorator


# ========== 各章节的检查 ==========

@registry.register(ReportSection.GROUPS)
@guarded("group_order", "group_axioms", "unitarity", "center_quotient", "oracle_equivalence")
def group_checks(pipeline: VerificationPipeline) -> List[CheckResult]:
    group = pipeline.group
    config = pipeline.config
    return [
        group_order_check(group),
        group_axioms_check(group, samples=config.associativity_samples, seed=config.seed),
        unitarity_check(group),
        center_quotient_check(group),
        oracle_equivalence(group),
    ]


@registry.register(ReportSection.GROUPS)
@guarded("cartan_inverse_bound", "neumann_series")
def cartan_checks(pipeline: VerificationPipeline) -> List[CheckResult]:
    diagram_type = pipeline.diagram_type
    bound = inverse_bound_check(diagram_type)
    min_slack = bound.min_slack
    bound_result = CheckResult(
        name="cartan_inverse_bound",
        passed=bound.passed,
        deviation=float(max(0, -min_slack)) if min_slack is not None else 0.0,
        witness={
            "min_slack": str(min_slack) if min_slack is not None else None,
            "pair": list(bound.min_slack_pair) if bound.min_slack_pair else None,
            "sharp_pairs": [list(p) for p in bound.sharp_pairs],
            "diagonal_min_slack": str(bound.diagonal_min_slack),
            "connection_index": cartan(diagram_type).connection_index,
        },
    )

    neumann = neumann_convergence(diagram_type, pipeline.config.neumann_terms,
                                  pipeline.config.phase_tolerance)
    neumann_result = CheckResult(
        name="neumann_series",
        passed=neumann.passed,
        deviation=neumann.deviation,
        witness={
            "terms": neumann.terms,
            "terms_to_tolerance": neumann.terms_to_tolerance,
            "spectral_radius": round(neumann.spectral_radius, 12),
            "within_tolerance_at_terms": neumann.deviation <= pipeline.config.phase_tolerance,
        },
    )
    return [bound_result, neumann_result]


@registry.register(ReportSection.CHARACTERS)
@guarded("character_orthogonality")
def character_checks(pipeline: VerificationPipeline) -> List[CheckResult]:
    return [character_orthogonality_check(pipeline.table, pipeline.group,
                                          pipeline.config.construction_tolerance)]


@registry.register(ReportSection.MCKAY)
@guarded("mckay_isomorphism")
def mckay_checks(pipeline: VerificationPipeline) -> List[CheckResult]:
    return [mckay_isomorphism_check(pipeline.mckay, pipeline.diagram_type)]


@registry.register(ReportSection.DUAL)
@guarded("dual_bijection", "dual_ends_special", "dual_center", "dual_branch_progression",
         "dual_branch_commuting", "dual_edge_predicate", "mumford_representatives",
         "presentation_relations")
def dual_checks(pipeline: VerificationPipeline) -> List[CheckResult]:
    group, triple, labeling = pipeline.group, pipeline.triple, pipeline.labeling
    results = verify_dual_correspondence(group, pipeline.diagram_type, labeling, triple)
    results.append(mumford_check(group, build_diagram(pipeline.diagram_type), labeling,
                                 debug=pipeline.config.debug))
    results.append(verify_presentation_relations(group, triple, pipeline.diagram_type))
    return results


@registry.register(ReportSection.FOURIER)
@guarded("det_formula", "abelianization_exponent", "cyclic_fourier", "central_transform_probe")
def fourier_checks(pipeline: VerificationPipeline) -> List[CheckResult]:
    group, labeling, mckay = pipeline.group, pipeline.labeling, pipeline.mckay
    config = pipeline.config
    return [
        det_formula_check(group, labeling, mckay, config.phase_tolerance),
        abelianization_check(group, pipeline.diagram_type),
        cyclic_fourier_check(group, labeling, mckay, config.phase_tolerance),
        central_transform_probe_check(group, labeling, mckay, config.max_probe_power,
                                      config.probe_tolerance),
    ]


# ========== 报告 ==========

def verify_type(diagram_type: DiagramType, sections: Sequence[ReportSection],
                config: VerificationConfig) -> VerificationReport:
    """
    对一个图类型运行选中章节的全部检查

    参数:
        diagram_type: 图类型
        sections: 报告章节
        config: 验证配置

    返回:
        VerificationReport对象
    """
    start = time.perf_counter()
    pipeline = VerificationPipeline(diagram_type, config)
    report = VerificationReport(type=diagram_type.spec, group_order=0, class_count=0,
                                tolerances=config.tolerances())

    with report.stage("build"):
        try:
            report.group_order = pipeline.group.order
            report.class_count = pipeline.group.class_count
        except CHECK_ERRORS as e:
            logger.warning("%s: 群构造失败: %s: %s", diagram_type.label, type(e).__name__, e)

    for section in ReportSection:
        if section not in sections:
            continue
        with report.stage(section.name.lower()):
            for check in registry.run([section], pipeline):
                report.add(check)

    report.elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
    logger.info("%s: %s (%.1f ms)", diagram_type.label, "PASS" if report.passed else "FAIL",
                report.elapsed_ms)
    return report


def _verify_worker(diagram_type: DiagramType, sections: List[ReportSection],
                   config: VerificationConfig) -> VerificationReport:
    setup_logging(config.debug)
    return verify_type(diagram_type, sections, config)


async def verify_all(types: Sequence[DiagramType], sections: List[ReportSection],
                     config: VerificationConfig, progress: bool = False) -> List[VerificationReport]:
    """按输入顺序返回各类型的报告；jobs > 1 时在进程池中并行"""
    bar = tqdm(total=len(types), desc="verify", unit="type", file=sys.stderr, disable=not progress)
    try:
        if config.jobs <= 1:
            reports = []
            for diagram_type in types:
                bar.set_postfix_str(diagram_type.label)
                reports.append(verify_type(diagram_type, sections, config))
                bar.update(1)
            return reports

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            futures = [loop.run_in_executor(executor, _verify_worker, t, sections, config) for t in types]
            for future in futures:
                future.add_done_callback(lambda _: bar.update(1))
            return list(await asyncio.gather(*futures))
    finally:
        bar.close()


def render(reports: List[VerificationReport], output_format: str) -> str:
    """
    序列化报告

    单个类型输出报告对象本身；多个类型输出 {"reports": [...], "passed": bool}
    """
    if output_format == "json":
        if len(reports) == 1:
            return reports[0].to_json()
        return json.dumps({"reports": [r.to_dict() for r in reports],
                           "passed": all(r.passed for r in reports)}, indent=2)

    blocks = [r.to_text() for r in reports]
    failed = [r.type for r in reports if not r.passed]
    summary = f"{len(reports) - len(failed)}/{len(reports)} types passed"
    if failed:
        summary += f"; failed: {', '.join(failed)}"
    return "\n\n".join(blocks + [summary])


# ========== 命令行 ==========

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mckay_dual",
        description="McKay对应与对偶McKay对应的数值与精确验证",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例：
  python -m mckay_dual --type E:8
  python -m mckay_dual --type D:7 --report dual
  python -m mckay_dual --type A:3 --type E:6 --format json
  python -m mckay_dual --all --jobs 4

类型格式：
  A:<n> (n >= 1), D:<n> (n >= 4), E:6|7|8
        """,
    )
    parser.add_argument(
        "--type",
        dest="types",
        action="append",
        default=[],
        metavar="SPEC",
        help="要验证的图类型，可重复指定",
    )
    parser.add_argument(
        "--all",
        action="store_true",
        help="验证 A1..A12、D4..D12、E6、E7、E8",
    )
    parser.add_argument(
        "--report",
        default="all",
        choices=["groups", "characters", "mckay", "dual", "fourier", "all"],
        help="报告章节 (默认all)",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        default="text",
        choices=["text", "json"],
        help="输出格式 (默认text)",
    )
    parser.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="相位与单位模长比较的容差 (默认1e-8)",
    )
    parser.add_argument(
        "--max-probe-power",
        type=int,
        default=None,
        help="中心函数变换有限阶探测的最高次幂 (默认10000)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="并行验证的进程数 (默认1)",
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="启用调试日志",
    )
    return parser


def setup_logging(debug: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="[%(asctime)s][%(name)s] %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def resolve_types(specs: Sequence[str], include_all: bool) -> List[DiagramType]:
    """解析类型描述串，--all 展开后去重并保持顺序"""
    types = [parse_type(spec) for spec in specs]
    if include_all:
        types += DiagramType.sweep()
    return list(dict.fromkeys(types))


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行主函数

    返回:
        退出码：0 全部通过，1 有检查失败，2 用法错误
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if not args.types and not args.all:
        parser.print_usage(sys.stderr)
        print("mckay_dual: error: 需要 --type 或 --all", file=sys.stderr)
        return EXIT_USAGE

    try:
        types = resolve_types(args.types, args.all)
        config = VerificationConfig.from_env().with_overrides(
            phase_tolerance=args.tolerance,
            max_probe_power=args.max_probe_power,
            jobs=args.jobs,
            debug=True if args.debug else None,
        )
    except (InvalidDiagramError, ValueError) as e:
        print(f"mckay_dual: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(config.debug)
    sections = ReportSection.parse(args.report)
    progress = len(types) > 1 and args.output_format == "text" and sys.stderr.isatty()

    reports = await verify_all(types, sections, config, progress=progress)
    print(render(reports, args.output_format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def run(argv: Optional[Sequence[str]] = None) -> int:
    """同步入口"""
    try:
        return asyncio.run(main(argv))
    except KeyboardInterrupt:
        print("\n验证已中断", file=sys.stderr)
        return EXIT_FAILURE
