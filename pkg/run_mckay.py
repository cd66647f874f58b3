#!/usr/bin/env python
"""
McKay对应验证运行脚本

对指定的ADE类型验证McKay对应、对偶McKay对应与行列式公式，
报告写到标准输出，退出码 0 表示全部通过

使用方法：
python run_mckay.py --type E:8 [--report all] [--format json]
python run_mckay.py --all [--jobs 4] [--debug]
"""

import sys
from pathlib import Path

# 添加项目根目录到路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from mckay_dual.cli import run

if __name__ == "__main__":
    sys.exit(run())
