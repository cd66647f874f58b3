"""
McKay对应验证主入口

python -m mckay_dual --type E:8 --report all
"""

import sys

from mckay_dual.cli import run

if __name__ == "__main__":
    sys.exit(run())
