#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from loguru import logger

from uqsl21chain.cli import main

if __name__ == "__main__":
    logger.info("uqchain 启动")
    sys.exit(main())
