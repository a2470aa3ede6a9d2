import os
from pathlib import Path

import gpal


def pytest_report_header(config):
    return f"gpal from {Path(gpal.__file__).parent}"


expected = os.environ.get("GPAL_EXPECT_PACKAGE")
if expected and Path(gpal.__file__).parent.resolve() != Path(expected).resolve():
    raise RuntimeError(f"imported gpal from {gpal.__file__}, expected the package in {expected}")
