from pathlib import Path

import pytest

from borwein_pi.numeric import PrecisionContext
from borwein_pi.report import parse_reference

DATA = Path(__file__).parent / "data"

# 1/pi and pi to 40 places, from mpmath (independent of this package)
ONE_OVER_PI = "0.3183098861837906715377675267450287240689"
PI_40 = "3.1415926535897932384626433832795028841971"


@pytest.fixture(scope="session")
def pi_reference() -> str:
    """'3.' followed by 1100 digits, generated with mpmath."""
    return parse_reference((DATA / "pi_1100.txt").read_text())


@pytest.fixture
def ctx50():
    return PrecisionContext(50, 0)


@pytest.fixture
def ctx100():
    return PrecisionContext(100, 30)


def reciprocal_pi(digits: int):
    from borwein_pi.machin import machin_pi

    ctx = PrecisionContext(digits, 0)
    with ctx.local():
        return 1 / machin_pi(ctx)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
