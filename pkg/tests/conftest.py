from fractions import Fraction as F

import pytest

from lagsob import SobolevSpec

# the four specs named in the exit criteria
SPECS = {
    "single": SobolevSpec.build(0, [(0, 0, 1)]),
    "two_mass": SobolevSpec.build(1, [(0, 0, 1), (2, 1, F(1, 3))]),
    "coincident": SobolevSpec.build(F(1, 2), [(0, 0, 1), (0, 1, 1)]),
    "second_order": SobolevSpec.build(2, [(1, 2, 5)]),
}

# mu = -1 / K_0(0, 0) makes I + D K_0 singular
SINGULAR = SobolevSpec.build(0, [(0, 0, -1)])

ACCEPTANCE: dict[str, list[bool]] = {}


def record(criterion: str, ok: bool) -> None:
    ACCEPTANCE.setdefault(criterion, []).append(bool(ok))


@pytest.fixture(params=sorted(SPECS), ids=sorted(SPECS))
def spec(request):
    return SPECS[request.param]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        results = ACCEPTANCE[name]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(
            f"{status}  {name}  ({sum(results)}/{len(results)} cases)")
