import pytest
from hypothesis import HealthCheck, settings

from rankdec.ffield import FieldTower
from rankdec.gabidulin import GabidulinCode

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def f2_8():
    return FieldTower(2, 8)


@pytest.fixture(scope="session")
def f2_24():
    return FieldTower(2, 24)


@pytest.fixture(scope="session")
def row1_code(f2_24):
    return GabidulinCode.standard(f2_24, 24, 16)


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    def record(name: str, passed: bool, detail: str):
        ACCEPTANCE[name] = (bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{name}: {'PASS' if passed else 'FAIL'}  {detail}")
