import pytest
from hypothesis import HealthCheck, settings

from robin_gap import gap_model
from robin_gap.config import RunConfig

settings.register_profile(
    "robin", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("robin")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def cfg():
    return RunConfig().validate()


@pytest.fixture(scope="session")
def model():
    return gap_model.build_model(2000)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
