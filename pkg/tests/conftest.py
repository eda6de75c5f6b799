import pytest
from hypothesis import HealthCheck, settings

from gds_tqft.simplicial import parse_manifold

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def manifold():
    cache = {}

    def get(expr):
        if expr not in cache:
            cache[expr] = parse_manifold(expr)
        return cache[expr]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[3:5])):
            terminalreporter.write_line(line)
