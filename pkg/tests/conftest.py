import pytest
from hypothesis import HealthCheck, settings

from bilevel_sp import BilevelInstance

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict = {}


def e1_instance() -> BilevelInstance:
    """s=0, v=1, t=2; e1={s,v} leader (0,0), e2={s,t} follower c=5 d=0, e3={v,t} follower c=0 d=1."""
    return BilevelInstance.from_edges(3, [(0, 1, "L", 0, 0), (0, 2, "F", 5, 0), (1, 2, "F", 0, 1)], 0, 2)


@pytest.fixture
def e1():
    return e1_instance()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
