import os

import pytest

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class _Criterion:
    def __init__(self, lines, key, title):
        self.lines, self.key, self.title = lines, key, title
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.lines.append(f"PASS {self.key} {self.title}: {self.detail}")
        else:
            msg = str(exc).splitlines()[0] if str(exc) else exc_type.__name__
            self.lines.append(f"FAIL {self.key} {self.title}: {msg}")
        return False


_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line for the terminal summary."""
    return lambda key, title: _Criterion(_CRITERIA, key, title)


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1][1:])):
            terminalreporter.write_line(line)
