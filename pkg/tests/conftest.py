import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rabibloch import WaveState
from rabibloch.scenarios import preset, run_scenario

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: (int(s.split()[2].rstrip(":").split("/")[0]), s)):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_state(rng, n, scale=1.0):
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    return WaveState(scale * a, scale * b)


_RUNS = {}


@pytest.fixture(scope="session")
def preset_run():
    """Run a preset once per session (no files written) and hand back the manifest."""
    def get(pid):
        if pid not in _RUNS:
            _RUNS[pid] = run_scenario(preset(pid), write=False)
        return _RUNS[pid]
    return get
