import math

import numpy as np
import pytest

from rpenergy.spherical_geometry import sample_uniform_sphere_batch

PROBE_SEED = 42


@pytest.fixture(scope="session")
def probes():
    """Deterministic unit-vector probe batches, keyed by (n, count)."""
    cache = {}

    def get(n: int, count: int = 100) -> np.ndarray:
        key = (n, count)
        if key not in cache:
            cache[key] = sample_uniform_sphere_batch(n, PROBE_SEED, 0, count)
        return cache[key]

    return get


def combined_allowance(*ests, k: float = 3.0) -> float:
    """k standard errors plus a 64-ulp guard sized to the values involved."""
    se = math.hypot(*[e.std_error for e in ests])
    scale = max([1.0] + [abs(e.value) for e in ests])
    return k * se + 64.0 * np.finfo(np.float64).eps * scale


_ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(num: int, ok: bool, detail: str) -> bool:
    """One verdict line per acceptance criterion, echoed immediately and
    replayed in the terminal summary (the summary survives output capture)."""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    _ACCEPTANCE_LINES[num] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(_ACCEPTANCE_LINES[num])
