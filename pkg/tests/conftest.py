import time

import pytest

_ACCEPTANCE = []


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line for the summary."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self._t0
        over = self.budget is not None and self.elapsed > self.budget
        ok = exc_type is None and not over
        why = self.detail
        if exc_type is not None:
            why = f"{exc_type.__name__}: {exc}".splitlines()[0][:160]
        elif over:
            why = f"runtime {self.elapsed:.2f}s exceeds {self.budget}s budget"
        budget = f" (budget {self.budget:g}s)" if self.budget is not None else ""
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title}"
                           f" [{self.elapsed:.2f}s{budget}] {why}".rstrip())
        print(_ACCEPTANCE[-1])
        if over:
            pytest.fail(why)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
