"""Shared pytest plumbing: the acceptance suite records one result per
criterion part, and a summary line per criterion is printed at the end."""

import pytest

# criterion -> [(part, ok, seconds, note)]
CRITERIA: dict[int, list[tuple[str, bool, float, str]]] = {}

# wall-clock allowance per criterion, seconds
TIME_BUDGET = {1: 300, 2: 300, 3: 600, 4: 1200, 5: 1800, 6: 2700, 7: 1200, 8: 1800, 9: 1800,
               10: 900, 11: 600}


@pytest.fixture
def record():
    def _record(criterion: int, part: str, ok: bool, seconds: float, note: str = ""):
        CRITERIA.setdefault(criterion, []).append((part, ok, seconds, note))
    return _record


def criterion_status(n: int) -> tuple[bool, float, list[str]]:
    parts = CRITERIA.get(n, [])
    total = sum(p[2] for p in parts)
    problems = [f"{part}: {note or 'failed'}" for part, ok, _, note in parts if not ok]
    if total > TIME_BUDGET[n]:
        problems.append(f"time {total:.0f}s exceeds budget {TIME_BUDGET[n]}s")
    return not problems, total, problems


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, total, problems = criterion_status(n)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({total:.1f}s)")
        for p in problems:
            tr.write_line(f"    {p}")
