from collections import defaultdict

import numpy as np
import pytest

_ACCEPTANCE = defaultdict(list)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance():
    """Record ``(criterion, ok, detail)``; summarized once per criterion at the end."""

    def record(criterion: int, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE[criterion].append((bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_ACCEPTANCE):
        rows = _ACCEPTANCE[criterion]
        failed = [detail for ok, detail in rows if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"[{criterion:>2}] {status}  ({len(rows) - len(failed)}/{len(rows)} cases)"
        if failed:
            line += "  failing: " + "; ".join(failed[:4])
        terminalreporter.write_line(line)
