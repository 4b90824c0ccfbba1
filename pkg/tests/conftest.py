import pytest
from hypothesis import settings

# fixed example generation by default; pytest --hypothesis-seed=N overrides
settings.register_profile("fixed", derandomize=True)
settings.load_profile("fixed")

ACCEPTANCE_LINES: list[tuple[str, str, bool]] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance check, then assert it."""

    def record(cid: str, text: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append((cid, text + (f" [{detail}]" if detail and not ok else ""), bool(ok)))
        print(f"{'PASS' if ok else 'FAIL'} {cid}: {text}")
        assert ok, f"criterion {cid} failed: {text} {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text, ok in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {cid}: {text}")
    failed = sum(not ok for _, _, ok in ACCEPTANCE_LINES)
    terminalreporter.write_line(f"{len(ACCEPTANCE_LINES) - failed}/{len(ACCEPTANCE_LINES)} acceptance checks passed")
