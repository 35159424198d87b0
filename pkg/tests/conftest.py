import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (verdict, summary); filled by test_acceptance
CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        verdict, text = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {verdict}  {text}")
