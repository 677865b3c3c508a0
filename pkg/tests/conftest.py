import re

import pytest

ACCEPTANCE_LINES: list[str] = []
_LINE = re.compile(r"^(PASS|FAIL) (C\d+) (?!\(info\))")


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance check; echoed in the terminal summary."""

    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def rollup(lines: list[str]) -> list[str]:
    """One line per criterion: FAIL if any of its checks failed."""
    seen: dict[str, list[bool]] = {}
    for line in lines:
        m = _LINE.match(line)
        if m:
            seen.setdefault(m.group(2), []).append(m.group(1) == "PASS")
    out = []
    for key in sorted(seen, key=lambda k: int(k[1:])):
        oks = seen[key]
        status = "PASS" if all(oks) else "FAIL"
        out.append(f"{status} criterion {key[1:]}: {sum(oks)}/{len(oks)} checks passed")
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checks")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
        terminalreporter.section("acceptance criteria")
        for line in rollup(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
