from pathlib import Path

import pytest

CORPUS = Path(__file__).resolve().parents[1] / "src" / "taufin" / "corpus"

_ACCEPTANCE: list[str] = []


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion; printed at the end of the run."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
