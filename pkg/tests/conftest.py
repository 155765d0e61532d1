from pathlib import Path

import pytest

from qudit_compiler import formats

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


def with_modulus(text: str, d: int) -> str:
    """Swap the modulus in a fixture header (fraction literals re-resolve)."""
    lines = text.splitlines()
    for i, line in enumerate(lines):
        toks = line.split()
        if toks and toks[0] in ("QUDITS", "SIG", "IMP", "LIN"):
            toks[1] = str(d)
            lines[i] = " ".join(toks)
            break
    return "\n".join(lines) + "\n"


@pytest.fixture
def fig1_circuit():
    def make(d=5):
        return formats.parse_circuit(with_modulus((DATA / "ccz_fig1.qct").read_text(), d))

    return make


@pytest.fixture
def ccz4():
    def make(d=5):
        return formats.parse_implementation(with_modulus((DATA / "ccz4.imp").read_text(), d))

    return make


@pytest.fixture
def ccz7():
    def make(d=5):
        return formats.parse_implementation(with_modulus((DATA / "ccz7.imp").read_text(), d))

    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
