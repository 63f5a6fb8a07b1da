import pytest

from swx.manifest import catalog_names, load_catalog

CATALOG = catalog_names()

_acceptance_lines: list[str] = []


@pytest.fixture(params=CATALOG)
def catalog_entry(request):
    return load_catalog(request.param)


@pytest.fixture
def p2():
    return load_catalog("P2").model


@pytest.fixture
def t2s2():
    return load_catalog("T2xS2").model


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for an acceptance criterion."""

    def record(label: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else "")
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
