import pytest

from lllcover import _kernels

BACKENDS = _kernels.available_backends()

_acceptance_lines = []


def record_criterion(label, passed, detail=""):
    _acceptance_lines.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())


@pytest.fixture(params=sorted(BACKENDS))
def kernels(request):
    return BACKENDS[request.param]


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
