import pytest

from primesine import _pykernels

try:
    from primesine import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = [_pykernels] + ([_kernels] if _kernels is not None else [])

# filled by test_acceptance; printed once at the end of the session
ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[2:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
