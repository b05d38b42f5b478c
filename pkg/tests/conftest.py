import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _oracle_precision():
    with mpmath.workdps(200):
        yield


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Append ``(label, passed, seconds, detail)`` lines shown after the run."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, seconds, detail in lines:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({seconds:.2f} s)  {detail}")
