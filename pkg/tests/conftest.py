import os

import pytest
from hypothesis import HealthCheck, settings

from suppvar.experiment import builtin_algebra
from suppvar.linalg import FieldSpec

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("SUPPVAR_HYPOTHESIS_EXAMPLES", "25")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def F5():
    return FieldSpec(5)


@pytest.fixture(scope="session")
def h4():
    return builtin_algebra("h4")


@pytest.fixture(scope="session")
def sign2():
    return builtin_algebra("sign:2")


@pytest.fixture(scope="session")
def c4():
    # Λ(1) ⋊ C_4 over F_5, generator acting by 2 so g^2 acts by -1
    return builtin_algebra("cyclic:1:4:2")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion; returns ok."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(label, ok, detail=""):
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        lines.append(line)
        return ok

    return record


def _criterion_key(line):
    label = line.split(":")[0].split()[1]
    digits = label.rstrip("abcdefghijklmnopqrstuvwxyz")
    return int(digits), label[len(digits):]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=_criterion_key):
            terminalreporter.write_line(line)
