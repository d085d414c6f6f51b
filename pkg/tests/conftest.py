from __future__ import annotations

import pytest

from hopfoid.registry import builtin_config
from hopfoid.suites import build_instance


def _instance(name, window=None):
    cfg = builtin_config(name)
    if window:
        cfg.a_cap, cfg.t_cap = window
    return build_instance(cfg)


@pytest.fixture(scope="session")
def s3i():
    return _instance("s3-adjoint")


@pytest.fixture(scope="session")
def c2i():
    return _instance("c2-adjoint")


@pytest.fixture(scope="session")
def abeli():
    return _instance("abelian-2d", (2, 2))


@pytest.fixture(scope="session")
def kappai():
    return _instance("kappa-2d", (2, 2))


@pytest.fixture(scope="session")
def heisi():
    return _instance("heisenberg-3d")


ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
