from __future__ import annotations

import pytest

from bmcycles.root_data import build_root_datum

PRESETS = ("GL_2", "GL_3", "GSp_4")


@pytest.fixture
def gl2():
    return build_root_datum("GL_2")


@pytest.fixture
def gl3():
    return build_root_datum("GL_3")


@pytest.fixture
def gsp4():
    return build_root_datum("GSp_4")


@pytest.fixture(params=PRESETS)
def preset(request):
    return build_root_datum(request.param)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
