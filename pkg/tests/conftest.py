import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from hashvss import benaloh, protocol
from hashvss.field_poly import FieldParams

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def toy5():
    return benaloh.keygen_toy(5)


@pytest.fixture(scope="session")
def toy17():
    return benaloh.keygen_toy(17)


@pytest.fixture
def toy_params(toy17):
    pk, sk = toy17
    return protocol.DealParams(2, 4, FieldParams(17), pk), sk


@pytest.fixture
def dealt(toy_params):
    params, sk = toy_params
    bm, private, state = protocol.deal(13, params, random.Random(5), sk)
    return bm, private, state


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion with a one-line label")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        _ACCEPTANCE.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {label}")
