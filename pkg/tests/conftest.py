import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fmlkit import fixture_text, load_model, parse_model  # noqa: E402
from fmlkit.solver import available_backends  # noqa: E402

MOBILE = fixture_text("mobile_phone")
INTERNET = fixture_text("internet_connection")
# same model with the Wireless lower bound lowered so every price fits
INTERNET_RELAXED = INTERNET.replace("150<= Wireless.price", "50<= Wireless.price")


@pytest.fixture
def mobile_text():
    return MOBILE


@pytest.fixture
def internet_text():
    return INTERNET


@pytest.fixture
def mobile():
    return load_model(MOBILE)


@pytest.fixture
def internet():
    return load_model(INTERNET)


@pytest.fixture
def internet_relaxed():
    return load_model(INTERNET_RELAXED)


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.fixture
def mobile_ast():
    return parse_model(MOBILE)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
