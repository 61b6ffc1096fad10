import sys
import pathlib

import pytest

from adianwp.presentation import make_presentation, parse_presentation, parse_word

PRES_DIR = pathlib.Path(__file__).resolve().parent.parent / "presentations"


def load(name):
    path = PRES_DIR / name
    return parse_presentation(path.read_text(), str(path))


def w(p, text):
    return parse_word(p, text)


def bs(m, n):
    return make_presentation("ab", [("a" + "b" * m, "b" * n + "a")])


@pytest.fixture
def bs21():
    return load("bs21.pres")


@pytest.fixture
def aba_b():
    return load("aba_b.pres")


@pytest.fixture
def forest13():
    return load("forest13.pres")


@pytest.fixture
def cycle11():
    return load("cycle11.pres")


@pytest.fixture
def free2():
    return make_presentation("ab", [])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
