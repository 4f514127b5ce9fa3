from fractions import Fraction as F
from pathlib import Path

import pytest

from parcones.parabolic import ParabolicBundleSpec

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

_ACCEPTANCE = []


def record_criterion(number, title, passed, detail=""):
    _ACCEPTANCE.append((number, title, passed, detail))
    print(f"[{'PASS' if passed else 'FAIL'}] AC{number} {title} {detail}".rstrip())


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] AC{number} {title} {detail}".rstrip())


def example_a():
    return ParabolicBundleSpec.from_split([(0, {"x": F(1, 2)}), (0, {"x": F(1, 2)})], name="A")


def example_b():
    return ParabolicBundleSpec.from_split([(0, {"x": F(1, 2)}), (1, {})], name="B")


def example_c():
    return ParabolicBundleSpec.from_split([(0, {}), (0, {}), (1, {"x": F(1, 2)})], name="C")


@pytest.fixture
def spec_a():
    return example_a()


@pytest.fixture
def spec_b():
    return example_b()


@pytest.fixture
def spec_c():
    return example_c()
