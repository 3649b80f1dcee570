import sys
from fractions import Fraction

import pytest

from mckatz.linalg import invariant_form
from mckatz.pipeline import INVERSE_SCRIPT, L4_EXP0, L4_EXPINF
from mckatz.tuples import (
    apply_script,
    levelt_hypergeometric,
    middle_convolution,
    mt_twist,
    wedge_square_tuple,
)


@pytest.fixture(scope="session")
def levelt_l4():
    return levelt_hypergeometric(L4_EXP0, L4_EXPINF)


@pytest.fixture(scope="session")
def wedge(levelt_l4):
    return wedge_square_tuple(levelt_l4)


@pytest.fixture(scope="session")
def rank4(wedge):
    return middle_convolution(wedge, Fraction(1, 2))


@pytest.fixture(scope="session")
def twisted(rank4):
    return mt_twist(rank4, [Fraction(1, 2), 0, Fraction(1, 2)])


@pytest.fixture(scope="session")
def final_triple(twisted):
    return apply_script(twisted, INVERSE_SCRIPT)


@pytest.fixture(scope="session")
def omega(final_triple):
    forms = invariant_form(list(final_triple.matrices[:2]), "bilinear")
    assert len(forms) == 1
    return forms[0]


@pytest.fixture(scope="session")
def omega4(twisted):
    forms = invariant_form(list(twisted.matrices[:2]), "bilinear")
    assert len(forms) == 1
    return forms[0]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
