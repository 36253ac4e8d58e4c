import sys

import pytest
from hypothesis import strategies as st

from cotor_spin.f2poly import Monomial, Polynomial

N = 16


@st.composite
def monomials(draw, n=N, max_vars=3, max_exp=3):
    idx = draw(st.lists(st.integers(2, n), max_size=max_vars, unique=True))
    return Monomial({k: draw(st.integers(1, max_exp)) for k in idx})


@st.composite
def polys(draw, n=N, max_terms=4):
    return Polynomial(draw(st.lists(monomials(n), max_size=max_terms)), n)


@pytest.fixture(scope="session")
def golden_dir():
    from pathlib import Path
    return Path(__file__).parent / "golden"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
