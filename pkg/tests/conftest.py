from pathlib import Path

import pytest
import sympy as sp

from fada import make_context

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
beta, x1, x2 = sp.symbols("beta x1 x2")


def same(ring, s, expr) -> bool:
    """Exact comparison of a hyperbolic scalar with a sympy oracle expression."""
    return sp.simplify(ring.to_expr(s) - sp.sympify(expr)) == 0


@pytest.fixture(scope="session")
def a1():
    return make_context("A1", ball=4)


@pytest.fixture(scope="session")
def a2():
    return make_context("A2", ball=3)


@pytest.fixture(scope="session")
def a1_beta1():
    return make_context("A1", beta=1, ball=4)


@pytest.fixture(scope="session")
def a1_beta0():
    return make_context("A1", beta=0, ball=4)


@pytest.fixture(scope="session")
def a1_table():
    return make_context("A1", fgl=f"table:{DATA / 'beta1.fgl'}", trunc=8, ball=4)


@pytest.fixture(scope="session")
def a2_cubic():
    return make_context("A2", fgl=f"table:{DATA / 'cubic_log.fgl'}", trunc=6, ball=2)
