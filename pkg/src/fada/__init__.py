"""Exact computations in formal affine Demazure algebras, their Peterson
subalgebras and the duals, over the affine Weyl group of a finite root system.

Typical use::

    from fada import make_context
    ctx = make_context("A1")
    X0 = ctx.alg.demazure(0)
    ctx.alg.psi(X0)
"""
from .dual import DualFunctional, DualSpace
from .expr import ExpressionError, evaluate
from .fgl import FormalGroupLaw, beta_table
from .peterson import PetersonAlgebra, PresentationElement, TensorElement
from .scalars import HyperbolicRing, TableRing, TableScalar, make_ring
from .series import Series
from .suites import Context, SuiteConfig, run_suite
from .twisted import TwistedAlgebra, TwistedElement
from .weyl import AffineWeylElement, RootDatum, format_element, parse_element

__version__ = "0.1.0"

__all__ = [
    "AffineWeylElement", "Context", "DualFunctional", "DualSpace", "ExpressionError", "FormalGroupLaw",
    "HyperbolicRing", "PetersonAlgebra", "PresentationElement", "RootDatum", "Series", "SuiteConfig",
    "TableRing", "TableScalar", "TensorElement", "TwistedAlgebra", "TwistedElement", "beta_table",
    "evaluate", "format_element", "make_context", "make_ring", "parse_element", "run_suite",
]


def make_context(type: str = "A1", fgl: str = "beta", beta=None, trunc: int = 8, ball: int = 4,
                 seed: int = 0) -> Context:
    """Root datum, scalars and algebras for one configuration."""
    return Context(SuiteConfig(type=type, fgl=fgl, beta=None if beta is None else str(beta),
                               trunc=trunc, ball=ball, seed=seed))
