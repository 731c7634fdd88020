"""Small expression language for elements of the twisted group algebra.

Expressions are parsed with :mod:`ast` and evaluated over a whitelist of
names, so nothing outside the grammar below can run::

    X0..Xn  Y0..Yn          Demazure / push-pull generators
    Z([a1,..,an])           translation element Z_alpha
    eta(t[l1,..]*s1s0)      basis element (eta() is the identity)
    frakX([..]) frakY([..]) pr of the word products
    X([..]) Y([..])         word products
    psi(z) pr(z) diamond(z, xi) sigma Ypi
    s t                     frak_Y_0 and frak_Y_10 (affine A1 only)
    x1..xn x(k) x([..]) x[..] mu kappa kappa([..]) beta O(k)
    + - * / ^ ** and rational literals

``^`` is exponentiation.  ``a / b`` requires ``b`` to be a scalar and
multiplies ``a`` on the left by ``1/b``.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction

from .series import Series
from .twisted import TwistedAlgebra, TwistedElement
from .weyl import parse_element

__all__ = ["ExpressionError", "evaluate", "parse"]


class ExpressionError(ValueError):
    """Raised for anything outside the grammar or a failed evaluation."""


_ETA_RE = re.compile(r"eta\(([^()]*)\)")
_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse(text: str) -> ast.Expression:
    text = _ETA_RE.sub(lambda m: f'eta("{m.group(1).strip()}")', text)
    text = text.replace("^", "**")
    try:
        return ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"syntax error: {exc.msg}") from None


def evaluate(text: str, alg: TwistedAlgebra, peterson=None):
    """Evaluate ``text``; the result is a scalar or a :class:`TwistedElement`."""
    return _Evaluator(alg, peterson).run(parse(text))


class _Evaluator:
    def __init__(self, alg: TwistedAlgebra, peterson=None):
        self.alg = alg
        self.ring = alg.ring
        self.datum = alg.datum
        self.peterson = peterson

    def run(self, tree: ast.Expression):
        try:
            return self.node(tree.body)
        except ExpressionError:
            raise
        except (ValueError, ZeroDivisionError, TypeError, KeyError, IndexError, RuntimeError) as exc:
            raise ExpressionError(f"evaluation failed: {exc}") from None

    # scalars and vectors ---------------------------------------------------
    def scalar(self, v):
        if isinstance(v, (int, Fraction)):
            return self.ring.coerce(Fraction(v))
        return v

    def vector(self, node) -> tuple[int, ...]:
        if isinstance(node, (ast.List, ast.Tuple)):
            vals = [self.node(e) for e in node.elts]
        else:
            vals = [self.node(node)]
        if not all(isinstance(v, int) for v in vals):
            raise ExpressionError("expected integer coordinates")
        if len(vals) != self.datum.rank:
            if len(vals) == 1 and self.datum.rank == 1:
                return (vals[0],)
            raise ExpressionError(f"expected {self.datum.rank} coordinates")
        return tuple(vals)

    def word(self, node) -> list[int]:
        if not isinstance(node, (ast.List, ast.Tuple)):
            raise ExpressionError("expected a word such as [1,0]")
        out = [self.node(e) for e in node.elts]
        if not all(isinstance(i, int) and 0 <= i <= self.datum.rank for i in out):
            raise ExpressionError("word letters must lie in 0..rank")
        return out

    # nodes --------------------------------------------------------------------
    def node(self, n):
        if isinstance(n, ast.Constant):
            if isinstance(n.value, bool) or not isinstance(n.value, int):
                raise ExpressionError(f"unsupported literal {n.value!r}")
            return n.value
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, (ast.USub, ast.UAdd)):
            v = self.node(n.operand)
            return -v if isinstance(n.op, ast.USub) else v
        if isinstance(n, ast.BinOp) and isinstance(n.op, _BINOPS):
            return self.binop(n)
        if isinstance(n, ast.Name):
            return self.name(n.id)
        if isinstance(n, ast.Call) and isinstance(n.func, ast.Name) and not n.keywords:
            return self.call(n.func.id, n.args)
        if isinstance(n, ast.Subscript) and isinstance(n.value, ast.Name) and n.value.id == "x":
            return self.ring.x_of(self.vector(n.slice))
        raise ExpressionError(f"unsupported syntax {ast.unparse(n)!r} ({type(n).__name__.lower()})")

    def binop(self, n: ast.BinOp):
        a, b = self.node(n.left), self.node(n.right)
        op = n.op
        if isinstance(op, ast.Pow):
            if not isinstance(b, int):
                raise ExpressionError("exponents must be integers")
            if isinstance(a, int):
                return Fraction(a) ** b
            if b < 0:
                if isinstance(a, TwistedElement):
                    raise ExpressionError("negative powers need a scalar base")
                return (self.ring.one / a) ** (-b)
            return a ** b
        if isinstance(op, ast.Div):
            if isinstance(b, TwistedElement):
                raise ExpressionError("division by an algebra element")
            if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
                if b == 0:
                    raise ExpressionError("division by zero")
                return Fraction(a) / Fraction(b)
            inv = self.ring.one / self.scalar(b)
            if isinstance(a, TwistedElement):
                return inv * a
            return self.scalar(a) * inv
        if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
            return {ast.Add: a + b, ast.Sub: a - b, ast.Mult: a * b}[type(op)]
        if isinstance(a, TwistedElement) or isinstance(b, TwistedElement):
            if isinstance(op, ast.Mult) and not isinstance(a, TwistedElement):
                return self.scalar(a) * b
            a = a if isinstance(a, TwistedElement) else self.alg.scalar(self.scalar(a))
            b = b if isinstance(b, TwistedElement) else self.alg.scalar(self.scalar(b))
        else:
            a, b = self.scalar(a), self.scalar(b)
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        return a * b

    def name(self, ident: str):
        d, ring, alg = self.datum, self.ring, self.alg
        if ident == "mu":
            return ring.mu()
        if ident == "kappa":
            return ring.kappa(d.simple_roots[0])
        if ident == "beta":
            if not hasattr(ring, "beta"):
                raise ExpressionError("beta is only available in the hyperbolic backend")
            return ring.beta
        if ident == "sigma":
            return alg.sigma_elt()
        if ident == "Ypi":
            return alg.y_pi()
        if ident in ("s", "t"):
            if d.rank != 1:
                raise ExpressionError(f"{ident} is only defined for affine type A1")
            return alg.pr(alg.y_word([0] if ident == "s" else [1, 0]))
        m = re.fullmatch(r"([xXY])(\d+)", ident)
        if m:
            kind, i = m.group(1), int(m.group(2))
            if kind == "x":
                if not 1 <= i <= d.rank:
                    raise ExpressionError(f"no variable {ident}")
                return ring.x(i)
            if not 0 <= i <= d.rank:
                raise ExpressionError(f"no generator {ident}")
            return alg.demazure(i) if kind == "X" else alg.pushpull(i)
        raise ExpressionError(f"unknown name {ident!r}")

    def call(self, fn: str, args):
        alg, ring = self.alg, self.ring

        def one_arg():
            if len(args) != 1:
                raise ExpressionError(f"{fn} takes one argument")
            return args[0]

        def element_arg():
            v = self.node(one_arg())
            if not isinstance(v, TwistedElement):
                v = alg.scalar(self.scalar(v))
            return v

        if fn == "eta":
            arg = one_arg()
            if not (isinstance(arg, ast.Constant) and isinstance(arg.value, str)):
                raise ExpressionError("eta expects an element such as t[1]*s1")
            try:
                return alg.eta(parse_element(self.datum, arg.value))
            except ValueError as exc:
                raise ExpressionError(str(exc)) from None
        if fn == "x":
            return ring.x_of(self.vector(one_arg()))
        if fn == "kappa":
            return ring.kappa(self.vector(one_arg()))
        if fn == "Z":
            return alg.z_elt(self.vector(one_arg()))
        if fn == "X":
            return alg.x_word(self.word(one_arg()))
        if fn == "Y":
            return alg.y_word(self.word(one_arg()))
        if fn == "frakX":
            return alg.pr(alg.x_word(self.word(one_arg())))
        if fn == "frakY":
            return alg.pr(alg.y_word(self.word(one_arg())))
        if fn in ("psi", "pr"):
            return getattr(alg, fn)(element_arg())
        if fn == "diamond":
            if len(args) != 2:
                raise ExpressionError("diamond takes two arguments")
            z, xi = (self.node(a) for a in args)
            z = z if isinstance(z, TwistedElement) else alg.scalar(self.scalar(z))
            xi = xi if isinstance(xi, TwistedElement) else alg.scalar(self.scalar(xi))
            return alg.diamond(z, xi)
        if fn == "O":
            k = self.node(one_arg())
            if not hasattr(ring, "trunc") or not isinstance(k, int) or k < 1:
                raise ExpressionError("O(k) is only meaningful for the table backend")
            return type(ring.one)(ring, Series(ring.nvars, k - 1, {}))
        raise ExpressionError(f"unknown function {fn!r}")
