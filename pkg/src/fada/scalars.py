"""Scalars: the formal group algebra ``S`` of the root lattice and its localization.

Two interchangeable backends share one interface (:class:`ScalarRing`):

* :class:`HyperbolicRing` works with ``F_beta(x, y) = x + y - beta*x*y``.  Every
  ``x_lam`` is a rational function of the simple-root variables, so scalars are
  exact reduced fractions over ``Q(beta)`` (or over ``Q`` once ``beta`` is fixed).
* :class:`TableRing` works with an arbitrary formal group law given by a finite
  coefficient table.  Scalars are truncated series divided by a symbolic product
  of root variables ``x_gamma``.

Membership in ``S`` is read in the completed sense: a hyperbolic scalar lies in
``S`` when its denominator has a nonzero constant term, a table scalar when its
root denominator is empty.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, field

from .fgl import FormalGroupLaw
from .series import Series
from .weyl import AffineWeylElement, RootDatum

__all__ = ["ScalarRing", "HyperbolicRing", "TableRing", "TableScalar", "make_ring"]


def _finite_part(u) -> int:
    return u.w if isinstance(u, AffineWeylElement) else int(u)


def _decomposition(lam) -> list[tuple[int, int]]:
    """Steps ``(i, +-1)`` adding simple roots in index order, positive coefficients first."""
    steps = []
    for i, c in enumerate(lam):
        steps += [(i, 1)] * max(c, 0)
    for i, c in enumerate(lam):
        steps += [(i, -1)] * max(-c, 0)
    return steps


class ScalarRing:
    """Shared behaviour of the two backends."""

    datum: RootDatum
    backend: str

    def x_of(self, lam):
        lam = tuple(int(c) for c in lam)
        if len(lam) != self.datum.rank:
            raise ValueError("lattice vector has the wrong length")
        return self._x_cached(lam)

    def x(self, i: int):
        """Simple-root variable ``x_i`` (1-based)."""
        return self.x_of(self.datum.simple_roots[i - 1])

    def kappa(self, alpha):
        alpha = tuple(alpha)
        neg = tuple(-c for c in alpha)
        return self.one / self.x_of(alpha) + self.one / self.x_of(neg)

    def mu(self):
        """``-x_{-alpha_1} / x_{alpha_1}``."""
        a = self.datum.simple_roots[0]
        return -self.x_of(tuple(-c for c in a)) / self.x_of(a)

    def frak_x(self):
        """Product of ``x_{-alpha}`` over positive roots."""
        out = self.one
        for a in self.datum.positive_roots:
            out = out * self.x_of(tuple(-c for c in a))
        return out

    def sum(self, items):
        out = self.zero
        for s in items:
            out = out + s
        return out

    def divides(self, s, gamma, k: int):
        """``(True, s / x_gamma^k)`` when the quotient stays in ``S``, else ``(False, None)``."""
        if k < 0:
            raise ValueError("k must be non-negative")
        if not self.in_S(s):
            raise ValueError("divisibility is only defined for elements of S")
        if k == 0:
            return True, s
        return self._divides(s, tuple(gamma), k)


class HyperbolicRing(ScalarRing):
    """Exact fractions over ``Q(beta)`` for the hyperbolic formal group law."""

    backend = "hyperbolic"

    def __init__(self, datum: RootDatum, beta=None):
        self.datum = datum
        n = datum.rank
        self.xnames = [f"x{i + 1}" for i in range(n)]
        self.beta_value = None if beta is None else Fraction(beta)
        if self.beta_value is None:
            self.field, *gens = field(",".join(["beta"] + self.xnames), QQ)
            self.beta = gens[0]
            self.xvars = gens[1:]
            self._offset = 1
        else:
            self.field, *gens = field(",".join(self.xnames), QQ)
            self.beta = self.field(_qq(self.beta_value))
            self.xvars = gens
            self._offset = 0
        self.poly_ring = self.field.ring
        self.zero = self.field.zero
        self.one = self.field.one
        self.fgl = FormalGroupLaw.hyperbolic(self.beta_value)
        self._x_cached = lru_cache(maxsize=None)(self._x_compute)
        self._images = {}
        self._act_cache = {}

    def __repr__(self) -> str:
        b = "beta" if self.beta_value is None else str(self.beta_value)
        return f"HyperbolicRing({self.datum.label}, beta={b})"

    def __call__(self, c):
        if isinstance(c, Fraction):
            c = _qq(c)
        return self.field(c)

    def coerce(self, c):
        return self(c)

    def _own(self, s):
        # sympy returns a bare int for ``zero - int``; lift those back into the field
        return s if isinstance(s, FracElement) else self(s)

    def F(self, a, b):
        return a + b - self.beta * a * b

    def formal_inverse(self, a):
        return a / (self.beta * a - 1)

    def _x_compute(self, lam):
        out = self.zero
        for i, sign in _decomposition(lam):
            xi = self.xvars[i]
            out = self.F(out, xi if sign > 0 else self.formal_inverse(xi))
        return out

    def is_zero(self, s) -> bool:
        return not s

    def eq(self, s, t) -> bool:
        return s == t

    def in_S(self, s) -> bool:
        """Denominator has a nonzero constant term in the ``x`` variables."""
        s = self._own(s)
        off = self._offset
        return any(not any(e[off:]) for e in s.denom.itermonoms())

    def _divides(self, s, gamma, k):
        s = self._own(s)
        q = s / self.x_of(gamma) ** k
        return (True, q) if self.in_S(q) else (False, None)

    # ------------------------------------------------------------------
    # Weyl group action by substitution
    def _substitution(self, w: int):
        if w not in self._images:
            imgs = []
            for a in self.datum.simple_roots:
                v = self.x_of(self.datum.act_root(w, a))
                imgs.append((v.numer, v.denom))
            self._images[w] = imgs
        return self._images[w]

    def _subst_poly(self, p, imgs):
        """Numerator and denominator of ``p(x_i -> a_i/b_i)`` with denominator ``prod b_i^{d_i}``."""
        off = self._offset
        n = self.datum.rank
        degs = [0] * n
        for e in p.itermonoms():
            for i in range(n):
                degs[i] = max(degs[i], e[off + i])
        R = self.poly_ring
        apow = [[R.one] for _ in range(n)]
        bpow = [[R.one] for _ in range(n)]
        for i in range(n):
            for _ in range(degs[i]):
                apow[i].append(apow[i][-1] * imgs[i][0])
                bpow[i].append(bpow[i][-1] * imgs[i][1])
        num = R.zero
        for e, c in p.iterterms():
            term = R({e[:off] + (0,) * n: c}) if off else R(c)
            for i in range(n):
                k = e[off + i]
                term = term * apow[i][k] * bpow[i][degs[i] - k]
            num += term
        den = R.one
        for i in range(n):
            den *= bpow[i][degs[i]]
        return num, den

    def act(self, u, s):
        s = self._own(s)
        w = _finite_part(u)
        if w == 0 or not s:
            return s
        key = (w, s.numer, s.denom)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        imgs = self._substitution(w)
        n1, d1 = self._subst_poly(s.numer, imgs)
        n2, d2 = self._subst_poly(s.denom, imgs)
        out = self.field.new(n1 * d2, n2 * d1)
        if len(self._act_cache) < 200000:
            self._act_cache[key] = out
        return out

    # ------------------------------------------------------------------
    def specialize_beta(self, s, value) -> "HyperbolicRing":
        s = self._own(s)
        if self.beta_value is not None:
            raise ValueError("beta is already specialized")
        target = _fixed_beta_ring(self.datum, Fraction(value))
        v = _qq(Fraction(value))

        def spec(p):
            out = {}
            for e, c in p.iterterms():
                out[e[1:]] = out.get(e[1:], QQ(0)) + c * v ** e[0]
            return target.poly_ring.from_dict({e: c for e, c in out.items() if c})

        den = spec(s.denom)
        if not den:
            raise ZeroDivisionError(f"denominator vanishes at beta = {value}")
        return target.field.new(spec(s.numer), den)

    def to_series(self, s, prec: int) -> Series:
        """Power-series expansion of an element of ``S`` (``beta`` must be fixed)."""
        s = self._own(s)
        if self.beta_value is None:
            raise ValueError("series expansion needs a fixed beta")
        if not self.in_S(s):
            raise ValueError("element is not in S")
        n = self.datum.rank

        def ser(p):
            return Series(n, prec, {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in p.iterterms()})

        return ser(s.numer) * ser(s.denom).inverse()

    def to_expr(self, s):
        s = self._own(s)
        return s.as_expr()

    def format(self, s) -> str:
        s = self._own(s)
        return str(sympy.factor(s.as_expr()))

    def from_expr(self, expr):
        expr = sympy.sympify(expr)
        return self.field.from_expr(expr) if expr.free_symbols else self(Fraction(str(expr)))

    def to_json(self, s) -> dict:
        s = self._own(s)
        num, den = self._normalized(s)
        return {"num": num, "den": den}

    def _normalized(self, s):
        """Split into ``x``-monomials with coefficients in ``Q(beta)``, denominator monic in grlex."""
        off = self._offset
        bsym = sympy.Symbol("beta")

        def split(p):
            groups = {}
            for e, c in p.iterterms():
                coeff = sympy.Rational(int(c.numerator), int(c.denominator)) * (bsym ** e[0] if off else 1)
                groups[e[off:]] = groups.get(e[off:], 0) + coeff
            return groups

        num = split(s.numer)
        den = split(s.denom)
        lead = den[max(den, key=lambda e: (sum(e), e))]

        def fmt(groups):
            return [
                [list(e), str(sympy.cancel(c / lead))]
                for e, c in sorted(groups.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))
            ]

        return fmt(num), fmt(den)

    def from_json(self, data: dict):
        bsym = sympy.Symbol("beta")
        xs = sympy.symbols(self.xnames)

        def build(rows):
            out = 0
            for e, c in rows:
                term = sympy.sympify(c, locals={"beta": bsym})
                for x, k in zip(xs, e):
                    term *= x ** k
                out += term
            return out

        expr = build(data["num"]) / build(data["den"])
        if self.beta_value is not None:
            expr = expr.subs(bsym, sympy.Rational(self.beta_value.numerator, self.beta_value.denominator))
        return self.from_expr(sympy.cancel(expr))


@lru_cache(maxsize=None)
def _fixed_beta_ring(datum: RootDatum, value: Fraction) -> HyperbolicRing:
    return HyperbolicRing(datum, beta=value)


def _qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


# ----------------------------------------------------------------------
# table backend


class TableScalar:
    """``num / prod_gamma x_gamma^{m_gamma}`` with ``gamma`` running over positive roots."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: "TableRing", num: Series, den=()):
        self.ring = ring
        self.num = num
        self.den = tuple(sorted((int(g), int(m)) for g, m in den if m))

    @property
    def prec(self) -> int:
        """Effective degree: the numerator is known through this total degree."""
        return self.num.prec

    def _wrap(self, other) -> "TableScalar":
        if isinstance(other, TableScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.ring.add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TableScalar(self.ring, -self.num, self.den)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.ring.add(self, -other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.ring.add(other, -self)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.ring.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.ring.div(self, other)

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.ring.div(other, self)

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.div(self.ring.one, self ** (-k))
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return not bool(self - other)

    __hash__ = None

    def __repr__(self) -> str:
        return self.ring.format(self)


class TableRing(ScalarRing):
    """Truncated-series scalars for a formal group law given by a coefficient table."""

    backend = "table"

    def __init__(self, datum: RootDatum, fgl: FormalGroupLaw):
        if fgl.mode != "table":
            raise ValueError("TableRing needs a table formal group law")
        self.datum = datum
        self.fgl = fgl
        self.trunc = fgl.trunc
        self.nvars = datum.rank
        self._posindex = {g: k for k, g in enumerate(datum.positive_roots)}
        self.zero = TableScalar(self, Series(self.nvars, self.trunc, {}))
        self.one = self(1)
        self._inv1 = fgl.inverse_series()
        self._x_cached = lru_cache(maxsize=None)(self._x_compute)
        self._series_cache = {}
        self._subst = {}

    def __repr__(self) -> str:
        return f"TableRing({self.datum.label}, N={self.trunc})"

    def __call__(self, c) -> TableScalar:
        if isinstance(c, TableScalar):
            return c
        return TableScalar(self, Series.const(self.nvars, self.trunc, Fraction(c)))

    coerce = __call__

    # series of root variables -----------------------------------------
    def x_series(self, lam) -> Series:
        lam = tuple(lam)
        if lam not in self._series_cache:
            n = self.nvars
            out = Series(n, self.trunc, {})
            for i, sign in _decomposition(lam):
                xi = Series.var(n, self.trunc, i)
                step = xi if sign > 0 else self._inv1.compose([xi])
                out = self.fgl.add(out, step)
            self._series_cache[lam] = out
        return self._series_cache[lam]

    def _x_compute(self, lam):
        return TableScalar(self, self.x_series(lam))

    def _neg_unit(self, gamma) -> Series:
        """``x_{-gamma} / x_gamma`` as a unit series."""
        key = ("unit",) + tuple(gamma)
        if key not in self._series_cache:
            t = self._inv1.drop_variable_power(0, 1)
            self._series_cache[key] = t.compose([self.x_series(gamma)])
        return self._series_cache[key]

    def _substitution(self, w: int) -> list[Series]:
        if w not in self._subst:
            self._subst[w] = [self.x_series(self.datum.act_root(w, a)) for a in self.datum.simple_roots]
        return self._subst[w]

    def _act_series(self, w: int, s: Series) -> Series:
        if w == 0:
            return s
        return s.compose(self._substitution(w))

    @lru_cache(maxsize=None)
    def _to_simple(self, gamma) -> tuple[int, int]:
        """``(w, j)`` with ``w(gamma) = alpha_j``."""
        d = self.datum
        for w in range(d.order):
            img = d.act_root(w, gamma)
            if img in d.simple_roots:
                return w, d.simple_roots.index(img)
        raise ValueError(f"{gamma} is not a root")

    def _divide_series(self, s: Series, gamma, k: int):
        """``s / x_gamma^k`` when it divides through the known degrees, else ``None``."""
        w, j = self._to_simple(tuple(gamma))
        t = self._act_series(w, s)
        if t.min_degree_in(j) < k:
            return None
        q = t.drop_variable_power(j, k)
        return self._act_series(self.datum.finite_inverse(w), q)

    # canonical form ----------------------------------------------------
    def _reduce(self, num: Series, den: dict) -> TableScalar:
        if num.is_zero():
            return TableScalar(self, num, ())
        den = dict(den)
        for g in sorted(den):
            gamma = self.datum.positive_roots[g]
            while den[g] > 0:
                q = self._divide_series(num, gamma, 1)
                if q is None:
                    break
                num = q
                den[g] -= 1
                if num.is_zero():
                    return TableScalar(self, num, ())
        return TableScalar(self, num, den.items())

    def _root_factor(self, gamma) -> tuple[Series, int]:
        """``1/x_gamma = unit / x_|gamma|``: returns the unit and the positive-root index."""
        gamma = tuple(gamma)
        if gamma in self._posindex:
            return Series.const(self.nvars, self.trunc, 1), self._posindex[gamma]
        pos = tuple(-c for c in gamma)
        return self._neg_unit(pos).inverse(), self._posindex[pos]

    def _den_series(self, den: dict) -> Series:
        out = Series.const(self.nvars, self.trunc, 1)
        for g, m in den.items():
            if m:
                out = out * self.x_series(self.datum.positive_roots[g]) ** m
        return out

    # arithmetic --------------------------------------------------------
    def add(self, a: TableScalar, b: TableScalar) -> TableScalar:
        da, db = dict(a.den), dict(b.den)
        keys = set(da) | set(db)
        top = {g: max(da.get(g, 0), db.get(g, 0)) for g in keys}
        na = a.num * self._den_series({g: top[g] - da.get(g, 0) for g in keys})
        nb = b.num * self._den_series({g: top[g] - db.get(g, 0) for g in keys})
        return self._reduce(na + nb, top)

    def mul(self, a: TableScalar, b: TableScalar) -> TableScalar:
        den = dict(a.den)
        for g, m in b.den:
            den[g] = den.get(g, 0) + m
        return self._reduce(a.num * b.num, den)

    def div(self, a: TableScalar, b: TableScalar) -> TableScalar:
        if not b:
            raise ZeroDivisionError("division by zero (or by a series with no known nonzero term)")
        u = b.num
        den = dict(a.den)
        num = a.num
        for g, m in b.den:
            num = num * self.x_series(self.datum.positive_roots[g]) ** m
        for g, gamma in enumerate(self.datum.positive_roots):
            while u.constant() == 0:
                q = self._divide_series(u, gamma, 1)
                if q is None:
                    break
                if q.is_zero():
                    raise ZeroDivisionError("divisor has no known unit part at this truncation")
                u = q
                den[g] = den.get(g, 0) + 1
        if u.constant() == 0:
            raise ValueError("table-mode division by a series that is not a unit times root factors")
        return self._reduce(num * u.inverse(), den)

    def inv_root(self, gamma) -> TableScalar:
        unit, g = self._root_factor(gamma)
        return TableScalar(self, unit, ((g, 1),))

    def is_zero(self, s) -> bool:
        return not s

    def eq(self, s, t) -> bool:
        return s == t

    def in_S(self, s: TableScalar) -> bool:
        return not s.den

    def _divides(self, s, gamma, k):
        gamma = tuple(gamma)
        q = self._divide_series(s.num, gamma, k)
        if q is None:
            return False, None
        return True, TableScalar(self, q, ())

    def act(self, u, s: TableScalar) -> TableScalar:
        w = _finite_part(u)
        if w == 0 or not s:
            return s
        num = self._act_series(w, s.num)
        den = {}
        for g, m in s.den:
            img = self.datum.act_root(w, self.datum.positive_roots[g])
            unit, h = self._root_factor(img)
            num = num * unit ** m
            den[h] = den.get(h, 0) + m
        return self._reduce(num, den)

    def F(self, a, b):
        a, b = self(a), self(b)
        if not a.den and not b.den:
            return TableScalar(self, self.fgl.add(a.num, b.num))
        out = a + b
        for (i, j), c in self.fgl.coeffs.items():
            out = out + a ** i * b ** j * c
        return out

    def formal_inverse(self, a):
        a = self(a)
        if a.den:
            raise ValueError("formal inverse needs a series without root denominators")
        return TableScalar(self, self._inv1.compose([a.num]))

    def kappa(self, alpha):
        alpha = tuple(alpha)
        neg = tuple(-c for c in alpha)
        return self.inv_root(alpha) + self.inv_root(neg)

    def x(self, i: int):
        return self.x_of(self.datum.simple_roots[i - 1])

    def specialize_beta(self, s, value):
        raise ValueError("specialize_beta needs the hyperbolic backend")

    def format(self, s: TableScalar) -> str:
        num = repr(s.num)
        if not s.den:
            return f"({num})"
        den = "*".join(
            f"x[{','.join(map(str, self.datum.positive_roots[g]))}]" + (f"^{m}" if m > 1 else "") for g, m in s.den
        )
        return f"({num})/({den})"

    def to_json(self, s: TableScalar) -> dict:
        terms = sorted(s.num.terms.items(), key=lambda t: (sum(t[0]), tuple(-k for k in t[0])))
        return {
            "num": [[list(e), str(c)] for e, c in terms],
            "den": [[g, m] for g, m in s.den],
            "prec": s.num.prec,
        }

    def from_json(self, data: dict) -> TableScalar:
        prec = int(data.get("prec", self.trunc))
        num = Series(self.nvars, prec, {tuple(e): Fraction(c) for e, c in data["num"]})
        return self._reduce(num, {int(g): int(m) for g, m in data.get("den", [])})


def make_ring(datum: RootDatum, fgl: FormalGroupLaw | None = None) -> ScalarRing:
    """Scalar ring for ``datum``; hyperbolic with symbolic ``beta`` by default."""
    if fgl is None or fgl.mode == "hyperbolic":
        beta = None if fgl is None else fgl.beta
        return HyperbolicRing(datum, beta=beta)
    return TableRing(datum, fgl)
