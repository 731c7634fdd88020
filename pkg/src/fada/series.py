"""Truncated multivariate power series over the rationals.

A :class:`Series` stores its terms of total degree at most ``prec``; terms of
higher degree are unknown.  Arithmetic propagates precision the usual way:
sums keep the smaller precision, products gain the order of the other factor.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

Exp = tuple[int, ...]


class Series:
    __slots__ = ("nvars", "prec", "terms")

    def __init__(self, nvars: int, prec: int, terms=None):
        self.nvars = nvars
        self.prec = prec
        clean = {}
        if terms:
            for e, c in terms.items():
                if sum(e) <= prec and c:
                    clean[tuple(e)] = Fraction(c)
        self.terms: dict[Exp, Fraction] = clean

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, nvars: int, prec: int, c) -> "Series":
        return cls(nvars, prec, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, prec: int, i: int) -> "Series":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, prec, {e: 1})

    # basic queries ------------------------------------------------------
    def order(self) -> int:
        """Lowest degree of a known nonzero term (``prec + 1`` if none)."""
        if not self.terms:
            return self.prec + 1
        return min(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def truncate(self, prec: int) -> "Series":
        return Series(self.nvars, min(prec, self.prec), self.terms)

    def homogeneous(self, d: int) -> dict[Exp, Fraction]:
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def __repr__(self) -> str:
        if not self.terms:
            return f"O({self.prec + 1})"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) + f" + O({self.prec + 1})"

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.const(self.nvars, self.prec, other)

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Series(self.nvars, prec, out)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(self.nvars, self.prec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Series":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Series":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = Fraction(other)
            return Series(self.nvars, self.prec, {e: c * v for e, v in self.terms.items()})
        prec = min(self.prec + other.order(), other.prec + self.order())
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > prec:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Series(self.nvars, prec, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            return self.inverse() ** (-k)
        out = Series.const(self.nvars, self.prec, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Series":
        """Multiplicative inverse of a unit (nonzero constant term)."""
        c0 = self.constant()
        if c0 == 0:
            raise ZeroDivisionError("series is not a unit")
        # 1/(c0 (1 - t)) = (1/c0) sum t^k with t of order >= 1
        t = 1 - self * (1 / c0)
        t.terms.pop((0,) * self.nvars, None)
        out = Series.const(self.nvars, self.prec, 1)
        power = Series.const(self.nvars, self.prec, 1)
        for _ in range(self.prec):
            power = power * t
            if power.is_zero():
                break
            out = out + power
        return out * (1 / c0)

    def equals(self, other, prec: int | None = None) -> bool:
        """Equality of all coefficients of degree at most ``prec`` (default: common precision)."""
        other = self._coerce(other)
        p = min(self.prec, other.prec) if prec is None else prec
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(e, 0) == other.terms.get(e, 0) for e in keys if sum(e) <= p)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Series, int, Fraction)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None

    def compose(self, images: list["Series"]) -> "Series":
        """Substitute series of positive order for the variables."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not self.terms:
            nv = images[0].nvars if images else self.nvars
            return Series(nv, min([self.prec] + [g.prec for g in images]), {})
        nv = images[0].nvars
        if any(g.constant() != 0 for g in images):
            raise ValueError("substituted series must have zero constant term")
        prec = min([self.prec] + [g.prec for g in images])
        powers = [[Series.const(nv, prec, 1)] for _ in images]
        out = Series(nv, prec, {})
        for e, c in self.terms.items():
            term = Series.const(nv, prec, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def drop_variable_power(self, i: int, k: int) -> "Series":
        """Divide by ``x_i^k``; the caller guarantees every term has ``x_i``-degree at least ``k``."""
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError("series not divisible by the requested variable power")
            out[e[:i] + (e[i] - k,) + e[i + 1 :]] = c
        return Series(self.nvars, self.prec - k, out)

    def min_degree_in(self, i: int) -> int:
        if not self.terms:
            return self.prec + 1
        return min(e[i] for e in self.terms)


def monomials(nvars: int, degree: int):
    """Exponent vectors of total degree exactly ``degree`` in graded-lex order."""
    out = [e for e in iproduct(range(degree + 1), repeat=nvars) if sum(e) == degree]
    return sorted(out, reverse=True)
