"""Formal group laws: the hyperbolic law ``x + y - beta*x*y`` and coefficient tables."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .series import Series

__all__ = ["FormalGroupLaw", "parse_table", "beta_table"]


class FormalGroupLaw:
    """``F(x, y) = x + y + sum_{i,j>=1} a_ij x^i y^j``.

    ``mode == "hyperbolic"`` means ``F_beta`` with symbolic (or fixed) ``beta``;
    the table mode stores the coefficients ``a_ij`` with ``i + j <= N``.
    """

    def __init__(self, mode: str, coeffs: dict | None = None, trunc: int | None = None, beta=None):
        if mode not in ("hyperbolic", "table"):
            raise ValueError(f"unknown formal group law mode {mode!r}")
        self.mode = mode
        self.beta = None if beta is None else Fraction(beta)
        if mode == "table":
            if trunc is None or trunc < 1:
                raise ValueError("table mode needs a truncation degree N >= 1")
            self.trunc = int(trunc)
            self.coeffs = {
                (int(i), int(j)): Fraction(c)
                for (i, j), c in (coeffs or {}).items()
                if Fraction(c) != 0
            }
            self._validate()
        else:
            self.trunc = None
            self.coeffs = None

    @classmethod
    def hyperbolic(cls, beta=None) -> "FormalGroupLaw":
        return cls("hyperbolic", beta=beta)

    @classmethod
    def from_table(cls, coeffs: dict, trunc: int) -> "FormalGroupLaw":
        return cls("table", coeffs=coeffs, trunc=trunc)

    @classmethod
    def from_file(cls, path, trunc: int | None = None) -> "FormalGroupLaw":
        """Load a table; with ``trunc`` given, coefficients above that total degree are dropped."""
        coeffs, n = parse_table(Path(path).read_text())
        if trunc is None:
            return cls.from_table(coeffs, n)
        return cls.from_table({k: c for k, c in coeffs.items() if sum(k) <= trunc}, trunc)

    def _validate(self) -> None:
        for (i, j), c in self.coeffs.items():
            if i < 1 or j < 1:
                raise ValueError(f"coefficient ({i},{j}): only mixed terms x^i y^j with i, j >= 1 are allowed")
            if i + j > self.trunc:
                raise ValueError(f"coefficient ({i},{j}) exceeds truncation degree {self.trunc}")
        for (i, j), c in self.coeffs.items():
            if self.coeffs.get((j, i), 0) != c:
                raise ValueError(f"table is not commutative at ({i},{j})")
        n = self.trunc
        x, y, z = (Series.var(3, n, k) for k in range(3))
        left = self.add(self.add(x, y), z)
        right = self.add(x, self.add(y, z))
        if not left.equals(right, n):
            raise ValueError("table is not associative through the truncation degree")

    def coefficient(self, i: int, j: int) -> Fraction:
        if self.mode == "hyperbolic":
            raise ValueError("hyperbolic law has a symbolic coefficient")
        return self.coeffs.get((i, j), Fraction(0))

    def add(self, a: Series, b: Series) -> Series:
        """Formal sum of two series with zero constant term (table mode)."""
        out = a + b
        if not self.coeffs:
            return out
        maxi = max(i for i, _ in self.coeffs)
        maxj = max(j for _, j in self.coeffs)
        pa = [Series.const(a.nvars, a.prec, 1)]
        pb = [Series.const(b.nvars, b.prec, 1)]
        for _ in range(maxi):
            pa.append(pa[-1] * a)
        for _ in range(maxj):
            pb.append(pb[-1] * b)
        for (i, j), c in self.coeffs.items():
            out = out + pa[i] * pb[j] * c
        return out.truncate(self.trunc)

    def inverse_series(self) -> Series:
        """The one-variable series ``i(t)`` with ``F(t, i(t)) = 0``."""
        n = self.trunc
        t = Series.var(1, n, 0)
        inv = -t
        # fixed point of i = -t - sum a_ij t^i i^j, gains one degree per pass
        for _ in range(n):
            rest = Series(1, n, {})
            for (i, j), c in self.coeffs.items():
                rest = rest + (t ** i) * (inv ** j) * c
            inv = (-t - rest).truncate(n)
        return inv

    def to_text(self) -> str:
        lines = [f"# formal group law table, truncation {self.trunc}"]
        for (i, j), c in sorted(self.coeffs.items()):
            lines.append(f"{i} {j} {c}")
        return "\n".join(lines) + "\n"


def parse_table(text: str) -> tuple[dict, int]:
    """Parse lines ``"i j p/q"``; returns the coefficients and the largest total degree seen."""
    coeffs = {}
    top = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j p/q', got {raw!r}")
        i, j = int(parts[0]), int(parts[1])
        coeffs[(i, j)] = Fraction(parts[2])
        top = max(top, i + j)
    return coeffs, top


def beta_table(beta, trunc: int) -> FormalGroupLaw:
    """``F_beta`` with a rational ``beta`` written as a coefficient table."""
    return FormalGroupLaw.from_table({(1, 1): -Fraction(beta)}, trunc)
