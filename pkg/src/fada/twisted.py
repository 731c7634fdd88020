"""The twisted group algebra ``Q_{W_a}`` and the formal affine Demazure algebra inside it.

Elements are kept in the basis ``eta_u`` (``u`` in the affine Weyl group) with
scalars on the left.  The product is ``c eta_u * c' eta_v = c u(c') eta_{uv}``,
translations acting trivially on scalars.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from . import linalg
from .scalars import ScalarRing
from .weyl import AffineWeylElement, RootDatum, element_from_json, format_element

__all__ = ["TwistedElement", "TwistedAlgebra"]


class TwistedElement:
    """Finite sum ``sum_u c_u eta_u``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "TwistedAlgebra", terms=None):
        self.alg = alg
        is_zero = alg.ring.is_zero
        self.terms: dict[AffineWeylElement, object] = {
            u: c for u, c in (terms or {}).items() if not is_zero(c)
        }

    # queries ------------------------------------------------------------
    def coeff(self, u: AffineWeylElement):
        return self.terms.get(u, self.alg.ring.zero)

    def support(self) -> list[AffineWeylElement]:
        d = self.alg.datum
        return sorted(self.terms, key=lambda u: (d.length(u), d.reduced_word(u)))

    def is_zero(self) -> bool:
        return not self.terms

    def is_translation_supported(self) -> bool:
        return all(u.w == 0 for u in self.terms)

    def max_length(self) -> int:
        d = self.alg.datum
        return max((d.length(u) for u in self.terms), default=0)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TwistedElement):
            other = self.alg.scalar(other)
        out = dict(self.terms)
        for u, c in other.terms.items():
            out[u] = out[u] + c if u in out else c
        return TwistedElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedElement(self.alg, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TwistedElement):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TwistedElement):
            return self.alg.mul(self, other)
        return self.alg.mul(self, self.alg.scalar(other))

    def __rmul__(self, c):
        # left multiplication by a scalar
        c = self.alg.ring.coerce(c) if isinstance(c, (int, Fraction)) else c
        return TwistedElement(self.alg, {u: c * v for u, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TwistedElement):
            return (self - other).is_zero()
        if isinstance(other, (int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return self.alg.format(self)


class TwistedAlgebra:
    """``Q_{W_a}`` over a root datum and a scalar ring, with the FADA generators and maps."""

    def __init__(self, ring: ScalarRing):
        self.ring = ring
        self.datum: RootDatum = ring.datum
        self._x_elem = lru_cache(maxsize=None)(self._x_elem_compute)
        self._y_elem = lru_cache(maxsize=None)(self._y_elem_compute)

    def __repr__(self) -> str:
        return f"TwistedAlgebra({self.ring!r})"

    # constructors -------------------------------------------------------
    def element(self, terms) -> TwistedElement:
        return TwistedElement(self, terms)

    def zero(self) -> TwistedElement:
        return TwistedElement(self, {})

    def one(self) -> TwistedElement:
        return self.eta(self.datum.e)

    def eta(self, u: AffineWeylElement, c=None) -> TwistedElement:
        return TwistedElement(self, {u: self.ring.one if c is None else c})

    def scalar(self, c) -> TwistedElement:
        if isinstance(c, (int, Fraction)):
            c = self.ring.coerce(c)
        return self.eta(self.datum.e, c)

    def translation(self, lam) -> TwistedElement:
        return self.eta(self.datum.translation(lam))

    # product ------------------------------------------------------------
    def mul(self, a: TwistedElement, b: TwistedElement) -> TwistedElement:
        d = self.datum
        act = self.ring.act
        out: dict = {}
        for u, c in a.terms.items():
            for v, c2 in b.terms.items():
                uv = d.mul(u, v)
                term = c * act(u, c2)
                out[uv] = out[uv] + term if uv in out else term
        return TwistedElement(self, out)

    def act_left(self, u: AffineWeylElement, z: TwistedElement) -> TwistedElement:
        """``eta_u * z``."""
        return self.mul(self.eta(u), z)

    # generators ---------------------------------------------------------
    def root_of(self, i: int):
        """Root ``alpha_i`` for ``i >= 1`` and ``-theta`` (the finite part of ``alpha_0``) for ``i = 0``."""
        if i == 0:
            return tuple(-c for c in self.datum.theta)
        return self.datum.simple_roots[i - 1]

    def demazure(self, i: int) -> TwistedElement:
        """``X_i = (1/x_{alpha_i})(1 - eta_{s_i})``; for ``i = 0`` the root is ``-theta``."""
        if not 0 <= i <= self.datum.rank:
            raise ValueError(f"index {i} outside 0..{self.datum.rank}")
        inv = self.ring.one / self.ring.x_of(self.root_of(i))
        return TwistedElement(self, {self.datum.e: inv, self.datum.s(i): -inv})

    def demazure_root(self, alpha) -> TwistedElement:
        """``X_alpha = (1/x_alpha)(1 - eta_{s_alpha})`` for a finite root ``alpha``."""
        alpha = tuple(alpha)
        inv = self.ring.one / self.ring.x_of(alpha)
        s = self.datum.finite(self.datum.reflection_index(alpha))
        return TwistedElement(self, {self.datum.e: inv, s: -inv})

    def pushpull(self, i: int) -> TwistedElement:
        """``Y_i = kappa - X_i``."""
        return self.scalar(self.ring.kappa(self.root_of(i))) - self.demazure(i)

    def z_elt(self, alpha) -> TwistedElement:
        """``Z_alpha = (1/x_{-alpha})(1 - eta_{t_{alpha^vee}})``."""
        alpha = tuple(alpha)
        inv = self.ring.one / self.ring.x_of(tuple(-c for c in alpha))
        t = self.datum.translation(self.datum.coroot(alpha))
        return TwistedElement(self, {self.datum.e: inv, t: -inv})

    def x_word(self, word) -> TwistedElement:
        out = self.one()
        for i in word:
            out = out * self.demazure(i)
        return out

    def y_word(self, word) -> TwistedElement:
        out = self.one()
        for i in word:
            out = out * self.pushpull(i)
        return out

    def x_elem(self, u: AffineWeylElement) -> TwistedElement:
        """``X_{I_u}`` for the canonical reduced word of ``u``."""
        return self._x_elem(u)

    def y_elem(self, u: AffineWeylElement) -> TwistedElement:
        return self._y_elem(u)

    def _x_elem_compute(self, u):
        word = self.datum.reduced_word(u)
        if not word:
            return self.one()
        return self._x_elem(self.datum.word_element(word[:-1])) * self.demazure(word[-1])

    def _y_elem_compute(self, u):
        word = self.datum.reduced_word(u)
        if not word:
            return self.one()
        return self._y_elem(self.datum.word_element(word[:-1])) * self.pushpull(word[-1])

    # projections --------------------------------------------------------
    def pr(self, z: TwistedElement) -> TwistedElement:
        """``c eta_{t_lam w} -> c eta_{t_lam}``."""
        d = self.datum
        out: dict = {}
        for u, c in z.terms.items():
            t = d.translation(u.lam)
            out[t] = out[t] + c if t in out else c
        return TwistedElement(self, out)

    def iota(self, xi: TwistedElement) -> TwistedElement:
        if not xi.is_translation_supported():
            raise ValueError("iota expects a translation-supported element")
        return xi

    def psi(self, z: TwistedElement) -> TwistedElement:
        return self.iota(self.pr(z))

    def diamond(self, z: TwistedElement, xi: TwistedElement) -> TwistedElement:
        """``c eta_{t_lam w} <> c' eta_{t_mu} = c w(c') eta_{t_{lam + w(mu)}}``."""
        if not xi.is_translation_supported():
            raise ValueError("the diamond action needs a translation-supported right argument")
        d = self.datum
        act = self.ring.act
        out: dict = {}
        for u, c in z.terms.items():
            for v, c2 in xi.terms.items():
                mu = d.act_coroot(u.w, v.lam)
                t = d.translation(tuple(a + b for a, b in zip(u.lam, mu)))
                term = c * act(u.w, c2)
                out[t] = out[t] + term if t in out else term
        return TwistedElement(self, out)

    def delta(self, lam, xi: TwistedElement) -> TwistedElement:
        """``Delta_lam(xi) = (1/x_lam)(xi - s_lam <> xi)`` for a root ``lam``."""
        lam = tuple(lam)
        s = self.datum.finite(self.datum.reflection_index(lam))
        return (self.ring.one / self.ring.x_of(lam)) * (xi - self.diamond(self.eta(s), xi))

    # symmetrizers -------------------------------------------------------
    def sigma_elt(self) -> TwistedElement:
        return TwistedElement(self, {self.datum.finite(w): self.ring.one for w in range(self.datum.order)})

    def y_pi(self) -> TwistedElement:
        """``Y = sigma * (1/frak_x)``."""
        return self.sigma_elt() * (self.ring.one / self.ring.frak_x())

    def is_central(self, z: TwistedElement) -> bool:
        if not z.is_translation_supported():
            return False
        for i in range(1, self.datum.rank + 1):
            s = self.eta(self.datum.s(i))
            if not (s * z - z * s).is_zero():
                return False
        return True

    # D_W bimodule structure ------------------------------------------------
    def borel_unit(self):
        """Pairs ``(a_i, b_i)`` with ``sum_i a_i w(b_i) = delta_{w,e} frak_x`` for every ``w`` in ``W``.

        The ``b_i`` are the first graded-lex monomials in the simple-root
        variables whose ``W``-translates are linearly independent.
        """
        ring, d = self.ring, self.datum
        n = d.order
        if d.rank == 0 or n == 1:
            return [(ring.one, ring.one)]
        xs = [ring.x(i) for i in range(1, d.rank + 1)]
        chosen: list = []
        cols: list = []
        degree = 0
        while len(chosen) < n:
            if degree > 2 * n:
                raise RuntimeError("no invertible evaluation matrix found")
            for e in sorted((e for e in iproduct(range(degree + 1), repeat=d.rank) if sum(e) == degree), reverse=True):
                b = ring.one
                for x, k in zip(xs, e):
                    b = b * x ** k
                col = [ring.act(w, b) for w in range(n)]
                trial = cols + [col]
                if linalg.rank(trial, ring) == len(trial):
                    chosen.append(b)
                    cols = trial
                    if len(chosen) == n:
                        break
            degree += 1
        # rows indexed by w, unknown a_j multiplies column j
        matrix = [[cols[j][w] for j in range(n)] for w in range(n)]
        rhs = [ring.frak_x() if w == 0 else ring.zero for w in range(n)]
        a = linalg.solve(matrix, rhs, ring)
        return list(zip(a, chosen))

    def borel_unit_element(self, pairs=None) -> TwistedElement:
        """``sum_i a_i Y b_i`` (equal to ``1`` for a valid certificate)."""
        pairs = self.borel_unit() if pairs is None else pairs
        y = self.y_pi()
        out = self.zero()
        for a, b in pairs:
            out = out + a * (y * self.scalar(b))
        return out

    # basis expansions ---------------------------------------------------------
    def expand_in_x_basis(self, z: TwistedElement, L: int | None = None) -> dict:
        """Coefficients ``c_u`` with ``z = sum c_u X_{I_u}``, keyed by canonical words."""
        d = self.datum
        if L is not None:
            ball = set(d.enumerate_ball(L))
            outside = [u for u in z.terms if u not in ball]
            if outside:
                raise ValueError(f"support exceeds the ball of radius {L}: {format_element(d, outside[0])}")
        rest = z
        out: dict = {}
        while not rest.is_zero():
            top = max(rest.terms, key=lambda u: (d.length(u), d.reduced_word(u)))
            basis = self.x_elem(top)
            c = rest.terms[top] / basis.terms[top]
            out[d.reduced_word(top)] = c
            rest = rest - c * basis
        return out

    def non_s_words(self, coeffs: dict) -> list:
        return sorted(w for w, c in coeffs.items() if not self.ring.in_S(c))

    def in_fada(self, z: TwistedElement, L: int | None = None) -> bool:
        """Membership in ``D_{W_a}``: all ``X``-basis coefficients lie in ``S``."""
        return not self.non_s_words(self.expand_in_x_basis(z, L))

    def right_translation_coordinates(self, z: TwistedElement) -> dict:
        """``zeta_v`` (translation supported) with ``z = sum_{v in W} X_{I_v} zeta_v``."""
        d, ring = self.datum, self.ring
        n = d.order
        finite = [d.finite(v) for v in range(n)]
        xv = [self.x_elem(v) for v in finite]
        lams = sorted({d.act_coroot(d.finite_inverse(u.w), u.lam) for u in z.terms})
        zetas = {v: {} for v in range(n)}
        for lam in lams:
            # row w: w^{-1}(z[t_{w lam} w]) = sum_v w^{-1}(d_{v,w}) c_{v,lam}
            matrix = []
            rhs = []
            for w in range(n):
                winv = d.finite_inverse(w)
                matrix.append([ring.act(winv, xv[v].coeff(d.finite(w))) for v in range(n)])
                u = d.element(d.act_coroot(w, lam), w)
                rhs.append(ring.act(winv, z.coeff(u)))
            sol = linalg.solve(matrix, rhs, ring)
            for v in range(n):
                if not ring.is_zero(sol[v]):
                    zetas[v][d.translation(lam)] = sol[v]
        return {finite[v]: TwistedElement(self, t) for v, t in zetas.items() if t}

    def theta_certificate(self, xi: TwistedElement, L: int | None = None):
        """Decompose ``xi`` as ``sum a_i c_i`` with ``c_i = psi(Y b_i xi)`` central.

        Returns ``(terms, report)`` where ``terms`` lists ``(a_i, c_i)`` and the
        report records whether every ``a_i`` lies in ``S``, every ``c_i`` is central,
        every ``Y b_i xi`` lies in ``D_{W_a}`` and the sum reproduces ``xi``.
        """
        pairs = self.borel_unit()
        y = self.y_pi()
        terms = []
        in_fada = True
        for a, b in pairs:
            lifted = y * self.scalar(b) * xi
            if L is not None:
                in_fada = in_fada and self.in_fada(lifted)
            terms.append((a, self.psi(lifted)))
        total = self.zero()
        for a, c in terms:
            total = total + a * c
        report = {
            "coefficients_in_S": all(self.ring.in_S(a) for a, _ in terms),
            "central": all(self.is_central(c) for _, c in terms),
            "lifts_in_fada": in_fada,
            "reproduces": (total - xi).is_zero(),
        }
        return terms, report

    def xi_certificate(self, z: TwistedElement, L: int | None = None):
        """Write ``z = sum (X_{I_v} a_i) c_i`` with ``c_i`` central; report as in :meth:`theta_certificate`."""
        coords = self.right_translation_coordinates(z)
        total = self.zero()
        report = {"coefficients_in_S": True, "central": True, "lifts_in_fada": True, "reproduces": False}
        for v, zeta in coords.items():
            terms, rep = self.theta_certificate(zeta, L)
            for key in ("coefficients_in_S", "central", "lifts_in_fada"):
                report[key] = report[key] and rep[key]
            for a, c in terms:
                total = total + self.x_elem(v) * self.scalar(a) * c
        report["reproduces"] = (total - z).is_zero()
        return report

    # random inputs ---------------------------------------------------------------
    def random_scalar(self, rng: random.Random, allow_denominator: bool = True):
        """Small random element of ``Q``: rational constants times root variables."""
        ring, d = self.ring, self.datum

        def frac():
            return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

        def root():
            return rng.choice(d.roots)

        out = ring.coerce(frac())
        out = out + ring.coerce(frac()) * ring.x_of(root())
        if rng.random() < 0.5:
            out = out + ring.coerce(frac()) * ring.x_of(root()) * ring.x_of(root())
        if allow_denominator and rng.random() < 0.5:
            out = out / ring.x_of(root())
        return out

    def random_element(self, rng: random.Random, L: int = 2, nterms: int = 2, translations_only: bool = False,
                       allow_denominator: bool = True) -> TwistedElement:
        d = self.datum
        pool = d.enumerate_ball(L)
        if translations_only:
            pool = [u for u in pool if u.w == 0] or [d.e]
        terms = {}
        for _ in range(nterms):
            terms[rng.choice(pool)] = self.random_scalar(rng, allow_denominator)
        return TwistedElement(self, terms)

    # rendering ---------------------------------------------------------------------
    def format(self, z: TwistedElement) -> str:
        if z.is_zero():
            return "0"
        parts = []
        for u in z.support():
            c = self.ring.format(z.terms[u])
            parts.append(f"({c})*eta({format_element(self.datum, u)})")
        return " + ".join(parts)

    def to_json(self, z: TwistedElement) -> dict:
        return {
            "terms": [
                {"elem": u.to_json(self.datum), "coeff": self.ring.to_json(z.terms[u])} for u in z.support()
            ]
        }

    def from_json(self, data: dict) -> TwistedElement:
        terms = {}
        for t in data["terms"]:
            u = element_from_json(self.datum, t["elem"])
            terms[u] = self.ring.from_json(t["coeff"])
        return TwistedElement(self, terms)
