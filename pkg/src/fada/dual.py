"""Restricted duals of ``Q_{W_a}`` on finite balls of the affine Weyl group.

A functional is stored by its values ``f(eta_u)`` for ``u`` in a ball of radius
``L``; it is extended left ``Q``-linearly, ``f(c eta_u) = c f(eta_u)``.  The dual
basis ``Y*_{I_w}`` is obtained by inverting the Bruhat-triangular matrix of
``Y_{I_v}`` coefficients; triangularity makes the values on a ball exact.
"""
from __future__ import annotations

import random
from functools import lru_cache

from . import linalg
from .twisted import TwistedAlgebra, TwistedElement
from .weyl import AffineWeylElement, element_from_json, format_element

__all__ = ["DualFunctional", "DualSpace"]


class DualFunctional:
    __slots__ = ("space", "values", "ball")

    def __init__(self, space: "DualSpace", values=None, ball: int | None = None):
        self.space = space
        self.ball = space.L if ball is None else ball
        is_zero = space.ring.is_zero
        self.values = {u: c for u, c in (values or {}).items() if not is_zero(c)}
        members = space.ball_set(self.ball)
        outside = [u for u in self.values if u not in members]
        if outside:
            raise ValueError(
                f"support leaves the ball of radius {self.ball}: {format_element(space.datum, outside[0])}"
            )

    def __call__(self, z) -> object:
        """Evaluate on an element of ``Q_{W_a}`` (or on a single group element)."""
        ring = self.space.ring
        if isinstance(z, AffineWeylElement):
            return self.values.get(z, ring.zero)
        return ring.sum(c * self.values[u] for u, c in z.terms.items() if u in self.values)

    def __add__(self, other):
        out = dict(self.values)
        for u, c in other.values.items():
            out[u] = out[u] + c if u in out else c
        return DualFunctional(self.space, out, max(self.ball, other.ball))

    def __neg__(self):
        return DualFunctional(self.space, {u: -c for u, c in self.values.items()}, self.ball)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return DualFunctional(self.space, {u: c * v for u, v in self.values.items()}, self.ball)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, DualFunctional):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def support(self) -> list[AffineWeylElement]:
        d = self.space.datum
        return sorted(self.values, key=lambda u: (d.length(u), d.reduced_word(u)))

    def __repr__(self) -> str:
        if not self.values:
            return "0"
        d, ring = self.space.datum, self.space.ring
        return " + ".join(f"({ring.format(self.values[u])})*f({format_element(d, u)})" for u in self.support())


class DualSpace:
    """Functionals on the ball of radius ``L`` together with the two actions and the dual basis."""

    def __init__(self, alg: TwistedAlgebra, L: int):
        self.alg = alg
        self.ring = alg.ring
        self.datum = alg.datum
        self.L = L
        self._dual_basis = None

    @lru_cache(maxsize=None)
    def ball_set(self, L: int) -> frozenset:
        return frozenset(self.datum.enumerate_ball(L))

    def functional(self, values: dict, ball: int | None = None) -> DualFunctional:
        return DualFunctional(self, values, ball)

    def f(self, u: AffineWeylElement, c=None) -> DualFunctional:
        return DualFunctional(self, {u: self.ring.one if c is None else c})

    def zero(self) -> DualFunctional:
        return DualFunctional(self, {})

    # actions ----------------------------------------------------------------
    def bullet(self, z: TwistedElement, f: DualFunctional) -> DualFunctional:
        """``a eta_w . b f_v = b (v w^{-1})(a) f_{v w^{-1}}``; satisfies ``(z . f)(z') = f(z' z)``."""
        d, act = self.datum, self.ring.act
        out: dict = {}
        for w, a in z.terms.items():
            winv = d.inverse(w)
            for v, b in f.values.items():
                u = d.mul(v, winv)
                c = b * act(u, a)
                out[u] = out[u] + c if u in out else c
        return DualFunctional(self, out, f.ball)

    def odot(self, z: TwistedElement, f: DualFunctional) -> DualFunctional:
        """``a eta_w (.) b f_v = a w(b) f_{w v}``."""
        d, act = self.datum, self.ring.act
        out: dict = {}
        for w, a in z.terms.items():
            for v, b in f.values.items():
                u = d.mul(w, v)
                c = a * act(w, b)
                out[u] = out[u] + c if u in out else c
        return DualFunctional(self, out, f.ball)

    def iota_star(self, f: DualFunctional) -> DualFunctional:
        return DualFunctional(self, {u: c for u, c in f.values.items() if u.w == 0}, f.ball)

    def hh0_reduce(self, f: DualFunctional):
        """Canonical form ``iota_star(f)`` and, for each killed term ``c f_u``, the witness data.

        A witness is ``(u, c, mu)`` with
        ``c f_u = c / (x_mu - w(x_mu)) * (x_mu (.) f_u - x_mu . f_u)``, ``w`` the finite part of ``u``.
        """
        d = self.datum
        witnesses = []
        for u in f.support():
            if u.w == 0:
                continue
            i = next(k for k, a in enumerate(d.simple_roots) if d.act_root(u.w, a) != a)
            witnesses.append((u, f.values[u], d.simple_roots[i]))
        return self.iota_star(f), witnesses

    def witness_value(self, u: AffineWeylElement, c, mu) -> DualFunctional:
        """Re-evaluate a witness through the two actions."""
        xm = self.ring.x_of(mu)
        fu = self.f(u)
        diff = self.odot(self.alg.scalar(xm), fu) - self.bullet(self.alg.scalar(xm), fu)
        scale = c / (xm - self.ring.act(u.w, xm))
        return scale * diff

    # coproduct dual -----------------------------------------------------------
    def m_star(self, f: DualFunctional, L: int | None = None) -> dict:
        """``m*(c f_w) = sum_u c f_u (x) f_{u^{-1} w}``, restricted to pairs inside the ball."""
        d = self.datum
        ball = self.ball_set(self.L if L is None else L)
        out: dict = {}
        for w, c in f.values.items():
            for u in ball:
                v = d.mul(d.inverse(u), w)
                if v in ball:
                    out[(u, v)] = out[(u, v)] + c if (u, v) in out else c
        return out

    def pair_hat_tensor(self, table: dict, a, u, b, v):
        """Evaluate ``sum c f_x (x) f_y`` on ``a eta_u (x) b eta_v`` (hat tensor: ``a u(b)``)."""
        c = table.get((u, v))
        if c is None:
            return self.ring.zero
        return c * a * self.ring.act(u, b)

    # dual basis -----------------------------------------------------------------
    def dual_basis_y(self) -> dict:
        """``Y*_{I_w}`` for ``w`` in the ball, keyed by ``w``."""
        if self._dual_basis is None:
            ring, d = self.ring, self.datum
            ball = list(d.enumerate_ball(self.L))
            pos = {u: k for k, u in enumerate(ball)}
            n = len(ball)
            # A[v][u] = coefficient of eta_u in Y_{I_v}; lower triangular in the ball order
            rows = []
            for v in ball:
                y = self.alg.y_elem(v)
                row = [ring.zero] * n
                for u, c in y.terms.items():
                    if u not in pos or pos[u] > pos[v]:
                        raise RuntimeError("Y_{I_v} is not Bruhat-triangular on the ball")
                    row[pos[u]] = c
                rows.append(row)
            inv = _lower_triangular_inverse(rows, ring)
            self._dual_basis = {
                w: DualFunctional(self, {u: inv[pos[u]][pos[w]] for u in ball}) for w in ball
            }
        return self._dual_basis

    def dual_basis_word(self, word) -> DualFunctional:
        return self.dual_basis_y()[self.datum.word_element(word)]

    def inversion_finite_parts(self, w: AffineWeylElement) -> list:
        """Finite parts of the affine roots ``s_{i1}...s_{i(j-1)}(alpha_{ij})`` along the canonical word."""
        d = self.datum
        out = []
        prefix = d.e
        for i in d.reduced_word(w):
            beta, k = d.affine_simple_root(i)
            out.append(d.act_affine_root(prefix, beta, k)[0])
            prefix = d.mul(prefix, d.s(i))
        return out

    def leading_value_claim(self, w: AffineWeylElement):
        """``prod_{alpha > 0} x_alpha^{ell_alpha(w)}``."""
        out = self.ring.one
        for a in self.datum.positive_roots:
            out = out * self.ring.x_of(a) ** self.datum.ell_alpha(w, a)
        return out

    def leading_value_inversions(self, w: AffineWeylElement):
        """``prod x_gamma`` over the finite parts of the inversions of ``w``."""
        out = self.ring.one
        for g in self.inversion_finite_parts(w):
            out = out * self.ring.x_of(g)
        return out

    # filtration -------------------------------------------------------------------
    def stratum_index(self, u: AffineWeylElement) -> int:
        return self.datum.coset_min_length(u)

    def filtration_stratum(self, i: int, L: int | None = None) -> list[AffineWeylElement]:
        L = self.L if L is None else L
        return [u for u in self.datum.enumerate_ball(L) if self.stratum_index(u) == i]

    def stratum_cosets(self, i: int, L: int | None = None) -> dict:
        """Cosets ``t_lam W`` of stratum ``i`` meeting the ball, with completeness flags."""
        d = self.datum
        L = self.L if L is None else L
        cosets: dict = {}
        for u in self.filtration_stratum(i, L):
            cosets.setdefault(u.lam, []).append(u)
        return {lam: (members, len(members) == d.order) for lam, members in cosets.items()}

    def delta_lambda(self, lam):
        d = self.datum
        w = d.w_min_coset(tuple(lam))
        out = self.ring.one
        for a in d.positive_roots:
            out = out * self.ring.x_of(a) ** d.ell_alpha(w, a)
        return out

    # GKM ---------------------------------------------------------------------------
    def gkm_check(self, f: DualFunctional, base_stratum_only: bool = True, subject: str = "functional") -> dict:
        """Divisibility conditions on the values of ``f``.

        For each ``t_lam u`` in the support (restricted to the lowest filtration
        stratum of ``f`` unless ``base_stratum_only`` is false) and each root
        ``alpha``: ``x_alpha^{l}`` divides ``f(t_lam u)`` and ``x_alpha^{l+1}``
        divides ``f(t_lam u) - f(t_lam s_alpha u)``, where ``l = ell_alpha(w_lam)``.
        """
        d, ring = self.datum, self.ring
        failures = []
        skipped = 0
        checked = 0
        if f.is_zero():
            return {"check": "gkm", "subject": subject, "status": "pass", "checked": 0, "skipped": 0, "failures": []}
        not_in_s = [format_element(d, u) for u, c in f.values.items() if not ring.in_S(c)]
        if not_in_s:
            return {"check": "gkm", "subject": subject, "status": "fail", "checked": 0, "skipped": 0,
                    "failures": [{"elem": e, "reason": "value not in S"} for e in not_in_s]}
        base = min(self.stratum_index(u) for u in f.values)
        members = self.ball_set(f.ball)
        lams = sorted({u.lam for u in f.values if not base_stratum_only or self.stratum_index(u) == base})
        for lam in lams:
            w = d.w_min_coset(lam)
            for v in range(d.order):
                u = d.element(lam, v)
                if u not in members:
                    skipped += 1
                    continue
                val = f(u)
                for alpha in d.roots:
                    pos = alpha if d.is_positive(alpha) else tuple(-c for c in alpha)
                    ell = d.ell_alpha(w, pos)
                    checked += 1
                    ok, _ = ring.divides(val, alpha, ell)
                    if not ok:
                        failures.append({"elem": format_element(d, u), "root": list(alpha), "exponent": ell,
                                         "condition": "translation"})
                    s = d.element(lam, d.finite_mul(d.reflection_index(alpha), v))
                    if s not in members:
                        skipped += 1
                        continue
                    checked += 1
                    ok, _ = ring.divides(val - f(s), alpha, ell + 1)
                    if not ok:
                        failures.append({"elem": format_element(d, u), "root": list(alpha), "exponent": ell + 1,
                                         "condition": "finite"})
        return {
            "check": "gkm",
            "subject": subject,
            "status": "pass" if not failures else "fail",
            "checked": checked,
            "skipped": skipped,
            "failures": failures,
        }

    # graded ranks ---------------------------------------------------------------------
    def graded_rank_check(self, i: int) -> dict:
        """Rank statements for the ``i``-th graded piece on the ball.

        ``restricted_rank``: the ``Y*_{I_w}`` with ``w`` in the stratum, restricted
        to the stratum, are independent (expected ``|F_i \\ F_{i+1} cap ball|``).
        ``spans_gkm``: per coset ``t_lam W`` these restrictions and the generators
        ``Delta_lam * (finite dual basis)`` span the same ``S``-module.
        ``iota_rank``: rank of the ``iota_star`` images restricted to the stratum
        translations (at most the number of cosets).
        ``iota_generates``: per coset, the values at ``t_lam`` generate the
        ``S``-module spanned by the dual of ``frak_Y_{w_lam}``.
        """
        d, ring = self.datum, self.ring
        cosets = self.stratum_cosets(i)
        incomplete = sorted(lam for lam, (_, full) in cosets.items() if not full)
        complete = sorted(lam for lam, (_, full) in cosets.items() if full)
        stratum = [u for lam in complete for u in cosets[lam][0]]
        basis = self.dual_basis_y()
        rows = [[basis[w](u) for u in stratum] for w in stratum]
        restricted_rank = linalg.rank(rows, ring) if rows else 0
        finite_dual = self._finite_dual_basis()
        spans = True
        for lam in complete:
            members = cosets[lam][0]
            delta = self.delta_lambda(lam)
            mine = [[basis[w](u) for u in members] for w in members]
            gens = [[delta * g(d.finite(u.w)) for u in members] for g in finite_dual]
            spans = spans and _same_s_span(mine, gens, ring)
        translations = [d.translation(lam) for lam in complete]
        iota_rows = [[basis[w](t) for t in translations] for w in stratum]
        iota_rank = linalg.rank(iota_rows, ring) if iota_rows else 0
        generates = True
        for lam in complete:
            t = d.translation(lam)
            peak = self.alg.pr(self.alg.y_elem(d.w_min_coset(lam))).coeff(t)
            g = ring.one / peak
            ratios = [basis[w](t) / g for w in cosets[lam][0]]
            if not all(ring.in_S(r) for r in ratios):
                generates = False
            elif not any(not ring.is_zero(r) and ring.in_S(ring.one / r) for r in ratios):
                generates = False
        failures = []
        if restricted_rank != len(stratum):
            failures.append("restricted dual basis is not independent")
        if not spans:
            failures.append("restrictions do not span the GKM module")
        if iota_rank != len(complete):
            failures.append("iota_star images do not have one independent value per coset")
        if not generates:
            failures.append("values at t_lambda do not generate the dual of frak_Y_{w_lambda}")
        return {
            "check": "graded_rank",
            "subject": f"stratum {i}",
            "status": "fail" if failures else "pass",
            "failures": failures,
            "stratum": i,
            "cosets": len(complete),
            "incomplete_cosets": [list(l) for l in incomplete],
            "stratum_size": len(stratum),
            "restricted_rank": restricted_rank,
            "spans_gkm": spans,
            "iota_rank": iota_rank,
            "iota_generates": generates,
        }

    def _finite_dual_basis(self) -> list:
        """Values on ``W`` of the functionals dual to the finite ``Y_{I_v}``."""
        ring, d = self.ring, self.datum
        n = d.order
        finite = [d.finite(v) for v in range(n)]
        rows = [[self.alg.y_elem(v).coeff(u) for u in finite] for v in finite]
        inv = linalg.inverse(rows, ring)
        out = []
        for k in range(n):
            vals = {finite[j]: inv[j][k] for j in range(n)}
            out.append(lambda u, vals=vals: vals.get(u, ring.zero))
        return out

    # random inputs ------------------------------------------------------------------------
    def random_functional(self, rng: random.Random, nterms: int = 2, allow_denominator: bool = False) -> DualFunctional:
        ball = self.datum.enumerate_ball(self.L)
        vals = {}
        for _ in range(nterms):
            vals[rng.choice(ball)] = self.alg.random_scalar(rng, allow_denominator)
        return DualFunctional(self, vals)

    # serialization ----------------------------------------------------------------------------
    def to_json(self, f: DualFunctional) -> dict:
        return {
            "ball": f.ball,
            "values": [{"elem": u.to_json(self.datum), "coeff": self.ring.to_json(f.values[u])} for u in f.support()],
        }

    def from_json(self, data: dict) -> DualFunctional:
        vals = {element_from_json(self.datum, v["elem"]): self.ring.from_json(v["coeff"]) for v in data["values"]}
        return DualFunctional(self, vals, int(data.get("ball", self.L)))


def _lower_triangular_inverse(rows, ring):
    n = len(rows)
    inv = [[ring.zero] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = ring.one / rows[j][j]
        for i in range(j + 1, n):
            acc = ring.zero
            for k in range(j, i):
                if not ring.is_zero(rows[i][k]) and not ring.is_zero(inv[k][j]):
                    acc = acc + rows[i][k] * inv[k][j]
            inv[i][j] = -acc / rows[i][i]
    return inv


def _in_s_span(target, gens, ring) -> bool:
    """``target`` is an ``S``-combination of ``gens`` (gens independent over the fraction field)."""
    if not gens:
        return all(ring.is_zero(t) for t in target)
    ncols = len(target)
    a = [[g[c] for g in gens] for c in range(ncols)]
    sol = linalg.solve(a, list(target), ring)
    return sol is not None and all(ring.in_S(s) for s in sol)


def _same_s_span(mine, gens, ring) -> bool:
    return all(_in_s_span(row, gens, ring) for row in mine) and all(_in_s_span(row, mine, ring) for row in gens)
