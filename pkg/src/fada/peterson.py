"""The formal Peterson subalgebra: translation-supported elements of ``Q_{W_a}``.

Besides the general operations (``pr`` of ``X``/``Y`` products, the commutative
product, coproduct, counit and antipode) this module carries the affine type
A1 specifics: the ``sigma_i`` basis, the two-generator presentation
``S[s, t] / (s^2 = x_{-1} s t + mu t)`` and its localization at ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .twisted import TwistedAlgebra, TwistedElement
from .weyl import AffineWeylElement

__all__ = ["PetersonAlgebra", "PresentationElement", "TensorElement"]


class TensorElement:
    """``sum c (eta_{t_1} (x) ... (x) eta_{t_k})`` with every coefficient moved to the left factor."""

    __slots__ = ("alg", "terms", "arity")

    def __init__(self, alg: TwistedAlgebra, terms=None, arity: int = 2):
        self.alg = alg
        self.arity = arity
        is_zero = alg.ring.is_zero
        self.terms = {k: c for k, c in (terms or {}).items() if not is_zero(c)}

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.alg, out, self.arity)

    def __neg__(self):
        return TensorElement(self.alg, {k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return TensorElement(self.alg, {k: c * v for k, v in self.terms.items()}, self.arity)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Componentwise product; translations act trivially, so coefficients simply multiply."""
        d = self.alg.datum
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(d.mul(a, b) for a, b in zip(k1, k2))
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return TensorElement(self.alg, out, self.arity)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    @classmethod
    def tensor(cls, factors: list[TwistedElement]) -> "TensorElement":
        alg = factors[0].alg
        terms = {(): alg.ring.one}
        for f in factors:
            nxt = {}
            for k, c in terms.items():
                for u, c2 in f.terms.items():
                    key = k + (u,)
                    nxt[key] = nxt[key] + c * c2 if key in nxt else c * c2
            terms = nxt
        return cls(alg, terms, len(factors))


@dataclass
class PresentationElement:
    """``sum c_{e,k} s^e t^k`` with ``e`` in ``{0, 1}`` and ``k`` an integer (negative once localized)."""

    peterson: "PetersonAlgebra"
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        is_zero = self.peterson.ring.is_zero
        self.terms = {k: c for k, c in self.terms.items() if not is_zero(c)}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return PresentationElement(self.peterson, out)

    def __neg__(self):
        return PresentationElement(self.peterson, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return PresentationElement(self.peterson, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "PresentationElement") -> "PresentationElement":
        p = self.peterson
        x_m1, mu = p.x_minus_one, p.mu
        out: dict = {}

        def add(key, c):
            out[key] = out[key] + c if key in out else c

        for (e1, k1), c1 in self.terms.items():
            for (e2, k2), c2 in other.terms.items():
                c = c1 * c2
                if e1 + e2 <= 1:
                    add((e1 + e2, k1 + k2), c)
                else:
                    # s^2 = x_{-1} s t + mu t
                    add((1, k1 + k2 + 1), c * x_m1)
                    add((0, k1 + k2 + 1), c * mu)
        return PresentationElement(p, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PresentationElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self) -> dict:
        ring = self.peterson.ring
        return {
            "monomials": [
                {"s": e, "t": k, "coeff": ring.to_json(c)} for (e, k), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0]))
            ]
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        ring = self.peterson.ring
        parts = []
        for (e, k), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            mono = (["s"] if e else []) + ([] if k == 0 else [f"t^{k}" if k != 1 else "t"])
            parts.append("*".join([f"({ring.format(c)})"] + mono))
        return " + ".join(parts)


class PetersonAlgebra:
    """Operations on translation-supported elements of a :class:`TwistedAlgebra`."""

    def __init__(self, alg: TwistedAlgebra):
        self.alg = alg
        self.ring = alg.ring
        self.datum = alg.datum
        self._frak_x = lru_cache(maxsize=None)(lambda u: self.alg.pr(self.alg.x_elem(u)))
        self._frak_y = lru_cache(maxsize=None)(lambda u: self.alg.pr(self.alg.y_elem(u)))

    # basic elements -------------------------------------------------------
    def frak_x(self, u: AffineWeylElement) -> TwistedElement:
        return self._frak_x(u)

    def frak_y(self, u: AffineWeylElement) -> TwistedElement:
        return self._frak_y(u)

    def frak_y_word(self, word) -> TwistedElement:
        return self.alg.pr(self.alg.y_word(word))

    def frak_x_word(self, word) -> TwistedElement:
        return self.alg.pr(self.alg.x_word(word))

    def p_mul(self, a: TwistedElement, b: TwistedElement) -> TwistedElement:
        if not (a.is_translation_supported() and b.is_translation_supported()):
            raise ValueError("Peterson product needs translation-supported factors")
        return self.alg.mul(a, b)

    @property
    def x_minus_one(self):
        a = self.datum.simple_roots[0]
        return self.ring.x_of(tuple(-c for c in a))

    @property
    def mu(self):
        return self.ring.mu()

    # expansion in the frak_Y basis -----------------------------------------
    def w_lambda(self, lam) -> AffineWeylElement:
        return self.datum.w_min_coset(tuple(lam))

    def _top_translation(self, xi: TwistedElement) -> AffineWeylElement:
        d = self.datum
        return max(xi.terms, key=lambda t: (d.length(self.w_lambda(t.lam)), t.lam))

    def expand_in_basis(self, xi: TwistedElement, L: int | None = None) -> dict:
        """Coefficients ``c_w`` (``w`` minimal in its coset) with ``xi = sum c_w frak_Y_w``."""
        if not xi.is_translation_supported():
            raise ValueError("element is not translation supported")
        d = self.datum
        rest = xi
        out: dict = {}
        while not rest.is_zero():
            t = self._top_translation(rest)
            w = self.w_lambda(t.lam)
            if L is not None and d.length(w) > L:
                raise ValueError(f"support reaches beyond the ball of radius {L}")
            basis = self.frak_y(w)
            c = rest.terms[t] / basis.terms[t]
            out[w] = c
            rest = rest - c * basis
        return out

    def expand_in_frak_y(self, xi: TwistedElement, L: int | None = None) -> dict:
        """Affine A1: coefficients keyed by the index ``i`` of ``sigma_i``."""
        self.datum.require_a1()
        return {self.datum.sigma_index(w): c for w, c in self.expand_in_basis(xi, L).items()}

    def frak_y_sigma(self, i: int) -> TwistedElement:
        return self.frak_y(self.datum.sigma(i))

    # presentation ----------------------------------------------------------
    def presentation(self, terms: dict) -> PresentationElement:
        return PresentationElement(self, dict(terms))

    def gen_s(self) -> PresentationElement:
        return self.presentation({(1, 0): self.ring.one})

    def gen_t(self, k: int = 1) -> PresentationElement:
        return self.presentation({(0, k): self.ring.one})

    def to_presentation(self, xi: TwistedElement, L: int | None = None) -> PresentationElement:
        out = {}
        for i, c in self.expand_in_frak_y(xi, L).items():
            out[(i % 2, i // 2)] = c
        return self.presentation(out)

    def from_presentation(self, p: PresentationElement) -> TwistedElement:
        self.datum.require_a1()
        out = self.alg.zero()
        for (e, k), c in p.terms.items():
            if k < 0:
                raise ValueError("negative powers of t only exist in the localization")
            out = out + c * self.frak_y_sigma(2 * k + e)
        return out

    def relation(self) -> PresentationElement:
        """``s^2 - x_{-1} s t - mu t`` computed without reduction (should normalize to 0)."""
        s = self.gen_s()
        return s * s - self.x_minus_one * (s * self.gen_t()) - self.mu * self.gen_t()

    def localize_check(self, k: int, zs=None) -> dict:
        """Closure of ``{t^i, s t^i : |i| <= k}`` and well-definedness of the extended diamond action."""
        self.datum.require_a1()
        basis = [self.presentation({(e, i): self.ring.one}) for i in range(-k, k + 1) for e in (0, 1)]
        closure = all(
            all(e in (0, 1) for (e, _) in (a * b).terms) for a in basis for b in basis
        )
        inverse = (self.gen_t(1) * self.gen_t(-1)) == self.presentation({(0, 0): self.ring.one})
        relation = (self.gen_s() * self.gen_s()) == (
            self.x_minus_one * self.presentation({(1, 1): self.ring.one}) + self.mu * self.gen_t()
        )
        alg = self.alg
        if zs is None:
            zs = [alg.demazure(0), alg.demazure(1), alg.pushpull(0), alg.pushpull(1), alg.eta(self.datum.s(1))]
        instances = []
        ys = [self.frak_y_sigma(0), self.frak_y_sigma(1)]
        for xi in ys:
            for i in range(1, k + 1):
                for j in range(1, k + 1):
                    y2i, y2j = self.frak_y_sigma(2 * i), self.frak_y_sigma(2 * j)
                    for z in zs:
                        top = alg.diamond(z, self.p_mul(xi, y2j))
                        bottom = alg.diamond(z, self.p_mul(y2i, y2j))
                        a = alg.diamond(z, xi)
                        b = alg.diamond(z, y2i)
                        instances.append(
                            {
                                "i": i,
                                "j": j,
                                "numerator_factor": top == self.p_mul(a, y2j),
                                "denominator_factor": bottom == self.p_mul(b, y2j),
                                "cross_multiplied": self.p_mul(top, b) == self.p_mul(a, bottom),
                            }
                        )
        well_defined = all(all(v for key, v in inst.items() if key not in ("i", "j")) for inst in instances)
        return {
            "closure": closure,
            "t_inverse": inverse,
            "relation": relation,
            "well_defined": well_defined,
            "instances": len(instances),
        }

    # Hopf structure --------------------------------------------------------
    def coproduct(self, xi: TwistedElement, arity: int = 2) -> TensorElement:
        if not xi.is_translation_supported():
            raise ValueError("coproduct is defined on translation-supported elements")
        return TensorElement(self.alg, {(t,) * arity: c for t, c in xi.terms.items()}, arity)

    def counit(self, xi: TwistedElement):
        return self.ring.sum(xi.terms.values())

    def antipode(self, xi: TwistedElement) -> TwistedElement:
        d = self.datum
        return self.alg.element({d.translation(tuple(-c for c in t.lam)): c for t, c in xi.terms.items()})

    def coproduct_apply(self, tensor: TensorElement, position: int) -> TensorElement:
        """Apply the coproduct to one tensor factor."""
        out = {}
        for k, c in tensor.terms.items():
            key = k[:position] + (k[position],) + k[position:]
            out[key] = c
        return TensorElement(self.alg, out, tensor.arity + 1)

    def counit_apply(self, tensor: TensorElement, position: int) -> TensorElement:
        out = {}
        for k, c in tensor.terms.items():
            key = k[:position] + k[position + 1 :]
            out[key] = out[key] + c if key in out else c
        return TensorElement(self.alg, out, tensor.arity - 1)

    def tensor_to_element(self, tensor: TensorElement) -> TwistedElement:
        if tensor.arity != 1:
            raise ValueError("expected a single tensor factor")
        return self.alg.element({k[0]: c for k, c in tensor.terms.items()})

    def antipode_multiply(self, tensor: TensorElement, left: bool = True) -> TwistedElement:
        """``m (S (x) id)`` (or ``m (id (x) S)``) of a tensor square."""
        d = self.datum
        out = self.alg.zero()
        for (a, b), c in tensor.terms.items():
            if left:
                a = d.translation(tuple(-x for x in a.lam))
            else:
                b = d.translation(tuple(-x for x in b.lam))
            out = out + self.alg.eta(d.mul(a, b), c)
        return out

    def coproduct_in_basis(self, xi: TwistedElement) -> dict:
        """Coefficients of ``coproduct(xi)`` in ``frak_Y_v (x) frak_Y_w`` (``v, w`` coset minimal)."""
        d = self.datum
        rest = self.coproduct(xi)

        def key(pair):
            a, b = pair
            la, lb = d.length(self.w_lambda(a.lam)), d.length(self.w_lambda(b.lam))
            return (la + lb, la, a.lam, b.lam)

        out: dict = {}
        while not rest.is_zero():
            a, b = max(rest.terms, key=key)
            va, vb = self.w_lambda(a.lam), self.w_lambda(b.lam)
            ya, yb = self.frak_y(va), self.frak_y(vb)
            c = rest.terms[(a, b)] / (ya.terms[a] * yb.terms[b])
            out[(va, vb)] = out[(va, vb)] + c if (va, vb) in out else c
            rest = rest - c * TensorElement.tensor([ya, yb])
        return out

    def coproduct_in_frak_y(self, xi: TwistedElement) -> dict:
        """Affine A1: coefficients keyed by ``(i, j)`` for ``frak_Y_{sigma_i} (x) frak_Y_{sigma_j}``."""
        self.datum.require_a1()
        d = self.datum
        return {(d.sigma_index(a), d.sigma_index(b)): c for (a, b), c in self.coproduct_in_basis(xi).items()}

    # kernel of z -> z <> frak_Y_{sigma_1} ------------------------------------
    def in_left_ideal_of_x0(self, z: TwistedElement) -> bool:
        """Affine A1: ``z`` lies in ``D_{W_a} X_0`` (X-coefficients in S, words ending in 0)."""
        self.datum.require_a1()
        coeffs = self.alg.expand_in_x_basis(z)
        return all(self.ring.in_S(c) and word and word[-1] == 0 for word, c in coeffs.items())
