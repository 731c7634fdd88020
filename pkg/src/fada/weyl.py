"""Root data and the affine Weyl group ``W_a = Q^vee x| W``.

Elements of ``W_a`` are stored as ``t_lam w`` with ``lam`` a coroot-lattice
vector (coordinates in the simple coroots) and ``w`` an index into the
enumerated finite Weyl group.  Affine roots are pairs ``(gamma, k)`` standing
for ``gamma + k*delta`` and the translation ``t_lam`` acts by

    t_lam(gamma + k delta) = gamma + (k - <lam, gamma>) delta.

Everything here is exact integer combinatorics.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
import re

__all__ = [
    "AffineWeylElement",
    "RootDatum",
    "cartan_matrix",
    "parse_element",
    "format_element",
]

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def cartan_matrix(label: str) -> list[list[int]]:
    """Cartan matrix ``a_ij = <alpha_i^vee, alpha_j>`` for a type label like ``A2``."""
    m = re.fullmatch(r"([ABCDG])(\d+)", label.strip().upper())
    if m is None:
        raise ValueError(f"unknown root system label {label!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ValueError("rank must be positive")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if kind == "A":
        pass
    elif kind == "B" and n >= 2:
        a[n - 1][n - 2] = -2
    elif kind == "C" and n >= 2:
        a[n - 2][n - 1] = -2
    elif kind == "D" and n >= 4:
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif kind == "G" and n == 2:
        a = [[2, -1], [-3, 2]]
    else:
        raise ValueError(f"unsupported root system {label!r}")
    return a


@dataclass(frozen=True, order=True)
class AffineWeylElement:
    """``t_lam w``: translation by ``lam`` (coroot coordinates) times finite ``w``."""

    lam: Vec
    w: int

    def to_json(self, datum: "RootDatum") -> dict:
        return {"lambda": list(self.lam), "word": datum.finite_words[self.w]}


class RootDatum:
    """A finite irreducible root system together with its affine extension.

    ``cartan`` follows the convention ``cartan[i][j] = <alpha_i^vee, alpha_j>``.
    Index 0 is reserved for the affine simple reflection ``s_0 = t_{theta^vee} s_theta``;
    finite simple reflections are ``1..n``.
    """

    def __init__(self, cartan, label: str | None = None):
        self.cartan: Mat = tuple(tuple(int(c) for c in row) for row in cartan)
        self.rank = n = len(self.cartan)
        if any(len(row) != n for row in self.cartan):
            raise ValueError("Cartan matrix must be square")
        if any(self.cartan[i][i] != 2 for i in range(n)):
            raise ValueError("Cartan matrix must have 2 on the diagonal")
        self.label = label or "cartan"
        self._build_roots()
        self._build_weyl_group()
        self.e = AffineWeylElement((0,) * n, 0)

    @classmethod
    def from_type(cls, label: str) -> "RootDatum":
        return cls(cartan_matrix(label), label=label.strip().upper())

    # ------------------------------------------------------------------
    # finite data
    def _reflect_root(self, i: int, beta: Vec) -> Vec:
        c = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        return tuple(b - c * (1 if j == i else 0) for j, b in enumerate(beta))

    def _reflect_coroot(self, i: int, lam: Vec) -> Vec:
        c = self.pairing(lam, self.simple_roots[i])
        return tuple(l - c * (1 if j == i else 0) for j, l in enumerate(lam))

    def _build_roots(self) -> None:
        n = self.rank
        self.simple_roots: tuple[Vec, ...] = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
        coroot = {a: a for a in self.simple_roots}
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    g = self._reflect_root(i, beta)
                    if g not in coroot:
                        coroot[g] = self._reflect_coroot(i, coroot[beta])
                        nxt.append(g)
            frontier = nxt
        self.roots: tuple[Vec, ...] = tuple(sorted(coroot, key=lambda r: (-sum(r), r)))
        self.positive_roots: tuple[Vec, ...] = tuple(
            sorted((r for r in coroot if all(c >= 0 for c in r)), key=lambda r: (sum(r), r))
        )
        self._coroot = coroot
        heights = [sum(r) for r in self.positive_roots]
        top = max(heights)
        highest = [r for r in self.positive_roots if sum(r) == top]
        if len(highest) != 1:
            raise ValueError("root system is not irreducible")
        self.theta: Vec = highest[0]

    def coroot(self, beta: Vec) -> Vec:
        return self._coroot[tuple(beta)]

    def pairing(self, lam: Vec, beta: Vec) -> int:
        """``<lam, beta>`` for ``lam`` in the coroot lattice and ``beta`` in the root lattice."""
        n = self.rank
        return sum(lam[i] * self.cartan[i][j] * beta[j] for i in range(n) for j in range(n) if lam[i] and beta[j])

    def is_positive(self, beta: Vec) -> bool:
        return any(c > 0 for c in beta) and all(c >= 0 for c in beta)

    def _build_weyl_group(self) -> None:
        n = self.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        gens = []
        for i in range(n):
            cols = [self._reflect_root(i, a) for a in self.simple_roots]
            gens.append(tuple(tuple(cols[j][r] for j in range(n)) for r in range(n)))
        self._simple_mats = gens
        mats: list[Mat] = [ident]
        words: list[list[int]] = [[]]
        index = {ident: 0}
        level = [0]
        while level:
            nxt = []
            for k in level:
                for i in range(n):
                    m = _matmul(mats[k], gens[i])
                    if m not in index:
                        index[m] = len(mats)
                        mats.append(m)
                        words.append(words[k] + [i + 1])
                        nxt.append(index[m])
            level = nxt
        self._mats = mats
        self._mat_index = index
        # words use 1-based simple reflection labels
        self.finite_words: list[list[int]] = words
        self.order = len(mats)
        self._inv = [index[_matmul_word(gens, reversed(words[a]), ident)] for a in range(self.order)]
        self.w0 = max(range(self.order), key=lambda a: len(words[a]))
        self.theta_reflection = self.reflection_index(self.theta)

    def act_root(self, w: int, beta: Vec) -> Vec:
        return _matvec(self._mats[w], tuple(beta))

    def act_coroot(self, w: int, lam: Vec) -> Vec:
        # coroot lattice action via the dual representation: w(lam) = sum lam_i w(alpha_i^vee)
        n = self.rank
        out = [0] * n
        for i, li in enumerate(lam):
            if li:
                c = self._coroot_image(w, i)
                for j in range(n):
                    out[j] += li * c[j]
        return tuple(out)

    @lru_cache(maxsize=None)
    def _coroot_image(self, w: int, i: int) -> Vec:
        return self.coroot(self.act_root(w, self.simple_roots[i]))

    @lru_cache(maxsize=None)
    def finite_mul(self, a: int, b: int) -> int:
        return self._mat_index[_matmul(self._mats[a], self._mats[b])]

    def finite_inverse(self, a: int) -> int:
        return self._inv[a]

    def finite_index(self, word) -> int:
        k = 0
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError(f"finite simple reflection index out of range: {i}")
            k = self.finite_mul(k, self._simple_index(i))
        return k

    def _simple_index(self, i: int) -> int:
        return self._mat_index[self._simple_mats[i - 1]]

    def reflection_index(self, beta: Vec) -> int:
        """Index of ``s_beta`` in the enumerated finite group."""
        beta = tuple(beta)
        bv = self.coroot(beta)
        n = self.rank
        cols = []
        for a in self.simple_roots:
            c = self.pairing(bv, a)
            cols.append(tuple(a[j] - c * beta[j] for j in range(n)))
        m = tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))
        return self._mat_index[m]

    def finite_length(self, w: int) -> int:
        return len(self.finite_words[w])

    def moves_negative(self, w: int, beta: Vec) -> bool:
        """True when ``w(beta)`` is a negative root."""
        return not self.is_positive(self.act_root(w, beta))

    # ------------------------------------------------------------------
    # affine group
    def element(self, lam=None, w: int = 0) -> AffineWeylElement:
        if lam is None:
            lam = (0,) * self.rank
        return AffineWeylElement(tuple(int(c) for c in lam), int(w))

    def translation(self, lam) -> AffineWeylElement:
        return self.element(lam, 0)

    def finite(self, w: int) -> AffineWeylElement:
        return self.element(None, w)

    @cached_property
    def simple_reflections(self) -> tuple[AffineWeylElement, ...]:
        s0 = self.element(self.coroot(self.theta), self.theta_reflection)
        return (s0,) + tuple(self.finite(self._simple_index(i)) for i in range(1, self.rank + 1))

    def s(self, i: int) -> AffineWeylElement:
        return self.simple_reflections[i]

    def mul(self, u: AffineWeylElement, v: AffineWeylElement) -> AffineWeylElement:
        """``(t_lam a)(t_mu b) = t_{lam + a(mu)} (ab)``."""
        mu = self.act_coroot(u.w, v.lam)
        return AffineWeylElement(tuple(a + b for a, b in zip(u.lam, mu)), self.finite_mul(u.w, v.w))

    def inverse(self, u: AffineWeylElement) -> AffineWeylElement:
        winv = self._inv[u.w]
        lam = self.act_coroot(winv, u.lam)
        return AffineWeylElement(tuple(-c for c in lam), winv)

    def word_element(self, word) -> AffineWeylElement:
        u = self.e
        for i in word:
            u = self.mul(u, self.s(i))
        return u

    def reflection(self, beta: Vec, k: int = 0) -> AffineWeylElement:
        """``s_{beta + k delta} = t_{-k beta^vee} s_beta``."""
        bv = self.coroot(tuple(beta))
        return self.element(tuple(-k * c for c in bv), self.reflection_index(beta))

    def act_affine_root(self, u: AffineWeylElement, beta: Vec, k: int) -> tuple[Vec, int]:
        g = self.act_root(u.w, beta)
        return g, k - self.pairing(u.lam, g)

    @staticmethod
    def affine_root_positive(beta: Vec, k: int) -> bool:
        return k > 0 or (k == 0 and all(c >= 0 for c in beta))

    def affine_simple_root(self, i: int) -> tuple[Vec, int]:
        if i == 0:
            return tuple(-c for c in self.theta), 1
        return self.simple_roots[i - 1], 0

    # ------------------------------------------------------------------
    # lengths
    def ell_alpha(self, u: AffineWeylElement, alpha: Vec) -> int:
        """Number of positive affine roots ``+-alpha + k delta`` inverted by ``u^{-1}``."""
        alpha = tuple(alpha)
        p = self.pairing(u.lam, alpha)
        neg = self.moves_negative(self._inv[u.w], alpha)
        if p <= 0:
            return -p + (1 if neg else 0)
        return p - (1 if neg else 0)

    def length(self, u: AffineWeylElement) -> int:
        return sum(self.ell_alpha(u, a) for a in self.positive_roots)

    def ell_alpha_bruteforce(self, u: AffineWeylElement, alpha: Vec, kmax: int) -> int:
        """Count inversions ``beta = +-alpha + k delta > 0`` with ``u^{-1} beta < 0``, ``k <= kmax``."""
        uinv = self.inverse(u)
        count = 0
        neg_alpha = tuple(-c for c in alpha)
        for k in range(kmax + 1):
            for beta in (tuple(alpha), neg_alpha):
                if not self.affine_root_positive(beta, k):
                    continue
                g, m = self.act_affine_root(uinv, beta, k)
                if not self.affine_root_positive(g, m):
                    count += 1
        return count

    def left_descent(self, u: AffineWeylElement, i: int) -> bool:
        return self.length(self.mul(self.s(i), u)) < self.length(u)

    def right_descent(self, u: AffineWeylElement, i: int) -> bool:
        return self.length(self.mul(u, self.s(i))) < self.length(u)

    def reduced_word(self, u: AffineWeylElement) -> tuple[int, ...]:
        """Lexicographically smallest reduced word in the letters ``0..n``."""
        return self._reduced_word(u)

    @lru_cache(maxsize=None)
    def _reduced_word(self, u: AffineWeylElement) -> tuple[int, ...]:
        word = []
        cur = u
        ell = self.length(cur)
        while ell:
            for i in range(self.rank + 1):
                nxt = self.mul(self.s(i), cur)
                m = self.length(nxt)
                if m < ell:
                    word.append(i)
                    cur, ell = nxt, m
                    break
        return tuple(word)

    def w_min_coset(self, lam) -> AffineWeylElement:
        """The minimal-length element of the coset ``t_lam W``."""
        cands = [self.element(lam, w) for w in range(self.order)]
        lengths = [self.length(c) for c in cands]
        best = min(lengths)
        found = [c for c, l in zip(cands, lengths) if l == best]
        assert len(found) == 1
        return found[0]

    def bruhat_leq(self, u: AffineWeylElement, v: AffineWeylElement) -> bool:
        return self._bruhat_leq(u, v)

    @lru_cache(maxsize=None)
    def _bruhat_leq(self, u: AffineWeylElement, v: AffineWeylElement) -> bool:
        lu, lv = self.length(u), self.length(v)
        if lu > lv:
            return False
        if lv == 0:
            return lu == 0
        if lu == lv:
            return u == v
        s = self.s(self.reduced_word(v)[0])
        sv = self.mul(s, v)
        su = self.mul(s, u)
        if self.length(su) < lu:
            return self._bruhat_leq(su, sv)
        return self._bruhat_leq(u, sv)

    def bruhat_lt(self, u: AffineWeylElement, v: AffineWeylElement) -> bool:
        return u != v and self.bruhat_leq(u, v)

    def enumerate_ball(self, L: int) -> list[AffineWeylElement]:
        """All elements of length at most ``L``, sorted by (length, reduced word)."""
        if L < 0:
            raise ValueError("ball radius must be non-negative")
        return list(self._ball(L))

    @lru_cache(maxsize=None)
    def _ball(self, L: int) -> tuple[AffineWeylElement, ...]:
        seen = {self.e}
        level = [self.e]
        for _ in range(L):
            nxt = []
            for u in level:
                for i in range(self.rank + 1):
                    v = self.mul(u, self.s(i))
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            level = nxt
        return tuple(sorted(seen, key=lambda x: (self.length(x), self.reduced_word(x))))

    def coset_min_length(self, u: AffineWeylElement) -> int:
        """``l(w_lam)`` for ``u`` in ``t_lam W``; this is the filtration stratum of ``u``."""
        return self.length(self.w_min_coset(u.lam))

    def translation_part_orbit(self, lam) -> set[Vec]:
        return {self.act_coroot(w, tuple(lam)) for w in range(self.order)}

    # ------------------------------------------------------------------
    # affine A1 indexing
    def sigma(self, i: int) -> AffineWeylElement:
        """The elements ``sigma_i`` of affine type A1 (``sigma_{2i} = t_{-i alpha^vee}``)."""
        self.require_a1()
        if i >= 0:
            word = [1, 0] * (i // 2) if i % 2 == 0 else [0] + [1, 0] * (i // 2)
        else:
            j = -i
            word = [0, 1] * (j // 2) if j % 2 == 0 else [1] + [0, 1] * (j // 2)
        return self.word_element(word)

    def sigma_index(self, u: AffineWeylElement) -> int:
        self.require_a1()
        word = self.reduced_word(u)
        if not word:
            return 0
        n = len(word)
        return n if word[-1] == 0 else -n

    def require_a1(self) -> None:
        if self.rank != 1:
            raise ValueError("operation is only defined for affine type A1")

    def __repr__(self) -> str:
        return f"RootDatum({self.label}, rank={self.rank}, |W|={self.order})"


def _matmul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _matmul_word(gens, word, ident: Mat) -> Mat:
    m = ident
    for i in word:
        m = _matmul(m, gens[i - 1])
    return m


def _matvec(a: Mat, v: Vec) -> Vec:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


def all_subword_products(datum: RootDatum, word) -> set[AffineWeylElement]:
    """Products of all reduced subwords of ``word`` (used as a Bruhat-order oracle)."""
    out = set()
    for r in range(len(word) + 1):
        for idx in combinations(range(len(word)), r):
            sub = [word[k] for k in idx]
            u = datum.word_element(sub)
            if datum.length(u) == len(sub):
                out.add(u)
    return out


_ELEMENT_RE = re.compile(r"^\s*(?:t\[(?P<lam>[^\]]*)\])?\s*\*?\s*(?P<word>(?:s\d+)*)\s*$")


def parse_element(datum: RootDatum, text: str) -> AffineWeylElement:
    """Parse ``"t[l1,...,ln]*s1s0"``; either part may be omitted, ``""`` is the identity."""
    m = _ELEMENT_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse affine Weyl element {text!r}")
    lam = (0,) * datum.rank
    if m.group("lam") is not None:
        parts = [p for p in m.group("lam").split(",") if p.strip()]
        if len(parts) != datum.rank:
            raise ValueError(f"translation needs {datum.rank} coordinates: {text!r}")
        lam = tuple(int(p) for p in parts)
    letters = [int(x) for x in re.findall(r"s(\d+)", m.group("word") or "")]
    if any(i > datum.rank for i in letters):
        raise ValueError(f"reflection index out of range in {text!r}")
    return datum.mul(datum.translation(lam), datum.word_element(letters))


def format_element(datum: RootDatum, u: AffineWeylElement) -> str:
    """Inverse of :func:`parse_element` using the canonical finite word."""
    word = "".join(f"s{i}" for i in datum.finite_words[u.w])
    lam = ",".join(str(c) for c in u.lam)
    if any(u.lam):
        return f"t[{lam}]*{word}" if word else f"t[{lam}]"
    return word


def element_from_json(datum: RootDatum, data: dict) -> AffineWeylElement:
    lam = tuple(int(c) for c in data.get("lambda", [0] * datum.rank))
    word = [int(i) for i in data.get("word", [])]
    return datum.mul(datum.translation(lam), datum.word_element(word))
