from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fada import RootDatum, format_element, parse_element

A1 = RootDatum.from_type("A1")
A2 = RootDatum.from_type("A2")


# oracle: affine A1 acting on the coroot line, lambda measured in units of alpha^vee -----
# s1: x -> -x, s0 = t_{alpha^vee} s1: x -> 1 - x; an element is (sign, shift): x -> sign*x + shift
def _line_map(word):
    sign, shift = 1, 0
    for i in word:
        # compose on the right: (g . s_i)(x) = g(s_i(x))
        a, b = (-1, 0) if i == 1 else (-1, 1)
        sign, shift = sign * a, sign * b + shift
    return sign, shift


def _line_of(u):
    return (1 if u.w == 0 else -1), u.lam[0]


def _inversions(sign, shift, kmax=12):
    """Positive affine roots +-alpha + k delta (as 2x + k, -2x + k) sent negative by u^{-1}."""
    count = 0
    for eps in (1, -1):
        for k in range(0 if eps > 0 else 1, kmax):
            # (f o u)(x) = eps*2*(sign*x + shift) + k
            s, m = eps * 2 * sign, eps * 2 * shift + k
            positive = m >= 0 if s > 0 else m >= 1
            count += not positive
    return count


def _bfs_lengths(datum, L):
    seen = {datum.e: 0}
    frontier = [datum.e]
    for n in range(1, L + 1):
        nxt = []
        for u in frontier:
            for s in datum.simple_reflections:
                v = datum.mul(u, s)
                if v not in seen:
                    seen[v] = n
                    nxt.append(v)
        frontier = nxt
    return seen


# multiplication ---------------------------------------------------------------------------
def test_s0_is_translation_times_reflection():
    for d in (A1, A2):
        theta = d.theta
        expected = d.mul(d.translation(d.coroot(theta)), d.finite(d.reflection_index(theta)))
        assert d.s(0) == expected


def test_s1_s0_is_negative_translation():
    assert A1.mul(A1.s(1), A1.s(0)) == A1.translation((-1,))
    assert A1.sigma(2) == A1.translation((-1,))


@pytest.mark.parametrize("d", [A1, A2])
def test_inverse_and_associativity(d):
    ball = d.enumerate_ball(3)
    for u in ball:
        assert d.mul(u, d.inverse(u)) == d.e
    for u, v, w in zip(ball, ball[3:], ball[7:]):
        assert d.mul(d.mul(u, v), w) == d.mul(u, d.mul(v, w))


def test_line_oracle_agrees_with_group_law():
    for u in A1.enumerate_ball(6):
        assert _line_map(A1.reduced_word(u)) == _line_of(u)


# lengths ----------------------------------------------------------------------------------
def test_ell_alpha_translation():
    lam = (-1, 0)  # <lam, alpha_1> = -2
    assert A2.pairing(lam, (1, 0)) == -2
    assert A2.ell_alpha(A2.translation(lam), (1, 0)) == 2
    assert A2.ell_alpha(A2.e, (1, 1)) == 0


def test_ell_alpha_sigma3():
    s3 = A1.sigma(3)
    assert A1.ell_alpha(s3, (1,)) == 3
    assert A1.ell_alpha_bruteforce(s3, (1,), 10) == 3
    assert _inversions(*_line_of(s3)) == 3


def test_ell_alpha_against_line_oracle():
    for u in A1.enumerate_ball(6):
        assert A1.ell_alpha(u, (1,)) == _inversions(*_line_of(u)), format_element(A1, u)


def test_ell_alpha_against_bruteforce_a2():
    for u in A2.enumerate_ball(4):
        for a in A2.positive_roots:
            assert A2.ell_alpha(u, a) == A2.ell_alpha_bruteforce(u, a, 10)


def test_lengths_against_bfs():
    for d, L in ((A1, 6), (A2, 4)):
        for u, n in _bfs_lengths(d, L).items():
            assert d.length(u) == n
    theta = A2.coroot(A2.theta)
    t = A2.translation(theta)
    assert A2.length(t) == 4
    assert _bfs_lengths(A2, 4)[t] == 4


def test_length_of_sigma():
    for i in range(7):
        assert A1.length(A1.sigma(2 * i)) == 2 * i
    assert A1.length(A1.e) == 0


# reduced words and cosets -----------------------------------------------------------------
def test_reduced_word_examples():
    assert A1.reduced_word(A1.sigma(3)) == (0, 1, 0)
    assert A1.reduced_word(A1.e) == ()
    assert A1.reduced_word(A1.translation((1,))) == (0, 1)


@pytest.mark.parametrize("d", [A1, A2])
def test_reduced_word_is_lex_smallest(d):
    by_length = {}
    for u in d.enumerate_ball(4):
        by_length.setdefault(d.length(u), []).append(u)
    for n, elems in by_length.items():
        words = {}
        # every word of length n in the generators; keep those that are reduced
        for word in _all_words(d.rank, n):
            u = d.word_element(word)
            if d.length(u) == n:
                words.setdefault(u, []).append(word)
        for u in elems:
            assert d.reduced_word(u) == min(words[u])


def _all_words(rank, n):
    words = [()]
    for _ in range(n):
        words = [w + (i,) for w in words for i in range(rank + 1) if not w or w[-1] != i]
    return words


def test_w_min_coset():
    for i in range(4):
        assert A1.w_min_coset((-i,)) == A1.sigma(2 * i)
    assert A1.w_min_coset((0,)) == A1.e
    for i in range(1, 4):
        coset = [A1.element((i,), w) for w in range(A1.order)]
        assert A1.w_min_coset((i,)) == min(coset, key=A1.length) == A1.sigma(2 * i - 1)


# Bruhat order -------------------------------------------------------------------------------
def test_bruhat_infinite_dihedral_oracle():
    # in the infinite dihedral group u < v exactly when l(u) < l(v)
    ball = A1.enumerate_ball(5)
    for u in ball:
        for v in ball:
            expected = u == v or A1.length(u) < A1.length(v)
            assert A1.bruhat_leq(u, v) == expected


def test_bruhat_subword_oracle_a2():
    ball = A2.enumerate_ball(4)
    for v in ball:
        word = A2.reduced_word(v)
        below = {A2.word_element([word[i] for i in idx])
                 for r in range(len(word) + 1) for idx in combinations(range(len(word)), r)}
        for u in ball:
            assert A2.bruhat_leq(u, v) == (u in below)


def test_bruhat_examples():
    assert A1.bruhat_lt(A1.sigma(2), A1.sigma(3))
    assert not A1.bruhat_leq(A1.sigma(2), A1.sigma(-1))
    for u in A2.enumerate_ball(3):
        assert A2.bruhat_leq(A2.e, u)
    assert A1.bruhat_lt(A1.w_min_coset((0,)), A1.w_min_coset((1,)))


# ball ----------------------------------------------------------------------------------------
def test_enumerate_ball_examples():
    assert A1.enumerate_ball(0) == [A1.e]
    two = A1.enumerate_ball(2)
    assert len(two) == 5
    assert {A1.reduced_word(u) for u in two} == {(), (0,), (1,), (0, 1), (1, 0)}
    assert set(A2.enumerate_ball(1)) == {A2.e, A2.s(0), A2.s(1), A2.s(2)}


# ell_alpha of minimal coset representatives and Bruhat drops -------------------------------
lams = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=40, deadline=None)
@given(lams)
def test_ell_alpha_of_w_lambda(lam):
    w = A2.w_min_coset(lam)
    for a in A2.positive_roots:
        p = A2.pairing(lam, a)
        assert A2.ell_alpha(w, a) == (-p if p <= 0 else p - 1)


@settings(max_examples=30, deadline=None)
@given(lams)
def test_bruhat_drops_below_w_lambda(lam):
    w = A2.w_min_coset(lam)
    for a in A2.positive_roots:
        p = A2.pairing(lam, a)
        step = A2.coroot(a)
        sign = 1 if p <= 0 else -1
        for k in range(1, A2.ell_alpha(w, a) + 1):
            mu = tuple(l + sign * k * c for l, c in zip(lam, step))
            assert A2.bruhat_lt(A2.w_min_coset(mu), w)


@pytest.mark.parametrize("d", [A1, A2])
def test_final_chain(d):
    a = d.simple_roots[0]
    av = d.coroot(a)
    for start, lam in (("0", (0,) * d.rank), ("1", None)):
        if lam is None:
            lam = next((v for v in [(1,), (1, 0), (0, 1), (1, 1)] if len(v) == d.rank and d.pairing(v, a) == 1), None)
            if lam is None:
                continue
        p = d.pairing(lam, a)
        shifts = [0, 1, -1, 2, -2, 3] if p == 0 else [0, -1, 1, -2, 2, -3]
        chain = [d.w_min_coset(tuple(l + k * c for l, c in zip(lam, av))) for k in shifts]
        ells = [d.ell_alpha(w, a) for w in chain]
        assert ells == list(range(6))
        for u, v in zip(chain, chain[1:]):
            assert d.bruhat_lt(u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40), st.integers(0, 40))
def test_length_subadditive(i, j):
    ball = A2.enumerate_ball(3)
    u, v = ball[i % len(ball)], ball[j % len(ball)]
    assert abs(A2.length(A2.mul(u, v)) - A2.length(u)) <= A2.length(v)


# notation ---------------------------------------------------------------------------------------
def test_element_notation_roundtrip():
    for u in A2.enumerate_ball(3):
        assert parse_element(A2, format_element(A2, u)) == u
    assert parse_element(A1, "t[2]*s1") == A1.element((2,), 1)
    assert parse_element(A1, "s0s1") == A1.translation((1,))
    with pytest.raises(ValueError):
        parse_element(A1, "t[1,2]")
    with pytest.raises(ValueError):
        parse_element(A1, "s5")
