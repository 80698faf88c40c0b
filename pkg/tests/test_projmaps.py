from fractions import Fraction

import pytest

from planecremona.errors import ValidationError
from planecremona.exactpoly import HPoly
from planecremona.projmaps import (
    INF,
    ProjPoint,
    RationalMap,
    compose,
    compose_raw,
    conjugate,
    cross_ratio,
    harmonic_conjugate,
    is_identity,
    is_involution,
)
from planecremona.rng import SplitMix64, unimodular_matrix

X, Y, Z = (HPoly.variable(i) for i in range(3))
SIGMA = RationalMap(X * Y, X * Z, Y * Z)


def random_map(stream, degree):
    from tests.test_exactpoly import random_poly

    while True:
        comps = [random_poly(stream, degree) for _ in range(3)]
        if any(c.is_zero() for c in comps):
            continue
        try:
            return RationalMap(*comps)
        except ValidationError:
            continue


# -- points ---------------------------------------------------------------------

def test_point_canonicalization():
    assert ProjPoint(2, 4, 6) == ProjPoint(1, 2, 3)
    assert ProjPoint(Fraction(1, 2), Fraction(1, 3), 0).coords == (3, 2, 0)
    assert ProjPoint(-2, 4, -6).coords == (1, -2, 3)
    with pytest.raises(ValidationError):
        ProjPoint(0, 0, 0)


# -- harmonic conjugation ----------------------------------------------------------

def test_harmonic_examples():
    assert harmonic_conjugate((1, 0, -1), 0) is INF
    assert harmonic_conjugate((1, 0, -1), 1) == 1
    assert harmonic_conjugate((1, 0, -4), 1) == 4


def test_harmonic_newton_identity():
    # 2(t t' + t1 t2) = (t + t')(t1 + t2) characterizes the harmonic pair;
    # with roots +-2: 2(1*4 - 4) = 0 = (1 + 4)*0
    t, tp = Fraction(1), harmonic_conjugate((1, 0, -4), 1)
    t1t2, t1pt2 = Fraction(-4), Fraction(0)
    assert 2 * (t * tp + t1t2) == (t + tp) * t1pt2


def test_harmonic_is_involution_and_fixes_roots():
    stream = SplitMix64(21)
    for _ in range(40):
        a = stream.next_nonzero_int(-5, 5)
        b = stream.next_int(-5, 5)
        c = stream.next_int(-5, 5)
        if b * b - 4 * a * c == 0:
            continue
        t = Fraction(stream.next_int(-9, 9), stream.next_int(1, 5))
        tp = harmonic_conjugate((a, b, c), t)
        assert harmonic_conjugate((a, b, c), tp) == t
        assert cross_ratio_of_roots(a, b, c, t, tp) == -1


def cross_ratio_of_roots(a, b, c, t, tp):
    """Cross-ratio (t1, t2; t, t') computed projectively without extracting
    the roots: for q = a u^2 + b u + c with roots t1, t2,
    (t1,t2;t,t') = -1 iff 2(t t' + t1 t2) = (t + t')(t1 + t2), and the
    right-hand data comes from the coefficients."""
    from fractions import Fraction as F

    if t is INF or tp is INF:
        # (t1,t2;t,INF) = (t1-t)/(t2-t) ... -1 iff t is the midpoint: 2t = t1+t2
        finite = tp if t is INF else t
        return -1 if 2 * a * finite + b == 0 else None
    lhs = 2 * (F(t) * F(tp) + F(c, a))
    rhs = (F(t) + F(tp)) * F(-b, a)
    return -1 if lhs == rhs else None


def test_harmonic_degenerate_rejected():
    with pytest.raises(ValidationError):
        harmonic_conjugate((0, 1, 1), 0)
    with pytest.raises(ValidationError):
        harmonic_conjugate((1, 2, 1), 0)  # double root


# -- cross-ratio --------------------------------------------------------------------

def test_cross_ratio_examples():
    assert cross_ratio(0, INF, 1, -1) == -1
    assert cross_ratio(0, 1, 2, 3) == Fraction(4, 3)
    with pytest.raises(ValidationError):
        cross_ratio(1, 1, 1, 2)


def test_cross_ratio_projective_invariance():
    stream = SplitMix64(33)
    for _ in range(25):
        vals = [Fraction(stream.next_int(-9, 9), stream.next_int(1, 4)) for _ in range(4)]
        if len(set(vals)) < 3:
            continue
        a, b, c, d = stream.next_nonzero_int(-5, 5), stream.next_int(-5, 5), stream.next_int(-5, 5), stream.next_nonzero_int(-5, 5)
        if a * d - b * c == 0:
            continue

        def moebius(t):
            num, den = a * t + b, c * t + d
            return INF if den == 0 else Fraction(num, den)

        try:
            before = cross_ratio(*vals)
            after = cross_ratio(*(moebius(t) for t in vals))
        except ValidationError:
            continue
        assert before == after


# -- maps ---------------------------------------------------------------------------

def test_compose_identity():
    f = RationalMap(X * Y, X * Z, Y * Z)
    assert compose(RationalMap.identity(), f) == f
    assert compose(f, RationalMap.identity()) == f


def test_compose_standard_quadratic_squares_to_identity():
    raw = compose_raw(SIGMA, SIGMA)
    expect = (X * X * Y * Z, X * Y * Y * Z, X * Y * Z * Z)
    assert tuple(r.canonical() for r in raw) == tuple(e.canonical() for e in expect)
    assert is_identity(compose(SIGMA, SIGMA))
    assert is_involution(SIGMA)


def test_compose_degree_bound_and_generic_equality():
    stream = SplitMix64(41)
    f, g = random_map(stream, 2), random_map(stream, 2)
    h = compose(f, g)
    assert h.degree <= 4
    assert h.degree == 4  # generic pair drawn from the stream


def test_compose_associative_up_to_normalization():
    stream = SplitMix64(43)
    for _ in range(5):
        f, g, h = (random_map(stream, 1) for _ in range(3))
        left = compose(compose(f, g), h)
        right = compose(f, compose(g, h))
        assert left == right


def test_is_identity_examples():
    assert is_identity(RationalMap.identity())
    assert is_identity(RationalMap(X * X, X * Y, X * Z))
    assert not is_identity(RationalMap(Y, X, Z))


def test_eval_map_examples():
    assert SIGMA.eval(ProjPoint(1, 1, 1)) == ProjPoint(1, 1, 1)
    assert SIGMA.eval(ProjPoint(0, 1, 0)) is None
    assert SIGMA.eval(ProjPoint(1, 2, 4)) == ProjPoint(1, 2, 4)


def test_eval_functorial_under_composition():
    stream = SplitMix64(47)
    f, g = random_map(stream, 2), random_map(stream, 2)
    fg = compose(f, g)
    hits = 0
    for _ in range(40):
        coords = tuple(stream.next_int(-6, 6) for _ in range(3))
        if coords == (0, 0, 0):
            continue
        p = ProjPoint(*coords)
        mid = g.eval(p)
        if mid is None:
            continue
        out = f.eval(mid)
        if out is None:
            continue
        assert fg.eval(p) == out
        hits += 1
    assert hits >= 10


def test_conjugate_examples():
    ident = RationalMap.identity()
    assert conjugate(SIGMA, ident, ident) == SIGMA
    m = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    minv = ((1, -1, 0), (0, 1, 0), (0, 0, 1))
    phi, phi_inv = RationalMap.linear(m), RationalMap.linear(minv)
    conj = conjugate(SIGMA, phi, phi_inv)
    assert conj.degree == 2
    assert is_identity(compose(conj, conj))
    with pytest.raises(ValidationError):
        conjugate(SIGMA, phi, phi)  # not an inverse


def test_zero_composition_rejected():
    with pytest.raises(ValidationError):
        RationalMap(HPoly.zero(1), HPoly.zero(1), HPoly.zero(1))
    # a map whose image is a base point of the outer map composes to zero
    to_base_point = RationalMap(HPoly.zero(1), X, HPoly.zero(1))
    with pytest.raises(ValidationError):
        compose(SIGMA, to_base_point)
