import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirogrid.exact import (
    ScaledPi,
    Sign,
    ball_volume_ratio,
    binomial,
    det_sign,
    half_gamma,
    integer_det,
    orientation,
)
from oracles import homogeneous_det, laplace_det, sign

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def identity(k):
    return [[int(r == c) for c in range(k)] for r in range(k)]


def test_sign_algebra():
    assert -Sign.POS is Sign.NEG
    assert -Sign.ZERO is Sign.ZERO
    assert Sign.NEG * Sign.NEG is Sign.POS
    assert Sign.NEG * Sign.ZERO is Sign.ZERO
    assert Sign.of(Fraction(-1, 7)) is Sign.NEG
    assert [Sign.from_symbol(s) for s in "+-0"] == [Sign.POS, Sign.NEG, Sign.ZERO]


def test_det_sign_examples():
    m = identity(3)
    assert det_sign(m) is Sign.POS
    m[0], m[1] = m[1], m[0]
    assert det_sign(m) is Sign.NEG
    assert det_sign([[1, 2, 3], [4, 5, 6], [1, 2, 3]]) is Sign.ZERO


def test_det_sign_matches_cofactor_oracle_5x5():
    rng = random.Random(5)
    for _ in range(10_000):
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)] for _ in range(5)]
        if rng.random() < 0.1:
            m[4] = [2 * x for x in m[rng.randrange(4)]]
        assert det_sign(m) == sign(laplace_det(m))


@given(st.integers(1, 6).flatmap(lambda k: st.lists(st.lists(rationals, min_size=k, max_size=k), min_size=k, max_size=k)))
@settings(max_examples=300, deadline=None)
def test_det_sign_property(m):
    assert det_sign(m) == sign(laplace_det(m))


def test_integer_det_value():
    m = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert integer_det(m) == laplace_det(m) == 4


def test_orientation_examples():
    assert orientation([(0, 0), (1, 0), (0, 1)]) is Sign.POS
    assert orientation([(1, 0), (0, 0), (0, 1)]) is Sign.NEG
    assert orientation([(0, 0), (2, 1), (4, 2)]) is Sign.ZERO
    with pytest.raises(ValueError):
        orientation([(0, 0), (1, 0, 0), (0, 1)])


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_orientation_is_the_homogeneous_determinant(d):
    rng = random.Random(d)
    for _ in range(300):
        pts = [tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(d)) for _ in range(d + 1)]
        assert orientation(pts) == sign(homogeneous_det(pts))


@given(st.integers(1, 4).flatmap(
    lambda d: st.tuples(
        st.lists(st.tuples(*[rationals] * d), min_size=d + 1, max_size=d + 1),
        st.integers(0, d), st.integers(0, d),
        st.fractions(min_value=Fraction(1, 100), max_value=100),
        st.tuples(*[rationals] * d),
    )))
@settings(max_examples=300, deadline=None)
def test_orientation_alternating_and_invariant(args):
    pts, i, j, lam, v = args
    s = orientation(pts)
    if i != j:
        swapped = list(pts)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert orientation(swapped) == -s
    moved = [tuple(lam * x + y for x, y in zip(p, v)) for p in pts]
    assert orientation(moved) == s


def test_binomial():
    assert binomial(32, 3) == 4960
    assert binomial(16, 4) == 1820
    assert binomial(7, 0) == 1
    with pytest.raises(ValueError):
        binomial(3, 4)


def test_half_gamma_examples():
    assert half_gamma(1) == ScaledPi(1, 0)
    assert half_gamma(Fraction(1, 2)) == ScaledPi(1, 1)
    assert half_gamma(Fraction(3, 2)) == ScaledPi(Fraction(1, 2), 1)
    assert half_gamma(Fraction(5, 2)) == ScaledPi(Fraction(3, 4), 1)
    for bad in (0, Fraction(1, 3), Fraction(-1, 2)):
        with pytest.raises(ValueError):
            half_gamma(bad)


def test_half_gamma_recurrence():
    x = Fraction(1, 2)
    while x <= 20:
        assert half_gamma(x + 1) == x * half_gamma(x)
        x += Fraction(1, 2)


def test_ball_volume_ratio_examples():
    assert ball_volume_ratio(1) == ScaledPi(Fraction(1, 2), 0)
    assert ball_volume_ratio(2) == ScaledPi(2, -2)
    assert ball_volume_ratio(3) == ScaledPi(Fraction(3, 4), 0)
    with pytest.raises(ValueError):
        ball_volume_ratio(0)


def test_ball_volume_ratio_matches_mpmath():
    mpmath.mp.dps = 40
    for d in range(1, 21):
        ref = mpmath.gamma(mpmath.mpf(d) / 2 + 1) / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(d - 1) / 2 + 1))
        assert abs(float(ball_volume_ratio(d)) - float(ref)) <= 1e-12


def test_simplified_constant_only_dominates_from_d3():
    # (2 sqrt d) * ratio <= d^{3/2} / sqrt(pi) holds for d >= 3 and fails at d = 2
    for d in range(3, 21):
        assert 2 * math.sqrt(d) * float(ball_volume_ratio(d)) <= d ** 1.5 / math.sqrt(math.pi)
    lhs = 2 * math.sqrt(2) * float(ball_volume_ratio(2))
    rhs = 2 ** 1.5 / math.sqrt(math.pi)
    assert lhs == pytest.approx(1.8006326323, abs=1e-9)
    assert rhs == pytest.approx(1.5957691216, abs=1e-9)
    assert lhs > rhs
