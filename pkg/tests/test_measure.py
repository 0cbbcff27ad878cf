import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpforge.measure import (
    Exponent,
    MeasureSpace,
    SimpleFunction,
    SpaceMismatch,
    add,
    exact_root,
    indicator,
    lp_norm,
    lp_norm_pow,
    normalize_tilde,
    scale,
    sub,
    to_scalar,
    zero,
)

from instances import random_function, random_space

TWO = MeasureSpace.uniform(2)


def test_norm_examples():
    x = SimpleFunction(TWO, ["3/5", 0])
    assert lp_norm_pow(x, 2) == Fraction(9, 25)
    assert lp_norm(x, 2) == 0.6
    y = SimpleFunction(TWO, [Fraction(3, 5), Fraction(4, 5)])
    assert lp_norm(y, 2) == 1.0
    assert lp_norm_pow(y, 1) == Fraction(7, 5)


def test_weights_enter_the_norm():
    s = MeasureSpace(("a", "b"), (Fraction(1, 2), Fraction(2)))
    x = SimpleFunction(s, [2, 1])
    assert lp_norm_pow(x, 2) == Fraction(1, 2) * 4 + 2
    assert lp_norm(x, 1) == 3


def test_float_exponent_goes_numeric():
    x = SimpleFunction(TWO, ["3/5", "4/5"])
    v = lp_norm(x, 2.0)
    assert isinstance(v, float) and v == pytest.approx(1.0, abs=1e-15)
    assert lp_norm(x, 2.5) == pytest.approx((0.6 ** 2.5 + 0.8 ** 2.5) ** 0.4)


def test_infinite_exponent_rejected():
    with pytest.raises(ValueError):
        lp_norm(SimpleFunction(TWO, [-3, 2]), math.inf)


def test_irrational_root_falls_back_to_float():
    x = SimpleFunction(TWO, [1, 1])
    assert lp_norm(x, 2) == pytest.approx(math.sqrt(2))


def test_space_mismatch():
    other = MeasureSpace.uniform(3)
    with pytest.raises(SpaceMismatch):
        add(zero(TWO), zero(other))


def test_bad_inputs():
    with pytest.raises(ValueError):
        MeasureSpace(("a",), (0,))
    with pytest.raises(ValueError):
        SimpleFunction(TWO, [1])
    with pytest.raises(ValueError):
        Exponent(0.5)


def test_scalar_coercion():
    assert to_scalar("3/5") == Fraction(3, 5)
    assert to_scalar({"num": 1, "den": 4}) == Fraction(1, 4)
    assert isinstance(to_scalar(0.25), float)


def test_indicator_and_support():
    s = MeasureSpace.uniform(4)
    e = indicator(s, [1, 3])
    assert e.values == (0, 1, 0, 1)
    assert list(e.support()) == [1, 3]


def test_exact_root():
    assert exact_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert exact_root(Fraction(2), 2) is None


def test_normalize_tilde():
    x = SimpleFunction(TWO, [2, 0])
    t = normalize_tilde(x, 2)
    assert lp_norm(t, 2) == 1
    small = SimpleFunction(TWO, ["1/2", 0])
    assert normalize_tilde(small, 2) is small


@st.composite
def pair_of_functions(draw):
    import random
    rng = random.Random(draw(st.integers(0, 10**6)))
    space = random_space(rng, 8)
    return random_function(rng, space), random_function(rng, space), draw(st.sampled_from([1, 2, 3, 4]))


@settings(max_examples=150, deadline=None)
@given(pair_of_functions())
def test_minkowski_and_homogeneity(data):
    x, y, p = data
    lhs = float(lp_norm(add(x, y), p))
    assert lhs <= float(lp_norm(x, p)) + float(lp_norm(y, p)) + 1e-12
    assert lp_norm_pow(scale(Fraction(-1, 3), x), p) == Fraction(1, 3) ** p * lp_norm_pow(x, p)
    assert sub(x, x) == zero(x.space)
    assert lp_norm_pow(x, p) >= 0
    assert (lp_norm_pow(x, p) == 0) == (x == zero(x.space))


def test_json_roundtrip():
    s = MeasureSpace(("a", "b"), (Fraction(1, 3), 2))
    assert MeasureSpace.from_json(s.to_json()) == s
