import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpforge.convexity import (
    ParameterError,
    brute_force_modulus,
    certify_uniform_convexity,
    check_clarkson,
    check_power_inequality,
    check_sigma_bound,
    delta_for,
    eta,
    extremal_pair,
    search_modulus,
    sigma,
)
from lpforge.measure import MeasureSpace, SimpleFunction, lp_norm, scale

mpmath.mp.dps = 40


def eta_mp(eps, p):
    eps, p = mpmath.mpf(eps), mpmath.mpf(p)
    return 1 - (1 - (eps / 2) ** p) ** (1 / p)


def sigma_mp(a, d, p):
    a, d, p = mpmath.mpf(a), mpmath.mpf(d), mpmath.mpf(p)
    s = (1 - a**p) ** (1 / p) + d
    if s >= 1:
        return a
    return a - (1 - s**p) ** (1 / p)


@pytest.mark.parametrize("eps,p", [(1, 2), (0.1, 2), (1.9, 3), (2, 4), (0.5, 2.5), (1.3, 7)])
def test_eta_against_mpmath(eps, p):
    assert eta(eps, p) == pytest.approx(float(eta_mp(eps, p)), rel=1e-12, abs=1e-15)


def test_eta_known_value():
    assert eta(1, 2) == pytest.approx(1 - math.sqrt(3) / 2, abs=1e-15)
    assert eta(2, 3) == 1.0


@pytest.mark.parametrize("a,d,p", [(0.5, 0.1, 2), (0.25, 0.05, 3), (0.9, 0.01, 4), (0.05, 0.5, 2), (1.0, 0.3, 2)])
def test_sigma_against_mpmath(a, d, p):
    assert sigma(a, d, p) == pytest.approx(float(sigma_mp(a, d, p)), rel=1e-10)


def test_sigma_frozen_value():
    # mpmath at 40 digits: 0.24155286953...
    assert sigma(0.5, 0.1, 2) == pytest.approx(0.2415528695, abs=1e-10)


def test_delta_values():
    assert delta_for(1, 0.5, 2) == 0.25
    assert delta_for(1, 0.1, 2) == pytest.approx(float(sigma_mp(0.5, 0.05, 2)) / 2, rel=1e-12)


def test_parameter_errors():
    with pytest.raises(ParameterError):
        eta(1, 1.5)
    with pytest.raises(ParameterError):
        eta(0, 2)
    with pytest.raises(ParameterError):
        sigma(0.5, 1.0, 2)
    with pytest.raises(ParameterError):
        check_sigma_bound(0.5, 0.1, 0.3, 2)
    with pytest.raises(ParameterError):
        delta_for(1, 1, 2)


@settings(max_examples=300, deadline=None)
@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(2, 12))
def test_clarkson_property(a, b, p):
    assert check_clarkson(a, b, p)


@settings(max_examples=300, deadline=None)
@given(st.floats(0, 1e3), st.floats(0, 1e3), st.floats(2, 12))
def test_power_inequality_property(x1, x2, p):
    assert check_power_inequality(x1, x2, p)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.01, 1.0), st.floats(0.001, 0.99), st.floats(2, 8), st.floats(0.01, 0.99))
def test_sigma_bound_property(a, d, p, frac):
    s = sigma(a, d, p)
    assert s > 0
    assert check_sigma_bound(a, d, frac * s, p)


def test_extremal_pair_is_tight():
    for p in (2, 3, 4):
        for eps in (0.1, 0.9, 1.9):
            u, v = extremal_pair(eps, p, 3)
            assert np.linalg.norm(u, p) == pytest.approx(1)
            assert np.linalg.norm(u - v, p) == pytest.approx(eps)
            assert 1 - np.linalg.norm((u + v) / 2, p) == pytest.approx(eta(eps, p), abs=1e-12)


def test_search_is_reproducible_and_job_independent():
    a = search_modulus(3, 2, 0.7, samples=60_000, seed=4)
    b = search_modulus(3, 2, 0.7, samples=60_000, seed=4, jobs=2)
    assert a.value == b.value and a.sampled == b.sampled
    assert a.value >= eta(0.7, 3) - 1e-6


def test_sampling_alone_approaches_eta():
    # the sampler without the extremal family should still find near-optimal pairs in l^2_2
    r = search_modulus(2, 2, 1.0, samples=50_000, seed=1)
    assert r.sampled >= r.eta - 1e-6
    assert r.sampled <= r.eta + 5e-3


def test_brute_force_detects_a_wrong_modulus():
    # a deliberately too-large modulus must be refuted by the oracle
    val = brute_force_modulus(2, 2, 1.0, samples=20_000)
    assert val < 1.5 * eta(1.0, 2)


SPACE4 = MeasureSpace.uniform(4)


def test_certificate_worked_example():
    s = MeasureSpace.uniform(2)
    x1 = SimpleFunction(s, [1, 0])
    x2 = SimpleFunction(s, [0, 1])
    cert = certify_uniform_convexity(x1, x2, math.sqrt(2), 0.01, 2)
    assert cert.ok, cert.failing
    assert cert.step("final").lhs <= 1 - eta(math.sqrt(2), 2) + 0.01
    names = [st.name for st in cert.chain]
    assert names[0] == "delta" and names[-1] == "final"


def test_certificate_preconditions():
    x1 = SimpleFunction(SPACE4, [1, 0, 0, 0])
    x2 = SimpleFunction(SPACE4, [0, 1, 0, 0])
    with pytest.raises(ParameterError):
        certify_uniform_convexity(x1, x2, 1.5, 0.1, 2)  # ||x1 - x2|| = sqrt 2 < 1.5
    with pytest.raises(ParameterError):
        certify_uniform_convexity(scale(2, x1), x2, 1, 0.1, 2)
    with pytest.raises(ParameterError):
        certify_uniform_convexity(x1, x2, 1, 0.1, 1)


def test_certificate_random_instances():
    rng = random.Random(9)
    for _ in range(5):
        vals = [Fraction(rng.randint(-5, 5), 10) for _ in range(4)]
        x1 = SimpleFunction(SPACE4, vals)
        x2 = SimpleFunction(SPACE4, [-v for v in vals])
        if lp_norm(x1, 2) == 0 or lp_norm(x1, 2) > 1:
            continue
        eps = lp_norm(x1, 2) * 2
        if eps > 2:
            continue
        cert = certify_uniform_convexity(x1, x2, eps, 0.25, 2)
        assert cert.ok, cert.failing


def test_sigma_and_eta_keep_precision_near_one():
    # found by hypothesis: 1 - (1 - d^p)^(1/p) used to cancel to exactly 0
    assert sigma(1.0, 2**-9, 6) == pytest.approx(float(sigma_mp(1.0, 2**-9, 6)), rel=1e-9)
    assert eta(1e-4, 3) == pytest.approx(float(eta_mp(1e-4, 3)), rel=1e-9)
    assert eta(1e-4, 3) > 0
