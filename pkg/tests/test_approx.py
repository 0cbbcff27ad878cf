import dataclasses
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpforge import io
from lpforge.approx import (
    ZERO,
    PreconditionError,
    basis_map_matrix,
    bm_distance_bound,
    build_approximation,
    build_approximation_normalized,
    build_approximation_unit,
    format_label,
    operator_norm_bounds,
    parse_label,
    partition_labels,
    verify_axiom_instance,
    verify_certificate,
)
from lpforge.measure import MeasureSpace, SimpleFunction, lp_norm, lp_norm_pow, scale, sub

from instances import random_instance

TWO = MeasureSpace.uniform(2)


def unit_inputs(rng, p):
    """Float inputs of norm 1 (exactly rational when p == 1)."""
    while True:
        xs, N, _ = random_instance(rng, p=p, ball=False)
        if all(lp_norm_pow(x, p) > 0 for x in xs):
            break
    if p == 1:
        return [scale(1 / lp_norm_pow(x, 1), x) for x in xs], N
    return [scale(1.0 / lp_norm(x, p), x.to_float()) for x in xs], N


def test_worked_example():
    x = SimpleFunction(TWO, ["3/5", 0])
    w = build_approximation([x], 2, 2)
    assert w.outputs[0].values == (Fraction(3, 10), 0)
    assert w.coords[0] == (Fraction(1, 2),)
    assert w.certificate.weights == (Fraction(9, 25),)
    assert w.dim_bound == 5
    assert verify_certificate(w, exact=True).ok


def test_labels_follow_the_grid():
    # two inputs, N = 2, so nN = 4; at atom 0 phi = 3/10 + 1/10 = 2/5
    s = MeasureSpace.uniform(3)
    x1 = SimpleFunction(s, ["3/10", "-1", 0])
    x2 = SimpleFunction(s, ["1/10", 0, 0])
    part = partition_labels([x1, x2], 2)
    assert part.phi[0] == Fraction(2, 5)
    # 3/10 * 4 / (2/5) = 3, so k = 2; 1/10 * 4 / (2/5) = 1, so k = 0 (boundary goes down)
    assert part.labels[0] == ((2, 1), (0, 1))
    # phi = 1 at atom 1 and x1 = -phi, so the top class with a minus sign
    assert part.labels[1] == ((3, -1), ZERO)
    assert part.labels[2] == (ZERO, ZERO)
    assert len(part.active_cells) == 2
    for key in part.labels:
        for lab in key:
            assert parse_label(format_label(lab)) == lab
    assert parse_label("z") is ZERO


def _oracle_isometry(w, coords):
    """Independent float recomputation of both sides of the isometry."""
    p = float(w.p)
    weights = np.array([float(m) for m in w.space.weights])
    Z = np.array([[float(v) for v in z.values] for z in w.certificate.basis])
    c = np.array([float(v) for v in coords])
    lhs = float(np.sum(weights * np.abs(c @ Z) ** p))
    rhs = float(np.sum(np.abs(c) ** p * np.array([float(v) for v in w.certificate.weights])))
    return lhs, rhs


def test_plain_suite_with_oracle():
    rng = random.Random(7)
    for _ in range(60):
        xs, N, p = random_instance(rng)
        w = build_approximation(xs, N, p)
        v = verify_certificate(w, exact=True)
        assert v.ok, v.first_failure
        n = len(xs)
        assert w.certificate.dimension <= (2 * n * N + 1) ** n
        for i in range(n):
            assert lp_norm_pow(sub(xs[i], w.outputs[i]), p) <= Fraction(1, N**p)
        coords = [rng.uniform(-2, 2) for _ in range(w.certificate.dimension)]
        if coords:
            lhs, rhs = _oracle_isometry(w, coords)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-15)


def test_plain_rejects_boundary():
    x = SimpleFunction(TWO, [1, 0])
    with pytest.raises(PreconditionError):
        build_approximation([x], 3, 2)
    with pytest.raises(PreconditionError):
        build_approximation([], 3, 2)
    with pytest.raises(PreconditionError):
        build_approximation([SimpleFunction(TWO, ["1/2", 0])], 0, 2)


def test_normalized_and_unit_suites():
    rng = random.Random(11)
    for _ in range(40):
        xs, N, p = random_instance(rng)
        w = build_approximation_normalized(xs, N, p)
        assert verify_certificate(w).ok
        for i, x in enumerate(xs):
            assert lp_norm(w.outputs[i], p) <= 1 + 1e-12
            assert lp_norm(sub(x, w.outputs[i]), p) <= 1 / N + 1e-9
        n = len(xs)
        assert w.certificate.dimension <= (4 * n * N + 1) ** n
    for p in (1, 2, 3):
        for _ in range(10):
            xs, N = unit_inputs(rng, p)
            w = build_approximation_unit(xs, N, p)
            assert verify_certificate(w).ok
            for i, x in enumerate(xs):
                assert abs(lp_norm(w.outputs[i], p) - 1) <= 1e-9
                assert lp_norm(sub(x, w.outputs[i]), p) <= 1 / N + 1e-9
            n = len(xs)
            assert w.certificate.dimension <= (8 * n * N + 1) ** n


def test_unit_p1_stays_exact():
    x = SimpleFunction(TWO, ["1/3", "-2/3"])
    w = build_approximation_unit([x], 3, 1)
    assert w.exact
    assert lp_norm_pow(w.outputs[0], 1) == 1
    assert verify_certificate(w, exact=True).ok


def test_unit_rejects_non_unit():
    with pytest.raises(PreconditionError):
        build_approximation_unit([SimpleFunction(TWO, ["1/2", 0])], 2, 2)


def test_normalized_rescale_branch_on_float_input():
    # a float input whose approximant overshoots the sphere by rounding is pulled back
    x = SimpleFunction(TWO, [1.0, 0.0])
    w = build_approximation_normalized([x], 3, 2.0)
    assert lp_norm(w.outputs[0], 2.0) <= 1 + 1e-12
    assert verify_certificate(w).ok


def test_fault_injection_names_the_clause():
    x = SimpleFunction(MeasureSpace.uniform(3), ["1/2", "-1/4", "1/8"])
    w = build_approximation([x], 3, 2)
    bad_y = SimpleFunction(x.space, [Fraction(1, 2), 0, 0])
    bad = dataclasses.replace(w, outputs=(bad_y,))
    v = verify_certificate(bad)
    assert not v.ok and v.first_failure.name == "span"
    cert = w.certificate
    overlapping = dataclasses.replace(cert, cells=tuple(tuple(range(3)) for _ in cert.cells))
    if cert.dimension > 1:
        v = verify_certificate(dataclasses.replace(w, certificate=overlapping))
        assert v.first_failure.name == "cells"
    tiny = dataclasses.replace(w, dim_bound=0)
    assert verify_certificate(tiny).first_failure.name == "dimension"


def test_exact_clause_rejects_floats():
    x = SimpleFunction(TWO, [0.5, 0.25])
    w = build_approximation([x], 2, 2.0)
    assert verify_certificate(w).ok
    v = verify_certificate(w, exact=True)
    assert v.first_failure.name == "exact"


def test_exhaustive_isometry():
    x = SimpleFunction(MeasureSpace.uniform(4), ["1/2", "-1/3", "1/5", 0])
    w = build_approximation([x], 2, 3)
    v = verify_certificate(w, exhaustive=True, exact=True)
    assert v.ok


def test_axiom_instance():
    rng = random.Random(3)
    for _ in range(20):
        xs, N, p = random_instance(rng, ball=False)
        w, v = verify_axiom_instance(xs, len(xs), N, p)
        assert v.ok, v.first_failure
        assert v["coordinates"].ok
        assert w.mode == "axiom"


def test_witness_json_roundtrip():
    rng = random.Random(5)
    xs, N, p = random_instance(rng)
    w = build_approximation(xs, N, p)
    doc = io.witness_to_json(w)
    back = io.witness_from_json(doc)
    assert io.dumps(io.witness_to_json(back)) == io.dumps(doc)
    assert verify_certificate(back, exact=True).ok


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_partition_is_a_partition(seed):
    rng = random.Random(seed)
    xs, N, p = random_instance(rng)
    part = partition_labels(xs, N)
    seen = sorted(j for cell in part.cells.values() for j in cell)
    assert seen == list(range(len(xs[0].space)))
    # on each cell y_i is a fixed multiple of phi
    w = build_approximation(xs, N, p)
    for cell in w.certificate.cells:
        for y in w.outputs:
            assert len({y[j] / part.phi[j] for j in cell}) == 1


# ---- Banach-Mazur bounds


def test_bm_examples():
    assert bm_distance_bound([[2, 0], [0, "1/2"]], 2).value == pytest.approx(4.0)
    assert bm_distance_bound([[0, 1], [1, 0]], 3).value == pytest.approx(1.0)
    with pytest.raises(ValueError):
        bm_distance_bound([[1, 2], [2, 4]], 2)


def test_operator_norm_bounds_bracket_sampling():
    rng = np.random.default_rng(1)
    for p in (1, 1.5, 2, 3, math.inf):
        for _ in range(5):
            A = rng.standard_normal((3, 3))
            lo, up, _ = operator_norm_bounds(A, p, rng)
            assert lo <= up + 1e-12
            # random vectors never beat the upper bound
            for _ in range(200):
                x = rng.standard_normal(3)
                r = np.linalg.norm(A @ x, p) / np.linalg.norm(x, p)
                assert r <= up * (1 + 1e-12)


def test_basis_map_is_isometric():
    x = SimpleFunction(MeasureSpace.uniform(3), ["1/2", "-1/4", "1/8"])
    w = build_approximation([x], 3, 2)
    D = basis_map_matrix(w.certificate)
    assert np.allclose(D, np.eye(w.certificate.dimension))
    b = bm_distance_bound(D.tolist(), 2)
    assert b.value == pytest.approx(1.0)
