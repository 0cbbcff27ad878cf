"""Uniform convexity of L^p for p >= 2.

The modulus ``eta(eps) = 1 - (1 - (eps/2)^p)^(1/p)`` is derived by pushing
a coordinatewise Clarkson inequality through a finite-dimensional l^p
approximation of the two points.  :func:`certify_uniform_convexity` runs that
argument on concrete simple functions and records every inequality it uses;
:func:`brute_force_modulus` is an independent sampling oracle on ``l^p_m``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .approx import ApproximationWitness, verify_axiom_instance
from .measure import add, as_exponent, lp_norm, lp_norm_pow, scale, sub

__all__ = [
    "ParameterError",
    "SLACK",
    "eta",
    "sigma",
    "check_power_inequality",
    "check_clarkson",
    "check_sigma_bound",
    "delta_for",
    "ChainStep",
    "ConvexityCertificate",
    "certify_uniform_convexity",
    "extremal_pair",
    "ModulusSearch",
    "search_modulus",
    "brute_force_modulus",
]

SLACK = 1e-12


class ParameterError(ValueError):
    pass


def _p(p):
    p = float(as_exponent(p))
    if p < 2:
        raise ParameterError(f"p must be >= 2 here, got {p}")
    return p


def _root(x, p):
    # x may dip below 0 by rounding
    return max(x, 0.0) ** (1.0 / p)


def _leq(a, b, slack=SLACK):
    return a <= b + slack * max(1.0, abs(b))


def eta(eps, p):
    """The modulus of uniform convexity ``1 - (1 - (eps/2)^p)^(1/p)``.

    >>> round(eta(1, 2), 7)
    0.1339746
    """
    p = _p(p)
    if not 0 < eps <= 2:
        raise ParameterError(f"eps must lie in (0, 2], got {eps}")
    t = (eps / 2.0) ** p
    if t >= 1:
        return 1.0
    # 1 - (1-t)^(1/p) via expm1/log1p, which keeps precision for small t
    return -math.expm1(math.log1p(-t) / p)


def sigma(a, d, p):
    """``a - (1 - ((1-a^p)^(1/p) + d)^p)^(1/p)``, or ``a`` once the inner
    sum reaches 1 (where the formula would take a root of a negative number).

    ``a = 1`` is accepted so that ``eps = 2`` can be fed through
    :func:`delta_for`.
    """
    p = _p(p)
    if not (0 < a <= 1 and 0 < d < 1):
        raise ParameterError(f"need a in (0,1] and d in (0,1), got a={a}, d={d}")
    s = _root(1.0 - a**p, p) + d
    if s >= 1:
        return float(a)
    # a - (1-s^p)^(1/p) = -a * expm1(log((1-s^p)^(1/p) / a)); exact cancellation-free at a = 1
    return -a * math.expm1(math.log1p(-(s**p)) / p - math.log(a))


def check_power_inequality(x1, x2, p):
    """``x1^p + x2^p <= (x1^2 + x2^2)^(p/2)`` for nonnegative reals."""
    p = _p(p)
    if x1 < 0 or x2 < 0:
        raise ParameterError("arguments must be nonnegative")
    lhs = x1**p + x2**p
    rhs = (x1 * x1 + x2 * x2) ** (p / 2.0)
    return _leq(lhs, rhs)


def check_clarkson(a, b, p):
    """``|(a+b)/2|^p + |(a-b)/2|^p <= (|a|^p + |b|^p)/2``."""
    p = _p(p)
    lhs = abs((a + b) / 2.0) ** p + abs((a - b) / 2.0) ** p
    rhs = 0.5 * (abs(a) ** p + abs(b) ** p)
    return _leq(lhs, rhs)


def check_sigma_bound(a, d, delta, p):
    """``(1 - (a-delta)^p)^(1/p) <= (1-a^p)^(1/p) + d`` for ``0 < delta < sigma(a, d)``."""
    s = sigma(a, d, p)
    p = _p(p)
    if not 0 < delta < s:
        raise ParameterError(f"delta must lie in (0, sigma) = (0, {s}), got {delta}")
    lhs = _root(1.0 - (a - delta) ** p, p)
    rhs = _root(1.0 - a**p, p) + d
    return _leq(lhs, rhs)


def delta_for(eps, c, p):
    """``min(c/2, sigma(eps/2, c/2)/2)``: the approximation accuracy that
    makes the convexity argument close with slack ``c``."""
    if not 0 < eps <= 2:
        raise ParameterError(f"eps must lie in (0, 2], got {eps}")
    if not 0 < c < 1:
        raise ParameterError(f"c must lie in (0, 1), got {c}")
    return min(c / 2.0, sigma(eps / 2.0, c / 2.0, p) / 2.0)


@dataclass
class ChainStep:
    name: str
    lhs: float
    rhs: float
    ok: bool
    relation: str = "<="

    def to_json(self):
        return {"name": self.name, "lhs": _num(self.lhs), "relation": self.relation,
                "rhs": _num(self.rhs), "ok": self.ok}


def _num(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator, "approx": float(v)}
    return float(v)


@dataclass
class ConvexityCertificate:
    """One run of the convexity argument on concrete ``x1, x2``."""

    x1: object
    x2: object
    p: float
    eps: float
    c: float
    delta: float
    N: int
    witness: ApproximationWitness
    chain: list = field(default_factory=list)

    @property
    def ok(self):
        return all(s.ok for s in self.chain)

    @property
    def failing(self):
        return next((s.name for s in self.chain if not s.ok), None)

    def step(self, name):
        return next(s for s in self.chain if s.name == name)

    def to_json(self):
        from .io import SCHEMA, encode_p, encode_values

        return {
            "schema": SCHEMA,
            "kind": "convexity-certificate",
            "p": encode_p(self.p),
            "eps": self.eps,
            "c": self.c,
            "delta": self.delta,
            "N": self.N,
            "x1": encode_values(self.x1),
            "x2": encode_values(self.x2),
            "y1": encode_values(self.witness.outputs[0]),
            "y2": encode_values(self.witness.outputs[1]),
            "dimension": self.witness.certificate.dimension,
            "chain": [s.to_json() for s in self.chain],
            "ok": self.ok,
            "failing": self.failing,
        }


def _exact_le(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a <= b
    return _leq(float(a), float(b))


def certify_uniform_convexity(x1, x2, eps, c, p, trials=10, seed=0) -> ConvexityCertificate:
    """Instantiate the convexity argument for ``x1, x2`` and record each step.

    Preconditions: ``||x1||, ||x2|| <= 1``, ``||x1 - x2|| >= eps``,
    ``c`` in (0, 1).  The approximants come from
    :func:`~lpforge.approx.verify_axiom_instance` with ``N = ceil(1/delta)``.
    A certificate is always returned once the preconditions hold; a broken
    step is reported through ``failing`` rather than raised.
    """
    pe = as_exponent(p)
    pf = _p(pe)
    if not 0 < c < 1:
        raise ParameterError(f"c must lie in (0, 1), got {c}")
    if not 0 < eps <= 2:
        raise ParameterError(f"eps must lie in (0, 2], got {eps}")
    for k, x in enumerate((x1, x2), 1):
        s = lp_norm_pow(x, pe)
        if not _exact_le(s, Fraction(1)):
            raise ParameterError(f"x{k} lies outside the unit ball (norm^p = {float(s)})")
    dist = lp_norm(sub(x1, x2), pe)
    if dist < eps - SLACK:
        raise ParameterError(f"||x1 - x2|| = {dist} is below eps = {eps}")

    delta = delta_for(eps, c, pf)
    N = math.ceil(1.0 / delta)
    w, verdict = verify_axiom_instance([x1, x2], 2, N, pe, trials=trials, seed=seed)
    y1, y2 = w.outputs
    cert = ConvexityCertificate(x1, x2, pf, eps, c, delta, N, w)
    chain = cert.chain

    def step(name, lhs, rhs, ok=None, relation="<="):
        if ok is None:
            ok = _exact_le(lhs, rhs)
        chain.append(ChainStep(name, lhs, rhs, bool(ok), relation))

    step("delta", delta, min(c / 2.0, sigma(eps / 2.0, c / 2.0, pf) / 2.0),
         ok=delta > 0 and delta == min(c / 2.0, sigma(eps / 2.0, c / 2.0, pf) / 2.0),
         relation="==")
    step("witness", 0.0, 0.0, ok=verdict.ok, relation="verified")
    err = max(lp_norm(sub(x, y), pe) for x, y in zip((x1, x2), (y1, y2)))
    step("approximation", err, delta)
    step("unit-ball", max(lp_norm_pow(y1, pe), lp_norm_pow(y2, pe)), Fraction(1))

    # coordinatewise Clarkson, exact when the witness is
    cert_ = w.certificate
    lam, mu = w.coords
    half = Fraction(1, 2) if w.exact else 0.5
    plus = [(a + b) * half for a, b in zip(lam, mu)]
    minus = [(a - b) * half for a, b in zip(lam, mu)]
    func_side = lp_norm_pow(scale(half, add(y1, y2)), pe) + lp_norm_pow(scale(half, sub(y1, y2)), pe)
    coord_side = cert_.coordinate_norm_pow(plus) + cert_.coordinate_norm_pow(minus)
    if isinstance(func_side, Fraction) and isinstance(coord_side, Fraction):
        iso_ok = func_side == coord_side
    else:
        iso_ok = abs(float(func_side) - float(coord_side)) <= 1e-9 * max(1.0, float(func_side))
    step("isometry", func_side, coord_side, ok=iso_ok, relation="==")
    avg = half * (cert_.coordinate_norm_pow(lam) + cert_.coordinate_norm_pow(mu))
    step("clarkson", coord_side, avg)
    step("ball-average", avg, Fraction(1) if isinstance(avg, Fraction) else 1.0)

    rho = eps - 2.0 * delta
    step("rho-positive", 0.0, rho, ok=rho > 0, relation="<")
    step("separation", rho, lp_norm(sub(y1, y2), pe))
    mid_y = lp_norm(scale(half, add(y1, y2)), pe)
    mid_bound = _root(1.0 - (rho / 2.0) ** pf, pf)
    step("midpoint-y", mid_y, mid_bound)
    mid_x = lp_norm(scale(half, add(x1, x2)), pe)
    step("transfer", mid_x, mid_y + delta)
    step("transfer-bound", mid_y + delta, mid_bound + delta)
    target = _root(1.0 - (eps / 2.0) ** pf, pf)
    step("sigma", mid_bound, target + c / 2.0)
    step("delta-half-c", delta, c / 2.0)
    step("final", mid_x, target + c)
    return cert


# --------------------------------------------------------------------------
# sampling oracle on l^p_m


def _norms(v, p):
    return (np.abs(v) ** p).sum(axis=-1) ** (1.0 / p)


def extremal_pair(eps, p, m=2):
    """``u = (s, t), v = (s, -t)`` with ``t = eps/2`` and ``s = (1-t^p)^(1/p)``,
    padded with zeros to dimension ``m``.  Both are unit vectors at distance
    ``eps`` whose midpoint has norm ``1 - eta(eps)``."""
    t = eps / 2.0
    s = _root(1.0 - t**p, p)
    u = np.zeros(m)
    v = np.zeros(m)
    u[:2] = (s, t)
    v[:2] = (s, -t)
    return u, v


def _value(u, v, p):
    return 1.0 - _norms((u + v) / 2.0, p)


def _sample_shard(p, m, eps, count, seed):
    """Best feasible ``1 - ||(u+v)/2||`` over ``count`` random pairs in the ball."""
    rng = np.random.default_rng(seed)

    def directions(k):
        g = rng.standard_normal((k, m))
        return g / _norms(g, p)[:, None]

    def radii(k):
        # half the samples on the sphere, half inside the ball
        r = rng.uniform(0.0, 1.0, k) ** (1.0 / m)
        r[: k // 2] = 1.0
        return r

    k1 = count // 2
    k2 = count - k1
    u1 = directions(k1) * radii(k1)[:, None]
    v1 = directions(k1) * radii(k1)[:, None]
    # pairs pushed apart: v = normalise(-u + noise) gives distances near 2
    u2 = directions(k2) * radii(k2)[:, None]
    noise = rng.standard_normal((k2, m)) * rng.uniform(0.0, 2.0, k2)[:, None]
    v2 = -u2 + noise
    nv = _norms(v2, p)
    v2 = v2 / np.maximum(nv, 1.0)[:, None]
    u = np.vstack([u1, u2])
    v = np.vstack([v1, v2])
    feasible = _norms(u - v, p) >= eps
    if not feasible.any():
        return math.inf, None
    vals = np.where(feasible, _value(u, v, p), np.inf)
    i = int(np.argmin(vals))
    return float(vals[i]), (u[i], v[i])


def _descend(pairs, p, eps, rng, steps):
    """Random local search from the given pairs, staying feasible."""
    u = np.array([a for a, _ in pairs])
    v = np.array([b for _, b in pairs])
    best = _value(u, v, p)
    scale_ = np.full(len(u), 0.1)
    for _ in range(steps):
        du = rng.standard_normal(u.shape) * scale_[:, None]
        dv = rng.standard_normal(v.shape) * scale_[:, None]
        nu = u + du
        nv = v + dv
        nu /= np.maximum(_norms(nu, p), 1.0)[:, None]
        nv /= np.maximum(_norms(nv, p), 1.0)[:, None]
        ok = _norms(nu - nv, p) >= eps
        val = np.where(ok, _value(nu, nv, p), np.inf)
        better = val < best
        u[better] = nu[better]
        v[better] = nv[better]
        best = np.where(better, val, best)
        scale_ = np.where(better, scale_ * 1.5, scale_ * 0.9)
        scale_ = np.clip(scale_, 1e-9, 0.5)
    i = int(np.argmin(best))
    return float(best[i]), (u[i], v[i])


@dataclass
class ModulusSearch:
    """Outcome of :func:`search_modulus`.

    ``value`` is the smallest ``1 - ||(u+v)/2||`` found; ``sampled`` that of
    random sampling plus local descent alone; ``family`` that of the
    deterministic extremal pair.
    """

    p: float
    m: int
    eps: float
    eta: float
    value: float
    sampled: float
    family: float
    pair: tuple
    on_sphere: bool

    @property
    def gap(self):
        return self.value - self.eta

    def to_json(self):
        return {
            "p": self.p, "dim": self.m, "eps": self.eps, "eta": self.eta,
            "oracle": self.value, "sampled": self.sampled, "family": self.family,
            "gap": self.gap, "argmin_on_sphere": self.on_sphere,
        }


SHARD = 25_000


def search_modulus(p, m, eps, samples=100_000, seed=0, descent_steps=400, jobs=1) -> ModulusSearch:
    """Minimise ``1 - ||(u+v)/2||_p`` over ``||u||, ||v|| <= 1``,
    ``||u - v|| >= eps`` in ``R^m``.

    Samples are split into fixed-size shards with independent seeds, so the
    result does not depend on ``jobs``.
    """
    p = _p(p)
    if m not in (2, 3):
        raise ParameterError("dimension must be 2 or 3")
    if not 0 < eps < 2:
        raise ParameterError(f"eps must lie in (0, 2), got {eps}")
    ss = np.random.SeedSequence(seed)
    nshards = max(1, math.ceil(samples / SHARD))
    children = ss.spawn(nshards + 1)
    sizes = [SHARD] * (nshards - 1) + [samples - SHARD * (nshards - 1)]
    args = [(p, m, eps, n, children[i]) for i, n in enumerate(sizes)]
    if jobs > 1 and nshards > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sample_shard, *zip(*args)))
    else:
        results = [_sample_shard(*a) for a in args]

    u, v = extremal_pair(eps, p, m)
    family = float(_value(u, v, p))
    starts = [r[1] for r in results if r[1] is not None]
    rng = np.random.default_rng(children[-1])
    sampled = min(r[0] for r in results)
    pair = min(((r[0], r[1]) for r in results if r[1] is not None), key=lambda t: t[0], default=(math.inf, None))[1]
    if descent_steps and starts:
        d_val, d_pair = _descend(starts, p, eps, rng, descent_steps)
        if d_val < sampled:
            sampled, pair = d_val, d_pair
    value = min(sampled, family)
    best_pair = pair if sampled <= family else (u, v)
    on_sphere = bool(best_pair is not None and all(abs(_norms(x, p) - 1.0) < 1e-6 for x in best_pair))
    return ModulusSearch(p, m, eps, eta(eps, p), value, sampled, family,
                         tuple(np.asarray(x).tolist() for x in best_pair), on_sphere)


def brute_force_modulus(p, m, eps, samples=100_000, seed=0, **kw) -> float:
    """Independent estimate of the optimal modulus of ``l^p_m`` at ``eps``."""
    return search_modulus(p, m, eps, samples=samples, seed=seed, **kw).value
