"""Forcing an arbitrary sequence into a Cauchy sequence with rate 2^(-n+3).

``hat(x)_n = x_n`` while every guard ``[d(x_k, x_{k+1})](k+1) < 6 * 2^(-k-1)``
with ``k < n`` passes; from the first failing ``k`` on, the sequence is frozen
at ``x_k``.  The bracket is a dyadic approximation of the distance within
``2^-(k+1)``, so a passing guard gives ``d(x_k, x_{k+1}) < 7 * 2^(-k-1)`` and
the tail sums stay below ``2^(-n+3)``.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["approx_distance", "guard", "cauchy_hat", "check_rate", "rate_violations"]


def approx_distance(d, k):
    """Nearest multiple of ``2^-(k+1)`` to the distance ``d``.

    The conversion of the float ``d`` to a Fraction is exact, so the
    error is at most ``2^-(k+2)``.
    """
    scale = 2 ** (k + 1)
    return Fraction(round(Fraction(d) * scale), scale)


def guard(d, k):
    """True when the step ``x_k -> x_{k+1}`` with distance ``d`` is accepted."""
    return approx_distance(d, k) < Fraction(6, 2 ** (k + 1))


def cauchy_hat(points, metric, horizon):
    """Return ``[hat(x)_0, ..., hat(x)_horizon]``.

    ``points`` must supply at least ``horizon + 1`` terms; ``metric`` is any
    callable distance on them.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    pts = list(points)
    if len(pts) < horizon + 1:
        raise ValueError(f"need {horizon + 1} points, got {len(pts)}")
    out = [pts[0]]
    frozen = None
    for n in range(1, horizon + 1):
        k = n - 1
        if frozen is None and not guard(metric(pts[k], pts[k + 1]), k):
            frozen = pts[k]
        out.append(pts[n] if frozen is None else frozen)
    return out


def rate_violations(seq, metric):
    """All ``(n, m, d)`` with ``d(seq[n], seq[m]) > 2^(-min(n,m)+3)``."""
    bad = []
    for n in range(len(seq)):
        limit = 2.0 ** (-n + 3)
        for m in range(n + 1, len(seq)):
            d = metric(seq[n], seq[m])
            if d > limit:
                bad.append((n, m, d))
    return bad


def check_rate(seq, metric):
    return not rate_violations(seq, metric)
