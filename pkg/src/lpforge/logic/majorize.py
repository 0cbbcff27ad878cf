"""Cantor pairing, the majorant of the exponent constant, and ground-type
checks of the norm-comparison and majorization relations.

Reals are coded at precision ``n`` as ``j(fold(round(r * 2^(n+1))), 2^(n+1) - 1)``
where ``fold`` interleaves signed integers into the naturals.  With this
coding ``M(b)(n) = j(b * 2^(n+2), 2^(n+1) - 1)`` dominates the code of any
real in ``[0, b]``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Real

from ..measure import SimpleFunction
from .types import NAT, REAL, SPACE, Arrow, FiniteType, parse_type, show_type

__all__ = [
    "cantor_pair",
    "cantor_unpair",
    "fold",
    "real_code",
    "majorant_M",
    "UnsupportedType",
    "check_preceq",
    "check_majorizes",
]

SEQ_X = Arrow(NAT, SPACE)  # X(0)


def cantor_pair(x: int, y: int) -> int:
    """``j(x, y) = (x+y)(x+y+1)/2 + y``."""
    if x < 0 or y < 0:
        raise ValueError("pairing is defined on naturals")
    s = x + y
    return s * (s + 1) // 2 + y


def cantor_unpair(z: int):
    w = 0
    while (w + 1) * (w + 2) // 2 <= z:
        w += 1
    y = z - w * (w + 1) // 2
    return w - y, y


def fold(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def real_code(r, n: int) -> int:
    """Code of the dyadic approximation of ``r`` with denominator ``2^(n+1)``."""
    num = round(Fraction(r) * 2 ** (n + 1))
    return cantor_pair(fold(num), 2 ** (n + 1) - 1)


def majorant_M(b: int):
    """``n -> j(b * 2^(n+2), 2^(n+1) - 1)``."""
    if b < 1:
        raise ValueError("b must be at least 1")

    def M(n: int) -> int:
        return cantor_pair(b * 2 ** (n + 2), 2 ** (n + 1) - 1)

    M.b = b
    return M


class UnsupportedType(TypeError):
    pass


def _as_type(t):
    if isinstance(t, FiniteType):
        return t
    return parse_type(str(t))


def _at(seq, n):
    return seq(n) if callable(seq) else seq[n]


def _norm_of(v, norm):
    if isinstance(v, SimpleFunction):
        if norm is None:
            raise ValueError("a norm oracle is needed for space elements")
        return norm(v)
    return v


def check_preceq(v1, v2, tau, norm=None, horizon=64):
    """``v1 <~ v2`` at type ``tau`` in {0, X, 1, X(0)}.

    Function types are compared pointwise on indices ``0..horizon``.
    """
    t = _as_type(tau)
    if t == NAT:
        return v1 <= v2
    if t == SPACE:
        return _norm_of(v1, norm) <= _norm_of(v2, norm)
    if t == REAL:
        return all(_at(v1, i) <= _at(v2, i) for i in range(horizon + 1))
    if t == SEQ_X:
        return all(_norm_of(_at(v1, i), norm) <= _norm_of(_at(v2, i), norm) for i in range(horizon + 1))
    raise UnsupportedType(f"<~ is only checked at types 0, X, 1, X(0); got {show_type(t)}")


def check_majorizes(candidate, value, tau, horizon=64, norm=None):
    """``candidate`` majorizes ``value`` at ``tau`` in {0, X, 1, X(0)}.

    At the function types both clauses are checked on ``0..horizon``:
    ``candidate(m) >= |value(n)|`` and ``candidate(m) >= candidate(n)``
    whenever ``m >= n``.  A finite horizon makes this a sound partial check.
    """
    t = _as_type(tau)
    if t == NAT:
        return candidate >= value
    if t == SPACE:
        return candidate >= _norm_of(value, norm)
    if t in (REAL, SEQ_X):
        cs = [_at(candidate, i) for i in range(horizon + 1)]
        vs = [_norm_of(_at(value, i), norm) if t == SEQ_X else _at(value, i) for i in range(horizon + 1)]
        for n in range(horizon + 1):
            for m in range(n, horizon + 1):
                if cs[m] < vs[n] or cs[m] < cs[n]:
                    return False
        return True
    raise UnsupportedType(f"majorization is only checked at types 0, X, 1, X(0); got {show_type(t)}")
