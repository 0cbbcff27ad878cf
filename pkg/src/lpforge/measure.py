"""Finite measure spaces, simple functions and L^p norm arithmetic.

A measure space is a finite list of atoms with positive rational weights,
so every measurable function is a simple function given by one value per
atom.  Two arithmetic paths coexist:

* exact -- values are :class:`fractions.Fraction` and ``p`` is an integer;
  ``lp_norm_pow`` is then an exact rational and all comparisons are made on
  the power scale, never through a root;
* numeric -- anything involving a float, or a non-integer ``p``.

>>> sp = MeasureSpace.uniform(2)
>>> f = SimpleFunction(sp, ["3/5", 0])
>>> lp_norm_pow(f, 2)
Fraction(9, 25)
>>> lp_norm(f, 2)
0.6
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

__all__ = [
    "MeasureSpace",
    "Exponent",
    "SimpleFunction",
    "SpaceMismatch",
    "as_exponent",
    "to_scalar",
    "is_exact",
    "lp_norm_pow",
    "lp_norm",
    "add",
    "sub",
    "scale",
    "pointwise_abs",
    "normalize_tilde",
    "exact_root",
    "zero",
    "indicator",
]


class SpaceMismatch(ValueError):
    """Two simple functions live on different measure spaces."""


def to_scalar(v):
    """Coerce ``v`` to the scalar representation used by simple functions.

    Integers, Fractions and strings such as ``"3/5"`` become Fractions
    (exact), floats stay floats.  ``{"num": a, "den": b}`` dictionaries are
    accepted as the JSON encoding of a rational.
    """
    if isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, Rational):
        return Fraction(int(v.numerator), int(v.denominator))
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite scalar {v!r}")
        return v
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, dict):
        return Fraction(int(v["num"]), int(v["den"]))
    try:
        import numpy as np

        if isinstance(v, np.integer):
            return Fraction(int(v))
        if isinstance(v, np.floating):
            return to_scalar(float(v))
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"cannot interpret {v!r} as a scalar")


@dataclass(frozen=True)
class MeasureSpace:
    """A finite measure space: atom identifiers with positive rational weights."""

    atoms: tuple
    weights: tuple

    def __post_init__(self):
        atoms = tuple(self.atoms)
        weights = tuple(to_scalar(w) for w in self.weights)
        if len(atoms) != len(weights):
            raise ValueError("atoms and weights differ in length")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom identifiers must be unique")
        for w in weights:
            if isinstance(w, float):
                raise TypeError("measure weights must be rational")
            if w <= 0:
                raise ValueError("every atom weight must be strictly positive")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, size, weight=1):
        return cls(tuple(range(size)), (weight,) * size)

    def __len__(self):
        return len(self.atoms)

    def index(self, atom):
        return self.atoms.index(atom)

    def to_json(self):
        return {
            "atoms": list(self.atoms),
            "weights": [{"num": w.numerator, "den": w.denominator} for w in self.weights],
        }

    @classmethod
    def from_json(cls, doc):
        return cls(tuple(doc["atoms"]), tuple(doc["weights"]))


@dataclass(frozen=True)
class Exponent:
    """The exponent ``p >= 1``; integer values select the exact path."""

    value: object

    def __post_init__(self):
        v = self.value
        if isinstance(v, Exponent):
            v = v.value
        if isinstance(v, bool):
            raise TypeError("p must be a number")
        if isinstance(v, Rational) and Fraction(v).denominator == 1:
            v = int(v)
        elif isinstance(v, (Rational, float)):
            # 2.0 stays numeric: only genuine integers take the exact path
            v = float(v)
        else:
            raise TypeError(f"p must be a real number, got {v!r}")
        if not v >= 1:
            raise ValueError(f"p must be >= 1, got {v}")
        if isinstance(v, float) and not math.isfinite(v):
            raise ValueError("p must be finite")
        object.__setattr__(self, "value", v)

    @property
    def exact(self):
        return isinstance(self.value, int)

    @property
    def uniformly_convex(self):
        """True in the ``p >= 2`` regime used by the convexity module."""
        return self.value >= 2

    def __float__(self):
        return float(self.value)


def as_exponent(p) -> Exponent:
    return p if isinstance(p, Exponent) else Exponent(p)


class SimpleFunction:
    """A real function on the atoms of a :class:`MeasureSpace`.

    Values are stored as a tuple aligned with ``space.atoms``.  Instances are
    immutable and hashable.
    """

    __slots__ = ("space", "values")

    def __init__(self, space: MeasureSpace, values: Sequence):
        values = tuple(to_scalar(v) for v in values)
        if len(values) != len(space):
            raise ValueError(
                f"expected {len(space)} values for this space, got {len(values)}"
            )
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("SimpleFunction is immutable")

    def __eq__(self, other):
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __hash__(self):
        return hash((self.space, self.values))

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"SimpleFunction([{vals}])"

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def exact(self):
        return all(isinstance(v, Fraction) for v in self.values)

    def support(self):
        return [j for j, v in enumerate(self.values) if v != 0]

    def to_float(self):
        return SimpleFunction(self.space, [float(v) for v in self.values])

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, alpha):
        return scale(alpha, self)

    def __abs__(self):
        return pointwise_abs(self)


def zero(space):
    return SimpleFunction(space, [0] * len(space))


def indicator(space, atoms_idx, values=None):
    """``1_B`` (or ``1_B * values``) for a set ``B`` of atom indices."""
    idx = set(atoms_idx)
    if values is None:
        return SimpleFunction(space, [1 if j in idx else 0 for j in range(len(space))])
    vals = values.values if isinstance(values, SimpleFunction) else values
    return SimpleFunction(space, [vals[j] if j in idx else 0 for j in range(len(space))])


def is_exact(p, *fs):
    return as_exponent(p).exact and all(f.exact for f in fs)


def _check_same_space(*fs):
    first = fs[0].space
    for f in fs[1:]:
        if f.space is not first and f.space != first:
            raise SpaceMismatch("simple functions are defined on different spaces")


def lp_norm_pow(f: SimpleFunction, p) -> Fraction | float:
    """``sum_j w_j |f_j|^p``; an exact Fraction when ``p`` is an integer and
    ``f`` is rational, a float otherwise."""
    p = as_exponent(p)
    if p.exact and f.exact:
        e = p.value
        return sum((w * abs(v) ** e for w, v in zip(f.space.weights, f.values)), Fraction(0))
    e = float(p)
    return math.fsum(float(w) * abs(float(v)) ** e for w, v in zip(f.space.weights, f.values))


def lp_norm(f: SimpleFunction, p) -> float:
    p = as_exponent(p)
    s = lp_norm_pow(f, p)
    if p.exact and isinstance(s, Fraction):
        r = exact_root(s, p.value)
        if r is not None:
            return float(r)
    return float(s) ** (1.0 / float(p))


def add(f, g):
    _check_same_space(f, g)
    return SimpleFunction(f.space, [a + b for a, b in zip(f.values, g.values)])


def sub(f, g):
    _check_same_space(f, g)
    return SimpleFunction(f.space, [a - b for a, b in zip(f.values, g.values)])


def scale(alpha, f):
    alpha = to_scalar(alpha)
    return SimpleFunction(f.space, [alpha * v for v in f.values])


def pointwise_abs(f):
    return SimpleFunction(f.space, [abs(v) for v in f.values])


def _int_root(n: int, k: int):
    if n < 0:
        return None
    if n < 2:
        return n
    r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else None
    if r is None:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid**k <= n:
                lo = mid
            else:
                hi = mid - 1
        r = lo
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def exact_root(q: Fraction, k: int):
    """The rational ``k``-th root of ``q >= 0`` if it exists, else ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    a = _int_root(q.numerator, k)
    if a is None:
        return None
    b = _int_root(q.denominator, k)
    if b is None:
        return None
    return Fraction(a, b)


def normalize_tilde(v: SimpleFunction, p) -> SimpleFunction:
    """``v / max(||v||, 1)``: the identity on the closed unit ball, radial
    projection onto the sphere outside it.

    Stays exact when the norm is a rational number.
    """
    p = as_exponent(p)
    s = lp_norm_pow(v, p)
    if s <= 1:
        return v
    if p.exact and isinstance(s, Fraction):
        r = exact_root(s, p.value)
        if r is not None:
            return scale(1 / r, v)
    norm = float(s) ** (1.0 / float(p))
    return SimpleFunction(v.space, [float(x) / norm for x in v.values])
