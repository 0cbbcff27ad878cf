"""Finite types over the base types ``0`` (naturals) and ``X`` (space elements).

``tau(rho)`` denotes the function type ``rho -> tau``; both notations are
accepted by :func:`parse_type`, and :func:`show_type` prints the
application style, which is the normal form.

>>> show_type(parse_type("0 -> 0 -> X"))
'X(0)(0)'
>>> is_admissible(parse_type("0(X)")), is_small(parse_type("0(X)"))
(True, False)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "FiniteType",
    "Base",
    "Arrow",
    "NAT",
    "SPACE",
    "REAL",
    "TypeSyntaxError",
    "parse_type",
    "show_type",
    "is_small",
    "is_admissible",
    "hat_type",
    "arrow",
    "unfold",
]


class FiniteType:
    __slots__ = ()

    def __str__(self):
        return show_type(self)


@dataclass(frozen=True, repr=False)
class Base(FiniteType):
    name: str

    def __post_init__(self):
        if self.name not in ("0", "X"):
            raise ValueError(f"unknown base type {self.name!r}")

    def __repr__(self):
        return f"Base({self.name!r})"


@dataclass(frozen=True, repr=False)
class Arrow(FiniteType):
    """``arg -> res``, written ``res(arg)``."""

    arg: FiniteType
    res: FiniteType

    def __repr__(self):
        return f"Arrow({self.arg!r}, {self.res!r})"


NAT = Base("0")
SPACE = Base("X")
REAL = Arrow(NAT, NAT)  # type 1


def arrow(res, *args):
    """``res(args[0])(args[1])...``"""
    t = res
    for a in args:
        t = Arrow(a, t)
    return t


def unfold(t):
    """Split ``rho(t_n)...(t_1)`` into ``(rho, [t_n, ..., t_1])`` with ``rho`` a base type."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.arg)
        t = t.res
    args.reverse()
    return t, args


def show_type(t: FiniteType) -> str:
    if isinstance(t, Base):
        return t.name
    return f"{show_type(t.res)}({show_type(t.arg)})"


class TypeSyntaxError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(->|→|[0-9]+|X|[()])")


def _tokenize(text, start=0, stop=None):
    stop = len(text) if stop is None else stop
    pos = start
    out = []
    while pos < stop:
        if text[pos:stop].strip() == "":
            break
        m = _TOKEN.match(text, pos, stop)
        if not m:
            raise TypeSyntaxError("unexpected character", text, pos)
        tok = m.group(1)
        out.append((tok, m.start(1)))
        pos = m.end()
    out.append(("<end>", stop))
    return out


class _TypeParser:
    # type    := app ('->' type)?
    # app     := primary ('(' type ')')*
    # primary := '0' | '1' | 'X' | '(' type ')'

    def __init__(self, text, tokens):
        self.text = text
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise TypeSyntaxError(f"expected {expected!r}, found {tok!r}", self.text, pos)
        self.i += 1
        return tok

    def type_(self):
        left = self.app()
        if self.peek() in ("->", "→"):
            self.take()
            return Arrow(left, self.type_())
        return left

    def app(self):
        t = self.primary()
        while self.peek() == "(":
            self.take("(")
            arg = self.type_()
            self.take(")")
            t = Arrow(arg, t)
        return t

    def primary(self):
        tok, pos = self.toks[self.i]
        if tok == "0":
            self.take()
            return NAT
        if tok == "1":
            self.take()
            return REAL
        if tok == "X":
            self.take()
            return SPACE
        if tok == "(":
            self.take()
            t = self.type_()
            self.take(")")
            return t
        raise TypeSyntaxError(f"unexpected {tok!r}", self.text, pos)


def parse_type(text: str) -> FiniteType:
    """Parse ``0``, ``X``, ``1`` (short for ``0(0)``), ``tau(rho)`` and
    right-associative ``rho -> tau``."""
    p = _TypeParser(text, _tokenize(text))
    t = p.type_()
    if p.peek() != "<end>":
        raise TypeSyntaxError(f"trailing {p.peek()!r}", text, p.toks[p.i][1])
    return t


def is_small(t: FiniteType) -> bool:
    """``rho(0)...(0)`` with ``rho`` in {0, X}."""
    _, args = unfold(t)
    return all(a == NAT for a in args)


def is_admissible(t: FiniteType) -> bool:
    """``rho(t_n)...(t_1)`` with every ``t_i`` small."""
    _, args = unfold(t)
    return all(is_small(a) for a in args)


def hat_type(t: FiniteType) -> FiniteType:
    """Replace every ``X`` by ``0``."""
    if isinstance(t, Base):
        return NAT
    return Arrow(hat_type(t.arg), hat_type(t.res))
