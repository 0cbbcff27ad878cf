"""Formulas over finite types: syntax, typing, classification, Skolemization.

Concrete syntax (ASCII; a few Unicode aliases are accepted)::

    formula  := 'forall' x ':' type '.' formula
              | 'exists' x ':' type ['<~' term] '.' formula
              | disj ['=>' formula]
    disj     := conj ('or' conj)*
    conj     := neg ('and' neg)*
    neg      := 'not' neg | 'true' | 'false' | '(' formula ')'
              | term REL term
    REL      := '=_0' | '<=_0' | '<_0' | '=_R' | '<=_R' | '<_R' | '=_X' | '<~'
    term     := term ('+' | '-') term | term '*' term | '-' term
              | term '(' term {',' term} ')' | x | n | '(' term ')'
              | '(' 'lambda' x ':' type '.' term ')'

``<~`` is the norm-comparison relation (``x <~ y`` at type X means
``||x|| <= ||y||``, pointwise at function types).  Reserved constants:
``zero_X``, ``one_X`` : X, ``c_p`` : 1, ``C`` : X(X(0)), ``norm`` : 1(X).

>>> f = parse_formula("forall a:0. exists b:0 <~ a. forall c:X. b <=_0 a")
>>> classify(f)
'delta-sentence'
>>> show(skolem_normal_form(as_delta(f)))
'exists B:0(0) <~ (lambda a:0. a). forall a:0. forall c:X. B(a) <=_0 a'
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .types import (
    NAT,
    REAL,
    SPACE,
    Arrow,
    FiniteType,
    TypeSyntaxError,
    _TypeParser,
    arrow,
    is_admissible,
    parse_type,
    show_type,
)

__all__ = [
    "Var", "Num", "Const", "App", "BinOp", "Neg", "Lam",
    "Rel", "Truth", "Not", "And", "Or", "Implies", "Quant",
    "CONSTANTS", "RELATIONS", "LABELS",
    "FormulaSyntaxError", "FormulaTypeError", "NotDelta",
    "parse_term", "parse_formula", "show", "type_of", "check_formula",
    "free_vars", "prefix", "classify", "DeltaSentence", "as_delta",
    "skolem_normal_form", "skolem_matrix_matches",
]


# --------------------------------------------------------------------------
# AST


class Node:
    __slots__ = ()

    def __str__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class Var(Node):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Num(Node):
    value: int

    def __repr__(self):
        return f"Num({self.value})"


@dataclass(frozen=True, repr=False)
class Const(Node):
    name: str

    def __repr__(self):
        return f"Const({self.name!r})"


@dataclass(frozen=True)
class App(Node):
    fn: Node
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    term: Node


@dataclass(frozen=True)
class Lam(Node):
    var: str
    type: FiniteType
    body: Node


@dataclass(frozen=True)
class Rel(Node):
    rel: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Truth(Node):
    value: bool


@dataclass(frozen=True)
class Not(Node):
    body: Node


@dataclass(frozen=True)
class And(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Or(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Implies(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Quant(Node):
    kind: str  # "forall" | "exists"
    var: str
    type: FiniteType
    bound: Node | None
    body: Node


CONSTANTS = {
    "zero_X": SPACE,
    "one_X": SPACE,
    "c_p": REAL,
    "C": arrow(SPACE, arrow(SPACE, NAT)),
    "norm": arrow(REAL, SPACE),
}

RELATIONS = ("=_0", "<=_0", "<_0", "=_R", "<=_R", "<_R", "=_X", "<~")

LABELS = ("forall-formula", "exists-formula", "delta-sentence", "skolem-form", "other")

_KEYWORDS = {"forall", "exists", "not", "and", "or", "lambda", "true", "false"}
_ALIASES = {"∀": "forall", "∃": "exists", "¬": "not", "∧": "and", "∨": "or",
            "λ": "lambda", "\\": "lambda", "⪯": "<~", "⇒": "=>", "→": "->",
            "≤_0": "<=_0", "≤_R": "<=_R"}


# --------------------------------------------------------------------------
# printing

_TERM_PREC = {"+": 1, "-": 1, "*": 2}


def _show_term(t, prec=0):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Lam):
        return f"(lambda {t.var}:{show_type(t.type)}. {_show_term(t.body)})"
    if isinstance(t, App):
        fn = _show_term(t.fn, 4)
        return f"{fn}({_show_term(t.arg)})"
    if isinstance(t, Neg):
        s = "-" + _show_term(t.term, 3)
        return f"({s})" if prec > 3 else s
    if isinstance(t, BinOp):
        q = _TERM_PREC[t.op]
        s = f"{_show_term(t.left, q)} {t.op} {_show_term(t.right, q + 1)}"
        return f"({s})" if prec > q else s
    raise TypeError(f"not a term: {t!r}")


def _show_formula(f, prec=0):
    # precedence: quantifier/implies 0, or 1, and 2, not/atoms 3
    if isinstance(f, Quant):
        b = f" <~ {_show_term(f.bound)}" if f.bound is not None else ""
        s = f"{f.kind} {f.var}:{show_type(f.type)}{b}. {_show_formula(f.body)}"
        return f"({s})" if prec > 0 else s
    if isinstance(f, Implies):
        s = f"{_show_formula(f.left, 1)} => {_show_formula(f.right, 0)}"
        return f"({s})" if prec > 0 else s
    if isinstance(f, Or):
        s = f"{_show_formula(f.left, 1)} or {_show_formula(f.right, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(f, And):
        s = f"{_show_formula(f.left, 2)} and {_show_formula(f.right, 3)}"
        return f"({s})" if prec > 2 else s
    if isinstance(f, Not):
        return f"not {_show_formula(f.body, 3)}"
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Rel):
        return f"{_show_term(f.left)} {f.rel} {_show_term(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


def show(node) -> str:
    """Print a term or formula in the canonical concrete syntax."""
    if isinstance(node, (Quant, Implies, Or, And, Not, Truth, Rel)):
        return _show_formula(node)
    return _show_term(node)


# --------------------------------------------------------------------------
# parsing


class FormulaSyntaxError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(
    r"""\s*(
        =>|->|<=_0|<=_R|≤_0|≤_R|<_0|<_R|=_0|=_R|=_X|<~
      | [∀∃¬∧∨λ\\⪯⇒→]
      | [()+\-*,.:]
      | [0-9]+
      | [A-Za-z_][A-Za-z0-9_']*
    )""",
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
        tok = _ALIASES.get(m.group(1), m.group(1))
        out.append((tok, m.start(1)))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


class _Backtrack(Exception):
    pass


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)][0]

    def pos(self):
        return self.toks[self.i][1]

    def error(self, msg):
        raise FormulaSyntaxError(msg, self.text, self.pos())

    def take(self, expected=None):
        tok = self.peek()
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def ident(self):
        tok = self.peek()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) or tok in _KEYWORDS or tok in CONSTANTS:
            self.error(f"expected a variable name, found {tok!r}")
        return self.take()

    def type_(self):
        tp = _TypeParser(self.text, self.toks)
        tp.i = self.i
        try:
            t = tp.type_()
        except TypeSyntaxError as exc:
            raise FormulaSyntaxError("bad type", self.text, exc.pos) from None
        self.i = tp.i
        return t

    # formulas

    def formula(self):
        tok = self.peek()
        if tok in ("forall", "exists"):
            return self.quantified()
        left = self.disj()
        if self.peek() == "=>":
            self.take()
            return Implies(left, self.formula())
        return left

    def quantified(self):
        kind = self.take()
        var = self.ident()
        self.take(":")
        t = self.type_()
        bound = None
        if self.peek() == "<~":
            self.take()
            bound = self.term()
        self.take(".")
        return Quant(kind, var, t, bound, self.formula())

    def disj(self):
        f = self.conj()
        while self.peek() == "or":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.neg()
        while self.peek() == "and":
            self.take()
            f = And(f, self.neg())
        return f

    def neg(self):
        tok = self.peek()
        if tok == "not":
            self.take()
            return Not(self.neg())
        if tok in ("forall", "exists"):
            return self.quantified()
        if tok in ("true", "false"):
            self.take()
            return Truth(tok == "true")
        if tok == "(" and self.peek(1) != "lambda":
            save = self.i
            try:
                self.take("(")
                f = self.formula()
                self.take(")")
                if self.peek() in RELATIONS or self.peek() in ("+", "-", "*", "("):
                    raise _Backtrack
                return f
            except (FormulaSyntaxError, _Backtrack):
                self.i = save
        return self.atomic()

    def atomic(self):
        left = self.term()
        rel = self.peek()
        if rel not in RELATIONS:
            self.error(f"expected a relation, found {rel!r}")
        self.take()
        return Rel(rel, left, self.term())

    # terms

    def term(self):
        t = self.mul()
        while self.peek() in ("+", "-"):
            op = self.take()
            t = BinOp(op, t, self.mul())
        return t

    def mul(self):
        t = self.unary()
        while self.peek() == "*":
            self.take()
            t = BinOp("*", t, self.unary())
        return t

    def unary(self):
        if self.peek() == "-":
            self.take()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self):
        t = self.primary()
        while self.peek() == "(":
            self.take()
            t = App(t, self.term())
            while self.peek() == ",":
                self.take()
                t = App(t, self.term())
            self.take(")")
        return t

    def primary(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            if self.peek() == "lambda":
                self.take()
                var = self.ident()
                self.take(":")
                t = self.type_()
                self.take(".")
                body = self.term()
                self.take(")")
                return Lam(var, t, body)
            t = self.term()
            self.take(")")
            return t
        if tok.isdigit():
            self.take()
            return Num(int(tok))
        if tok in CONSTANTS:
            self.take()
            return Const(tok)
        return Var(self.ident())

    def finish(self, node):
        if self.peek() != "<end>":
            self.error(f"unexpected {self.peek()!r}")
        return node


def parse_term(text: str) -> Node:
    p = _Parser(text)
    return p.finish(p.term())


def parse_formula(text: str, free=None, check=True) -> Node:
    """Parse (and by default type-check) a formula.

    ``free`` maps the names of free variables to their types, given either
    as :class:`FiniteType` or as type text.
    """
    p = _Parser(text)
    f = p.finish(p.formula())
    if check:
        check_formula(f, free)
    return f


# --------------------------------------------------------------------------
# typing


class FormulaTypeError(TypeError):
    def __init__(self, msg, node):
        super().__init__(f"{msg} in `{show(node)}`")
        self.node = node


def _env(free):
    env = {}
    for k, v in (free or {}).items():
        env[k] = parse_type(v) if isinstance(v, str) else v
    return env


def type_of(t, env=None) -> FiniteType:
    env = env or {}
    if isinstance(t, Var):
        if t.name not in env:
            raise FormulaTypeError(f"unbound variable {t.name!r}", t)
        return env[t.name]
    if isinstance(t, Num):
        return NAT
    if isinstance(t, Const):
        return CONSTANTS[t.name]
    if isinstance(t, Lam):
        return Arrow(t.type, type_of(t.body, {**env, t.var: t.type}))
    if isinstance(t, App):
        ft = type_of(t.fn, env)
        at = type_of(t.arg, env)
        if not isinstance(ft, Arrow):
            raise FormulaTypeError(f"cannot apply a term of type {show_type(ft)}", t)
        if ft.arg != at:
            raise FormulaTypeError(
                f"argument of type {show_type(at)} where {show_type(ft.arg)} is expected", t)
        return ft.res
    if isinstance(t, Neg):
        tt = type_of(t.term, env)
        if tt not in (SPACE, REAL):
            raise FormulaTypeError(f"cannot negate a term of type {show_type(tt)}", t)
        return tt
    if isinstance(t, BinOp):
        lt, rt = type_of(t.left, env), type_of(t.right, env)
        if t.op in ("+", "-"):
            if lt != rt or lt not in (NAT, SPACE, REAL):
                raise FormulaTypeError(
                    f"'{t.op}' on types {show_type(lt)} and {show_type(rt)}", t)
            return lt
        if lt in (NAT, REAL) and rt == SPACE:
            return SPACE
        if lt == rt and lt in (NAT, REAL):
            return lt
        raise FormulaTypeError(f"'*' on types {show_type(lt)} and {show_type(rt)}", t)
    raise FormulaTypeError("not a term", t)


def check_formula(f, free=None):
    """Raise :class:`FormulaTypeError` unless ``f`` is well typed."""
    _check(f, _env(free))
    return f


def _check(f, env):
    if isinstance(f, Truth):
        return
    if isinstance(f, Rel):
        lt, rt = type_of(f.left, env), type_of(f.right, env)
        r = f.rel
        if r.endswith("_0"):
            ok = lt == rt == NAT
        elif r.endswith("_R"):
            ok = lt in (NAT, REAL) and rt in (NAT, REAL)
        elif r == "=_X":
            ok = lt == rt == SPACE
        else:
            ok = lt == rt
        if not ok:
            raise FormulaTypeError(
                f"'{r}' between types {show_type(lt)} and {show_type(rt)}", f)
        return
    if isinstance(f, Not):
        return _check(f.body, env)
    if isinstance(f, (And, Or, Implies)):
        _check(f.left, env)
        return _check(f.right, env)
    if isinstance(f, Quant):
        if f.bound is not None:
            bt = type_of(f.bound, env)
            if bt != f.type:
                raise FormulaTypeError(
                    f"bound of type {show_type(bt)} for a variable of type {show_type(f.type)}", f.bound)
        return _check(f.body, {**env, f.var: f.type})
    raise FormulaTypeError("not a formula", f)


def free_vars(node, bound=frozenset()):
    if isinstance(node, Var):
        return set() if node.name in bound else {node.name}
    if isinstance(node, (Num, Const, Truth)):
        return set()
    if isinstance(node, Lam):
        return free_vars(node.body, bound | {node.var})
    if isinstance(node, App):
        return free_vars(node.fn, bound) | free_vars(node.arg, bound)
    if isinstance(node, (BinOp, Rel, And, Or, Implies)):
        return free_vars(node.left, bound) | free_vars(node.right, bound)
    if isinstance(node, Neg):
        return free_vars(node.term, bound)
    if isinstance(node, Not):
        return free_vars(node.body, bound)
    if isinstance(node, Quant):
        out = free_vars(node.bound, bound) if node.bound is not None else set()
        return out | free_vars(node.body, bound | {node.var})
    raise TypeError(f"unknown node {node!r}")


# --------------------------------------------------------------------------
# classification


def _quantifier_free(f):
    if isinstance(f, Quant):
        return False
    if isinstance(f, (And, Or, Implies)):
        return _quantifier_free(f.left) and _quantifier_free(f.right)
    if isinstance(f, Not):
        return _quantifier_free(f.body)
    return True


def prefix(f):
    """Split a formula into its leading quantifier list and the rest."""
    qs = []
    while isinstance(f, Quant):
        qs.append(f)
        f = f.body
    return qs, f


def _blocks(qs):
    """Group the prefix into maximal runs of (kind, bounded?)."""
    runs = []
    for q in qs:
        key = (q.kind, q.bound is not None)
        if runs and runs[-1][0] == key:
            runs[-1][1].append(q)
        else:
            runs.append((key, [q]))
    return runs


def classify(f, free=None) -> str:
    """One of ``forall-formula``, ``exists-formula``, ``skolem-form``,
    ``delta-sentence``, ``other`` (checked in that order).

    A quantifier-free formula counts as a forall-formula, and a
    Delta-shaped sentence without a leading universal block is already in
    Skolem normal form.
    """
    check_formula(f, free)
    qs, matrix = prefix(f)
    if not _quantifier_free(matrix):
        return "other"
    if all(q.kind == "forall" and q.bound is None and is_admissible(q.type) for q in qs):
        return "forall-formula"
    if all(q.kind == "exists" and q.bound is None and is_admissible(q.type) for q in qs):
        return "exists-formula"
    if free_vars(f):
        return "other"
    shape = [k for k, _ in _blocks(qs)]
    if shape and shape[0] == ("exists", True) and all(k == ("forall", False) for k in shape[1:]):
        if all(is_admissible(q.type) for q in qs if q.kind == "forall"):
            return "skolem-form"
    try:
        as_delta(f)
        return "delta-sentence"
    except NotDelta:
        return "other"


class NotDelta(ValueError):
    pass


@dataclass(frozen=True)
class DeltaSentence:
    """``forall a. exists b <~ r(a). forall c. matrix`` with admissible types."""

    a: tuple  # ((name, type), ...)
    b: tuple  # ((name, type, bound), ...)
    c: tuple
    matrix: Node

    def to_formula(self):
        f = self.matrix
        for name, t in reversed(self.c):
            f = Quant("forall", name, t, None, f)
        for name, t, r in reversed(self.b):
            f = Quant("exists", name, t, r, f)
        for name, t in reversed(self.a):
            f = Quant("forall", name, t, None, f)
        return f


def as_delta(f) -> DeltaSentence:
    """Read ``f`` as a Delta-sentence or raise :class:`NotDelta`."""
    try:
        check_formula(f)
    except FormulaTypeError as exc:
        raise NotDelta(str(exc)) from None
    qs, matrix = prefix(f)
    if not _quantifier_free(matrix):
        raise NotDelta("matrix is not quantifier-free")
    i = 0
    a, b, c = [], [], []
    while i < len(qs) and qs[i].kind == "forall" and qs[i].bound is None:
        a.append(qs[i])
        i += 1
    while i < len(qs) and qs[i].kind == "exists" and qs[i].bound is not None:
        b.append(qs[i])
        i += 1
    while i < len(qs) and qs[i].kind == "forall" and qs[i].bound is None:
        c.append(qs[i])
        i += 1
    if i != len(qs):
        raise NotDelta(f"quantifier {qs[i].kind} {qs[i].var} breaks the forall-exists-forall shape")
    for q in qs:
        if not is_admissible(q.type):
            raise NotDelta(f"type {show_type(q.type)} of {q.var} is not admissible")
    names = [q.var for q in qs]
    if len(set(names)) != len(names):
        raise NotDelta("quantified variables must be distinct")
    a_names = {q.var for q in a}
    for q in b:
        extra = free_vars(q.bound) - a_names
        if extra:
            raise NotDelta(f"bound of {q.var} uses {sorted(extra)} outside the leading universal block")
    if free_vars(f):
        raise NotDelta(f"free variables {sorted(free_vars(f))}")
    return DeltaSentence(
        tuple((q.var, q.type) for q in a),
        tuple((q.var, q.type, q.bound) for q in b),
        tuple((q.var, q.type) for q in c),
        matrix,
    )


def _subst(node, mapping):
    """Replace free variables by terms; refuses to capture."""
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, (Num, Const, Truth)):
        return node
    if isinstance(node, Lam):
        inner = {k: v for k, v in mapping.items() if k != node.var}
        if any(node.var in free_vars(v) for v in inner.values()):
            raise ValueError(f"substitution would capture {node.var!r}")
        return Lam(node.var, node.type, _subst(node.body, inner))
    if isinstance(node, App):
        return App(_subst(node.fn, mapping), _subst(node.arg, mapping))
    if isinstance(node, BinOp):
        return BinOp(node.op, _subst(node.left, mapping), _subst(node.right, mapping))
    if isinstance(node, Neg):
        return Neg(_subst(node.term, mapping))
    if isinstance(node, Rel):
        return Rel(node.rel, _subst(node.left, mapping), _subst(node.right, mapping))
    if isinstance(node, Not):
        return Not(_subst(node.body, mapping))
    if isinstance(node, (And, Or, Implies)):
        return type(node)(_subst(node.left, mapping), _subst(node.right, mapping))
    raise TypeError(f"cannot substitute into {node!r}")


def _all_names(node, acc=None):
    acc = set() if acc is None else acc
    if isinstance(node, Var):
        acc.add(node.name)
    elif isinstance(node, (Lam, Quant)):
        acc.add(node.var)
    for child in _children(node):
        _all_names(child, acc)
    return acc


def _children(node):
    if isinstance(node, Lam):
        return [node.body]
    if isinstance(node, App):
        return [node.fn, node.arg]
    if isinstance(node, (BinOp, Rel, And, Or, Implies)):
        return [node.left, node.right]
    if isinstance(node, Neg):
        return [node.term]
    if isinstance(node, Not):
        return [node.body]
    if isinstance(node, Quant):
        return ([node.bound] if node.bound is not None else []) + [node.body]
    return []


def _fresh(base, taken):
    name = base
    while name in taken or name in _KEYWORDS or name in CONSTANTS:
        name += "'"
    taken.add(name)
    return name


def skolem_normal_form(d: DeltaSentence) -> Node:
    """``exists B <~ (lambda a. r). forall a. forall c. matrix[b := B(a)]``.

    Each ``b`` of type ``s`` becomes a function ``B`` of type
    ``s(t_k)...(t_1)`` in the universal variables ``a_1..a_k`` (types
    ``t_1..t_k``), bounded by the abstraction of its bound term.
    """
    if isinstance(d, Node):
        d = as_delta(d)
    taken = _all_names(d.to_formula())
    a_vars = [Var(n) for n, _ in d.a]
    a_types = [t for _, t in d.a]
    skolem = []
    mapping = {}
    for name, t, r in d.b:
        fname = _fresh(name[:1].upper() + name[1:], taken)
        ftype = arrow(t, *reversed(a_types))
        bound = r
        for an, at in reversed(d.a):
            bound = Lam(an, at, bound)
        applied = Var(fname)
        for av in a_vars:
            applied = App(applied, av)
        mapping[name] = applied
        skolem.append((fname, ftype, bound))
    body = _subst(d.matrix, mapping)
    for name, t in reversed(d.c):
        body = Quant("forall", name, t, None, body)
    for name, t in reversed(d.a):
        body = Quant("forall", name, t, None, body)
    for fname, ftype, bound in reversed(skolem):
        body = Quant("exists", fname, ftype, bound, body)
    return body


def _unskolemize(node, heads, arity):
    """Replace each full application ``B(a_1)...(a_k)`` by the variable it came from."""
    spine, args = node, []
    while isinstance(spine, App):
        args.append(spine.arg)
        spine = spine.fn
    if isinstance(spine, Var) and spine.name in heads and len(args) == arity:
        return Var(heads[spine.name])
    if isinstance(node, App):
        return App(_unskolemize(node.fn, heads, arity), _unskolemize(node.arg, heads, arity))
    if isinstance(node, (BinOp,)):
        return BinOp(node.op, _unskolemize(node.left, heads, arity), _unskolemize(node.right, heads, arity))
    if isinstance(node, Rel):
        return Rel(node.rel, _unskolemize(node.left, heads, arity), _unskolemize(node.right, heads, arity))
    if isinstance(node, (And, Or, Implies)):
        return type(node)(_unskolemize(node.left, heads, arity), _unskolemize(node.right, heads, arity))
    if isinstance(node, Neg):
        return Neg(_unskolemize(node.term, heads, arity))
    if isinstance(node, Not):
        return Not(_unskolemize(node.body, heads, arity))
    if isinstance(node, Lam):
        return Lam(node.var, node.type, _unskolemize(node.body, heads, arity))
    return node


def skolem_matrix_matches(d: DeltaSentence, s: Node) -> bool:
    """Check that the Skolem form's matrix is ``d``'s matrix with every
    ``b_j`` replaced by ``B_j`` applied to the universal block, by undoing
    the replacement and comparing syntax trees."""
    qs, matrix = prefix(s)
    heads = {q.var: name for q, (name, _, _) in zip(qs, d.b)}
    if len(heads) != len(d.b):
        return False
    return _unskolemize(matrix, heads, len(d.a)) == d.matrix
