"""Finite-dimensional l^p approximation of simple functions.

Given ``x_1, ..., x_n`` in the unit ball of L^p(mu) and an accuracy ``N``,
the partition construction builds disjoint cells ``B_l`` and the functions
``z_l = 1_{B_l} * phi`` (``phi = sum_j |x_j|``).  Their span is isometric to
``l^p`` of dimension ``#cells`` and contains approximants ``y_i`` with
``||x_i - y_i|| <= 1/N``.

Everything on the unrescaled path is exact rational arithmetic for integer
``p``: the isometry is checked on the power scale through the weights
``w_l = ||z_l||^p``, i.e. ``||sum_l c_l z_l||^p == sum_l |c_l|^p w_l``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product

import numpy as np

from .measure import (
    SimpleFunction,
    as_exponent,
    exact_root,
    lp_norm,
    lp_norm_pow,
    normalize_tilde,
    sub,
    to_scalar,
)

__all__ = [
    "ZERO",
    "PreconditionError",
    "LabeledPartition",
    "LpBasisCertificate",
    "ApproximationWitness",
    "Clause",
    "Verdict",
    "partition_labels",
    "build_approximation",
    "build_approximation_normalized",
    "build_approximation_unit",
    "verify_certificate",
    "verify_axiom_instance",
    "BMBound",
    "operator_norm_bounds",
    "bm_distance_bound",
    "basis_map_matrix",
    "format_label",
    "parse_label",
]

# Float comparisons on the rescaled (root-taking) path.
TOL = 1e-9

# Label of an atom where the input vanishes.
ZERO = None


class PreconditionError(ValueError):
    pass


def format_label(label):
    if label is ZERO:
        return "z"
    k, sign = label
    return f"{k}{'+' if sign > 0 else '-'}"


def parse_label(text):
    if text == "z":
        return ZERO
    return (int(text[:-1]), 1 if text[-1] == "+" else -1)


@dataclass(frozen=True)
class LabeledPartition:
    """Per-atom, per-input labels ``(k, +1)``, ``(k, -1)`` or ``ZERO``.

    ``cells`` maps each occurring label vector to the atoms carrying it, in
    order of first appearance; together the cells partition the atoms.
    """

    space: object
    n: int
    N: int
    phi: SimpleFunction
    labels: tuple  # labels[atom][i]
    cells: dict = field(hash=False)

    @property
    def grid(self):
        return self.n * self.N

    @property
    def active_cells(self):
        """Cells where ``phi > 0``, i.e. those giving a nonzero ``z_l``."""
        return {l: atoms for l, atoms in self.cells.items() if any(lab is not ZERO for lab in l)}


def _check_inputs(x, N):
    if not x:
        raise PreconditionError("need at least one input function")
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise PreconditionError(f"N must be a positive integer, got {N!r}")
    space = x[0].space
    for f in x[1:]:
        if f.space != space:
            raise PreconditionError("all inputs must live on the same measure space")
    return space


def _grid_class(value, phi_value, grid):
    """The ``k`` with ``k/grid * phi < |value| <= (k+1)/grid * phi``."""
    a = abs(value)
    if isinstance(a, Fraction) and isinstance(phi_value, Fraction):
        r = a * grid / phi_value
        k = math.ceil(r) - 1
    else:
        k = math.ceil(float(a) * grid / float(phi_value)) - 1
        k = min(max(k, 0), grid - 1)
        # repair float rounding so the defining inequalities hold as computed
        while k > 0 and not (k / grid * float(phi_value) < float(a)):
            k -= 1
        while k < grid - 1 and float(a) > (k + 1) / grid * float(phi_value):
            k += 1
    return k


def partition_labels(x, N) -> LabeledPartition:
    """Label every (atom, input) pair and group atoms by label vector.

    Boundary values ``|x_i| = (k+1)/(nN) * phi`` go to class ``k``.
    """
    space = _check_inputs(x, N)
    n = len(x)
    grid = n * N
    phi = SimpleFunction(space, [sum(abs(f[j]) for f in x) for j in range(len(space))])
    labels = []
    cells = {}
    for j in range(len(space)):
        row = []
        for f in x:
            v = f[j]
            if v == 0:
                row.append(ZERO)
            else:
                k = _grid_class(v, phi[j], grid)
                row.append((k, 1 if v > 0 else -1))
        row = tuple(row)
        labels.append(row)
        cells.setdefault(row, []).append(j)
    cells = {l: tuple(a) for l, a in cells.items()}
    return LabeledPartition(space, n, N, phi, tuple(labels), cells)


@dataclass(frozen=True)
class LpBasisCertificate:
    """Disjointly supported ``z_l`` with weights ``w_l = ||z_l||^p``.

    The map ``e_l -> z_l / ||z_l||`` is an isometry from ``l^p_D`` onto the
    span; ``beta(l) = w_l^(-1/p)`` is the normalising factor.
    """

    p: object
    cells: tuple
    basis: tuple
    weights: tuple
    labels: tuple = ()

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def exact(self):
        return as_exponent(self.p).exact and all(z.exact for z in self.basis) and all(
            isinstance(w, Fraction) for w in self.weights
        )

    def beta(self, l):
        return float(self.weights[l]) ** (-1.0 / float(as_exponent(self.p)))

    def combine(self, coords, space=None):
        """``sum_l coords[l] * z_l`` as a simple function."""
        if len(coords) != self.dimension:
            raise ValueError("coordinate vector has the wrong length")
        if not self.basis:
            if space is None:
                raise ValueError("empty basis needs an explicit space")
            return SimpleFunction(space, [0] * len(space))
        space = self.basis[0].space
        vals = [0] * len(space)
        for c, z in zip(coords, self.basis):
            if c == 0:
                continue
            for j in range(len(space)):
                if z[j] != 0:
                    vals[j] = vals[j] + c * z[j]
        return SimpleFunction(space, vals)

    def coordinate_norm_pow(self, coords):
        """``sum_l |c_l|^p w_l``, the right side of the isometry identity."""
        p = as_exponent(self.p)
        if p.exact and all(isinstance(c, Fraction) for c in coords) and all(
            isinstance(w, Fraction) for w in self.weights
        ):
            return sum((abs(c) ** p.value * w for c, w in zip(coords, self.weights)), Fraction(0))
        e = float(p)
        return math.fsum(abs(float(c)) ** e * float(w) for c, w in zip(coords, self.weights))


@dataclass(frozen=True)
class ApproximationWitness:
    """Inputs, approximants and the certificate that places them in an l^p span.

    ``outputs[i] == certificate.combine(coords[i])``.  ``error_bound_pow``
    bounds ``||x_i - y_i||^p``; ``dim_bound`` bounds the number of cells.
    """

    mode: str
    space: object
    p: object
    n: int
    N: int
    inputs: tuple
    outputs: tuple
    coords: tuple
    certificate: LpBasisCertificate
    error_bound_pow: object
    dim_bound: int
    rescaled: tuple = ()

    @property
    def exact(self):
        return (
            self.certificate.exact
            and all(y.exact for y in self.outputs)
            and all(x.exact for x in self.inputs)
            and all(isinstance(c, Fraction) for row in self.coords for c in row)
        )

    def error_pow(self, i):
        return lp_norm_pow(sub(self.inputs[i], self.outputs[i]), self.p)

    def to_json(self, verdict=None):
        from .io import witness_to_json

        return witness_to_json(self, verdict)


def _check_ball(x, p, strict):
    for i, f in enumerate(x):
        s = lp_norm_pow(f, p)
        if strict:
            bad = s >= 1 if isinstance(s, Fraction) else s >= 1 - 1e-15
        else:
            bad = s > 1 if isinstance(s, Fraction) else s > 1 + TOL
        if bad:
            rel = "< 1" if strict else "<= 1"
            raise PreconditionError(f"input {i} must have norm {rel}, has norm^p = {s}")


def _construct(x, N, p, mode, dim_bound):
    p = as_exponent(p)
    part = partition_labels(x, N)
    grid = part.grid
    space = part.space
    cells, labels, basis, weights = [], [], [], []
    for l, atoms in part.active_cells.items():
        z = SimpleFunction(space, [part.phi[j] if j in atoms else 0 for j in range(len(space))])
        cells.append(atoms)
        labels.append(l)
        basis.append(z)
        weights.append(lp_norm_pow(z, p))
    cert = LpBasisCertificate(p.value, tuple(cells), tuple(basis), tuple(weights), tuple(labels))
    coords, outputs = [], []
    for i in range(part.n):
        row = []
        for l in labels:
            lab = l[i]
            row.append(Fraction(0) if lab is ZERO else Fraction(lab[1] * lab[0], grid))
        if not all(f.exact for f in x):
            row = [float(c) for c in row]
        coords.append(tuple(row))
        outputs.append(cert.combine(row, space))
    if p.exact:
        bound = Fraction(1, N**p.value)
    else:
        bound = (1.0 / N) ** float(p)
    return ApproximationWitness(
        mode=mode,
        space=space,
        p=p.value,
        n=part.n,
        N=N,
        inputs=tuple(x),
        outputs=tuple(outputs),
        coords=tuple(coords),
        certificate=cert,
        error_bound_pow=bound,
        dim_bound=dim_bound,
    )


def build_approximation(x, N, p) -> ApproximationWitness:
    """Approximate ``x_1..x_n`` (all of norm < 1) to within ``1/N`` inside an
    isometric copy of ``l^p_m`` with ``m <= (2nN+1)^n``.

    >>> from lpforge.measure import MeasureSpace, SimpleFunction
    >>> sp = MeasureSpace.uniform(2)
    >>> w = build_approximation([SimpleFunction(sp, ["3/5", 0])], 2, 2)
    >>> w.outputs[0], w.coords[0]
    (SimpleFunction([3/10, 0]), (Fraction(1, 2),))
    """
    _check_inputs(x, N)
    _check_ball(x, p, strict=True)
    n = len(x)
    return _construct(x, N, p, "plain", (2 * n * N + 1) ** n)


def _rescale(w, factors, mode, dim_bound, N):
    """Multiply selected outputs (and their coordinates) by ``factors[i]``."""
    outputs, coords, rescaled = [], [], []
    for i, a in enumerate(factors):
        if a is None:
            outputs.append(w.outputs[i])
            coords.append(w.coords[i])
            rescaled.append(False)
            continue
        row = tuple(a * c for c in w.coords[i])
        coords.append(row)
        outputs.append(w.certificate.combine(row, w.space))
        rescaled.append(True)
    p = as_exponent(w.p)
    if p.exact:
        bound = Fraction(1, N**p.value)
    else:
        bound = (1.0 / N) ** float(p)
    return ApproximationWitness(
        mode=mode,
        space=w.space,
        p=w.p,
        n=w.n,
        N=N,
        inputs=w.inputs,
        outputs=tuple(outputs),
        coords=tuple(coords),
        certificate=w.certificate,
        error_bound_pow=bound,
        dim_bound=dim_bound,
        rescaled=tuple(rescaled),
    )


def _inverse_norm_factor(y, p):
    """``1/||y||``, exact when the norm is rational."""
    p = as_exponent(p)
    s = lp_norm_pow(y, p)
    if p.exact and isinstance(s, Fraction):
        r = exact_root(s, p.value)
        if r is not None:
            return 1 / r
    return 1.0 / float(s) ** (1.0 / float(p))


def build_approximation_normalized(x, N, p) -> ApproximationWitness:
    """As :func:`build_approximation` at accuracy ``2N``, then push any
    approximant of norm >= 1 back onto the unit sphere.

    Outputs satisfy ``||y_i|| <= 1`` and ``||x_i - y_i|| <= 1/N``; the
    dimension bound is ``(4nN+1)^n``.  Inputs on the unit sphere are
    accepted, since the construction only needs ``sum_j ||x_j|| <= n``.
    """
    _check_inputs(x, N)
    _check_ball(x, p, strict=False)
    n = len(x)
    bound = (4 * n * N + 1) ** n
    w = _construct(x, 2 * N, p, "normalized", bound)
    factors = []
    for y in w.outputs:
        s = lp_norm_pow(y, p)
        factors.append(_inverse_norm_factor(y, p) if s >= 1 else None)
    return _rescale(w, factors, "normalized", bound, N)


def build_approximation_unit(x, N, p) -> ApproximationWitness:
    """Unit-norm inputs to unit-norm approximants within ``1/N``.

    Runs the normalised construction at accuracy ``2N`` (so the composed
    dimension bound is ``(8nN+1)^n``) and rescales every approximant by
    ``1/||y'_i||``, which is defined because ``||y'_i|| >= 1 - 1/(2N)``.
    """
    _check_inputs(x, N)
    for i, f in enumerate(x):
        s = float(lp_norm_pow(f, p))
        if abs(s ** (1.0 / float(as_exponent(p))) - 1.0) > TOL:
            raise PreconditionError(f"input {i} must have norm exactly 1, has norm^p = {s}")
    n = len(x)
    inner = build_approximation_normalized(x, 2 * N, p)
    factors = []
    for y in inner.outputs:
        if lp_norm_pow(y, p) == 0:
            raise PreconditionError("approximant vanished; cannot rescale to the unit sphere")
        factors.append(_inverse_norm_factor(y, p))
    return _rescale(inner, factors, "unit", (8 * n * N + 1) ** n, N)


# --------------------------------------------------------------------------
# verification


@dataclass
class Clause:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Verdict:
    clauses: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.clauses)

    @property
    def first_failure(self):
        for c in self.clauses:
            if not c.ok:
                return c
        return None

    def add(self, name, ok, detail=""):
        self.clauses.append(Clause(name, bool(ok), detail))
        return ok

    def __getitem__(self, name):
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        first = self.first_failure
        return {
            "ok": self.ok,
            "first_failure": None if first is None else first.name,
            "clauses": [c.to_json() for c in self.clauses],
        }


def _le(a, b, tol=TOL):
    """``a <= b`` exactly for Fractions, with relative slack otherwise."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a <= b
    a, b = float(a), float(b)
    return a <= b + tol * max(1.0, abs(b))


def _eq(a, b, tol=TOL):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _random_coords(rng, dim, exact):
    if exact:
        return [Fraction(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(dim)]
    return [rng.uniform(-2.0, 2.0) for _ in range(dim)]


def verify_certificate(w: ApproximationWitness, trials=50, exhaustive=False, seed=0,
                       exact=False, tol=TOL) -> Verdict:
    """Re-check every clause of an approximation witness from scratch.

    Clauses, in order: ``exact`` (only when requested), ``cells``,
    ``dimension``, ``isometry``, ``span``, ``atomwise`` (plain mode),
    ``error``, ``norm``.  The isometry identity is tested on every unit
    coordinate vector plus ``trials`` random ones; ``exhaustive`` adds all
    of ``{-1,0,1}^D`` when that is at most 3^8 vectors.  Rational data is
    compared exactly; ``tol`` is the relative slack for floating data.
    """
    v = Verdict()
    cert = w.certificate
    space = w.space
    p = as_exponent(w.p)
    if exact:
        v.add("exact", w.exact, "" if w.exact else "witness contains floating values")

    # cells: disjoint, nonempty, basis supported on its cell, positive weights
    seen = {}
    ok, detail = True, ""
    if not (len(cert.cells) == len(cert.basis) == len(cert.weights)):
        ok, detail = False, "cells, basis and weights differ in length"
    else:
        for l, (atoms, z, wt) in enumerate(zip(cert.cells, cert.basis, cert.weights)):
            if not atoms:
                ok, detail = False, f"cell {l} is empty"
                break
            clash = [j for j in atoms if j in seen]
            if clash:
                ok, detail = False, f"cells {seen[clash[0]]} and {l} share atom {clash[0]}"
                break
            for j in atoms:
                seen[j] = l
            stray = [j for j in z.support() if j not in atoms]
            if stray:
                ok, detail = False, f"basis function {l} is nonzero outside its cell"
                break
            if not wt > 0:
                ok, detail = False, f"weight {l} is not positive"
                break
    v.add("cells", ok, detail)

    dim = cert.dimension
    v.add(
        "dimension",
        dim <= w.dim_bound and dim <= len(space),
        f"{dim} cells, bound {w.dim_bound}, {len(space)} atoms",
    )

    exact_mode = cert.exact
    rng = random.Random(seed)
    vectors = []
    for l in range(dim):
        e = [Fraction(0)] * dim
        e[l] = Fraction(1)
        vectors.append(e)
    vectors += [_random_coords(rng, dim, exact_mode) for _ in range(trials if dim else 0)]
    if exhaustive and 0 < dim <= 8:
        vectors += [list(map(Fraction, c)) for c in product((-1, 0, 1), repeat=dim)]
    ok, detail = True, ""
    if v["cells"].ok:
        for t, c in enumerate(vectors):
            lhs = lp_norm_pow(cert.combine(c, space), p)
            rhs = cert.coordinate_norm_pow(c)
            if not _eq(lhs, rhs, tol):
                ok, detail = False, f"vector {t}: ||sum c_l z_l||^p = {lhs} but sum |c_l|^p w_l = {rhs}"
                break
        else:
            detail = f"{len(vectors)} coordinate vectors"
    else:
        ok, detail = False, "skipped: cells clause failed"
    v.add("isometry", ok, detail)

    ok, detail = len(w.outputs) == len(w.inputs) == len(w.coords), ""
    if ok:
        for i, (y, c) in enumerate(zip(w.outputs, w.coords)):
            if len(c) != dim:
                ok, detail = False, f"output {i} has {len(c)} coordinates for {dim} cells"
                break
            comb = cert.combine(c, space)
            if not all(_eq(a, b, tol) for a, b in zip(comb.values, y.values)):
                ok, detail = False, f"output {i} differs from its basis expansion"
                break
    else:
        detail = "inputs, outputs and coordinates differ in length"
    v.add("span", ok, detail)

    if w.mode == "plain":
        grid = w.n * w.N
        phi = [sum(abs(f[j]) for f in w.inputs) for j in range(len(space))]
        ok, detail = True, ""
        for i, (x, y) in enumerate(zip(w.inputs, w.outputs)):
            for j in range(len(space)):
                if not _le(abs(x[j] - y[j]) * grid, phi[j], tol):
                    ok, detail = False, f"input {i}, atom {j}: |x - y| > phi/(nN)"
                    break
            if not ok:
                break
        v.add("atomwise", ok, detail)

    ok, detail = True, ""
    for i in range(len(w.inputs)):
        e = w.error_pow(i)
        if not _le(e, w.error_bound_pow, tol):
            ok, detail = False, f"input {i}: ||x - y||^p = {e} > {w.error_bound_pow}"
            break
    v.add("error", ok, detail)

    if w.mode in ("normalized", "axiom"):
        ok = all(_le(lp_norm_pow(y, p), Fraction(1), tol) for y in w.outputs)
        v.add("norm", ok, "||y_i|| <= 1")
    elif w.mode == "unit":
        ok = all(abs(lp_norm(y, p) - 1.0) <= tol for y in w.outputs)
        v.add("norm", ok, "||y_i|| = 1")
    return v


def verify_axiom_instance(x, n, N, p, trials=50, seed=0):
    """Produce and check a witness for one instance of the finite-dimensional
    approximation axiom.

    Each input is first pulled into the unit ball by :func:`normalize_tilde`;
    the approximants then satisfy the isometry, span and error/norm clauses,
    use at most ``(4nN+1)^n`` basis vectors, and have coordinates in
    ``[-1, 1]``.  Returns ``(witness, verdict)``.
    """
    if len(x) != n:
        raise PreconditionError(f"n = {n} but {len(x)} functions were given")
    if not isinstance(N, int) or N < 1:
        raise PreconditionError(f"N must be a positive integer, got {N!r}")
    xt = [normalize_tilde(f, p) for f in x]
    w = build_approximation_normalized(xt, N, p)
    w = replace(w, mode="axiom")
    v = verify_certificate(w, trials=trials, seed=seed)
    worst = max((abs(float(c)) for row in w.coords for c in row), default=0.0)
    v.add("coordinates", worst <= 1 + TOL, f"max |lambda| = {worst}")
    return w, v


# --------------------------------------------------------------------------
# Banach-Mazur distance


@dataclass(frozen=True)
class BMBound:
    """Bounds on ``||L||_p * ||L^-1||_p``.

    ``value`` is the certified upper bound (never below 1); ``lower`` is the
    best value attained on sampled vectors.
    """

    value: float
    lower: float
    norm: tuple
    inverse_norm: tuple
    method: str

    def to_json(self):
        return {
            "value": self.value,
            "lower": self.lower,
            "norm": {"lower": self.norm[0], "upper": self.norm[1]},
            "inverse_norm": {"lower": self.inverse_norm[0], "upper": self.inverse_norm[1]},
            "method": self.method,
        }


def _exact_inverse(rows):
    n = len(rows)
    a = [[to_scalar(v) for v in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    a = [[Fraction(v) for v in r] for r in a]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [u - f * v for u, v in zip(a[r], a[col])]
    return [r[n:] for r in a]


def _boyd_lower(A, p, rng, restarts=8, iters=100):
    """Lower bound for ``||A||_{p->p}`` by dual power iteration."""
    q = p / (p - 1.0)
    m = A.shape[1]

    def dual(v, r):
        nv = np.linalg.norm(v, r)
        if nv == 0:
            return v
        return np.sign(v) * np.abs(v / nv) ** (r - 1)

    best = max(np.linalg.norm(A[:, j], p) for j in range(m))
    starts = [np.ones(m)] + [rng.standard_normal(m) for _ in range(restarts)]
    for x in starts:
        x = x / np.linalg.norm(x, p)
        for _ in range(iters):
            y = A @ x
            val = np.linalg.norm(y, p)
            best = max(best, val)
            z = A.T @ dual(y, p)
            if np.linalg.norm(z, q) <= z @ x + 1e-15:
                break
            x = dual(z, q)
            x = x / np.linalg.norm(x, p)
    return float(best)


def operator_norm_bounds(A, p, rng=None):
    """``(lower, upper, method)`` for the ``l^p -> l^p`` operator norm of ``A``.

    Exact for diagonal matrices and for ``p`` in {1, 2, inf}; otherwise the
    upper bound is the Riesz-Thorin interpolation of the column- and row-sum
    norms and the lower bound comes from dual power iteration.
    """
    A = np.asarray(A, dtype=float)
    col = float(np.abs(A).sum(axis=0).max())
    row = float(np.abs(A).sum(axis=1).max())
    if np.count_nonzero(A - np.diag(np.diag(A))) == 0:
        d = float(np.abs(np.diag(A)).max())
        return d, d, "diagonal"
    if p == 1:
        return col, col, "column-sum"
    if p == math.inf:
        return row, row, "row-sum"
    if p == 2:
        s = float(np.linalg.norm(A, 2))
        return s, s, "spectral"
    p = float(p)
    upper = col ** (1.0 / p) * row ** (1.0 - 1.0 / p)
    rng = rng if rng is not None else np.random.default_rng(0)
    lower = min(_boyd_lower(A, p, rng), upper)
    return lower, upper, "riesz-thorin/power-iteration"


def bm_distance_bound(L, p, seed=0) -> BMBound:
    """Upper bound on the Banach-Mazur distance witnessed by the isomorphism
    ``L`` of ``l^p_m``: ``||L|| * ||L^-1||``.

    >>> bm_distance_bound([[2, 0], [0, "1/2"]], 2).value
    4.0
    """
    rows = [[to_scalar(v) for v in r] for r in L]
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("L must be square")
    inv = _exact_inverse(rows)
    if p != math.inf:
        p = float(as_exponent(p))
        if p.is_integer():
            p = int(p)
    rng = np.random.default_rng(seed)
    A = np.array([[float(v) for v in r] for r in rows])
    B = np.array([[float(v) for v in r] for r in inv])
    lo1, up1, m1 = operator_norm_bounds(A, p, rng)
    lo2, up2, m2 = operator_norm_bounds(B, p, rng)
    method = m1 if m1 == m2 else f"{m1}|{m2}"
    return BMBound(max(1.0, up1 * up2), lo1 * lo2, (lo1, up1), (lo2, up2), method)


def basis_map_matrix(cert: LpBasisCertificate, rescaled=True):
    """Matrix of ``e_l -> z_l`` (or ``e_l -> z_l/||z_l||``) in the coordinates
    of the disjoint-support isometry onto ``l^p_D``.

    Disjoint supports make the map diagonal with entries ``||z_l||``; the
    rescaled basis gives the identity up to rounding.
    """
    norms = [float(wt) ** (1.0 / float(as_exponent(cert.p))) for wt in cert.weights]
    if rescaled:
        diag = [nz * cert.beta(l) for l, nz in enumerate(norms)]
    else:
        diag = norms
    return np.diag(diag)
