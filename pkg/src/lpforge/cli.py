"""Command-line entry point.

Exit status: 0 when every check passes, 1 when a check fails (a clause of a
witness, an inequality step, an unsatisfied majorization), 2 on usage,
input or schema errors.  ``LPFORGE_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import approx, convexity, io
from .logic import cauchy, formulas, majorize, types
from .measure import MeasureSpace, SimpleFunction, lp_norm, sub

__all__ = ["RunConfig", "dispatch", "main", "build_parser"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    seed: int = 0
    tol: float = approx.TOL
    timestamp: bool = True
    out: str | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")

    def get(self, key, default=None):
        return self.options.get(key, default)


# --------------------------------------------------------------------------
# input helpers


def _read_json(path_or_inline):
    text = path_or_inline.strip()
    if text.startswith("[") or text.startswith("{"):
        return json.loads(text)
    try:
        with open(path_or_inline, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path_or_inline}") from None


def _parse_p(text):
    if text in ("inf", "infinity"):
        return math.inf
    try:
        return int(text)
    except ValueError:
        return float(text)


def _space(cfg):
    return io.load_space(_read_json(cfg.get("space")))


def _emit(cfg, doc, out=None):
    if cfg.timestamp and isinstance(doc, dict):
        doc = {**doc, "generated": datetime.now(timezone.utc).isoformat()}
    text = io.dumps(doc) if isinstance(doc, (dict, list)) else doc
    path = cfg.out
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (out or sys.stdout).write(text)


# --------------------------------------------------------------------------
# commands


def _cmd_approximate(cfg):
    space = _space(cfg)
    xs = io.load_functions(_read_json(cfg.get("functions")), space)
    p, N = cfg.get("p"), cfg.get("N")
    build = {
        "plain": approx.build_approximation,
        "normalized": approx.build_approximation_normalized,
        "unit": approx.build_approximation_unit,
    }[cfg.get("mode", "plain")]
    w = build(xs, N, p)
    v = approx.verify_certificate(w, trials=cfg.get("trials", 50), seed=cfg.seed, tol=cfg.tol)
    _emit(cfg, io.witness_to_json(w, v))
    return 0 if v.ok else 1


def _cmd_axiom_check(cfg):
    space = _space(cfg)
    xs = io.load_functions(_read_json(cfg.get("functions")), space)
    w, v = approx.verify_axiom_instance(xs, len(xs), cfg.get("N"), cfg.get("p"),
                                       trials=cfg.get("trials", 50), seed=cfg.seed)
    _emit(cfg, io.witness_to_json(w, v))
    return 0 if v.ok else 1


def _cmd_certify(cfg):
    w = io.witness_from_json(_read_json(cfg.get("witness")))
    v = approx.verify_certificate(w, trials=cfg.get("trials", 50), exhaustive=cfg.get("exhaustive", False),
                                  seed=cfg.seed, exact=cfg.get("exact", False), tol=cfg.tol)
    _emit(cfg, {"schema": io.SCHEMA, "kind": "verdict", **v.to_json()})
    if not v.ok:
        c = v.first_failure
        print(f"certify: clause '{c.name}' failed: {c.detail}", file=sys.stderr)
    return 0 if v.ok else 1


def _cmd_modulus(cfg):
    p, eps = cfg.get("p"), cfg.get("eps")
    if cfg.get("sweep"):
        grid = [round(0.1 + 0.2 * i, 10) for i in range(10)]
        buf = _io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        header = ["p", "eps", "eta"]
        if cfg.get("oracle"):
            header += ["dim", "oracle", "gap"]
        wr.writerow(header)
        ok = True
        for e in grid:
            row = [p, e, repr(convexity.eta(e, p))]
            if cfg.get("oracle"):
                r = convexity.search_modulus(p, cfg.get("dim", 2), e, samples=cfg.get("samples", 100_000),
                                             seed=cfg.seed, jobs=cfg.get("jobs", 1))
                ok &= r.value >= r.eta - 1e-6
                row += [r.m, repr(r.value), repr(r.gap)]
            wr.writerow(row)
        cfg.timestamp = False
        _emit(cfg, buf.getvalue())
        return 0 if ok else 1
    doc = {"schema": io.SCHEMA, "kind": "modulus", "p": p, "eps": eps, "eta": convexity.eta(eps, p)}
    ok = True
    if cfg.get("oracle"):
        r = convexity.search_modulus(p, cfg.get("dim", 2), eps, samples=cfg.get("samples", 100_000),
                                     seed=cfg.seed, jobs=cfg.get("jobs", 1))
        doc.update({"dim": r.m, "oracle": r.value, "sampled": r.sampled, "family": r.family, "gap": r.gap,
                    "argmin_on_sphere": r.on_sphere})
        ok = r.value >= r.eta - 1e-6
    _emit(cfg, doc)
    return 0 if ok else 1


def _cmd_convexity_certify(cfg):
    space = _space(cfg)
    x1 = io.load_functions([_read_json(cfg.get("x1"))], space)[0]
    x2 = io.load_functions([_read_json(cfg.get("x2"))], space)[0]
    cert = convexity.certify_uniform_convexity(x1, x2, cfg.get("eps"), cfg.get("c"), cfg.get("p"),
                                               seed=cfg.seed)
    _emit(cfg, cert.to_json())
    if not cert.ok:
        print(f"convexity-certify: step '{cert.failing}' failed", file=sys.stderr)
    return 0 if cert.ok else 1


def _cmd_bm_bound(cfg):
    L = _read_json(cfg.get("matrix"))
    b = approx.bm_distance_bound(L, cfg.get("p"), seed=cfg.seed)
    _emit(cfg, {"schema": io.SCHEMA, "kind": "bm-bound", **b.to_json()})
    return 0


def _cmd_classify(cfg):
    f = formulas.parse_formula(cfg.get("formula"), free=cfg.get("free"))
    _emit(cfg, {"schema": io.SCHEMA, "kind": "classification", "formula": formulas.show(f),
                "class": formulas.classify(f, cfg.get("free"))})
    return 0


def _cmd_skolemize(cfg):
    f = formulas.parse_formula(cfg.get("formula"))
    d = formulas.as_delta(f)
    s = formulas.skolem_normal_form(d)
    printed = formulas.show(s)
    reparsed = formulas.parse_formula(printed)
    ok = reparsed == s and formulas.skolem_matrix_matches(d, s)
    _emit(cfg, {"schema": io.SCHEMA, "kind": "skolem-normal-form", "formula": formulas.show(f),
                "skolem": printed, "class": formulas.classify(reparsed), "matrix_check": ok})
    return 0 if ok else 1


def _cmd_type(cfg):
    t = types.parse_type(cfg.get("check"))
    _emit(cfg, {"schema": io.SCHEMA, "kind": "type", "type": types.show_type(t),
                "small": types.is_small(t), "admissible": types.is_admissible(t),
                "hat": types.show_type(types.hat_type(t))})
    return 0


def _cmd_cauchyfy(cfg):
    pts = _read_json(cfg.get("points"))
    if isinstance(pts, dict):
        pts = pts["points"]
    if cfg.get("space"):
        space = _space(cfg)
        p = cfg.get("p") or 2
        pts = io.load_functions(pts, space)

        def metric(a, b):
            return lp_norm(sub(a, b), p)
    elif pts and isinstance(pts[0], list):
        def metric(a, b):
            return math.dist(a, b)
    else:
        pts = [float(v) for v in pts]

        def metric(a, b):
            return abs(a - b)
    horizon = cfg.get("horizon")
    out = cauchy.cauchy_hat(pts, metric, horizon)
    ok = cauchy.check_rate(out, metric)
    enc = [io.encode_values(v) if isinstance(v, SimpleFunction) else v for v in out]
    _emit(cfg, {"schema": io.SCHEMA, "kind": "cauchy-hat", "horizon": horizon, "points": enc,
                "rate_ok": ok})
    return 0 if ok else 1


def _cmd_majorant(cfg):
    b, n = cfg.get("b"), cfg.get("n")
    M = majorize.majorant_M(b)
    values = [M(i) for i in range(n + 1)]
    monotone = all(values[i] < values[i + 1] for i in range(n))
    doc = {"schema": io.SCHEMA, "kind": "majorant", "b": b, "n": n, "values": values, "monotone": monotone}
    ok = monotone
    if cfg.get("p") is not None:
        p = cfg.get("p")
        maj = majorize.check_majorizes(M, lambda k: majorize.real_code(p, k), "1", horizon=n)
        doc.update({"p": p, "majorizes_p": maj})
        ok &= maj
    _emit(cfg, doc)
    return 0 if ok else 1


COMMANDS = {
    "approximate": _cmd_approximate,
    "certify": _cmd_certify,
    "axiom-check": _cmd_axiom_check,
    "modulus": _cmd_modulus,
    "convexity-certify": _cmd_convexity_certify,
    "bm-bound": _cmd_bm_bound,
    "classify": _cmd_classify,
    "skolemize": _cmd_skolemize,
    "type": _cmd_type,
    "cauchyfy": _cmd_cauchyfy,
    "majorant": _cmd_majorant,
}

_USER_ERRORS = (
    UsageError,
    io.SchemaError,
    approx.PreconditionError,
    convexity.ParameterError,
    types.TypeSyntaxError,
    formulas.FormulaSyntaxError,
    formulas.FormulaTypeError,
    formulas.NotDelta,
    majorize.UnsupportedType,
    json.JSONDecodeError,
    OSError,
    ValueError,
    KeyError,
    TypeError,
)


def dispatch(cfg: RunConfig) -> int:
    """Run one command; never raises for bad input, returns the exit code."""
    try:
        return COMMANDS[cfg.command](cfg)
    except _USER_ERRORS as exc:
        print(f"lpforge {cfg.command}: {exc}", file=sys.stderr)
        return 2


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=approx.TOL, help="relative slack for float comparisons")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--no-timestamp", action="store_true", help="omit the 'generated' field")
    common.add_argument("--jobs", type=int, default=1)

    parser = _Parser(prog="lpforge", description=__doc__.splitlines()[0])
    sub_ = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub_.add_parser("approximate", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--functions", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--p", type=_parse_p, required=True)
    s.add_argument("--mode", choices=["plain", "normalized", "unit"], default="plain")
    s.add_argument("--trials", type=int, default=50)

    s = sub_.add_parser("certify", parents=[common])
    s.add_argument("--witness", required=True)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--exact", action="store_true", help="require exact rational data")
    s.add_argument("--exhaustive", action="store_true")

    s = sub_.add_parser("axiom-check", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--functions", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--p", type=_parse_p, required=True)
    s.add_argument("--trials", type=int, default=50)

    s = sub_.add_parser("modulus", parents=[common])
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--eps", type=float)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--samples", type=int, default=100_000)
    s.add_argument("--sweep", action="store_true", help="CSV over eps = 0.1, 0.3, ..., 1.9")

    s = sub_.add_parser("convexity-certify", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--x1", required=True)
    s.add_argument("--x2", required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--c", type=float, required=True)
    s.add_argument("--p", type=_parse_p, default=2)

    s = sub_.add_parser("bm-bound", parents=[common])
    s.add_argument("--matrix", required=True)
    s.add_argument("--p", type=_parse_p, required=True)

    s = sub_.add_parser("classify", parents=[common])
    s.add_argument("--formula", required=True)
    s.add_argument("--free", action="append", default=[], metavar="NAME:TYPE")

    s = sub_.add_parser("skolemize", parents=[common])
    s.add_argument("--formula", required=True)

    s = sub_.add_parser("type", parents=[common])
    s.add_argument("--check", required=True)

    s = sub_.add_parser("cauchyfy", parents=[common])
    s.add_argument("--points", required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--space")
    s.add_argument("--p", type=_parse_p)

    s = sub_.add_parser("majorant", parents=[common])
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, help="also check that M(b) majorizes the code of p")
    return parser


def _config(ns):
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("command", "seed", "tol", "out", "no_timestamp")}
    if "free" in opts:
        free = {}
        for item in opts["free"]:
            name, _, t = item.partition(":")
            free[name.strip()] = t.strip()
        opts["free"] = free
    if ns.command == "modulus" and not ns.sweep and ns.eps is None:
        raise UsageError("modulus needs --eps unless --sweep is given")
    seed = ns.seed
    env = os.environ.get("LPFORGE_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"LPFORGE_SEED must be an integer, got {env!r}") from None
    return RunConfig(ns.command, opts, seed=seed, tol=ns.tol, timestamp=not ns.no_timestamp, out=ns.out)


def main(argv=None) -> int:
    try:
        cfg = _config(build_parser().parse_args(argv))
    except UsageError as exc:
        print(f"lpforge: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
