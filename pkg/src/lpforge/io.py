"""JSON documents for measure spaces, functions and witnesses.

Rationals are written as ``{"num": a, "den": b}``; floats as JSON numbers.
Every top-level document carries ``"schema": 1``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .approx import (
    ApproximationWitness,
    LpBasisCertificate,
    format_label,
    parse_label,
)
from .measure import MeasureSpace, SimpleFunction, to_scalar

SCHEMA = 1


class SchemaError(ValueError):
    pass


def encode_scalar(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, int):
        return {"num": v, "den": 1}
    return float(v)


def decode_scalar(v):
    """JSON integers and rational dicts are exact; JSON floats are floats."""
    return to_scalar(v)


def encode_values(f):
    return [encode_scalar(v) for v in f.values]


def encode_p(p):
    return p if isinstance(p, int) else float(p)


def load_space(doc):
    try:
        return MeasureSpace.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad measure-space document: {exc}") from exc


def load_functions(doc, space):
    """A functions document is either a list of value arrays or
    ``{"functions": [...]}``."""
    rows = doc["functions"] if isinstance(doc, dict) else doc
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("functions must be a list of value arrays")
    return [SimpleFunction(space, [decode_scalar(v) for v in r]) for r in rows]


def witness_to_json(w: ApproximationWitness, verdict=None):
    cert = w.certificate
    doc = {
        "schema": SCHEMA,
        "kind": "approximation-witness",
        "mode": w.mode,
        "p": encode_p(w.p),
        "n": w.n,
        "N": w.N,
        "space": w.space.to_json(),
        "inputs": [encode_values(x) for x in w.inputs],
        "outputs": [encode_values(y) for y in w.outputs],
        "cells": [[w.space.atoms[j] for j in c] for c in cert.cells],
        "labels": [[format_label(lab) for lab in l] for l in cert.labels],
        "basis": [encode_values(z) for z in cert.basis],
        "weights": [encode_scalar(x) for x in cert.weights],
        "coords": [[encode_scalar(c) for c in row] for row in w.coords],
        "rescaled": list(w.rescaled),
        "bounds": {
            "error_pow": encode_scalar(w.error_bound_pow),
            "dimension": w.dim_bound,
        },
    }
    if verdict is not None:
        doc["verdict"] = verdict.to_json()
    return doc


def witness_from_json(doc) -> ApproximationWitness:
    try:
        if doc.get("schema") != SCHEMA:
            raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
        space = load_space(doc["space"])
        p = doc["p"]
        index = {a: j for j, a in enumerate(space.atoms)}
        cells = tuple(tuple(index[a] for a in c) for c in doc["cells"])
        basis = tuple(SimpleFunction(space, [decode_scalar(v) for v in z]) for z in doc["basis"])
        weights = tuple(decode_scalar(v) for v in doc["weights"])
        labels = tuple(tuple(parse_label(s) for s in l) for l in doc.get("labels", []))
        cert = LpBasisCertificate(p, cells, basis, weights, labels)
        return ApproximationWitness(
            mode=doc["mode"],
            space=space,
            p=p,
            n=int(doc["n"]),
            N=int(doc["N"]),
            inputs=tuple(SimpleFunction(space, [decode_scalar(v) for v in r]) for r in doc["inputs"]),
            outputs=tuple(SimpleFunction(space, [decode_scalar(v) for v in r]) for r in doc["outputs"]),
            coords=tuple(tuple(decode_scalar(c) for c in row) for row in doc["coords"]),
            certificate=cert,
            error_bound_pow=decode_scalar(doc["bounds"]["error_pow"]),
            dim_bound=int(doc["bounds"]["dimension"]),
            rescaled=tuple(doc.get("rescaled", [])),
        )
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"bad witness document: {exc}") from exc


def dumps(doc):
    """Canonical serialisation: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
