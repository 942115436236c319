"""Versioned JSON for exact results.

Values are encoded with explicit tags so that a document decodes back to equal
objects: field elements and rational functions keep their parameter space,
Fractions stay exact and mappings keep non-string keys.  Output is canonical
(sorted keys, fixed separators), so equal inputs give byte-identical text.
"""
from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .cas_kernel.field import FieldElement, get_space
from .cas_kernel.univariate import RationalFunction
from .errors import SchemaVersionError

SCHEMA = "dp3asym"
VERSION = 1


def encode(v):
    if isinstance(v, FieldElement):
        return {"fe": str(v), "space": list(v.space.names)}
    if isinstance(v, RationalFunction):
        return {"rf": {"var": v.var, "num": [str(c) for c in v.num],
                       "den": [[[str(c) for c in f], m] for f, m in v.den]},
                "space": list(v.space.names)}
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return {"q": f"{v.numerator}/{v.denominator}"}
    if isinstance(v, float):
        return v
    if isinstance(v, complex):
        return {"complex": {"re": v.real, "im": v.imag}}
    if isinstance(v, tuple):
        return {"tuple": [encode(x) for x in v]}
    if isinstance(v, list):
        return [encode(x) for x in v]
    if isinstance(v, dict):
        items = [[encode(k), encode(x)] for k, x in v.items()]
        items.sort(key=lambda kv: json.dumps(kv[0], sort_keys=True))
        return {"map": items}
    if is_dataclass(v):
        return {"record": type(v).__name__,
                "fields": {f.name: encode(getattr(v, f.name)) for f in fields(v)
                           if not f.name.startswith("_")}}
    if hasattr(v, "to_sympy"):
        return {"sympy": str(v.to_sympy())}
    if hasattr(v, "as_expr"):
        return {"sympy": str(v.as_expr())}
    raise TypeError(f"cannot encode {type(v).__name__}")


def decode(d):
    if isinstance(d, list):
        return [decode(x) for x in d]
    if not isinstance(d, dict):
        return d
    if "fe" in d:
        return get_space(tuple(d["space"])).parse(d["fe"])
    if "rf" in d:
        sp = get_space(tuple(d["space"]))
        r = d["rf"]
        return RationalFunction(sp, r["var"], [sp.parse(c) for c in r["num"]],
                                [([sp.parse(c) for c in f], m) for f, m in r["den"]])
    if "q" in d:
        return Fraction(d["q"])
    if "complex" in d:
        return complex(d["complex"]["re"], d["complex"]["im"])
    if "tuple" in d:
        return tuple(decode(x) for x in d["tuple"])
    if "map" in d:
        return {_hashable(decode(k)): decode(x) for k, x in d["map"]}
    if "record" in d:
        return {"record": d["record"], **{k: decode(x) for k, x in d["fields"].items()}}
    if "sympy" in d:
        return d["sympy"]
    raise SchemaVersionError(f"unknown tag in {sorted(d)}")


def _hashable(k):
    return tuple(_hashable(x) for x in k) if isinstance(k, list) else k


def dumps(kind: str, payload) -> str:
    doc = {"schema": SCHEMA, "version": VERSION, "kind": kind, "payload": encode(payload)}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    """Return (kind, payload); rejects other schemas and versions."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise SchemaVersionError("not a dp3asym document")
    if doc.get("version") != VERSION:
        raise SchemaVersionError(f"version {doc.get('version')!r} is not supported (expected {VERSION})")
    return doc["kind"], decode(doc["payload"])


def expansion_payload(obj) -> dict:
    """Plain summary of a computed expansion for export."""
    name = type(obj).__name__
    if name == "AInfExpansion":
        return {"generators": list(obj.generators), "constants": dict(obj.constants),
                "space": list(obj.ctx.space.names)}
    if name == "BInfPolynomials":
        n = obj.resolved_upto
        return {"polynomials": [obj.poly(k) for k in range(n + 1)],
                "ledger": {m: obj.ledger_value(m) for m in sorted(obj.ledger)},
                "space": list(obj.base.space.names)}
    if name == "LogExpansion":
        return {"route": obj.kind, "generators": list(obj.generators),
                "constants": dict(obj.constants), "space": list(obj.ctx.space.names)}
    if name in ("EllExpansionA1", "EllExpansionB2"):
        return {"generators": list(obj.generators), "space": list(obj.ctx.space.names)}
    if name == "TruncatedData":
        return {"case": obj.case, "b2n": list(obj.b2n), "generators": list(obj.generators),
                "polynomials": list(obj.polynomials)}
    if name == "FourierCorrection":
        return {"b": dict(obj.b), "Q": {k: str(v.as_expr()) for k, v in obj.Q.items()},
                "c1_part": dict(obj.c1_part)}
    return {"value": obj}
