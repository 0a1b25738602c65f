"""JSON encodings of forms, points, ideals and certificates.

Exact scalars are written as ``"a"`` or ``"a/b"``; complex scalars as
``"re+imj"`` decimal strings at the precision of their field.
"""
from __future__ import annotations

import json

from .apolarity import GradedIdealPieces, PowersumDecomposition
from .fields import QQ, field_from_tag
from .poly import DualPoint, MultiPoly


def poly_to_json(f):
    out = {"vars": f.nvars, "degree": f.degree,
           "terms": [{"exp": list(e), "coeff": f.field.format(c)} for e, c in f.items()]}
    if f.field != QQ:
        out["field"] = f.field.tag
    return out


def poly_from_json(data, field=None):
    field = field or field_from_tag(data.get("field", "Q"))
    terms = {}
    for t in data.get("terms", []):
        e = tuple(int(k) for k in t["exp"])
        c = field.parse(t["coeff"]) if isinstance(t["coeff"], str) else field(t["coeff"])
        terms[e] = terms[e] + c if e in terms else c
    return MultiPoly(field, int(data["vars"]), int(data["degree"]), terms)


def point_to_json(p):
    return {"coords": [p.field.format(c) for c in p.coords]}


def point_from_json(data, field):
    coords = data["coords"] if isinstance(data, dict) else data
    return DualPoint([field.parse(c) if isinstance(c, str) else field(c) for c in coords], field)


def points_from_json(data, field):
    """Accept a bare list, ``{"points": [...]}`` or a certificate's summands."""
    if isinstance(data, dict):
        if "summands" in data:
            data = [s["point"] for s in data["summands"]]
        else:
            data = data["points"]
    return [point_from_json(p, field) for p in data]


def ideal_to_json(ideal):
    return {"vars": ideal.nvars, "field": ideal.field.tag,
            "pieces": {str(e): [poly_to_json(p) for p in basis]
                       for e, basis in sorted(ideal.pieces.items())}}


def ideal_from_json(data):
    field = field_from_tag(data.get("field", "Q"))
    pieces = {int(e): [poly_from_json(p, field) for p in basis]
              for e, basis in data["pieces"].items()}
    return GradedIdealPieces(field, int(data["vars"]), pieces)


def certificate_to_json(dec):
    f = dec.field
    if f.exact:
        residual = "0" if dec.residual == 0 else f.format(dec.residual)
    else:
        residual = f.format(dec.residual, 10)
    out = {"target": poly_to_json(dec.target),
           "summands": [{"point": point_to_json(p)["coords"], "lambda": f.format(lam)}
                        for p, lam in dec.summands],
           "residual": residual,
           "field": f.tag}
    out.update(dec.info)
    return out


def certificate_from_json(data):
    field = field_from_tag(data["field"])
    target = poly_from_json(data["target"])
    summands = [(point_from_json(s["point"], field), field.parse(s["lambda"]))
                for s in data["summands"]]
    dec = PowersumDecomposition(target, summands, None, field)
    dec.residual = dec.recompute_residual()
    return dec


def dumps(obj):
    """One line of JSON; key order is insertion order, so output is reproducible."""
    return json.dumps(obj, separators=(", ", ": "))
