"""File formats shared across the repository.

Polynomials travel as JSON documents

    {"basis": "hermite"|"monomial"|"analytic", "dim": n,
     "terms": [{"alpha": [..], "re": r, "im": i}, ...]}

with terms sorted by multi-index so that dumps are byte-stable.  Reports are
flat row dictionaries written either as CSV (17 significant digits, '.'
decimal separator, header row) or as a JSON array; identical inputs produce
byte-identical files.  Boolean functions serialize as value lists or
Walsh-coefficient lists with subsets as sorted 1-based index arrays.
"""

from __future__ import annotations

import csv
import json
import math

import numpy as np

from .analytic import AnalyticPoly
from .hamming import BooleanFunction
from .hermite import HermiteExpansion, MonomialExpansion
from .quadrature import QuadratureRule

_BASIS_TYPES = {
    "hermite": HermiteExpansion,
    "monomial": MonomialExpansion,
    "analytic": AnalyticPoly,
}


def polynomial_to_dict(poly) -> dict:
    if poly.basis not in _BASIS_TYPES:
        raise ValueError(f"cannot serialize basis {poly.basis!r}")
    terms = [
        {"alpha": list(alpha), "re": coeff.real, "im": coeff.imag}
        for alpha, coeff in sorted(poly.terms.items())
    ]
    return {"basis": poly.basis, "dim": poly.dim, "terms": terms}


def polynomial_from_dict(doc: dict):
    basis = doc.get("basis")
    if basis not in _BASIS_TYPES:
        raise ValueError(f"unknown polynomial basis {basis!r}")
    terms = {
        tuple(t["alpha"]): complex(t.get("re", 0.0), t.get("im", 0.0))
        for t in doc.get("terms", [])
    }
    return _BASIS_TYPES[basis](int(doc["dim"]), terms)


def save_polynomial(poly, path: str):
    with open(path, "w", newline="\n") as fh:
        json.dump(polynomial_to_dict(poly), fh, indent=2)
        fh.write("\n")


def load_polynomial(path: str):
    with open(path) as fh:
        return polynomial_from_dict(json.load(fh))


def boolean_to_dict(f: BooleanFunction, form: str = "walsh") -> dict:
    if form == "values":
        data = [{"re": v.real, "im": v.imag} for v in f.values]
        return {"n": f.n, "form": "values", "values": data}
    if form == "walsh":
        data = [
            {"subset": list(subset), "re": c.real, "im": c.imag}
            for subset, c in sorted(f.walsh.items())
        ]
        return {"n": f.n, "form": "walsh", "walsh": data}
    raise ValueError(f"unknown serialization form {form!r}")


def boolean_from_dict(doc: dict) -> BooleanFunction:
    n = int(doc["n"])
    if doc.get("form") == "values":
        vals = [complex(v.get("re", 0.0), v.get("im", 0.0)) for v in doc["values"]]
        return BooleanFunction(vals)
    coeffs = {
        tuple(t["subset"]): complex(t.get("re", 0.0), t.get("im", 0.0))
        for t in doc["walsh"]
    }
    return BooleanFunction.from_walsh(n, coeffs)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return f"{v:.17g}"
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    return str(value)


def _json_ready(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def write_report(rows: list[dict], fmt: str, path: str | None):
    """Write homogeneous report rows as CSV or JSON; byte-stable output.

    ``path=None`` returns the document as a string instead of writing.
    """
    rows = list(rows)
    if rows:
        keys = list(rows[0].keys())
        for row in rows[1:]:
            if list(row.keys()) != keys:
                raise ValueError("report rows are not homogeneous")
    else:
        keys = []
    if fmt == "csv":
        import io as _io

        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_format_cell(row[k]) for k in keys])
        doc = buf.getvalue()
    elif fmt == "json":
        doc = json.dumps(
            [{k: _json_ready(v) for k, v in row.items()} for row in rows], indent=2
        )
        doc += "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is None:
        return doc
    with open(path, "w", newline="\n") as fh:
        fh.write(doc)
    return None


def rule_to_csv(rule: QuadratureRule, path: str):
    """Audit export: one (node..., weight) row per quadrature point."""
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if rule.kind == "polar_complex":
            writer.writerow(["radius", "angle", "weight"])
            for (r, a), w in zip(rule.nodes, rule.weights):
                writer.writerow([f"{r:.17g}", f"{a:.17g}", f"{w:.17g}"])
            return
        dim = rule.dim
        writer.writerow([f"x{j+1}" for j in range(dim)] + ["weight"])
        for pts, wts in rule.iter_points():
            block = pts.reshape(len(wts), -1)
            for row, w in zip(block, wts):
                writer.writerow([f"{x:.17g}" for x in row] + [f"{w:.17g}"])
