"""JSON formats for scalars, vectors, polynomials and forms.

Exact scalars are written as ``{"re": "num/den", "im": "num/den"}``; input
files may also use a bare integer or a ``"num/den"`` string for a real value.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .polynomials import (
    FiniteTypePoly,
    HomPoly,
    MultiIndex,
    MultilinearForm,
    SparseVector,
    TailRule,
    finite_type_to_hompoly,
)
from .scalars import Field, UniPoly, scalar_from_json, scalar_to_json


def field_from_json(name) -> Field:
    try:
        return Field(name or "rational")
    except ValueError:
        raise InputError(f"unknown field {name!r}") from None


def _scalar(data, field):
    try:
        return scalar_from_json(data, field)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def vector_to_json(v: SparseVector) -> dict:
    return {"field": v.field.value, "entries": {str(k): scalar_to_json(c) for k, c in v.items()}}


def vector_from_json(data, field: Field | None = None) -> SparseVector:
    if isinstance(data, dict) and "entries" in data:
        fld = field_from_json(data.get("field")) if field is None else field
        entries = data["entries"]
    elif isinstance(data, dict):
        fld, entries = field or Field.RATIONAL, data
    else:
        raise InputError(f"malformed vector {data!r}")
    try:
        return SparseVector({int(k): _scalar(c, fld) for k, c in entries.items()}, fld)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def monomial_to_json(mono: MultiIndex) -> dict:
    return {str(v): e for v, e in mono}


def monomial_from_json(data) -> MultiIndex:
    try:
        return MultiIndex({int(k): int(e) for k, e in data.items()})
    except (AttributeError, ValueError) as exc:
        raise InputError(f"malformed monomial {data!r}") from exc


def _terms_to_json(terms):
    return [{"monomial": monomial_to_json(m), "coeff": scalar_to_json(c)} for m, c in terms]


def poly_to_json(P: HomPoly) -> dict:
    out = {"field": P.field.value, "degree": P.degree, "terms": _terms_to_json(P.terms.items())}
    if P.tail is not None:
        out["tail"] = {
            "offset": P.tail.offset,
            "period": P.tail.period,
            "window": P.tail.window,
            "generators": _terms_to_json(P.tail.generators),
        }
    if P.functionals is not None:
        out["functionals"] = [vector_to_json(f) for f in P.functionals]
    return out


def poly_from_json(data) -> HomPoly:
    if not isinstance(data, dict) or "degree" not in data:
        raise InputError("polynomial JSON needs 'degree' and 'terms'")
    field = field_from_json(data.get("field"))
    terms = [(monomial_from_json(t["monomial"]), _scalar(t["coeff"], field)) for t in data.get("terms", [])]
    tail = None
    if data.get("tail"):
        t = data["tail"]
        gens = tuple((monomial_from_json(g["monomial"]), _scalar(g["coeff"], field)) for g in t["generators"])
        window = t.get("window", max(m[-1][0] for m, _ in gens) if gens else 1)
        tail = TailRule(int(t["offset"]), int(t["period"]), gens, int(window))
    functionals = None
    if data.get("functionals") is not None:
        functionals = [vector_from_json(f, field) for f in data["functionals"]]
    acc: dict = {}
    for m, c in terms:
        acc[m] = acc.get(m, 0) + c
    return HomPoly(int(data["degree"]), acc, field, tail, functionals)


def finite_type_to_json(F: FiniteTypePoly) -> dict:
    return {
        "type": "finite_type",
        "field": F.field.value,
        "exponent": F.exponent,
        "terms": [{"coeff": scalar_to_json(a), "functional": vector_to_json(phi)} for a, phi in F.terms],
    }


def finite_type_from_json(data) -> FiniteTypePoly:
    field = field_from_json(data.get("field"))
    terms = [(_scalar(t["coeff"], field), vector_from_json(t["functional"], field)) for t in data["terms"]]
    return FiniteTypePoly(int(data["exponent"]), terms, field)


def multilinear_to_json(A: MultilinearForm) -> dict:
    return {
        "type": "multilinear",
        "field": A.field.value,
        "arity": A.arity,
        "slot_dims": list(A.slot_dims),
        "entries": [{"index": list(k), "coeff": scalar_to_json(c)} for k, c in A.entries.items()],
    }


def multilinear_from_json(data) -> MultilinearForm:
    field = field_from_json(data.get("field"))
    entries = {tuple(int(j) for j in e["index"]): _scalar(e["coeff"], field) for e in data.get("entries", [])}
    return MultilinearForm(int(data["arity"]), entries, field, data.get("slot_dims"))


def form_from_json(data):
    """Dispatch on the optional ``type`` key: hompoly (default), finite_type, multilinear."""
    kind = data.get("type", "hompoly") if isinstance(data, dict) else None
    try:
        if kind == "hompoly":
            return poly_from_json(data)
        if kind == "finite_type":
            return finite_type_from_json(data)
        if kind == "multilinear":
            return multilinear_from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed {kind} JSON: missing {exc}") from None
    raise InputError(f"unknown form type {kind!r}")


def form_to_json(obj) -> dict:
    if isinstance(obj, HomPoly):
        return poly_to_json(obj)
    if isinstance(obj, FiniteTypePoly):
        return finite_type_to_json(obj)
    if isinstance(obj, MultilinearForm):
        return multilinear_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def as_hompoly(obj) -> HomPoly:
    if isinstance(obj, FiniteTypePoly):
        return finite_type_to_hompoly(obj)
    if isinstance(obj, HomPoly):
        return obj
    raise InputError(f"expected a homogeneous polynomial, got {type(obj).__name__}")


def seed_from_json(data, field: Field | None = None) -> list[SparseVector]:
    if isinstance(data, dict):
        if field is None and data.get("field"):
            field = field_from_json(data["field"])
        data = data.get("basis", [])
    if not isinstance(data, list):
        raise InputError("seed JSON must be a list of vectors or {'basis': [...]}")
    return [vector_from_json(v, field) for v in data]


def seed_to_json(basis) -> dict:
    return {"basis": [vector_to_json(v) for v in basis]}


def unipoly_to_json(p: UniPoly) -> dict:
    return {"field": p.field.value, "coeffs": [scalar_to_json(c) for c in p.coeffs]}


def unipoly_from_json(data) -> UniPoly:
    field = field_from_json(data.get("field"))
    return UniPoly([_scalar(c, field) for c in data["coeffs"]], field)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def write_json(path, obj):
    Path(path).write_text(dumps(obj))
