"""Canonical JSON document format for algebras, actions and gradings.

One UTF-8 document carries the ground field, the structure constants with
an optional unit, and optionally the action generators, a grading, and a
presentation hint. Serialization is canonical (fixed key order, two-space
indent, trailing newline) so that parse -> serialize round-trips catalog
files byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import Grading, StructAlgebra, check_associativity, check_unit
from .errors import SchemaError
from .field import GroundField, scalar_from_str, scalar_to_str
from .haction import ExpansionTerm, Generator, HAction
from .linalg import Matrix

SCHEMA_VERSION = "hpi-1"


@dataclass
class Document:
    field: GroundField
    algebra: StructAlgebra
    action: HAction | None = None
    grading: Grading | None = None
    hopf: dict | None = None
    notes: str | None = None
    schema: str = SCHEMA_VERSION


def _parse_field(obj) -> GroundField:
    if not isinstance(obj, dict) or "type" not in obj:
        raise SchemaError("field descriptor must be an object with a 'type'")
    if obj["type"] == "Q":
        return GroundField("Q")
    if obj["type"] == "Q(zeta)":
        if "order" not in obj:
            raise SchemaError("Q(zeta) field needs an 'order'")
        return GroundField("Q(zeta)", int(obj["order"]))
    raise SchemaError(f"unknown field type {obj['type']!r}")


def _field_dict(field: GroundField) -> dict:
    if field.kind == "Q":
        return {"type": "Q"}
    return {"type": "Q(zeta)", "order": field.order}


def _parse_word(obj, where: str):
    if obj is None:
        return None
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise SchemaError(f"{where}: a word must be a list of generator labels")
    return tuple(obj)


def _parse_expansion(obj, where: str) -> tuple[ExpansionTerm, ...]:
    if not isinstance(obj, list):
        raise SchemaError(f"{where}: expansion must be a list")
    terms = []
    for t in obj:
        if not isinstance(t, dict):
            raise SchemaError(f"{where}: expansion term must be an object")
        p = _parse_word(t.get("p"), where)
        q = _parse_word(t.get("q"), where)
        r = _parse_word(t.get("r"), where)
        s = _parse_word(t.get("s"), where)
        if (p is None) != (q is None) or (r is None) != (s is None):
            raise SchemaError(f"{where}: p/q and r/s must be present in pairs")
        if p is None and r is None:
            raise SchemaError(f"{where}: empty expansion term")
        terms.append(
            ExpansionTerm(
                delta=(p, q) if p is not None else None,
                theta=(r, s) if r is not None else None,
            )
        )
    return tuple(terms)


def parse_document(obj: dict) -> Document:
    if not isinstance(obj, dict):
        raise SchemaError("document must be a JSON object")
    schema = obj.get("schema", SCHEMA_VERSION)
    fld = _parse_field(obj.get("field"))
    try:
        dim = int(obj["dim"])
        raw_table = obj["table"]
    except KeyError as exc:
        raise SchemaError(f"document missing key {exc}") from exc
    if not isinstance(raw_table, list) or len(raw_table) != dim:
        raise SchemaError("table must be a dim x dim x dim nested list")
    table = []
    for i, row in enumerate(raw_table):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"table row {i} has wrong length")
        table.append(
            [[scalar_from_str(c, fld) for c in _expect_cell(cell, dim, i, j)] for j, cell in enumerate(row)]
        )
    unit_obj = obj.get("unit")
    unit = None
    if unit_obj is not None:
        if not isinstance(unit_obj, list) or len(unit_obj) != dim:
            raise SchemaError("unit must be a vector of length dim")
        unit = [scalar_from_str(c, fld) for c in unit_obj]
    algebra = StructAlgebra(table, unit=unit, field=fld)
    if not check_associativity(algebra):
        raise SchemaError("structure constants are not associative")
    if not check_unit(algebra):
        raise SchemaError("declared unit is not a two-sided identity")

    action = None
    if obj.get("generators") is not None:
        gens = []
        for gobj in obj["generators"]:
            if not isinstance(gobj, dict) or "label" not in gobj:
                raise SchemaError("generator must be an object with a label")
            label = gobj["label"]
            mat = gobj.get("matrix")
            if not isinstance(mat, list) or len(mat) != dim:
                raise SchemaError(f"generator {label!r}: matrix must be dim x dim")
            rows = []
            for r in mat:
                if not isinstance(r, list) or len(r) != dim:
                    raise SchemaError(f"generator {label!r}: ragged matrix")
                rows.append([scalar_from_str(c, fld) for c in r])
            expansion = _parse_expansion(gobj.get("expansion"), f"generator {label!r}")
            gens.append(Generator(label, Matrix(rows), expansion))
        action = HAction(algebra, gens)
        labels = {g.label for g in gens}
        for g in gens:
            for term in g.expansion:
                for half in (term.delta, term.theta):
                    if half is None:
                        continue
                    for word in half:
                        for lab in word:
                            if lab not in labels:
                                raise SchemaError(
                                    f"expansion of {g.label!r} references unknown generator {lab!r}"
                                )

    grading = None
    if obj.get("grading") is not None:
        gobj = obj["grading"]
        labels = gobj.get("labels")
        prod = gobj.get("product")
        if not isinstance(labels, list) or len(labels) != dim:
            raise SchemaError("grading labels must cover the basis")
        if not isinstance(prod, list):
            raise SchemaError("grading product must be a list of triples")
        triples = []
        for t in prod:
            if not isinstance(t, list) or len(t) != 3:
                raise SchemaError("grading product entries must be [g, w, gw]")
            triples.append((str(t[0]), str(t[1]), str(t[2])))
        grading = Grading(labels=tuple(str(x) for x in labels), product=tuple(triples))

    return Document(
        field=fld,
        algebra=algebra,
        action=action,
        grading=grading,
        hopf=obj.get("hopf"),
        notes=obj.get("notes"),
        schema=schema,
    )


def _expect_cell(cell, dim, i, j):
    if not isinstance(cell, list) or len(cell) != dim:
        raise SchemaError(f"table cell ({i}, {j}) has wrong length")
    return cell


def document_to_dict(doc: Document) -> dict:
    fld = doc.field
    a = doc.algebra
    out: dict = {"schema": doc.schema, "field": _field_dict(fld), "dim": a.dim}
    out["unit"] = [scalar_to_str(c, fld) for c in a.unit] if a.unit is not None else None
    out["table"] = [
        [[scalar_to_str(c, fld) for c in cell] for cell in row] for row in a.table
    ]
    if doc.action is not None:
        gens = []
        for g in doc.action.generators:
            terms = []
            for t in g.expansion:
                terms.append(
                    {
                        "p": list(t.delta[0]) if t.delta is not None else None,
                        "q": list(t.delta[1]) if t.delta is not None else None,
                        "r": list(t.theta[0]) if t.theta is not None else None,
                        "s": list(t.theta[1]) if t.theta is not None else None,
                    }
                )
            gens.append(
                {
                    "label": g.label,
                    "matrix": [[scalar_to_str(c, fld) for c in row] for row in g.matrix.rows],
                    "expansion": terms,
                }
            )
        out["generators"] = gens
    if doc.grading is not None:
        out["grading"] = {
            "labels": list(doc.grading.labels),
            "product": [list(t) for t in doc.grading.product],
        }
    if doc.hopf is not None:
        out["hopf"] = doc.hopf
    if doc.notes is not None:
        out["notes"] = doc.notes
    return out


def dumps_document(doc: Document) -> str:
    return json.dumps(document_to_dict(doc), indent=2, ensure_ascii=False) + "\n"


def loads_document(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return parse_document(obj)
