"""Batch command-line front end.

Inputs are JSON documents, either file paths or ``catalog:NAME`` URIs for
the bundled examples. Reports go to stdout or ``--out`` as aligned text or
JSON; failures print a machine-readable error object and exit with a
distinct code per error class.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DecompositionFailureError,
    FieldTooSmallError,
    HpiError,
    NotUnitalError,
    RelationError,
    ResourceCapError,
    SchemaError,
    ValidationError,
)
from .field import scalar_to_str
from .haction import decompose, h_radical, verify_action, verify_hopf_module_axioms
from .hopfzoo import (
    catalog_names,
    catalog_path,
    grading_dual_action,
    presentation_for_document,
)
from .jsonio import Document, dumps_document, loads_document
from .pi import codimension, exponent_report, graded_codimension, property_star_witness

EXIT_CODES = {
    "schema": 2,
    "validation": 3,
    "relation": 3,
    "grading": 3,
    "not-unital": 4,
    "field-too-small": 5,
    "resource-cap": 6,
    "decomposition-failure": 7,
    "not-completely-reducible": 7,
    "cannot-certify": 8,
    "dimension-mismatch": 2,
    "order-mismatch": 2,
    "internal": 1,
}


def _load(spec: str) -> Document:
    if spec.startswith("catalog:"):
        path = catalog_path(spec[len("catalog:") :])
    else:
        path = spec
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input {spec!r}: {exc}") from exc
    return loads_document(text)


def _emit(payload: dict, text: str, args) -> None:
    out = text if args.format == "text" else (
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _require_action(doc: Document):
    if doc.action is None:
        raise SchemaError("document carries no action generators")
    return doc.action


def _subspace_payload(sub, field):
    return {
        "dim": sub.dim,
        "basis": [[scalar_to_str(c, field) for c in row] for row in sub.basis],
    }


def cmd_check(args) -> None:
    doc = _load(args.input)
    act = _require_action(doc)
    ok, cert = verify_action(act)
    if not ok:
        raise ValidationError(
            f"expansion law fails for generator {cert[0]!r} at basis pair {cert[1:]}"
        )
    pres = presentation_for_document(doc)
    hopf_checked = False
    if pres is not None:
        verify_hopf_module_axioms(act, pres)
        hopf_checked = True
    payload = {"action_valid": True, "hopf_relations": "hold" if hopf_checked else "not-declared"}
    text = "action valid" + ("; Hopf relations hold\n" if hopf_checked else "\n")
    _emit(payload, text, args)


def cmd_radical(args) -> None:
    doc = _load(args.input)
    act = _require_action(doc)
    from .algebra import jacobson_radical

    j = jacobson_radical(doc.algebra)
    jh = h_radical(act)
    payload = {
        "J": _subspace_payload(j, doc.field),
        "JH": _subspace_payload(jh, doc.field),
    }
    text = (
        f"J(A): dim {j.dim}\n"
        + "".join("  " + " ".join(scalar_to_str(c, doc.field) for c in b) + "\n" for b in j.basis)
        + f"J^H(A): dim {jh.dim}\n"
        + "".join("  " + " ".join(scalar_to_str(c, doc.field) for c in b) + "\n" for b in jh.basis)
    )
    _emit(payload, text, args)


def cmd_decompose(args) -> None:
    doc = _load(args.input)
    act = _require_action(doc)
    report = decompose(act, allow_repeats=args.allow_repeats)
    payload = {
        "J": _subspace_payload(report.j, doc.field),
        "JH": _subspace_payload(report.jh, doc.field),
        "quotient_dim": report.quotient_action.algebra.dim,
        "blocks": [
            {
                "dim": b.dim,
                "idempotent": [scalar_to_str(c, doc.field) for c in b.idempotent],
            }
            for b in report.blocks
        ],
        "B0": _subspace_payload(report.kappa_data.b0, doc.field),
        "kappa": [
            [scalar_to_str(c, doc.field) for c in row] for row in report.kappa_data.kappa.rows
        ],
        "d": report.d,
        "witness_chain": list(report.witness),
    }
    lines = [
        f"dim A = {doc.algebra.dim}",
        f"dim J(A) = {report.j.dim}",
        f"dim J^H(A) = {report.jh.dim}",
        f"quotient dim = {report.quotient_action.algebra.dim}",
        f"blocks: {', '.join(str(b.dim) for b in report.blocks) or 'none'}",
        f"d = {report.d}",
        f"witness chain = {list(report.witness)}",
    ]
    _emit(payload, "\n".join(lines) + "\n", args)


def cmd_exponent(args) -> None:
    doc = _load(args.input)
    act = _require_action(doc)
    rep = exponent_report(act, args.n_max, row_cap=args.row_cap, time_cap=args.time_cap)
    payload = {
        "n": rep.n_values,
        "codim": rep.codims,
        "roots": rep.roots,
        "d": rep.d,
        "witness_chain": list(rep.witness) if rep.witness is not None else None,
    }
    lines = ["  n  c_n^H      root"]
    for n, c, r in zip(rep.n_values, rep.codims, rep.roots):
        lines.append(f"{n:3d}  {c:<9d}  {r:.4f}")
    if rep.nilpotent:
        lines.append(f"algebra is nilpotent (index {rep.nilpotency_index}); d suppressed")
    else:
        lines.append(f"d = {rep.d}, witness chain {list(rep.witness)}")
    _emit(payload, "\n".join(lines) + "\n", args)


def cmd_codim(args) -> None:
    doc = _load(args.input)
    act = _require_action(doc)
    value = codimension(act, args.n, row_cap=args.row_cap, time_cap=args.time_cap)
    _emit({"n": args.n, "codim": value}, f"c_{args.n}^H = {value}\n", args)


def cmd_codim_graded(args) -> None:
    doc = _load(args.input)
    if doc.grading is None:
        raise SchemaError("document carries no grading")
    graded = graded_codimension(
        doc.algebra, doc.grading, args.n, row_cap=args.row_cap, time_cap=args.time_cap
    )
    act = doc.action if doc.action is not None else grading_dual_action(doc.algebra, doc.grading)
    dual = codimension(act, args.n, row_cap=args.row_cap, time_cap=args.time_cap)
    payload = {"n": args.n, "graded": graded, "dual_action": dual, "equal": graded == dual}
    text = (
        f"c_{args.n}^gr = {graded}\n"
        f"c_{args.n}^H (dual action) = {dual}\n"
        f"equal: {'yes' if graded == dual else 'NO'}\n"
    )
    _emit(payload, text, args)


def cmd_witness(args) -> None:
    doc = _load(args.input)
    act = _require_action(doc)
    w = property_star_witness(
        act, args.k, args.n0, row_cap=args.row_cap, time_cap=args.time_cap
    )
    if w is None:
        payload = {"found": False, "k": args.k, "n0": args.n0}
        text = f"no witness found for k = {args.k} with up to {args.n0} extra variables\n"
    else:
        monos = [
            {
                "perm": list(m.perm),
                "labels": list(m.labels),
                "coeff": scalar_to_str(c, doc.field),
            }
            for m, c in sorted(w.poly.terms.items(), key=lambda kv: (kv[0].perm, kv[0].labels))
        ]
        payload = {
            "found": True,
            "k": w.k,
            "n1": w.n1,
            "degree": w.poly.n,
            "z_points": list(w.z_points),
            "value": [scalar_to_str(c, doc.field) for c in w.value],
            "terms": monos,
        }
        text = (
            f"witness found: degree {w.poly.n}, {len(w.poly.terms)} terms, "
            f"n1 = {w.n1}, z points {list(w.z_points)}\n"
        )
    _emit(payload, text, args)


def cmd_catalog(args) -> None:
    if args.name:
        doc = _load(f"catalog:{args.name}")
        _emit(json.loads(dumps_document(doc)), dumps_document(doc), args)
    else:
        names = catalog_names()
        _emit({"catalog": names}, "".join(n + "\n" for n in names), args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hpi",
        description="exact computations with generalized Hopf-algebra actions "
        "and their polynomial identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="document path or catalog:NAME")
        p.add_argument("--out", help="write the report to a file")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--threads", type=int, default=1, help="reserved; execution is sequential and deterministic")
        p.add_argument("--row-cap", type=int, default=None, dest="row_cap")
        p.add_argument("--time-cap", type=float, default=None, dest="time_cap")

    p = sub.add_parser("check", help="verify the expansion law and declared relations")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("radical", help="Jacobson radical and H-radical")
    common(p)
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("decompose", help="full structural decomposition report")
    common(p)
    p.add_argument("--allow-repeats", action="store_true", dest="allow_repeats")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("exponent", help="codimension table and structural exponent")
    common(p)
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("codim", help="single codimension value")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("codim-graded", help="graded codimension cross-check")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_codim_graded)

    p = sub.add_parser("witness", help="alternating non-identity search")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n0", type=int, default=0)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("catalog", help="list or emit bundled examples")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--out", help="write the report to a file")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--row-cap", type=int, default=None, dest="row_cap")
    p.add_argument("--time-cap", type=float, default=None, dest="time_cap")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print(json.dumps({"error": {"code": "schema", "message": "--threads must be positive"}}))
        return 2
    try:
        args.func(args)
        return 0
    except HpiError as exc:
        sys.stdout.write(json.dumps({"error": exc.as_dict()}, default=str) + "\n")
        return EXIT_CODES.get(exc.code, 1)


if __name__ == "__main__":
    sys.exit(main())
