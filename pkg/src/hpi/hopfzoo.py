"""Constructors for the bundled action families.

Taft algebras H_{m^2}(zeta) with their full multiplication/coproduct/
antipode data, semigroup actions by endomorphisms and anti-endomorphisms,
dual actions encoding gradings by component projections, and the trivial
action. Every constructor validates its output before returning it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .algebra import Grading, StructAlgebra, validate_grading
from .errors import SchemaError, ValidationError
from .field import Cyclotomic, GroundField, QQ, is_primitive_root
from .haction import (
    ExpansionTerm,
    Generator,
    HAction,
    verify_action,
    verify_hopf_module_axioms,
)
from .linalg import Matrix

_CATALOG_DIR = Path(__file__).parent / "catalog"


@dataclass
class HopfPresentation:
    """Presentation data used by the relation checker.

    ``relations`` are named operator equations, each side a list of
    (coefficient, word) pairs. ``comultiplication`` gives the expected
    expansion per generator. ``counit`` may be None when no unital-module
    condition applies. The Taft constructor also materializes the
    m^2-dimensional Hopf algebra itself: its table, the coproduct of every
    basis element, the counit vector, and the antipode map.
    """

    kind: str
    params: dict
    relations: list
    comultiplication: dict
    counit: dict | None
    theta_free: bool
    table: StructAlgebra | None = None
    coproduct: list | None = None  # per basis index: dict {(i, j): coeff}
    counit_vector: tuple | None = None
    antipode: list | None = None  # per basis index: vector in the table


# ---------------------------------------------------------------------------
# Taft algebras
# ---------------------------------------------------------------------------

def taft(m: int, zeta) -> HopfPresentation:
    """The m^2-dimensional algebra on c, v with c^m = 1, v^m = 0,
    vc = zeta c v, coproduct c -> c (x) c, v -> c (x) v + v (x) 1."""
    if m < 2:
        raise SchemaError("Taft order must be at least 2")
    if not is_primitive_root(zeta, m):
        raise ValidationError(f"zeta is not a primitive {m}-th root of unity")
    if isinstance(zeta, Cyclotomic) and not zeta.is_rational():
        fld = GroundField("Q(zeta)", zeta.order)
    else:
        fld = QQ
        zeta = fld.scalar(zeta if not isinstance(zeta, Cyclotomic) else zeta.rational_value())

    def idx(i: int, k: int) -> int:
        return i * m + k

    dim = m * m
    table = [[[fld.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(m):
        for k in range(m):
            for j in range(m):
                for l in range(m):
                    if k + l >= m:
                        continue  # v^m = 0
                    coeff = fld.scalar(zeta) ** (k * j) if k * j else fld.one
                    table[idx(i, k)][idx(j, l)][idx((i + j) % m, k + l)] = coeff
    unit = [fld.zero] * dim
    unit[idx(0, 0)] = fld.one
    halg = StructAlgebra(table, unit=unit, field=fld)

    # coproduct on the basis: (c (x) c)^i (c (x) v + v (x) 1)^k in H (x) H
    def tensor_mult(x: dict, y: dict) -> dict:
        out: dict = {}
        for (p1, q1), c1 in x.items():
            for (p2, q2), c2 in y.items():
                left = halg.mult_sparse({p1: fld.one}, {p2: fld.one})
                right = halg.mult_sparse({q1: fld.one}, {q2: fld.one})
                for lp, lc in left.items():
                    for rp, rc in right.items():
                        key = (lp, rp)
                        val = out.get(key, fld.zero) + c1 * c2 * lc * rc
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
        return out

    dc = {(idx(1, 0), idx(1, 0)): fld.one}
    dv = {(idx(1, 0), idx(0, 1)): fld.one, (idx(0, 1), idx(0, 0)): fld.one}
    coproduct = []
    for i in range(m):
        for k in range(m):
            acc = {(idx(0, 0), idx(0, 0)): fld.one}
            for _ in range(i):
                acc = tensor_mult(acc, dc)
            for _ in range(k):
                acc = tensor_mult(acc, dv)
            coproduct.append(acc)

    counit_vector = tuple(
        fld.one if k == 0 else fld.zero for i in range(m) for k in range(m)
    )

    # antipode: S(c^i v^k) = S(v)^k S(c)^i, S(c) = c^{m-1}, S(v) = -c^{m-1} v
    sc = {idx((m - 1) % m, 0): fld.one}
    sv = {idx(m - 1, 1): -fld.one}
    antipode = []
    for i in range(m):
        for k in range(m):
            acc = {idx(0, 0): fld.one}
            for _ in range(k):
                acc = halg.mult_sparse(acc, sv)
            for _ in range(i):
                acc = halg.mult_sparse(acc, sc)
            vec = [fld.zero] * dim
            for p, c in acc.items():
                vec[p] = c
            antipode.append(tuple(vec))

    relations = [
        ("c^m = 1", [(fld.one, ("c",) * m)], [(fld.one, ())]),
        ("v^m = 0", [(fld.one, ("v",) * m)], []),
        ("v c = zeta c v", [(fld.one, ("v", "c"))], [(zeta, ("c", "v"))]),
    ]
    comultiplication = {
        "c": (ExpansionTerm(delta=(("c",), ("c",))),),
        "v": (
            ExpansionTerm(delta=(("c",), ("v",))),
            ExpansionTerm(delta=(("v",), ())),
        ),
    }
    return HopfPresentation(
        kind="taft",
        params={"m": m, "zeta": zeta},
        relations=relations,
        comultiplication=comultiplication,
        counit={"c": fld.one, "v": fld.zero},
        theta_free=True,
        table=halg,
        coproduct=coproduct,
        counit_vector=counit_vector,
        antipode=antipode,
    )


def taft_action(a: StructAlgebra, pc: Matrix, pv: Matrix, m: int, zeta) -> HAction:
    """Action of the Taft generators c -> pc, v -> pv; validated loudly."""
    pres = taft(m, zeta)
    zeta_a = a.field.scalar(zeta)
    gens = [
        Generator("c", pc, pres.comultiplication["c"]),
        Generator("v", pv, pres.comultiplication["v"]),
    ]
    act = HAction(a, gens)
    relations = [
        ("c^m = 1", [(a.field.one, ("c",) * m)], [(a.field.one, ())]),
        ("v^m = 0", [(a.field.one, ("v",) * m)], []),
        ("v c = zeta c v", [(a.field.one, ("v", "c"))], [(zeta_a, ("c", "v"))]),
    ]
    check = HopfPresentation(
        kind="taft",
        params={"m": m, "zeta": zeta_a},
        relations=relations,
        comultiplication=pres.comultiplication,
        counit={"c": a.field.one, "v": a.field.zero},
        theta_free=True,
    )
    verify_hopf_module_axioms(act, check)
    return act


# ---------------------------------------------------------------------------
# gradings and their dual actions
# ---------------------------------------------------------------------------

def grading_dual_action(a: StructAlgebra, grading: Grading) -> HAction:
    """Component projections h_t with h_t(xy) = sum_{gw=t} h_g(x) h_w(y)."""
    validate_grading(a, grading)
    support = grading.support
    pm = grading.product_map()
    gens = []
    for t in support:
        diag = [
            [a.field.one if (i == j and grading.labels[i] == t) else a.field.zero for j in range(a.dim)]
            for i in range(a.dim)
        ]
        terms = []
        for g in support:
            for w in support:
                if pm.get((g, w)) == t:
                    terms.append(ExpansionTerm(delta=((f"h_{g}",), (f"h_{w}",))))
        gens.append(Generator(f"h_{t}", Matrix(diag), tuple(terms)))
    act = HAction(a, gens)
    ok, cert = verify_action(act)
    if not ok:
        raise ValidationError(f"dual grading action fails the expansion law at {cert}")
    return act


def grading_dual_presentation(a: StructAlgebra, grading: Grading) -> HopfPresentation:
    support = grading.support
    relations = []
    for g in support:
        for w in support:
            lhs = [(a.field.one, (f"h_{g}", f"h_{w}"))]
            rhs = [(a.field.one, (f"h_{g}",))] if g == w else []
            name = f"h_{g} h_{w} = {f'h_{g}' if g == w else '0'}"
            relations.append((name, lhs, rhs))
    relations.append(
        ("sum of projections = id", [(a.field.one, (f"h_{t}",)) for t in support], [(a.field.one, ())])
    )
    pm = grading.product_map()
    comult = {}
    for t in support:
        terms = []
        for g in support:
            for w in support:
                if pm.get((g, w)) == t:
                    terms.append(ExpansionTerm(delta=((f"h_{g}",), (f"h_{w}",))))
        comult[f"h_{t}"] = tuple(terms)
    e = grading.identity_label()
    counit = None
    if e is not None:
        counit = {f"h_{t}": (a.field.one if t == e else a.field.zero) for t in support}
    return HopfPresentation(
        kind="grading-dual",
        params={"support": list(support), "product": list(grading.product)},
        relations=relations,
        comultiplication=comult,
        counit=counit,
        theta_free=True,
    )


# ---------------------------------------------------------------------------
# semigroup actions by (anti-)endomorphisms, and the trivial action
# ---------------------------------------------------------------------------

def group_action(a: StructAlgebra, maps) -> HAction:
    """Generators from (matrix, "auto"|"anti") pairs.

    Endomorphisms expand as g (x) g in order, anti-endomorphisms in the
    reversed slot; each map is checked against the product first.
    """
    gens = []
    for idx_m, (matrix, kind) in enumerate(maps):
        label = f"g{idx_m}"
        if kind not in ("auto", "anti"):
            raise SchemaError(f"map kind must be auto or anti, got {kind!r}")
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = matrix.apply(a.mult(a.basis_vector(i), a.basis_vector(j)))
                fi = matrix.apply(a.basis_vector(i))
                fj = matrix.apply(a.basis_vector(j))
                rhs = a.mult(fi, fj) if kind == "auto" else a.mult(fj, fi)
                if lhs != rhs:
                    raise ValidationError(
                        f"map {idx_m} is not {'multiplicative' if kind == 'auto' else 'anti-multiplicative'} "
                        f"at basis pair ({i}, {j})"
                    )
        if kind == "auto":
            term = ExpansionTerm(delta=((label,), (label,)))
        else:
            term = ExpansionTerm(theta=((label,), (label,)))
        gens.append(Generator(label, matrix, (term,)))
    act = HAction(a, gens)
    ok, cert = verify_action(act)
    if not ok:
        raise ValidationError(f"semigroup action fails the expansion law at {cert}")
    return act


def trivial_action(a: StructAlgebra) -> HAction:
    gen = Generator("1", Matrix.identity(a.dim), (ExpansionTerm(delta=((), ())),))
    act = HAction(a, [gen])
    ok, _ = verify_action(act)
    assert ok
    return act


def trivial_presentation(a: StructAlgebra) -> HopfPresentation:
    return HopfPresentation(
        kind="trivial",
        params={},
        relations=[],
        comultiplication={"1": (ExpansionTerm(delta=((), ())),)},
        counit={"1": a.field.one},
        theta_free=True,
    )


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _dual_numbers(fld: GroundField, power: int) -> StructAlgebra:
    """F[x]/(x^power) on the basis 1, x, ..., x^{power-1}."""
    t = [[[fld.zero] * power for _ in range(power)] for _ in range(power)]
    for i in range(power):
        for j in range(power):
            if i + j < power:
                t[i][j][i + j] = fld.one
    unit = [fld.one] + [fld.zero] * (power - 1)
    return StructAlgebra(t, unit=unit, field=fld)


def _upper_triangular(size: int) -> StructAlgebra:
    """UT_size on the basis e_11..e_ss then e_ij (i < j) in row-major order."""
    pairs = [(i, i) for i in range(size)] + [
        (i, j) for i in range(size) for j in range(i + 1, size)
    ]
    idx = {p: k for k, p in enumerate(pairs)}
    n = len(pairs)
    t = [[[QQ.zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                t[a][b][idx[(i, l)]] = QQ.one
    unit = [QQ.one] * size + [QQ.zero] * (n - size)
    return StructAlgebra(t, unit=unit, field=QQ)


def _full_matrix(size: int) -> StructAlgebra:
    """M_size on the basis e_ij in row-major order."""
    pairs = [(i, j) for i in range(size) for j in range(size)]
    idx = {p: k for k, p in enumerate(pairs)}
    n = len(pairs)
    t = [[[QQ.zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                t[a][b][idx[(i, l)]] = QQ.one
    unit = [QQ.one if i == j else QQ.zero for (i, j) in pairs]
    return StructAlgebra(t, unit=unit, field=QQ)


def _split_two() -> StructAlgebra:
    """F x F with the coordinate idempotents as basis."""
    t = [[[QQ.zero] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][0] = QQ.one
    t[1][1][1] = QQ.one
    return StructAlgebra(t, unit=[QQ.one, QQ.one], field=QQ)


_Z2_PRODUCT = (("0", "0", "0"), ("0", "1", "1"), ("1", "0", "1"), ("1", "1", "0"))


def catalog_documents():
    """Build every bundled document from its constructor (validating it)."""
    from .jsonio import Document

    docs = {}

    a = _dual_numbers(QQ, 2)
    act = taft_action(
        a,
        Matrix([[QQ.one, QQ.zero], [QQ.zero, -QQ.one]]),
        Matrix([[QQ.zero, QQ.one], [QQ.zero, QQ.zero]]),
        2,
        -QQ.one,
    )
    docs["sweedler-dual-numbers"] = Document(
        field=QQ,
        algebra=a,
        action=act,
        hopf={"kind": "taft", "m": 2, "zeta": "-1"},
        notes="4-dimensional Taft generators acting on the dual numbers "
        "F[x]/(x^2), basis (1, x): c is the sign automorphism x -> -x, "
        "v kills 1 and sends x to 1.",
    )

    one = StructAlgebra([[[QQ.one]]], unit=[QQ.one], field=QQ)
    docs["f-trivial"] = Document(
        field=QQ,
        algebra=one,
        action=trivial_action(one),
        hopf={"kind": "trivial"},
        notes="the ground field itself with the trivial action.",
    )

    ff = _split_two()
    docs["f2-trivial"] = Document(
        field=QQ,
        algebra=ff,
        action=trivial_action(ff),
        hopf={"kind": "trivial"},
        notes="F x F with orthogonal idempotents e1, e2 and the trivial action.",
    )
    docs["f2-swap"] = Document(
        field=QQ,
        algebra=ff,
        action=group_action(ff, [(Matrix([[QQ.zero, QQ.one], [QQ.one, QQ.zero]]), "auto")]),
        hopf={"kind": "group-algebra", "anti": []},
        notes="F x F with the order-2 coordinate-swap automorphism.",
    )

    ut2 = _upper_triangular(2)
    docs["ut2-trivial"] = Document(
        field=QQ,
        algebra=ut2,
        action=trivial_action(ut2),
        hopf={"kind": "trivial"},
        notes="2x2 upper triangular matrices, basis (e11, e22, e12), trivial action.",
    )
    ut3 = _upper_triangular(3)
    docs["ut3-trivial"] = Document(
        field=QQ,
        algebra=ut3,
        action=trivial_action(ut3),
        hopf={"kind": "trivial"},
        notes="3x3 upper triangular matrices, basis (e11, e22, e33, e12, e13, e23), "
        "trivial action.",
    )
    m2 = _full_matrix(2)
    docs["m2-trivial"] = Document(
        field=QQ,
        algebra=m2,
        action=trivial_action(m2),
        hopf={"kind": "trivial"},
        notes="full 2x2 matrices, basis (e11, e12, e21, e22) row-major, trivial action.",
    )

    g_m2 = Grading(labels=("0", "1", "1", "0"), product=_Z2_PRODUCT)
    docs["m2-z2"] = Document(
        field=QQ,
        algebra=m2,
        action=grading_dual_action(m2, g_m2),
        grading=g_m2,
        hopf={"kind": "grading-dual"},
        notes="full 2x2 matrices with the order-2 grading (diagonal in degree 0, "
        "antidiagonal in degree 1) and its dual projection action.",
    )
    g_ut2 = Grading(labels=("0", "0", "1"), product=_Z2_PRODUCT)
    docs["ut2-z2"] = Document(
        field=QQ,
        algebra=ut2,
        action=grading_dual_action(ut2, g_ut2),
        grading=g_ut2,
        hopf={"kind": "grading-dual"},
        notes="2x2 upper triangular matrices with the order-2 grading placing "
        "e12 in degree 1, and its dual projection action.",
    )

    f3 = GroundField("Q(zeta)", 3)
    z3 = f3.zeta()
    a3 = _dual_numbers(f3, 3)
    pc = Matrix(
        [
            [f3.one, f3.zero, f3.zero],
            [f3.zero, z3, f3.zero],
            [f3.zero, f3.zero, z3 * z3],
        ]
    )
    # v is the zeta-twisted derivative: x^k -> (1 + z + ... + z^{k-1}) x^{k-1}
    bracket2 = f3.one + z3
    pv = Matrix(
        [
            [f3.zero, f3.one, f3.zero],
            [f3.zero, f3.zero, bracket2],
            [f3.zero, f3.zero, f3.zero],
        ]
    )
    docs["taft9-dual-cubed"] = Document(
        field=f3,
        algebra=a3,
        action=taft_action(a3, pc, pv, 3, z3),
        hopf={"kind": "taft", "m": 3, "zeta": "0 + 1*z + 0*z^2"},
        notes="9-dimensional Taft generators over Q(zeta_3) acting on "
        "F[x]/(x^3): c scales x by zeta, v is the twisted derivative.",
    )
    return docs


def write_catalog(directory=None):
    """(Re)generate the bundled JSON files with the canonical serializer."""
    from .jsonio import dumps_document

    directory = Path(directory) if directory else _CATALOG_DIR
    directory.mkdir(parents=True, exist_ok=True)
    for name, doc in catalog_documents().items():
        (directory / f"{name}.json").write_text(dumps_document(doc), encoding="utf-8")


def catalog_names() -> list[str]:
    return sorted(p.stem for p in _CATALOG_DIR.glob("*.json"))


def catalog_path(name: str) -> Path:
    p = _CATALOG_DIR / f"{name}.json"
    if not p.exists():
        raise SchemaError(
            f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}"
        )
    return p


def load_catalog(name: str):
    from .jsonio import parse_document

    with open(catalog_path(name), "r", encoding="utf-8") as fh:
        return parse_document(json.load(fh))


def presentation_for_document(doc) -> HopfPresentation | None:
    """Reconstruct the presentation for a parsed document, if it names one."""
    meta = doc.hopf
    if meta is None and doc.grading is not None:
        return grading_dual_presentation(doc.algebra, doc.grading)
    if meta is None:
        return None
    kind = meta.get("kind")
    if kind == "trivial":
        return trivial_presentation(doc.algebra)
    if kind == "taft":
        from .field import scalar_from_str

        zeta = scalar_from_str(meta["zeta"], doc.algebra.field)
        m = int(meta["m"])
        pres = taft(m, zeta)
        fldone = doc.algebra.field.one
        return HopfPresentation(
            kind="taft",
            params={"m": m, "zeta": zeta},
            relations=[
                ("c^m = 1", [(fldone, ("c",) * m)], [(fldone, ())]),
                ("v^m = 0", [(fldone, ("v",) * m)], []),
                ("v c = zeta c v", [(fldone, ("v", "c"))], [(doc.algebra.field.scalar(zeta), ("c", "v"))]),
            ],
            comultiplication=pres.comultiplication,
            counit={"c": fldone, "v": doc.algebra.field.zero},
            theta_free=True,
        )
    if kind == "group-algebra":
        anti = set(meta.get("anti", []))
        comult = {}
        for g in doc.action.generators:
            if g.label in anti:
                comult[g.label] = (ExpansionTerm(theta=((g.label,), (g.label,))),)
            else:
                comult[g.label] = (ExpansionTerm(delta=((g.label,), (g.label,))),)
        return HopfPresentation(
            kind="group-algebra",
            params={"anti": sorted(anti)},
            relations=[],
            comultiplication=comult,
            counit=None,
            theta_free=not anti,
        )
    if kind == "grading-dual":
        if doc.grading is None:
            raise SchemaError("grading-dual document without a grading")
        return grading_dual_presentation(doc.algebra, doc.grading)
    raise SchemaError(f"unknown hopf presentation kind {kind!r}")
