"""Finite-dimensional associative algebras given by structure constants.

Provides multiplication, unit adjunction, the Jacobson radical via the
trace form of the regular representation on A+, nilpotency of subspaces,
Wedderburn-Mal'cev decomposition by quadratically converging lift
correction, and primitive central idempotents with exact lifting along
the center's radical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .errors import (
    DimensionMismatchError,
    FieldTooSmallError,
    HpiError,
    NotUnitalError,
)
from .field import GroundField, QQ, scalar_sort_key
from .linalg import Matrix, Subspace, kernel, solve

_ZERO = Fraction(0)
_ONE = Fraction(1)


class StructAlgebra:
    """Algebra on basis e_0..e_{n-1} with e_i e_j = sum_k c[i][j][k] e_k."""

    __slots__ = ("field", "dim", "table", "unit", "_sparse")

    def __init__(self, table, unit=None, field: GroundField = QQ):
        self.field = field
        self.dim = len(table)
        self.table = tuple(
            tuple(tuple(field.scalar(c) for c in cell) for cell in row) for row in table
        )
        for row in self.table:
            if len(row) != self.dim or any(len(cell) != self.dim for cell in row):
                raise DimensionMismatchError("structure tensor is not n x n x n")
        self.unit = tuple(field.scalar(c) for c in unit) if unit is not None else None
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(cell) if c) for cell in row)
            for row in self.table
        )

    # -- vector helpers ----------------------------------------------------
    def zero_vec(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i: int):
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def mult(self, u, v):
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if a:
                row = self._sparse[i]
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k, c in row[j]:
                            out[k] = out[k] + ab * c
        return tuple(out)

    def mult_sparse(self, du: dict, dv: dict) -> dict:
        out: dict = {}
        for i, a in du.items():
            row = self._sparse[i]
            for j, b in dv.items():
                ab = a * b
                for k, c in row[j]:
                    cur = out.get(k)
                    nv = ab * c if cur is None else cur + ab * c
                    if nv:
                        out[k] = nv
                    elif cur is not None:
                        del out[k]
        return out

    def left_mult_matrix(self, vec) -> Matrix:
        cols = [self.mult(vec, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(list(zip(*cols)))

    def right_mult_matrix(self, vec) -> Matrix:
        cols = [self.mult(self.basis_vector(j), vec) for j in range(self.dim)]
        return Matrix(list(zip(*cols)))

    def is_unital(self) -> bool:
        return self.unit is not None

    def find_unit(self):
        """Solve for a two-sided unit; returns the vector or None."""
        rows = []
        rhs = []
        for j in range(self.dim):
            ej = self.basis_vector(j)
            lm = [self.mult(self.basis_vector(i), ej) for i in range(self.dim)]
            rm = [self.mult(ej, self.basis_vector(i)) for i in range(self.dim)]
            for k in range(self.dim):
                rows.append([lm[i][k] for i in range(self.dim)])
                rhs.append(ej[k])
                rows.append([rm[i][k] for i in range(self.dim)])
                rhs.append(ej[k])
        return solve(Matrix(rows), rhs)

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    def __repr__(self):
        return f"StructAlgebra(dim={self.dim}, field={self.field.kind})"


@dataclass(frozen=True)
class LinearMap:
    """Linear map between algebras, stored as a (target dim x source dim) matrix."""

    matrix: Matrix
    source_dim: int
    target_dim: int

    def __call__(self, vec):
        return self.matrix.apply(vec)


def check_associativity(a: StructAlgebra) -> bool:
    for i in range(a.dim):
        ei = a.basis_vector(i)
        for j in range(a.dim):
            eij = a.mult(ei, a.basis_vector(j))
            ej = a.basis_vector(j)
            for k in range(a.dim):
                ek = a.basis_vector(k)
                if a.mult(eij, ek) != a.mult(ei, a.mult(ej, ek)):
                    return False
    return True


def check_unit(a: StructAlgebra) -> bool:
    if a.unit is None:
        return True
    return all(
        a.mult(a.unit, a.basis_vector(i)) == a.basis_vector(i)
        and a.mult(a.basis_vector(i), a.unit) == a.basis_vector(i)
        for i in range(a.dim)
    )


def adjoin_unit(a: StructAlgebra) -> StructAlgebra:
    """A+ = A + F*1 with the formal unit as the last basis vector."""
    n = a.dim
    table = [[[a.field.zero] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                table[i][j][k] = a.table[i][j][k]
    for i in range(n + 1):
        table[i][n][i] = a.field.one
        table[n][i][i] = a.field.one
    unit = [a.field.zero] * n + [a.field.one]
    return StructAlgebra(table, unit=unit, field=a.field)


def jacobson_radical(a: StructAlgebra) -> Subspace:
    """J(A) as the kernel of the trace form of the regular representation on A+."""
    ap = adjoin_unit(a)
    # Tr(L_{e_k}) on A+ per basis vector of A
    trl = [ap.left_mult_matrix(ap.basis_vector(k)).trace() for k in range(ap.dim)]
    rows = []
    for b in range(a.dim):
        eb = a.basis_vector(b)
        row = []
        for x in range(a.dim):
            prod = a.mult(a.basis_vector(x), eb)
            row.append(sum((prod[k] * trl[k] for k in range(a.dim) if prod[k]), _ZERO))
        rows.append(row)
    return kernel(Matrix(rows))


def multiply_subspaces(a: StructAlgebra, v: Subspace, w: Subspace) -> Subspace:
    vecs = [a.mult(x, y) for x in v.basis for y in w.basis]
    return Subspace(a.dim, vecs)


def is_nilpotent(a: StructAlgebra, v: Subspace) -> tuple[bool, int | None]:
    """Whether the span of all products from v is eventually zero.

    Returns (True, p) with the least p such that every p-fold product
    vanishes, or (False, None). Detects stabilization by remembering the
    canonical bases of the power chain.
    """
    current = v
    seen = {current.basis}
    p = 1
    while current.dim > 0:
        nxt = multiply_subspaces(a, current, v)
        p += 1
        if nxt.basis in seen:
            return False, None
        seen.add(nxt.basis)
        current = nxt
    return True, p if v.dim > 0 else 1


def subalgebra(a: StructAlgebra, sub: Subspace, unit_vec=None) -> StructAlgebra:
    """Structure constants of a multiplicatively closed subspace."""
    k = sub.dim
    table = [[[a.field.zero] * k for _ in range(k)] for _ in range(k)]
    for i, u in enumerate(sub.basis):
        for j, v in enumerate(sub.basis):
            prod = a.mult(u, v)
            coords = sub.coords(prod)
            if coords is None:
                raise HpiError("subspace is not multiplicatively closed")
            table[i][j] = list(coords)
    unit = None
    if unit_vec is not None:
        unit = sub.coords(unit_vec)
        if unit is None:
            raise HpiError("claimed unit is outside the subspace")
    return StructAlgebra(table, unit=unit, field=a.field)


def quotient_algebra(a: StructAlgebra, ideal: Subspace):
    """(A/I, projection pi, linear section s) with the complement-coset basis.

    The section maps quotient basis vectors to the standard basis vectors
    of A at the non-pivot coordinates of I's echelon basis.
    """
    piv = set(ideal.pivots)
    comp = [i for i in range(a.dim) if i not in piv]
    k = len(comp)

    def project(vec):
        red = ideal.reduce(vec)
        return tuple(red[c] for c in comp)

    table = [[[a.field.zero] * k for _ in range(k)] for _ in range(k)]
    for i, ci in enumerate(comp):
        for j, cj in enumerate(comp):
            prod = a.mult(a.basis_vector(ci), a.basis_vector(cj))
            table[i][j] = list(project(prod))
    unit = project(a.unit) if a.unit is not None else None
    quo = StructAlgebra(table, unit=unit, field=a.field)
    if unit is None:
        found = quo.find_unit()
        if found is not None:
            quo = StructAlgebra(table, unit=found, field=a.field)
    reduced = [ideal.reduce(a.basis_vector(j)) for j in range(a.dim)]
    pi = Matrix([[reduced[j][ci] for j in range(a.dim)] for ci in comp])
    sec_cols = [a.basis_vector(c) for c in comp]
    section = Matrix(list(zip(*sec_cols))) if comp else Matrix([])
    return quo, LinearMap(pi, a.dim, k), LinearMap(section, k, a.dim)


def wedderburn_malcev(a: StructAlgebra):
    """Maximal semisimple B0 with A = B0 (+) J(A), plus the lift data.

    Starts from the coset-complement linear section of A -> A/J and
    corrects it modulo J, J^2, J^4, ... by solving the linear congruence
    that makes the lift multiplicative one power further. Returns
    (B0: Subspace, lift: Matrix mapping A/J coords into A, J: Subspace).
    """
    j = jacobson_radical(a)
    n = a.dim
    if j.dim == 0:
        return Subspace.full(n), Matrix.identity(n), j
    quo, pi, section = quotient_algebra(a, j)
    s = quo.dim
    lift_cols = [section(tuple(_ONE if t == i else _ZERO for t in range(s))) for i in range(s)]

    # powers chain J, J^2, J^4, ...
    powers = [j]
    while powers[-1].dim > 0:
        sq = multiply_subspaces(a, powers[-1], powers[-1])
        powers.append(sq)

    for step in range(len(powers) - 1):
        jcur, jnext = powers[step], powers[step + 1]
        if jcur.dim == 0:
            break
        # delta(i, j) = L(i) L(j) - L(i*j), values in jcur
        def lifted(i):
            return lift_cols[i]

        def quo_mult_coords(i, jdx):
            return quo.mult(
                tuple(_ONE if t == i else _ZERO for t in range(s)),
                tuple(_ONE if t == jdx else _ZERO for t in range(s)),
            )

        deltas = {}
        all_zero = True
        for i in range(s):
            for jdx in range(s):
                prod = a.mult(lifted(i), lifted(jdx))
                target = [a.field.zero] * n
                for t, c in enumerate(quo_mult_coords(i, jdx)):
                    if c:
                        target = [x + c * y for x, y in zip(target, lift_cols[t])]
                d = tuple(p - t for p, t in zip(prod, target))
                if any(d):
                    all_zero = False
                assert jcur.contains_vector(d), "lift error escaped the expected radical power"
                deltas[(i, jdx)] = d
        if all_zero:
            continue
        # solve for gamma: S -> jcur with
        # gamma(i*j) - L(i) gamma(j) - gamma(i) L(j) = delta(i,j)  (mod jnext)
        kcur = jcur.dim
        nunk = s * kcur
        rows_sys: list[list] = []
        rhs: list = []
        lm = [a.left_mult_matrix(lifted(i)) for i in range(s)]
        rm = [a.right_mult_matrix(lifted(i)) for i in range(s)]
        lmr = [[jnext.reduce(m.apply(bv)) for bv in jcur.basis] for m in lm]
        rmr = [[jnext.reduce(m.apply(bv)) for bv in jcur.basis] for m in rm]
        jb_red = [jnext.reduce(bv) for bv in jcur.basis]
        for i in range(s):
            for jdx in range(s):
                coeff_row: list[dict] = [dict() for _ in range(n)]
                # gamma(i*j) term
                for t, c in enumerate(quo_mult_coords(i, jdx)):
                    if c:
                        for b in range(kcur):
                            vec = jb_red[b]
                            for coord in range(n):
                                if vec[coord]:
                                    key = t * kcur + b
                                    coeff_row[coord][key] = (
                                        coeff_row[coord].get(key, _ZERO) + c * vec[coord]
                                    )
                # -L(i) gamma(j)
                for b in range(kcur):
                    vec = lmr[i][b]
                    for coord in range(n):
                        if vec[coord]:
                            key = jdx * kcur + b
                            coeff_row[coord][key] = coeff_row[coord].get(key, _ZERO) - vec[coord]
                # -gamma(i) L(j)  (right multiplication by L(j))
                for b in range(kcur):
                    vec = rmr[jdx][b]
                    for coord in range(n):
                        if vec[coord]:
                            key = i * kcur + b
                            coeff_row[coord][key] = coeff_row[coord].get(key, _ZERO) - vec[coord]
                dred = jnext.reduce(deltas[(i, jdx)])
                for coord in range(n):
                    if coeff_row[coord] or dred[coord]:
                        row = [_ZERO] * nunk
                        for key, val in coeff_row[coord].items():
                            row[key] = val
                        rows_sys.append(row)
                        rhs.append(dred[coord])
        sol = solve(Matrix(rows_sys), rhs)
        if sol is None:
            raise HpiError(
                "Wedderburn-Mal'cev correction system unsolvable; this cannot "
                "happen over a characteristic-zero field and signals a bug"
            )
        for i in range(s):
            gamma = [a.field.zero] * n
            for b in range(kcur):
                c = sol[i * kcur + b]
                if c:
                    gamma = [x + c * y for x, y in zip(gamma, jcur.basis[b])]
            lift_cols[i] = tuple(x + g for x, g in zip(lift_cols[i], gamma))

    b0 = Subspace(n, lift_cols)
    lift = Matrix(list(zip(*lift_cols)))
    # exact multiplicativity check
    for i in range(s):
        for jdx in range(s):
            prod = a.mult(lift_cols[i], lift_cols[jdx])
            target = [a.field.zero] * n
            qc = quo.mult(
                tuple(_ONE if t == i else _ZERO for t in range(s)),
                tuple(_ONE if t == jdx else _ZERO for t in range(s)),
            )
            for t, c in enumerate(qc):
                if c:
                    target = [x + c * y for x, y in zip(target, lift_cols[t])]
            assert prod == tuple(target), "lift failed to become multiplicative"
    return b0, lift, j


@dataclass(frozen=True)
class Grading:
    """Assignment of basis vectors to components of a finite support set
    with a partial product (pairs absent from the product table must only
    ever multiply to zero)."""

    labels: tuple[str, ...]  # component label per basis index
    product: tuple[tuple[str, str, str], ...]  # (g, w, gw) triples

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    def product_map(self) -> dict:
        return {(g, w): gw for g, w, gw in self.product}

    def component_indices(self, t: str) -> tuple[int, ...]:
        return tuple(i for i, lab in enumerate(self.labels) if lab == t)

    def identity_label(self):
        """The support element acting as a two-sided identity, or None."""
        pm = self.product_map()
        for e in self.support:
            if all(pm.get((e, t)) == t and pm.get((t, e)) == t for t in self.support):
                return e
        return None


def validate_grading(a: StructAlgebra, grading: Grading):
    """Check that component products land in the component of the product
    label (or vanish when the label product is undefined)."""
    from .errors import GradingError

    if len(grading.labels) != a.dim:
        raise GradingError("grading labels do not match the basis")
    pm = grading.product_map()
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.mult(a.basis_vector(i), a.basis_vector(j))
            target = pm.get((grading.labels[i], grading.labels[j]))
            for k, c in enumerate(prod):
                if c and grading.labels[k] != target:
                    raise GradingError(
                        "grading violated by basis pair "
                        f"({i}, {j}): component {grading.labels[k]} reached, "
                        f"expected {target}",
                        pair=(i, j),
                    )


def center(a: StructAlgebra) -> Subspace:
    rows = []
    for i in range(a.dim):
        comm = a.left_mult_matrix(a.basis_vector(i)) - a.right_mult_matrix(a.basis_vector(i))
        rows.extend(list(comm.rows))
    if not rows:
        return Subspace.full(a.dim)
    return kernel(Matrix(rows))


def minimal_polynomial(a: StructAlgebra, vec) -> list:
    """Minimal polynomial of vec in a unital algebra (unit required)."""
    if a.unit is None:
        raise NotUnitalError("minimal polynomial needs a unit")
    powers = [a.unit]
    current = a.unit
    while True:
        current = a.mult(current, vec)
        coords = solve(Matrix(list(zip(*powers))), current)
        if coords is not None:
            # vec^d = sum coords_i vec^i  ->  min poly = x^d - sum coords_i x^i
            mono = [-c for c in coords] + [a.field.one]
            return polys.trim([a.field.scalar(c) for c in mono])
        powers.append(current)


def _poly_apply(a: StructAlgebra, poly, vec):
    acc = a.zero_vec()
    power = a.unit
    for c in poly:
        if c:
            acc = tuple(x + c * y for x, y in zip(acc, power))
        power = a.mult(power, vec)
    return acc


def primitive_central_idempotents(a: StructAlgebra) -> list[tuple]:
    """Orthogonal primitive central idempotents summing to the unit.

    The center's semisimple quotient is split into field factors by
    factoring minimal polynomials of its basis elements; idempotents are
    produced by CRT inside each split block and lifted uniquely along the
    center's radical by the Newton iteration e <- 3e^2 - 2e^3.
    """
    if a.unit is None:
        raise NotUnitalError("primitive central idempotents need a unital algebra")
    z = center(a)
    zalg = subalgebra(a, z, unit_vec=a.unit)
    rad = jacobson_radical(zalg)
    quo, pi, section = quotient_algebra(zalg, rad)
    # split the commutative semisimple quotient into fields
    blocks = [quo.unit]
    for bidx in range(quo.dim):
        gen = quo.basis_vector(bidx)
        new_blocks = []
        for f in blocks:
            blk = _split_block(quo, f, gen)
            new_blocks.extend(blk)
        blocks = new_blocks
    # every block must now be one-dimensional over a field factor; blocks of
    # dim > 1 are genuine field extensions
    for f in blocks:
        bs = _block_subspace(quo, f)
        if bs.dim > 1:
            factor = _extension_witness(quo, f, bs)
            raise FieldTooSmallError(
                "center block is a field extension of the ground field; "
                f"irreducible factor: {polys.poly_to_str(factor, a.field)}",
                factor=factor,
            )
    # lift along the radical, then push into A coordinates
    idems = []
    for f in blocks:
        e = section(f)
        while True:
            e2 = zalg.mult(e, e)
            if e2 == tuple(e):
                break
            e3 = zalg.mult(e2, e)
            e = tuple(3 * x2 - 2 * x3 for x2, x3 in zip(e2, e3))
        vec = [a.field.zero] * a.dim
        for c, b in zip(e, z.basis):
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        idems.append(tuple(vec))
    idems.sort(key=lambda v: [scalar_sort_key(c) for c in v])
    # orthogonality, idempotence, completeness
    total = a.zero_vec()
    for i, e in enumerate(idems):
        assert a.mult(e, e) == e
        total = tuple(x + y for x, y in zip(total, e))
        for e2 in idems[i + 1 :]:
            assert not any(a.mult(e, e2)) and not any(a.mult(e2, e))
    assert total == a.unit
    return idems


def _block_subspace(quo: StructAlgebra, f) -> Subspace:
    img = [quo.mult(f, quo.basis_vector(i)) for i in range(quo.dim)]
    return Subspace(quo.dim, img)


def _split_block(quo: StructAlgebra, f, gen) -> list[tuple]:
    """Split idempotent f of the commutative semisimple quo along the minimal
    polynomial of f*gen inside the block f*quo."""
    bs = _block_subspace(quo, f)
    if bs.dim <= 1:
        return [f]
    blk = subalgebra(quo, bs, unit_vec=f)
    zvec = bs.coords(quo.mult(f, gen))
    mp = minimal_polynomial(blk, zvec)
    assert polys.is_squarefree(mp), "minimal polynomial in a semisimple center must be squarefree"
    factors = polys.factor_squarefree(mp, quo.field)
    if len(factors) <= 1:
        return [f]
    out = []
    for p in factors:
        q, r = polys.pdivmod(mp, p)
        assert not r
        # r_p = q^{-1} mod p: solve via extended gcd
        inv = _poly_inverse_mod(q, p, quo.field)
        e_blk = blk.mult(_poly_apply(blk, q, zvec), _poly_apply(blk, inv, zvec))
        vec = [quo.field.zero] * quo.dim
        for c, b in zip(e_blk, bs.basis):
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        out.append(tuple(vec))
    return out


def _poly_inverse_mod(q, p, field: GroundField):
    r0, r1 = list(p), list(q)
    s0, s1 = [], [field.one]
    while r1:
        quot, rem = polys.pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, polys.psub(s0, polys.pmul(quot, s1))
    assert len(r0) == 1, "factor is not coprime to cofactor"
    return polys.pscale(s0, 1 / r0[0] if not isinstance(r0[0], Fraction) else Fraction(1) / r0[0])


def _extension_witness(quo: StructAlgebra, f, bs: Subspace) -> list:
    """Irreducible minimal polynomial of degree > 1 inside an unsplittable block."""
    blk = subalgebra(quo, bs, unit_vec=f)
    for i in range(quo.dim):
        zvec = bs.coords(quo.mult(f, quo.basis_vector(i)))
        mp = minimal_polynomial(blk, zvec)
        if len(mp) > 2:
            return mp
    raise HpiError("unsplittable block without a proper extension witness")
