"""Generalized H-actions on structure-constant algebras.

An action is a list of labelled operator generators, each with an
expansion describing how it distributes over products: for a generator g
and all a, b,

    g(ab) = sum_i (p_i a)(q_i b) + (r_i b)(s_i a)

where p_i, q_i, r_i, s_i are words in the generators (the empty word is
the identity operator). The Hopf module-algebra case uses only the first
half of each term. On top of the verified action the module computes the
effective operator image, the H-radical, H-simplicity, the H-simple block
decomposition of the quotient, the multiplicative section of the quotient
map, and the structural exponent candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    StructAlgebra,
    jacobson_radical,
    multiply_subspaces,
    primitive_central_idempotents,
    quotient_algebra,
    subalgebra,
    wedderburn_malcev,
)
from .errors import (
    CannotCertifyError,
    DecompositionFailureError,
    DimensionMismatchError,
    HpiError,
    NotUnitalError,
    RelationError,
    SchemaError,
    ValidationError,
)
from .field import scalar_sort_key
from .linalg import (
    Matrix,
    Subspace,
    equivariant_projection,
    kernel,
    solve,
    stable_closure_shrink,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

Word = tuple[str, ...]


@dataclass(frozen=True)
class ExpansionTerm:
    """One summand of an expansion: an ordered (delta) and/or a reversed
    (theta) word pair. None means that half is absent."""

    delta: tuple[Word, Word] | None = None
    theta: tuple[Word, Word] | None = None


@dataclass(frozen=True)
class Generator:
    label: str
    matrix: Matrix
    expansion: tuple[ExpansionTerm, ...]


class HAction:
    """A generalized H-action on a :class:`StructAlgebra`."""

    def __init__(self, algebra: StructAlgebra, generators):
        self.algebra = algebra
        self.generators = tuple(generators)
        labels = [g.label for g in self.generators]
        if len(set(labels)) != len(labels):
            raise SchemaError("duplicate generator labels")
        self._by_label = {g.label: g for g in self.generators}
        for g in self.generators:
            if g.matrix.nrows != algebra.dim or g.matrix.ncols != algebra.dim:
                raise DimensionMismatchError(
                    f"generator {g.label!r} matrix does not act on the algebra"
                )
        self._image_cache: list[Matrix] | None = None

    def operator(self, label: str) -> Matrix:
        g = self._by_label.get(label)
        if g is None:
            raise SchemaError(f"unknown generator label {label!r}")
        return g.matrix

    def word_operator(self, word: Word) -> Matrix:
        m = Matrix.identity(self.algebra.dim)
        for label in word:
            m = m * self.operator(label)
        return m

    def effective_image(self) -> list[Matrix]:
        """Basis of the unital operator algebra generated by the action.

        Deterministic: the identity is seeded first, generators in listed
        order, then products in discovery order until the span stabilizes.
        """
        if self._image_cache is not None:
            return self._image_cache
        n = self.algebra.dim
        reps: list[Matrix] = []
        ech: dict[int, dict[int, object]] = {}

        def try_insert(m: Matrix) -> bool:
            row = {i: v for i, v in enumerate(m.flat()) if v}
            while row:
                p = min(row)
                piv = ech.get(p)
                if piv is None:
                    f = row[p]
                    inv = (Fraction(1) / f) if isinstance(f, Fraction) else 1 / f
                    ech[p] = {c: v * inv for c, v in row.items()}
                    reps.append(m)
                    return True
                f = row[p]
                for c, v in piv.items():
                    nv = row.get(c, _ZERO) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            return False

        try_insert(Matrix.identity(n))
        for g in self.generators:
            try_insert(g.matrix)
        grown = True
        while grown:
            grown = False
            size = len(reps)
            for i in range(size):
                for j in range(size):
                    if try_insert(reps[i] * reps[j]):
                        grown = True
            if len(reps) > n * n:
                raise HpiError("operator algebra closure exceeded End(A) dimension")
        self._image_cache = reps
        return reps

    def image_coords(self, m: Matrix):
        """Coordinates of an operator in the effective-image basis, or None."""
        reps = self.effective_image()
        cols = Matrix(list(zip(*[r.flat() for r in reps])))
        return solve(cols, m.flat())


def verify_action(act: HAction):
    """Check the expansion law for every generator on all basis pairs.

    Returns (True, None) or (False, certificate) where the certificate
    names the violating (generator, i, j) triple.
    """
    a = act.algebra
    for g in act.generators:
        ops = []
        for term in g.expansion:
            dpair = tpair = None
            if term.delta is not None:
                dpair = (act.word_operator(term.delta[0]), act.word_operator(term.delta[1]))
            if term.theta is not None:
                tpair = (act.word_operator(term.theta[0]), act.word_operator(term.theta[1]))
            ops.append((dpair, tpair))
        for i in range(a.dim):
            ei = a.basis_vector(i)
            for j in range(a.dim):
                ej = a.basis_vector(j)
                lhs = g.matrix.apply(a.mult(ei, ej))
                rhs = a.zero_vec()
                for dpair, tpair in ops:
                    if dpair is not None:
                        rhs = tuple(
                            x + y
                            for x, y in zip(
                                rhs, a.mult(dpair[0].apply(ei), dpair[1].apply(ej))
                            )
                        )
                    if tpair is not None:
                        rhs = tuple(
                            x + y
                            for x, y in zip(
                                rhs, a.mult(tpair[0].apply(ej), tpair[1].apply(ei))
                            )
                        )
                if lhs != rhs:
                    return False, (g.label, i, j)
    return True, None


def verify_hopf_module_axioms(act: HAction, hopf) -> bool:
    """Check presentation relations, expansion shapes, and unitality.

    ``hopf`` is a presentation object carrying ``relations`` (named linear
    combinations of generator words that must agree as operators),
    ``comultiplication`` (the expected expansion per generator label),
    ``counit`` (scalar per generator label, may be None), and
    ``theta_free`` (True for genuine Hopf module structures). Raises
    :class:`RelationError` naming the first failing relation.
    """
    a = act.algebra
    for name, lhs, rhs in hopf.relations:
        ml = _word_comb(act, lhs)
        mr = _word_comb(act, rhs)
        if ml != mr:
            raise RelationError(f"relation {name!r} fails", relation=name)
    for label, expected in hopf.comultiplication.items():
        g = act._by_label.get(label)
        if g is None:
            raise RelationError(
                f"presentation generator {label!r} missing from the action",
                relation=f"generator {label}",
            )
        if hopf.theta_free and any(t.theta is not None for t in g.expansion):
            raise RelationError(
                f"generator {label!r} uses the reversed slot in a Hopf module structure",
                relation=f"coproduct {label}",
            )
        if _canonical_expansion(g.expansion) != _canonical_expansion(expected):
            raise RelationError(
                f"expansion of {label!r} does not match the comultiplication",
                relation=f"coproduct {label}",
            )
    if a.unit is not None and hopf.counit is not None:
        for label, eps in hopf.counit.items():
            img = act.operator(label).apply(a.unit)
            want = tuple(eps * c for c in a.unit)
            if img != want:
                raise RelationError(
                    f"unit axiom fails for generator {label!r}",
                    relation=f"unit {label}",
                )
    ok, cert = verify_action(act)
    if not ok:
        raise ValidationError(
            f"expansion law fails for generator {cert[0]!r} at basis pair {cert[1:]}"
        )
    return True


def _word_comb(act: HAction, comb) -> Matrix:
    m = Matrix.zero(act.algebra.dim, act.algebra.dim)
    for coeff, word in comb:
        m = m + act.word_operator(tuple(word)).scale(coeff)
    return m


def _canonical_expansion(terms):
    out = []
    for t in terms:
        out.append(
            (
                tuple(t.delta) if t.delta is not None else None,
                tuple(t.theta) if t.theta is not None else None,
            )
        )
    return sorted(out, key=repr)


# ---------------------------------------------------------------------------
# structural computations
# ---------------------------------------------------------------------------

def mult_operators(a: StructAlgebra) -> list[Matrix]:
    ops = []
    for i in range(a.dim):
        e = a.basis_vector(i)
        ops.append(a.left_mult_matrix(e))
        ops.append(a.right_mult_matrix(e))
    return ops


def h_radical(act: HAction) -> Subspace:
    """Largest subspace of J(A) stable under the operator image and all
    left/right multiplications: the maximal nilpotent H-stable ideal."""
    a = act.algebra
    j = jacobson_radical(a)
    ops = list(act.effective_image()) + mult_operators(a)
    return stable_closure_shrink(j, ops)


def induced_quotient_action(act: HAction, ideal: Subspace):
    """Action induced on A/ideal for an H-stable ideal; re-verified.

    Returns (quotient action, pi: LinearMap, section: LinearMap).
    """
    a = act.algebra
    quo, pi, section = quotient_algebra(a, ideal)
    gens = []
    for g in act.generators:
        cols = []
        for i in range(quo.dim):
            ei = tuple(_ONE if t == i else _ZERO for t in range(quo.dim))
            img = g.matrix.apply(section(ei))
            cols.append(pi(img))
        gens.append(Generator(g.label, Matrix(list(zip(*cols))), g.expansion))
    out = HAction(quo, gens)
    ok, cert = verify_action(out)
    if not ok:
        raise ValidationError(
            f"induced action fails the expansion law at {cert}; "
            "the ideal is not stable under the action"
        )
    return out, pi, section


def envelope(act: HAction) -> list[Matrix]:
    """Basis of the algebra generated by the operator image, the left and
    right multiplications, and the identity."""
    a = act.algebra
    n = a.dim
    reps: list[Matrix] = []
    ech: dict[int, dict] = {}

    def try_insert(m: Matrix) -> bool:
        row = {i: v for i, v in enumerate(m.flat()) if v}
        while row:
            p = min(row)
            piv = ech.get(p)
            if piv is None:
                f = row[p]
                inv = (Fraction(1) / f) if isinstance(f, Fraction) else 1 / f
                ech[p] = {c: v * inv for c, v in row.items()}
                reps.append(m)
                return True
            f = row[p]
            for c, v in piv.items():
                nv = row.get(c, _ZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return False

    try_insert(Matrix.identity(n))
    for m in act.effective_image():
        try_insert(m)
    for m in mult_operators(a):
        try_insert(m)
    grown = True
    while grown:
        grown = False
        size = len(reps)
        for i in range(size):
            for j in range(size):
                if try_insert(reps[i] * reps[j]):
                    grown = True
        if len(reps) > n * n:
            raise HpiError("envelope closure exceeded End(A) dimension")
    return reps


def is_h_simple(act: HAction) -> bool:
    """A^2 != 0 and no nontrivial ideal stable under the operator image.

    Decided through the enveloping operator algebra E: a nonzero radical
    action J(E)A != 0 exhibits a proper submodule; otherwise the module is
    completely reducible and simplicity reduces to a single nonzero
    isotypic component plus multiplicity one, the latter read off the
    commutant (commutative commutant <=> multiplicity one).
    """
    a = act.algebra
    full = a.full_space()
    if multiply_subspaces(a, full, full).dim == 0:
        return False
    if a.dim == 0:
        return False
    reps = envelope(act)
    ealg = _abstract_operator_algebra(reps, a)
    erad = jacobson_radical(ealg)
    # J(E) A
    jea = []
    for coeffs in erad.basis:
        op = _combine(reps, coeffs, a.dim)
        for i in range(a.dim):
            jea.append(op.apply(a.basis_vector(i)))
    jea_space = Subspace(a.dim, jea)
    if jea_space.dim > 0:
        return False
    equo, _, esec = quotient_algebra(ealg, erad)
    idems = primitive_central_idempotents(equo)
    nonzero = 0
    for e in idems:
        op = _combine(reps, esec(e), a.dim)
        img = Subspace(a.dim, [op.apply(a.basis_vector(i)) for i in range(a.dim)])
        if img.dim > 0:
            nonzero += 1
    if nonzero != 1:
        return False
    comm = _commutant(reps, a.dim)
    if _is_commutative_span(comm):
        return True
    witness = _zero_divisor_witness(comm, a)
    if witness:
        return False
    raise CannotCertifyError(
        "single isotypic component with a noncommutative endomorphism algebra "
        "and no zero-divisor certificate; simplicity undecidable over this "
        "ground field at desk scale"
    )


def _abstract_operator_algebra(reps: list[Matrix], a: StructAlgebra) -> StructAlgebra:
    """Structure constants of a multiplicatively closed operator list, in
    the basis given by the list itself."""
    n = a.dim
    cols = Matrix(list(zip(*[r.flat() for r in reps])))
    k = len(reps)
    table = [[[a.field.zero] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            coords = solve(cols, (reps[i] * reps[j]).flat())
            assert coords is not None, "operator span is not closed"
            table[i][j] = list(coords)
    unit = solve(cols, Matrix.identity(n).flat())
    return StructAlgebra(table, unit=unit, field=a.field)


def _combine(reps: list[Matrix], coeffs, n: int) -> Matrix:
    m = Matrix.zero(n, n)
    for c, r in zip(coeffs, reps):
        if c:
            m = m + r.scale(c)
    return m


def _commutant(reps: list[Matrix], n: int) -> list[Matrix]:
    rows = []
    for r in reps:
        # X r - r X = 0, unknowns X (n x n) flattened row-major
        for i in range(n):
            for j in range(n):
                row = [_ZERO] * (n * n)
                for k in range(n):
                    row[i * n + k] += r.rows[k][j]
                    row[k * n + j] -= r.rows[i][k]
                if any(row):
                    rows.append(row)
    basis = kernel(Matrix(rows)) if rows else Subspace.full(n * n)
    return [Matrix([v[i * n : (i + 1) * n] for i in range(n)]) for v in basis.basis]


def _is_commutative_span(mats: list[Matrix]) -> bool:
    return all(
        (x * y) == (y * x) for i, x in enumerate(mats) for y in mats[i + 1 :]
    )


def _zero_divisor_witness(comm: list[Matrix], a: StructAlgebra) -> bool:
    """Search a bounded deterministic set for a singular nonzero element."""
    candidates = list(comm)
    for i in range(len(comm)):
        for j in range(i + 1, len(comm)):
            candidates.append(comm[i] + comm[j])
            candidates.append(comm[i] * comm[j])
    for m in candidates:
        if m.is_zero():
            continue
        if m.rank() < m.nrows:
            return True
    return False


@dataclass
class Block:
    """One H-simple summand of the quotient: its idempotent and subspace."""

    idempotent: tuple
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def h_simple_decompose(act: HAction) -> list[Block]:
    """Split a unital algebra with zero H-radical into H-stable ideal blocks.

    Groups primitive central idempotents by the reachability relation
    e_i ~ e_j when some image operator sends e_i A into a vector with a
    nonzero e_j A component; connected components give the blocks, each of
    which must pass the H-simplicity check.
    """
    a = act.algebra
    if a.dim == 0:
        return []
    if a.unit is None:
        raise NotUnitalError(
            "algebra has no multiplicative identity; the H-simple decomposition "
            "needs one (for a Hopf module algebra with zero H-radical a unit "
            "always exists, so its absence signals a non-Hopf generalized action)"
        )
    if h_radical(act).dim != 0:
        raise HpiError("h_simple_decompose requires a zero H-radical")
    idems = primitive_central_idempotents(a)
    k = len(idems)
    comps = [Subspace(a.dim, [a.mult(e, a.basis_vector(i)) for i in range(a.dim)]) for e in idems]
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    image = act.effective_image()
    for i in range(k):
        for op in image:
            for bvec in comps[i].basis:
                img = op.apply(bvec)
                for j in range(k):
                    if j != i and any(a.mult(idems[j], img)):
                        union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    blocks = []
    for root in sorted(groups):
        members = groups[root]
        e = a.zero_vec()
        for m in members:
            e = tuple(x + y for x, y in zip(e, idems[m]))
        space = Subspace(a.dim, [a.mult(e, a.basis_vector(i)) for i in range(a.dim)])
        blocks.append(Block(idempotent=e, space=space))
    # every block must be H-stable and H-simple
    for b in blocks:
        for op in image:
            for bvec in b.space.basis:
                if not b.space.contains_vector(op.apply(bvec)):
                    raise DecompositionFailureError(
                        "block is not stable under the operator image"
                    )
        sub_act = restrict_action(act, b.space, unit_vec=b.idempotent)
        if not is_h_simple(sub_act):
            raise DecompositionFailureError(
                f"a putative block of dimension {b.dim} is not H-simple; the "
                "decomposition hypothesis fails for this generalized action"
            )
    return blocks


def restrict_action(act: HAction, sub: Subspace, unit_vec=None) -> HAction:
    """The action restricted to an H-stable multiplicatively closed subspace."""
    a = act.algebra
    salg = subalgebra(a, sub, unit_vec=unit_vec)
    gens = []
    for g in act.generators:
        cols = []
        for bvec in sub.basis:
            img = g.matrix.apply(bvec)
            coords = sub.coords(img)
            if coords is None:
                raise HpiError("subspace is not stable under the action")
            cols.append(coords)
        gens.append(Generator(g.label, Matrix(list(zip(*cols))), g.expansion))
    out = HAction(salg, gens)
    ok, cert = verify_action(out)
    if not ok:
        raise ValidationError(f"restricted action violates the expansion law at {cert}")
    return out


@dataclass
class KappaData:
    """The multiplicative linear section of A -> A/J^H(A)."""

    b0: Subspace  # maximal semisimple subalgebra of A
    n_comp: Subspace  # bimodule complement of J^H inside J
    kappa: Matrix  # (dim A) x (dim Abar), section of pi
    b_bar: Subspace  # image of b0 in the quotient
    pi: Matrix  # (dim Abar) x (dim A)
    quotient_action: HAction
    jh: Subspace
    j: Subspace


def kappa_embedding(act: HAction) -> KappaData:
    """Build the linear section kappa with pi kappa = id that is
    multiplicative against the semisimple part on both sides.

    The complement N of J^H inside J is cut out by an equivariant
    projection for the left/right multiplications by the semisimple part;
    kappa inverts the quotient map on B0 + N.
    """
    a = act.algebra
    jh = h_radical(act)
    b0, lift, j = wedderburn_malcev(a)
    quo_act, pi, section = induced_quotient_action(act, jh)
    ops = []
    for bvec in b0.basis:
        ops.append(a.left_mult_matrix(bvec))
        ops.append(a.right_mult_matrix(bvec))
    # restrict operators to J (J is an ideal, hence stable)
    j_ops = []
    for op in ops:
        cols = [j.coords(op.apply(bv)) for bv in j.basis]
        if any(c is None for c in cols):
            raise HpiError("multiplication operators do not preserve the radical")
        j_ops.append(Matrix(list(zip(*cols))) if cols else Matrix([]))
    jh_in_j = Subspace(j.dim, [j.coords(v) for v in jh.basis]) if j.dim else Subspace.zero(0)
    proj = equivariant_projection(j_ops, jh_in_j, j.dim) if j.dim else Matrix([])
    n_vecs = []
    if j.dim:
        for coeffs in kernel(proj).basis:
            vec = [a.field.zero] * a.dim
            for c, bv in zip(coeffs, j.basis):
                if c:
                    vec = [x + c * y for x, y in zip(vec, bv)]
            n_vecs.append(tuple(vec))
    n_comp = Subspace(a.dim, n_vecs)
    v_basis = list(b0.basis) + list(n_comp.basis)
    vsp = Subspace(a.dim, v_basis)
    abar_dim = a.dim - jh.dim
    if vsp.dim != abar_dim:
        raise HpiError("section domain B0 + N does not complement the H-radical")
    # kappa: invert pi on span(v_basis); solve pi(sum c_k v_k) = e_i columnwise
    pi_m = pi.matrix
    pv = [pi_m.apply(v) for v in v_basis]
    sys = Matrix([[pv[k][r] for k in range(len(v_basis))] for r in range(abar_dim)])
    cols = []
    for i in range(abar_dim):
        target = tuple(_ONE if t == i else _ZERO for t in range(abar_dim))
        c = solve(sys, target)
        if c is None:
            raise HpiError("quotient map is not invertible on the section domain")
        x = [a.field.zero] * a.dim
        for ck, v in zip(c, v_basis):
            if ck:
                x = [p + ck * q for p, q in zip(x, v)]
        cols.append(tuple(x))
    kappa = Matrix(list(zip(*cols)))
    b_bar = Subspace(abar_dim, [pi(v) for v in b0.basis])
    data = KappaData(
        b0=b0,
        n_comp=n_comp,
        kappa=kappa,
        b_bar=b_bar,
        pi=pi_m,
        quotient_action=quo_act,
        jh=jh,
        j=j,
    )
    _assert_kappa_contract(act, data)
    return data


def _assert_kappa_contract(act: HAction, data: KappaData):
    a = act.algebra
    abar = data.quotient_action.algebra
    for i in range(abar.dim):
        ei = abar.basis_vector(i)
        assert data.pi.apply(data.kappa.apply(ei)) == ei, "pi kappa != id"
    for bvec in data.b_bar.basis:
        kb = data.kappa.apply(bvec)
        for i in range(abar.dim):
            ei = abar.basis_vector(i)
            ka = data.kappa.apply(ei)
            assert data.kappa.apply(abar.mult(tuple(bvec), ei)) == a.mult(kb, ka), (
                "kappa(b a) != kappa(b) kappa(a)"
            )
            assert data.kappa.apply(abar.mult(ei, tuple(bvec))) == a.mult(ka, kb), (
                "kappa(a b) != kappa(a) kappa(b)"
            )


@dataclass
class DecompReport:
    """Full structural output of the decomposition pipeline."""

    j: Subspace
    jh: Subspace
    quotient_action: HAction
    blocks: list[Block]
    kappa_data: KappaData
    d: int
    witness: tuple[int, ...]


def exponent_candidate(act: HAction, allow_repeats: bool = False):
    """The structural exponent: the largest total block dimension over
    sequences of pairwise-distinct blocks whose operator-image/
    multiplication chain survives.

    Returns (d, witness) with the lexicographically least maximizing index
    sequence (0-based block indices)."""
    data = kappa_embedding(act)
    blocks = h_simple_decompose(data.quotient_action)
    return _exponent_search(act, data, blocks, allow_repeats)


def _hk_block(act: HAction, data: KappaData, block: Block) -> Subspace:
    a = act.algebra
    vecs = []
    for op in act.effective_image():
        for bvec in block.space.basis:
            vecs.append(op.apply(data.kappa.apply(bvec)))
    return Subspace(a.dim, vecs)


def _chain_step(act: HAction, s: Subspace, target: Subspace) -> Subspace:
    """((s * A+) * target) inside A."""
    a = act.algebra
    # s * A+ = s + s*A
    sa = list(s.basis)
    for bvec in s.basis:
        for i in range(a.dim):
            sa.append(a.mult(bvec, a.basis_vector(i)))
    sa_space = Subspace(a.dim, sa)
    out = []
    for u in sa_space.basis:
        for v in target.basis:
            out.append(a.mult(u, v))
    return Subspace(a.dim, out)


def _exponent_search(act: HAction, data: KappaData, blocks: list[Block], allow_repeats: bool):
    q = len(blocks)
    if q == 0:
        return 0, ()
    hk = [_hk_block(act, data, b) for b in blocks]
    best = (-1, ())
    max_len = q

    def dfs(seq: tuple[int, ...], chain: Subspace, total: int):
        nonlocal best
        if chain.dim == 0:
            return
        if total > best[0]:
            best = (total, seq)
        if len(seq) >= max_len:
            return
        for nxt in range(q):
            if not allow_repeats and nxt in seq:
                continue
            dfs(seq + (nxt,), _chain_step(act, chain, hk[nxt]), total + blocks[nxt].dim)

    for start in range(q):
        dfs((start,), hk[start], blocks[start].dim)
    assert best[0] >= max(b.dim for b in blocks)
    return best


def decompose(act: HAction, allow_repeats: bool = False) -> DecompReport:
    """Run the full pipeline: radicals, quotient, blocks, section, exponent."""
    data = kappa_embedding(act)
    blocks = h_simple_decompose(data.quotient_action)
    d, witness = _exponent_search(act, data, blocks, allow_repeats)
    return DecompReport(
        j=data.j,
        jh=data.jh,
        quotient_action=data.quotient_action,
        blocks=blocks,
        kappa_data=data,
        d=d,
        witness=witness,
    )
