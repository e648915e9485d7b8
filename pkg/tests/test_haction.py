from fractions import Fraction

import pytest

from hpi.algebra import jacobson_radical
from hpi.errors import (
    DecompositionFailureError,
    NotUnitalError,
    RelationError,
    SchemaError,
)
from hpi.haction import (
    ExpansionTerm,
    Generator,
    HAction,
    decompose,
    exponent_candidate,
    h_radical,
    h_simple_decompose,
    induced_quotient_action,
    is_h_simple,
    kappa_embedding,
    verify_action,
)
from hpi.hopfzoo import (
    grading_dual_action,
    group_action,
    load_catalog,
    taft_action,
    trivial_action,
)
from hpi.algebra import Grading, StructAlgebra
from hpi.linalg import Matrix, Subspace, span
from conftest import dual_numbers, zero_mult_algebra


def test_trivial_action_verifies(m2):
    act = trivial_action(m2)
    ok, cert = verify_action(act)
    assert ok and cert is None
    assert len(act.effective_image()) == 1


def test_sweedler_action_hand_expansion():
    """All four basis-pair instances of the v-expansion, expanded by hand:

    with a, b in {1, x}, c(1) = 1, c(x) = -x, v(1) = 0, v(x) = 1:
      v(1*1) = 0  and (c1)(v1) + (v1)*1 = 0
      v(1*x) = 1  and (c1)(vx) + (v1)*x = 1*1 + 0   = 1
      v(x*1) = 1  and (cx)(v1) + (vx)*1 = 0   + 1*1 = 1
      v(x*x) = 0  and (cx)(vx) + (vx)*x = -x*1 + 1*x = 0
    """
    a = dual_numbers()
    act = load_catalog("sweedler-dual-numbers").action
    one, x = a.basis_vector(0), a.basis_vector(1)
    c, v = act.operator("c"), act.operator("v")

    def vexp(p, q):
        return tuple(
            r + s for r, s in zip(a.mult(c.apply(p), v.apply(q)), a.mult(v.apply(p), q))
        )

    for p in (one, x):
        for q in (one, x):
            assert v.apply(a.mult(p, q)) == vexp(p, q)
    ok, _ = verify_action(act)
    assert ok


def test_untwisted_leibniz_fails_at_x_x():
    a = dual_numbers()
    # v with the expansion 1 (x) v + v (x) 1 is NOT an action: at (x, x)
    # the right side is 2x while v(x^2) = 0
    gens = [
        Generator(
            "v",
            Matrix([[0, 1], [0, 0]]),
            (
                ExpansionTerm(delta=((), ("v",))),
                ExpansionTerm(delta=(("v",), ())),
            ),
        )
    ]
    act = HAction(a, gens)
    ok, cert = verify_action(act)
    assert not ok
    assert cert == ("v", 1, 1)


def test_hopf_axiom_relation_failure():
    a = dual_numbers()
    # rho(c) = id with zeta = -1 forces rho(v) rho(c) = -rho(c) rho(v) to fail
    with pytest.raises(RelationError) as exc:
        taft_action(a, Matrix.identity(2), Matrix([[0, 1], [0, 0]]), 2, Fraction(-1))
    assert "v c = zeta c v" in exc.value.relation


def test_schema_error_on_unknown_word():
    a = dual_numbers()
    gens = [
        Generator("g", Matrix.identity(2), (ExpansionTerm(delta=(("nope",), ())),))
    ]
    act = HAction(a, gens)
    with pytest.raises(SchemaError):
        verify_action(act)


def test_h_radical_trivial_equals_j(ut2):
    act = trivial_action(ut2)
    assert h_radical(act) == jacobson_radical(ut2)


def test_h_radical_sweedler_vanishes():
    act = load_catalog("sweedler-dual-numbers").action
    a = act.algebra
    assert jacobson_radical(a).dim == 1
    assert h_radical(act).dim == 0


def test_h_radical_nilpotent_is_everything():
    a = zero_mult_algebra(2)
    act = trivial_action(a)
    assert h_radical(act) == a.full_space()


@pytest.mark.parametrize(
    "name",
    [
        "sweedler-dual-numbers",
        "ut2-trivial",
        "ut3-trivial",
        "m2-trivial",
        "m2-z2",
        "ut2-z2",
        "f2-swap",
        "taft9-dual-cubed",
    ],
)
def test_h_radical_invariants(name):
    act = load_catalog(name).action
    a = act.algebra
    j = jacobson_radical(a)
    jh = h_radical(act)
    assert j.contains(jh)
    from hpi.algebra import is_nilpotent, multiply_subspaces

    nil, _ = is_nilpotent(a, jh)
    assert nil
    full = a.full_space()
    for op in act.effective_image():
        for b in jh.basis:
            assert jh.contains_vector(op.apply(b))
    assert jh.contains(multiply_subspaces(a, jh, full))
    assert jh.contains(multiply_subspaces(a, full, jh))
    quo_act, _, _ = induced_quotient_action(act, jh)
    assert h_radical(quo_act).dim == 0


def test_is_h_simple_examples(m2, ut2):
    assert is_h_simple(trivial_action(m2))
    assert not is_h_simple(trivial_action(ut2))
    assert is_h_simple(load_catalog("sweedler-dual-numbers").action)
    assert not is_h_simple(trivial_action(zero_mult_algebra(1)))  # A^2 = 0


def test_h_simple_decompose_examples(ff):
    blocks = h_simple_decompose(trivial_action(ff))
    assert [b.dim for b in blocks] == [1, 1]
    swap = group_action(ff, [(Matrix([[0, 1], [1, 0]]), "auto")])
    blocks = h_simple_decompose(swap)
    assert [b.dim for b in blocks] == [2]
    sw = load_catalog("sweedler-dual-numbers").action
    blocks = h_simple_decompose(sw)
    assert len(blocks) == 1 and blocks[0].dim == 2


def test_h_simple_decompose_requires_unit():
    # e^2 = e, en = n, ne = n^2 = 0 has no two-sided unit
    t = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][0] = 1
    t[0][1][1] = 1
    a = StructAlgebra(t)
    with pytest.raises(NotUnitalError):
        h_simple_decompose(trivial_action(a))


def test_h_simple_decompose_failure_on_semilattice_grading():
    # F x F graded by the two-element semilattice {g, h}, gh = hg = hh = h:
    # in the basis b0 = (1,1), b1 = (1,0) the dual action has a stable
    # one-dimensional ideal inside the single putative block
    t = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][0] = 1
    t[0][1][1] = 1
    t[1][0][1] = 1
    t[1][1][1] = 1
    a = StructAlgebra(t, unit=[1, 0])
    grading = Grading(
        labels=("g", "h"),
        product=(("g", "g", "g"), ("g", "h", "h"), ("h", "g", "h"), ("h", "h", "h")),
    )
    act = grading_dual_action(a, grading)
    assert h_radical(act).dim == 0
    with pytest.raises(DecompositionFailureError):
        h_simple_decompose(act)


def test_blocks_are_stable_and_simple():
    for name in ("f2-swap", "m2-z2", "ut2-trivial", "taft9-dual-cubed"):
        act = load_catalog(name).action
        rep = decompose(act)
        abar = rep.quotient_action.algebra
        total = Subspace.zero(abar.dim)
        for b in rep.blocks:
            total = total + b.space
            for op in rep.quotient_action.effective_image():
                for v in b.space.basis:
                    assert b.space.contains_vector(op.apply(v))
        assert total == Subspace.full(abar.dim)


def test_kappa_trivial_h_is_wedderburn_section(ut2):
    data = kappa_embedding(trivial_action(ut2))
    assert data.jh == data.j  # trivial action: the whole radical is stable
    assert data.n_comp.dim == 0
    assert data.b_bar == Subspace.full(2)


def test_kappa_identity_when_radical_stable_part_vanishes():
    act = load_catalog("sweedler-dual-numbers").action
    data = kappa_embedding(act)
    assert data.jh.dim == 0
    # quotient is canonically A itself; kappa is the identity matrix
    assert data.kappa == Matrix.identity(2)


@pytest.mark.parametrize(
    "name",
    [
        "f-trivial",
        "f2-trivial",
        "f2-swap",
        "ut2-trivial",
        "ut3-trivial",
        "m2-trivial",
        "m2-z2",
        "ut2-z2",
        "sweedler-dual-numbers",
        "taft9-dual-cubed",
    ],
)
def test_kappa_contract_all_catalog(name):
    act = load_catalog(name).action
    data = kappa_embedding(act)  # postconditions asserted internally
    abar = data.quotient_action.algebra
    a = act.algebra
    for i in range(abar.dim):
        ei = abar.basis_vector(i)
        assert data.pi.apply(data.kappa.apply(ei)) == ei
    for bvec in data.b_bar.basis:
        kb = data.kappa.apply(bvec)
        for i in range(abar.dim):
            ei = abar.basis_vector(i)
            ka = data.kappa.apply(ei)
            assert data.kappa.apply(abar.mult(tuple(bvec), ei)) == a.mult(kb, ka)
            assert data.kappa.apply(abar.mult(ei, tuple(bvec))) == a.mult(ka, kb)


def test_exponent_examples(ut2, ff, m2):
    d, wit = exponent_candidate(trivial_action(ut2))
    assert d == 2 and len(wit) == 2
    d, _ = exponent_candidate(trivial_action(ff))
    assert d == 1
    d, _ = exponent_candidate(group_action(ff, [(Matrix([[0, 1], [1, 0]]), "auto")]))
    assert d == 2
    d, _ = exponent_candidate(trivial_action(m2))
    assert d == 4


def test_exponent_witness_chain_ut2(ut2):
    rep = decompose(trivial_action(ut2))
    assert rep.d == 2
    # replay the witness chain and check it survives through e12
    data = rep.kappa_data
    blocks = rep.blocks
    from hpi.haction import _chain_step, _hk_block

    act = trivial_action(ut2)
    chain = _hk_block(act, data, blocks[rep.witness[0]])
    for idx in rep.witness[1:]:
        chain = _chain_step(act, chain, _hk_block(act, data, blocks[idx]))
    assert chain.dim > 0
    assert chain.contains_vector((0, 0, 1))  # e12 survives


def test_exponent_bounds_all_catalog():
    for name in (
        "f-trivial",
        "f2-trivial",
        "f2-swap",
        "ut2-trivial",
        "ut3-trivial",
        "m2-trivial",
        "m2-z2",
        "ut2-z2",
        "sweedler-dual-numbers",
        "taft9-dual-cubed",
    ):
        act = load_catalog(name).action
        rep = decompose(act)
        if rep.blocks:
            dims = [b.dim for b in rep.blocks]
            assert max(dims) <= rep.d <= rep.quotient_action.algebra.dim


def test_exponent_invariant_under_basis_permutation():
    # Sweedler action written on the reversed basis (x, 1)
    a = dual_numbers()
    p = Matrix([[0, 1], [1, 0]])
    table = []
    for i in range(2):
        row = []
        for j in range(2):
            prod = a.mult(p.apply(a.basis_vector(i)), p.apply(a.basis_vector(j)))
            row.append(list(p.apply(prod)))
        table.append(row)
    swapped = StructAlgebra(table, unit=p.apply(a.unit))
    pc = p * Matrix([[1, 0], [0, -1]]) * p
    pv = p * Matrix([[0, 1], [0, 0]]) * p
    act = taft_action(swapped, pc, pv, 2, Fraction(-1))
    d, _ = exponent_candidate(act)
    assert d == 2


def test_exponent_invariant_under_generator_change():
    # add the redundant generator w = cv with its induced expansion
    # (m = 2 so c^2 = 1): w(ab) = (1 a)(w b) + (w a)(c b)
    a = dual_numbers()
    base = load_catalog("sweedler-dual-numbers").action
    pc, pv = base.operator("c"), base.operator("v")
    gens = list(base.generators) + [
        Generator(
            "w",
            pc * pv,
            (
                ExpansionTerm(delta=((), ("w",))),
                ExpansionTerm(delta=(("w",), ("c",))),
            ),
        )
    ]
    act = HAction(a, gens)
    ok, cert = verify_action(act)
    assert ok, cert
    assert len(act.effective_image()) == len(base.effective_image())
    d, _ = exponent_candidate(act)
    assert d == 2


def test_exponent_allow_repeats_flag(ut2):
    d, wit = exponent_candidate(trivial_action(ut2), allow_repeats=True)
    assert d == 2  # repeating a one-dimensional idempotent block dies (e11 A+ e11 ... adds nothing beyond bound by length)


def test_decompose_nilpotent_quotient_is_empty():
    a = zero_mult_algebra(2)
    rep = decompose(trivial_action(a))
    assert rep.jh == a.full_space()
    assert rep.blocks == [] and rep.d == 0 and rep.witness == ()
