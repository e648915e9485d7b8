import random
from fractions import Fraction
from itertools import permutations

import pytest

from hpi.algebra import Grading, StructAlgebra
from hpi.errors import NotUnitalError, ResourceCapError
from hpi.hopfzoo import grading_dual_action, load_catalog, trivial_action
from hpi.linalg import Matrix
from hpi.pi import (
    HMonomial,
    HPolynomial,
    alternate,
    codimension,
    eval_tensor,
    evaluate,
    exponent_report,
    graded_codimension,
    is_h_identity,
    property_star_witness,
)
from conftest import dual_numbers, strict_upper_3, zero_mult_algebra
from oracles import naive_codimension

Z2 = (("0", "0", "0"), ("0", "1", "1"), ("1", "0", "1"), ("1", "1", "0"))


def _perm_sign(p):
    p = list(p)
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, l = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            l += 1
        if l % 2 == 0:
            s = -s
    return s


def standard_polynomial(n):
    terms = {}
    for p in permutations(range(n)):
        terms[HMonomial(n, p, (0,) * n)] = Fraction(_perm_sign(p))
    return HPolynomial(n, terms)


def commutator():
    return HPolynomial.monomial(2, (0, 1), (0, 0)) - HPolynomial.monomial(2, (1, 0), (0, 0))


def test_evaluate_examples(ut2, m2):
    act = trivial_action(ut2)
    mono = HPolynomial.monomial(2, (0, 1), (0, 0))
    # x1 x2 at (e11, e12) -> e12
    assert evaluate(mono, act, [ut2.basis_vector(0), ut2.basis_vector(2)]) == ut2.basis_vector(2)
    actm = trivial_action(m2)
    # commutator at commuting diagonal units
    val = evaluate(commutator(), actm, [m2.basis_vector(0), m2.basis_vector(3)])
    assert not any(val)


def test_evaluate_sweedler_v_label():
    act = load_catalog("sweedler-dual-numbers").action
    a = act.algebra
    image = act.effective_image()
    v = act.operator("v")
    lab = next(i for i, m in enumerate(image) if m == v)
    poly = HPolynomial.monomial(1, (0,), (lab,))
    assert evaluate(poly, act, [a.basis_vector(1)]) == a.basis_vector(0)  # v(x) = 1
    assert not is_h_identity(poly, act)


def test_commutator_is_identity_on_commutative(ff):
    act = trivial_action(ff)
    assert is_h_identity(commutator(), act)
    # soundness spot-check on 100 random exact points
    rng = random.Random(99)
    for _ in range(100):
        pts = [
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2))
            for _ in range(2)
        ]
        assert not any(evaluate(commutator(), act, pts))


def test_standard_s4_is_identity_on_m2(m2):
    act = trivial_action(m2)
    s4 = standard_polynomial(4)
    assert is_h_identity(s4, act)
    assert not is_h_identity(standard_polynomial(3), act)
    rng = random.Random(5)
    for _ in range(100):
        pts = [
            tuple(Fraction(rng.randint(-4, 4)) for _ in range(4))
            for _ in range(4)
        ]
        assert not any(evaluate(s4, act, pts))


def test_eval_tensor_shape(ut2):
    act = trivial_action(ut2)
    t = eval_tensor(HPolynomial.monomial(2, (0, 1), (0, 0)), act)
    assert t.n == 2 and t.dim == 3
    dense = t.dense()
    assert len(dense) == 3 ** 3
    assert sum(1 for x in dense if x) == len(t.data)


def test_codimension_one_dimensional_field():
    one = StructAlgebra([[[Fraction(1)]]], unit=[1])
    act = trivial_action(one)
    assert [codimension(act, n) for n in range(1, 6)] == [1, 1, 1, 1, 1]


def test_codimension_nilpotent_vanishes():
    a = zero_mult_algebra(1)
    act = trivial_action(a)
    assert codimension(act, 1) == 1
    assert codimension(act, 2) == 0
    assert codimension(act, 3) == 0
    s3 = strict_upper_3()
    act3 = trivial_action(s3)
    assert codimension(act3, 2) > 0
    assert codimension(act3, 3) == 0
    assert codimension(act3, 4) == 0


def test_codimension_ut2_closed_form(ut2):
    act = trivial_action(ut2)
    values = [codimension(act, n) for n in range(1, 6)]
    assert values == [1, 2, 6, 18, 50]
    assert values == [2 ** (n - 1) * (n - 2) + 2 for n in range(1, 6)]


@pytest.mark.parametrize(
    "name,nmax",
    [("f-trivial", 4), ("f2-trivial", 4), ("ut2-trivial", 4), ("m2-trivial", 3)],
)
def test_codimension_matches_naive_oracle(name, nmax):
    act = load_catalog(name).action
    ops = [[list(r) for r in m.rows] for m in act.effective_image()]
    table = [[list(cell) for cell in row] for row in act.algebra.table]
    for n in range(1, nmax + 1):
        assert codimension(act, n) == naive_codimension(table, ops, n)


def test_codimension_sweedler_matches_naive_oracle():
    act = load_catalog("sweedler-dual-numbers").action
    ops = [[list(r) for r in m.rows] for m in act.effective_image()]
    table = [[list(cell) for cell in row] for row in act.algebra.table]
    for n in range(1, 4):
        assert codimension(act, n) == naive_codimension(table, ops, n)


def test_codimension_column_bound():
    for name in ("ut2-trivial", "sweedler-dual-numbers", "m2-z2"):
        act = load_catalog(name).action
        dim = act.algebra.dim
        for n in (1, 2, 3):
            assert codimension(act, n) <= dim ** (n + 1)


def test_codimension_invariant_under_algebra_basis_change():
    act = load_catalog("sweedler-dual-numbers").action
    a = act.algebra
    rng = random.Random(17)
    p = Matrix([[1, 2], [1, 3]])  # invertible over Q
    pinv = Matrix([[3, -2], [-1, 1]])
    assert p * pinv == Matrix.identity(2)
    table = []
    for i in range(2):
        row = []
        for j in range(2):
            prod = a.mult(p.apply(a.basis_vector(i)), p.apply(a.basis_vector(j)))
            row.append(list(pinv.apply(prod)))
        table.append(row)
    from hpi.haction import Generator, HAction, verify_action

    moved = StructAlgebra(table, unit=pinv.apply(a.unit))
    gens = [
        Generator(g.label, pinv * g.matrix * p, g.expansion) for g in act.generators
    ]
    act2 = HAction(moved, gens)
    ok, cert = verify_action(act2)
    assert ok, cert
    for n in (1, 2, 3):
        assert codimension(act2, n) == codimension(act, n)


def test_codimension_trivial_action_equals_ordinary(ut2, m2):
    # with H~ spanned by the identity the monomials are plain permutations
    for alg, nmax in ((ut2, 4), (m2, 3)):
        act = trivial_action(alg)
        table = [[list(cell) for cell in row] for row in alg.table]
        idm = [[Fraction(1) if i == j else Fraction(0) for j in range(alg.dim)] for i in range(alg.dim)]
        for n in range(1, nmax + 1):
            assert codimension(act, n) == naive_codimension(table, [idm], n)


def test_graded_codimension_examples(m2, ut2):
    g_m2 = Grading(labels=("0", "1", "1", "0"), product=Z2)
    act = grading_dual_action(m2, g_m2)
    assert graded_codimension(m2, g_m2, 2) == codimension(act, 2)
    g_ut2 = Grading(labels=("0", "0", "1"), product=Z2)
    act_u = grading_dual_action(ut2, g_ut2)
    for n in (1, 2, 3):
        assert graded_codimension(ut2, g_ut2, n) == codimension(act_u, n)


def test_graded_codimension_trivial_grading_is_ordinary(ut2):
    g = Grading(labels=("t", "t", "t"), product=(("t", "t", "t"),))
    for n in (1, 2, 3):
        assert graded_codimension(ut2, g, n) == codimension(trivial_action(ut2), n)


def test_alternate_examples():
    p = HPolynomial.monomial(2, (0, 1), (0, 0))
    alt = alternate(p, {0, 1})
    expected = p - HPolynomial.monomial(2, (1, 0), (0, 0))
    assert alt == expected


def test_alternate_kills_repeats(ut2):
    act = trivial_action(ut2)
    rng = random.Random(31)
    p = HPolynomial.monomial(3, (0, 2, 1), (0, 0, 0))
    alt = alternate(p, {0, 1})
    same = ut2.basis_vector(0)
    val = evaluate(alt, act, [same, same, ut2.basis_vector(2)])
    assert not any(val)


def _random_poly(rng, n, nlabels):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        perm = list(range(n))
        rng.shuffle(perm)
        labels = tuple(rng.randrange(nlabels) for _ in range(n))
        terms[HMonomial(n, tuple(perm), labels)] = Fraction(rng.randint(-3, 3))
    return HPolynomial(n, terms)


def test_alternation_invariants_on_100_random_polynomials():
    act = load_catalog("sweedler-dual-numbers").action
    a = act.algebra
    h = len(act.effective_image())
    rng = random.Random(202)
    checked = 0
    while checked < 100:
        n = rng.randint(2, 4)
        poly = _random_poly(rng, n, h)
        if poly.is_zero():
            continue
        size = rng.randint(2, min(3, n))
        varset = set(rng.sample(range(n), size))
        alt = alternate(poly, varset)
        # factorial idempotence
        import math

        assert alternate(alt, varset) == alt.scale(math.factorial(size))
        # repeat-kill under evaluation
        vs = sorted(varset)
        pts = [
            tuple(Fraction(rng.randint(-3, 3)) for _ in range(a.dim)) for _ in range(n)
        ]
        pts[vs[1]] = pts[vs[0]]
        assert not any(evaluate(alt, act, pts))
        checked += 1


def test_property_star_one_dimensional():
    one = StructAlgebra([[[Fraction(1)]]], unit=[1])
    act = trivial_action(one)
    for k in (1, 2):
        w = property_star_witness(act, k, 0)
        assert w is not None
        assert w.poly.n == 2 * k
        assert any(w.value)


def test_property_star_sweedler():
    act = load_catalog("sweedler-dual-numbers").action
    w = property_star_witness(act, 1, 1)
    assert w is not None
    assert w.poly.n == 4 and w.n1 == 0
    # the witness is genuinely alternating in both blocks: repeats vanish
    a = act.algebra
    pts = [a.basis_vector(0), a.basis_vector(0), a.basis_vector(0), a.basis_vector(1)]
    assert not any(evaluate(w.poly, act, pts))


def test_property_star_needs_unit():
    act = trivial_action(zero_mult_algebra(2))
    with pytest.raises(NotUnitalError):
        property_star_witness(act, 1, 0)


def test_exponent_report_ut2(ut2):
    act = trivial_action(ut2)
    rep = exponent_report(act, 5)
    assert rep.codims == [1, 2, 6, 18, 50]
    assert rep.d == 2 and not rep.nilpotent
    # exact bound c_n <= d^n (dim A)^2
    for n, c in zip(rep.n_values, rep.codims):
        assert c <= rep.d ** n * ut2.dim ** 2


def test_exponent_report_one_dim():
    one = StructAlgebra([[[Fraction(1)]]], unit=[1])
    rep = exponent_report(trivial_action(one), 4)
    assert rep.codims == [1, 1, 1, 1] and rep.d == 1
    assert all(abs(r - 1.0) < 1e-12 for r in rep.roots)


def test_exponent_report_nilpotent_suppresses_d():
    rep = exponent_report(trivial_action(strict_upper_3()), 4)
    assert rep.nilpotent and rep.d is None and rep.nilpotency_index == 3
    assert rep.codims[2:] == [0, 0]


def test_resource_cap():
    act = load_catalog("m2-trivial").action
    with pytest.raises(ResourceCapError) as exc:
        codimension(act, 12, row_cap=1000)
    assert exc.value.estimate > 1000
    g = Grading(labels=("0", "1", "1", "0"), product=Z2)
    with pytest.raises(ResourceCapError):
        graded_codimension(load_catalog("m2-trivial").algebra, g, 12, row_cap=1000)
    with pytest.raises(ResourceCapError):
        property_star_witness(act, 3, 0, row_cap=1000)
