"""Multilinear H-polynomials: evaluation, identities, codimensions.

A degree-n monomial is a pair (perm, labels): position j of the word
carries variable perm[j] and operator label labels[j] into the effective
image basis of the action. The codimension of degree n is the exact rank
of the family of evaluation tensors of all n! * h^n monomials, streamed
as sparse rows into the rank accumulator (column space has dimension
(dim A)^(n+1), rows are factorially many).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .algebra import Grading, StructAlgebra, is_nilpotent
from .errors import DimensionMismatchError, NotUnitalError, ResourceCapError
from .haction import HAction, decompose
from .linalg import RankAccumulator

_ZERO = Fraction(0)

DEFAULT_ROW_CAP = 2_000_000
DEFAULT_TIME_CAP = 600.0


class _Budget:
    """Wall-clock guard checked periodically inside streaming loops."""

    __slots__ = ("deadline", "cap", "counter")

    def __init__(self, time_cap: float | None):
        self.cap = DEFAULT_TIME_CAP if time_cap is None else time_cap
        self.deadline = time.monotonic() + self.cap
        self.counter = 0

    def tick(self):
        self.counter += 1
        if self.counter % 512 == 0 and time.monotonic() > self.deadline:
            raise ResourceCapError(
                f"wall-clock budget of {self.cap:.0f}s exhausted",
                estimate=self.counter,
                cap=int(self.cap),
            )


@dataclass(frozen=True)
class HMonomial:
    """x^{h_{l_1}}_{perm[1]} ... x^{h_{l_n}}_{perm[n]} with 0-based data."""

    n: int
    perm: tuple[int, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(self.n)) or len(self.labels) != self.n:
            raise DimensionMismatchError("malformed monomial data")


class HPolynomial:
    """Finitely supported scalar combination of degree-n monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms: dict[HMonomial, object] = {}
        if terms:
            for mono, c in terms.items():
                if mono.n != n:
                    raise DimensionMismatchError("mixed degrees in one polynomial")
                if c:
                    self.terms[mono] = self.terms.get(mono, _ZERO) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @staticmethod
    def monomial(n: int, perm, labels, coeff=Fraction(1)) -> "HPolynomial":
        return HPolynomial(n, {HMonomial(n, tuple(perm), tuple(labels)): coeff})

    def __add__(self, other: "HPolynomial") -> "HPolynomial":
        if other.n != self.n:
            raise DimensionMismatchError("mixed degrees")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) + c
        return HPolynomial(self.n, out)

    def scale(self, c) -> "HPolynomial":
        return HPolynomial(self.n, {m: v * c for m, v in self.terms.items()})

    def __sub__(self, other: "HPolynomial") -> "HPolynomial":
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, HPolynomial) and self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"HPolynomial(n={self.n}, {len(self.terms)} terms)"


def evaluate(poly: HPolynomial, act: HAction, points) -> tuple:
    """Value at the given point vectors (one per variable, in order)."""
    a = act.algebra
    if len(points) != poly.n:
        raise DimensionMismatchError("point count does not match the degree")
    image = act.effective_image()
    acc = a.zero_vec()
    for mono, coeff in poly.terms.items():
        val = None
        for j in range(poly.n):
            factor = image[mono.labels[j]].apply(points[mono.perm[j]])
            val = factor if val is None else a.mult(val, factor)
        acc = tuple(x + coeff * y for x, y in zip(acc, val))
    return acc


@dataclass
class EvalTensor:
    """Sparse encoding of the multilinear map A^n -> A on basis tuples.

    Keys are flat indices ((t_1 dim + t_2) dim + ...) dim + k for the
    basis assignment t and output coordinate k.
    """

    n: int
    dim: int
    data: dict

    def is_zero(self) -> bool:
        return not self.data

    def dense(self) -> list:
        out = [_ZERO] * (self.dim ** (self.n + 1))
        for k, v in self.data.items():
            out[k] = v
        return out


def _sparse_images(act: HAction):
    a = act.algebra
    image = act.effective_image()
    out = []
    for m in image:
        per_basis = []
        for i in range(a.dim):
            col = {k: m.rows[k][i] for k in range(a.dim) if m.rows[k][i]}
            per_basis.append(col)
        out.append(per_basis)
    return out


def _monomial_rows(act: HAction, mono: HMonomial, images, allowed=None):
    """Yield (tuple_flat, output dict) contributions of one monomial.

    DFS over word positions with sparse partial products; zero partials
    prune whole subtrees. ``allowed`` optionally restricts the basis
    indices available to each variable."""
    a = act.algebra
    dim = a.dim
    n = mono.n
    row: dict = {}

    def dfs(pos: int, flat_prefix: dict, partial: dict | None):
        if pos == n:
            base = 0
            for var in range(n):
                base = base * dim + flat_prefix[var]
            base *= dim
            for k, v in partial.items():
                key = base + k
                cur = row.get(key)
                nv = v if cur is None else cur + v
                if nv:
                    row[key] = nv
                elif cur is not None:
                    del row[key]
            return
        var = mono.perm[pos]
        choices = range(dim) if allowed is None else allowed[var]
        for i in choices:
            vec = images[mono.labels[pos]][i]
            if partial is None:
                nxt = dict(vec)
            else:
                nxt = a.mult_sparse(partial, vec)
            if not nxt:
                continue
            flat_prefix[var] = i
            dfs(pos + 1, flat_prefix, nxt)
            del flat_prefix[var]

    dfs(0, {}, None)
    return row


def eval_tensor(poly: HPolynomial, act: HAction) -> EvalTensor:
    a = act.algebra
    images = _sparse_images(act)
    data: dict = {}
    for mono, coeff in poly.terms.items():
        row = _monomial_rows(act, mono, images)
        for k, v in row.items():
            cur = data.get(k)
            nv = coeff * v if cur is None else cur + coeff * v
            if nv:
                data[k] = nv
            elif cur is not None:
                del data[k]
    return EvalTensor(poly.n, a.dim, data)


def is_h_identity(poly: HPolynomial, act: HAction) -> bool:
    return eval_tensor(poly, act).is_zero()


def _check_cap(estimate: int, row_cap: int | None):
    cap = DEFAULT_ROW_CAP if row_cap is None else row_cap
    if estimate > cap:
        raise ResourceCapError(
            f"estimated {estimate} streamed rows exceed the cap {cap}",
            estimate=estimate,
            cap=cap,
        )


def codimension(
    act: HAction, n: int, row_cap: int | None = None, time_cap: float | None = None
) -> int:
    """Exact rank of all monomial evaluation tensors at degree n."""
    if n < 1:
        raise DimensionMismatchError("degree must be at least 1")
    h = len(act.effective_image())
    _check_cap(factorial(n) * h ** n, row_cap)
    budget = _Budget(time_cap)
    images = _sparse_images(act)
    acc = RankAccumulator()
    for perm in permutations(range(n)):
        for labels in product(range(h), repeat=n):
            budget.tick()
            mono = HMonomial(n, perm, labels)
            row = _monomial_rows(act, mono, images)
            if row:
                acc.add_row(row)
    return acc.rank


def graded_codimension(
    a: StructAlgebra,
    grading: Grading,
    n: int,
    row_cap: int | None = None,
    time_cap: float | None = None,
) -> int:
    """Codimension of multilinear graded identities at degree n.

    Monomials carry a component label per position; each variable may only
    be evaluated at basis vectors of the component its label names. The
    joint rank over all label vectors equals the graded codimension since
    distinct variable-degree signatures occupy disjoint column blocks.
    """
    from .algebra import validate_grading

    validate_grading(a, grading)
    support = grading.support
    _check_cap(factorial(n) * len(support) ** n, row_cap)
    budget = _Budget(time_cap)
    comp = {t: grading.component_indices(t) for t in support}
    # graded "action": projections are identity on their component
    images = [
        [({i: a.field.one} if grading.labels[i] == t else {}) for i in range(a.dim)]
        for t in support
    ]
    acc = RankAccumulator()

    for perm in permutations(range(n)):
        for labels in product(range(len(support)), repeat=n):
            budget.tick()
            allowed = [None] * n
            ok = True
            for pos in range(n):
                var = perm[pos]
                idxs = comp[support[labels[pos]]]
                if not idxs:
                    ok = False
                    break
                allowed[var] = idxs
            if not ok:
                continue
            mono = HMonomial(n, perm, labels)
            row = _graded_row(a, mono, allowed)
            if row:
                acc.add_row(row)
    return acc.rank


def _graded_row(a: StructAlgebra, mono: HMonomial, allowed):
    dim = a.dim
    n = mono.n
    row: dict = {}

    def dfs(pos, flat_prefix, partial):
        if pos == n:
            base = 0
            for var in range(n):
                base = base * dim + flat_prefix[var]
            base *= dim
            for k, v in partial.items():
                key = base + k
                cur = row.get(key)
                nv = v if cur is None else cur + v
                if nv:
                    row[key] = nv
                elif cur is not None:
                    del row[key]
            return
        var = mono.perm[pos]
        for i in allowed[var]:
            vec = {i: a.field.one}
            nxt = dict(vec) if partial is None else a.mult_sparse(partial, vec)
            if not nxt:
                continue
            flat_prefix[var] = i
            dfs(pos + 1, flat_prefix, nxt)
            del flat_prefix[var]

    dfs(0, {}, None)
    return row


def _perm_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternate(poly: HPolynomial, varset) -> HPolynomial:
    """Signed sum over all permutations of the given variable indices."""
    vs = sorted(varset)
    if any(v < 0 or v >= poly.n for v in vs):
        raise DimensionMismatchError("alternation set outside the variables")
    out: dict = {}
    for tau in permutations(range(len(vs))):
        sign = _perm_sign(tau)
        mapping = {vs[i]: vs[tau[i]] for i in range(len(vs))}
        for mono, coeff in poly.terms.items():
            new_perm = tuple(mapping.get(v, v) for v in mono.perm)
            key = HMonomial(poly.n, new_perm, mono.labels)
            cc = coeff if sign == 1 else -coeff
            out[key] = out.get(key, _ZERO) + cc
    return HPolynomial(poly.n, out)


@dataclass
class StarWitness:
    """A multilinear alternating non-identity with its evaluation data."""

    poly: HPolynomial
    k: int
    n1: int
    z_points: tuple[int, ...]  # basis indices substituted for the extra variables
    value: tuple


def property_star_witness(
    act: HAction,
    k: int,
    n0: int,
    row_cap: int | None = None,
    time_cap: float | None = None,
) -> StarWitness | None:
    """Search for a polynomial alternating in 2k disjoint basis-sized
    variable sets that does not vanish at the basis substitution.

    The candidates are alternations of single monomials of degree
    2k*l + n1 for n1 = 0..n0, enumerated in lexicographic (perm, labels)
    order; the extra variables range over basis tuples. First hit wins.
    """
    a = act.algebra
    if a.unit is None:
        raise NotUnitalError("the alternating witness search needs a unital algebra")
    ell = a.dim
    h = len(act.effective_image())
    budget = _Budget(time_cap)
    for n1 in range(n0 + 1):
        n = 2 * k * ell + n1
        _check_cap(factorial(n) * h ** n * ell ** n1, row_cap)
        varsets = [list(range(blk * ell, (blk + 1) * ell)) for blk in range(2 * k)]
        fixed_points = {}
        for blk in range(2 * k):
            for t in range(ell):
                fixed_points[blk * ell + t] = a.basis_vector(t)
        for perm in permutations(range(n)):
            for labels in product(range(h), repeat=n):
                budget.tick()
                base = HPolynomial.monomial(n, perm, labels)
                f = base
                for vs in varsets:
                    f = alternate(f, vs)
                if f.is_zero():
                    continue
                for zt in product(range(ell), repeat=n1):
                    points = list(range(n))
                    for v in range(2 * k * ell):
                        points[v] = fixed_points[v]
                    for idx, zi in enumerate(zt):
                        points[2 * k * ell + idx] = a.basis_vector(zi)
                    val = evaluate(f, act, points)
                    if any(val):
                        return StarWitness(poly=f, k=k, n1=n1, z_points=zt, value=val)
    return None


@dataclass
class ExponentReport:
    n_values: list[int]
    codims: list[int]
    roots: list[float]
    d: int | None
    witness: tuple[int, ...] | None
    nilpotent: bool
    nilpotency_index: int | None


def exponent_report(
    act: HAction, n_max: int, row_cap: int | None = None, time_cap: float | None = None
) -> ExponentReport:
    """Codimension table with n-th roots and the structural exponent.

    For nilpotent algebras the d report is suppressed (the structural
    formula assumes a non-nilpotent algebra)."""
    a = act.algebra
    nilp, p = is_nilpotent(a, a.full_space())
    codims = [
        codimension(act, n, row_cap=row_cap, time_cap=time_cap)
        for n in range(1, n_max + 1)
    ]
    roots = [c ** (1.0 / n) if c else 0.0 for n, c in zip(range(1, n_max + 1), codims)]
    if nilp:
        return ExponentReport(
            n_values=list(range(1, n_max + 1)),
            codims=codims,
            roots=roots,
            d=None,
            witness=None,
            nilpotent=True,
            nilpotency_index=p,
        )
    report = decompose(act)
    return ExponentReport(
        n_values=list(range(1, n_max + 1)),
        codims=codims,
        roots=roots,
        d=report.d,
        witness=report.witness,
        nilpotent=False,
        nilpotency_index=None,
    )
