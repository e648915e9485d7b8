"""Univariate polynomial utilities over the ground field.

Polynomials are lists of scalars in ascending degree with no trailing
zeros. Factorization is desk-scale by design: rational roots plus a
Kronecker trial-factor search over Q, and the Galois-norm (Trager)
reduction over Q(zeta_m). Inputs are expected squarefree (minimal
polynomials in etale algebras always are); a squarefree split guards the
general case.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

from .errors import HpiError
from .field import Cyclotomic, GroundField, euler_phi

_FACTOR_COMBO_CAP = 200_000


def trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def padd(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def pmul(a, b):
    if not a or not b:
        return []
    out = [a[0] * b[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return trim(out)


def pscale(a, c):
    return trim([x * c for x in a])


def pdivmod(a, b):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [a[0] * 0] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1] if isinstance(b[-1], (Fraction, Cyclotomic)) else Fraction(1, b[-1])
    for k in range(len(a) - len(b), -1, -1):
        coeff = a[k + len(b) - 1] * inv_lead
        q[k] = coeff
        if coeff:
            for j, y in enumerate(b):
                a[k + j] = a[k + j] - coeff * y
    return trim(q), trim(a)


def pmonic(a):
    if not a:
        return a
    lead = a[-1]
    return [x / lead for x in a]


def pgcd(a, b):
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a)


def pderiv(a):
    return trim([a[i] * i for i in range(1, len(a))])


def peval(a, x):
    acc = x * 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def is_squarefree(a) -> bool:
    return len(pgcd(a, pderiv(a))) <= 1


def poly_to_str(a, field: GroundField) -> str:
    from .field import scalar_to_str

    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        if not a[k]:
            continue
        c = scalar_to_str(a[k], field)
        mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        parts.append(f"({c}){mon}" if mon else f"({c})")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# factorization over Q
# ---------------------------------------------------------------------------

def _to_primitive_int(poly) -> list[int]:
    """Scale a Fraction polynomial to a primitive integer polynomial."""
    denlcm = 1
    for c in poly:
        denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in poly]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return [c // g for c in ints] if g > 1 else ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(ip: list[int]) -> list[Fraction]:
    roots = []
    while ip and ip[0] == 0:
        roots.append(Fraction(0))
        ip = ip[1:]
    if len(ip) <= 1:
        return roots
    for p in _divisors(ip[0]):
        for q in _divisors(ip[-1]):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = peval([Fraction(c) for c in ip], cand)
                if val == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _kronecker_factor(ip: list[int]):
    """Find a nontrivial integer factor of a root-free primitive integer
    polynomial, or None. Interpolates candidate divisors through divisor
    tuples of evaluations at small integer points."""
    deg = len(ip) - 1
    points = [0, 1, -1, 2, -2, 3, -3, 4, -4]
    fp = [Fraction(c) for c in ip]
    for k in range(2, deg // 2 + 1):
        xs = points[: k + 1]
        vals = [peval(fp, Fraction(x)) for x in xs]
        assert all(vals), "root-free precondition violated"
        div_sets = [_divisors(int(v)) for v in vals]
        combos = 2 ** len(xs) * 1
        for ds in div_sets:
            combos *= len(ds)
        if combos > _FACTOR_COMBO_CAP:
            raise HpiError(
                f"factor search over Q exceeded combination cap at degree {deg}"
            )
        signed = [[Fraction(s * d) for d in ds for s in (1, -1)] for ds in div_sets]
        # fix the first value positive: g and -g divide together
        signed[0] = [v for v in signed[0] if v > 0]
        for choice in product(*signed):
            g = _lagrange(xs, choice)
            if len(g) != k + 1:
                continue
            if any(c.denominator != 1 for c in g):
                continue
            q, r = pdivmod(fp, g)
            if not r:
                return g
    return None


def _lagrange(xs, ys) -> list[Fraction]:
    out: list[Fraction] = []
    for i, xi in enumerate(xs):
        term = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            term = pmul(term, [Fraction(-xj), Fraction(1)])
            denom *= Fraction(xi - xj)
        out = padd(out, pscale(term, ys[i] / denom))
    return trim(out)


def factor_over_q(poly: list[Fraction]) -> list[list[Fraction]]:
    """Monic irreducible factors of a squarefree polynomial over Q."""
    poly = pmonic(trim([Fraction(c) for c in poly]))
    if len(poly) <= 1:
        return []
    if not is_squarefree(poly):
        g = pgcd(poly, pderiv(poly))
        q, r = pdivmod(poly, g)
        assert not r
        found = factor_over_q(q) + factor_over_q(g)
        # deduplicate repeated irreducibles
        uniq = []
        for f in found:
            if f not in uniq:
                uniq.append(f)
        return uniq
    factors = []
    work = poly
    for root in _rational_roots(_to_primitive_int(work)):
        lin = [-root, Fraction(1)]
        q, r = pdivmod(work, lin)
        if not r:
            factors.append(lin)
            work = q
    while len(work) - 1 >= 2:
        if len(work) - 1 <= 3:
            factors.append(pmonic(work))  # degree 2-3 without rational roots
            break
        g = _kronecker_factor(_to_primitive_int(work))
        if g is None:
            factors.append(pmonic(work))
            break
        gf = pmonic([Fraction(c) for c in g])
        q, r = pdivmod(work, gf)
        assert not r
        factors.extend(factor_over_q(gf))
        work = q
    else:
        if len(work) - 1 == 1:
            factors.append(pmonic(work))
    return sorted(factors, key=lambda f: (len(f), [(c.numerator, c.denominator) for c in f]))


# ---------------------------------------------------------------------------
# factorization over Q(zeta_m), Trager-style via the Galois norm
# ---------------------------------------------------------------------------

def _galois_conjugate(x: Cyclotomic, a: int) -> Cyclotomic:
    z = Cyclotomic.zeta(x.order)
    acc = Cyclotomic.from_rational(x.order, 0)
    for i, c in enumerate(x.coeffs):
        if c:
            acc = acc + z ** (a * i) * c
    return acc


def _norm_poly(poly: list[Cyclotomic], m: int) -> list[Fraction]:
    """Product of all Galois conjugates; the result has rational coefficients."""
    prod = [Cyclotomic.from_rational(m, 1)]
    for a in range(1, m + 1):
        if gcd(a, m) == 1:
            conj = [_galois_conjugate(c, a) for c in poly]
            prod = pmul(prod, conj)
    out = []
    for c in prod:
        assert c.is_rational(), "norm polynomial must be rational"
        out.append(c.rational_value())
    return trim(out)


def factor_over_cyclotomic(poly, field: GroundField) -> list:
    """Monic irreducible factors of a squarefree polynomial over Q(zeta_m)."""
    m = field.order
    poly = pmonic(trim([field.scalar(c) for c in poly]))
    if len(poly) <= 1:
        return []
    if len(poly) == 2:
        return [poly]
    assert is_squarefree(poly), "factor_over_cyclotomic expects squarefree input"
    z = field.zeta()
    for s in range(0, 8 * len(poly)):
        shift = [z * (-s), field.one]  # x - s*zeta
        shifted = _subst(poly, shift)
        norm = _norm_poly(shifted, m)
        if not is_squarefree(norm):
            continue
        out = []
        for g in factor_over_q(norm):
            gk = [field.scalar(c) for c in g]
            h = pgcd(shifted, gk)
            if len(h) > 1:
                out.append(pmonic(_subst(h, [z * s, field.one])))  # x + s*zeta back
        assert sum(len(h) - 1 for h in out) == len(poly) - 1
        return sorted(
            out,
            key=lambda f: (len(f), [tuple((q.numerator, q.denominator) for q in c.coeffs) for c in f]),
        )
    raise HpiError("no squarefree shift found for norm factorization")


def _subst(poly, arg):
    """poly composed with the degree-1 polynomial arg."""
    acc = []
    for c in reversed(poly):
        acc = padd(pmul(acc, arg), [c])
    return acc


def factor_squarefree(poly, field: GroundField) -> list:
    """Dispatch on the ground field."""
    if field.kind == "Q":
        return factor_over_q([Fraction(c) if not isinstance(c, Fraction) else c for c in poly])
    return factor_over_cyclotomic(poly, field)
