"""Exact ground-field arithmetic: rationals and cyclotomic field elements.

All other modules compute over a :class:`GroundField`, which is either Q
(scalars are ``fractions.Fraction``) or Q(zeta_m) (scalars are
:class:`Cyclotomic` residues modulo the m-th cyclotomic polynomial).
Rational literals coerce into any cyclotomic field; two distinct
nontrivial orders never mix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import OrderMismatchError, SchemaError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _int_poly_divmod(num: list, den: list) -> tuple[list, list]:
    # exact division in Z[x], ascending coefficients
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        coeff, rem = divmod(num[k + len(den) - 1], den[-1])
        if rem:
            raise ArithmeticError("non-exact integer polynomial division")
        q[k] = coeff
        for j, d in enumerate(den):
            num[k + j] -= coeff * d
    return q, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Return Phi_m as ascending integer coefficients.

    Computed by dividing x^m - 1 by Phi_d for every proper divisor d of m;
    the division is exact in Z[x].
    """
    if m < 1:
        raise ValueError("order must be a positive integer")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _int_poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce_mod_phi(m: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for k in range(len(c) - 1, deg - 1, -1):
        top = c[k]
        if top:
            for j in range(deg + 1):
                c[k - deg + j] -= top * phi[j]
        c.pop()
    while len(c) < deg:
        c.append(_ZERO)
    return tuple(c)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple:
    """Residues of x^(deg+k) mod Phi_m for k = 0..deg-2, as coefficient rows."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    if deg <= 1:
        return ()
    cur = [Fraction(-phi[j]) for j in range(deg)]
    rows = [tuple(cur)]
    for _ in range(deg - 2):
        top = cur[-1]
        cur = [_ZERO] + cur[:-1]
        if top:
            cur = [c + top * r for c, r in zip(cur, rows[0])]
        rows.append(tuple(cur))
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_m), stored as the reduced residue mod Phi_m.

    The coefficient vector has length deg Phi_m = phi(m), which makes
    equality a plain tuple comparison. Arithmetic accepts ints, Fractions
    and Cyclotomics; a value that happens to be rational coerces into any
    other order, everything else must share the order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        self.coeffs = _reduce_mod_phi(order, list(coeffs))

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        # internal fast path: coeffs already a reduced tuple of Fractions
        self = object.__new__(cls)
        self.order = order
        self.coeffs = coeffs
        return self

    @staticmethod
    def zeta(m: int) -> "Cyclotomic":
        """The canonical primitive m-th root of unity in Q(zeta_m)."""
        if m == 1:
            return Cyclotomic(1, [_ONE])
        return Cyclotomic(m, [_ZERO, _ONE])

    @staticmethod
    def from_rational(m: int, value) -> "Cyclotomic":
        deg = euler_phi(m)
        return Cyclotomic._raw(m, (Fraction(value),) + (_ZERO,) * (deg - 1))

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def _pair(self, other):
        if type(other) is Cyclotomic:
            if other.order == self.order:
                return self, other
            if self.is_rational():
                return Cyclotomic.from_rational(other.order, self.coeffs[0]), other
            if other.is_rational():
                return self, Cyclotomic.from_rational(self.order, other.coeffs[0])
            raise OrderMismatchError(
                f"cannot mix Q(zeta_{self.order}) with Q(zeta_{other.order})"
            )
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.from_rational(self.order, other)
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic._raw(self.order, tuple(c * f for c in self.coeffs))
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        n = len(a.coeffs)
        if n == 1:
            return Cyclotomic._raw(a.order, (a.coeffs[0] * b.coeffs[0],))
        prod = [_ZERO] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        low = prod[:n]
        for k, row in enumerate(_reduction_rows(a.order)):
            h = prod[n + k]
            if h:
                for j, r in enumerate(row):
                    if r:
                        low[j] += h * r
        return Cyclotomic._raw(a.order, tuple(low))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Inverse modulo Phi_m via the extended Euclidean algorithm in Q[x]."""
        if not self:
            raise ZeroDivisionError("inversion of zero cyclotomic element")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while r1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        # r0 = gcd, a nonzero constant (Phi_m is irreducible)
        assert len(r0) == 1
        inv = [c / r0[0] for c in s0]
        return Cyclotomic(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.from_rational(self.order, other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"Cyclotomic({self.order}, {list(self.coeffs)})"


def _frac_poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(0, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        coeff = num[k + len(den) - 1] / den[-1]
        q[k] = coeff
        if coeff:
            for j, d in enumerate(den):
                num[k + j] -= coeff * d
    return _poly_trim(q), _poly_trim(num)


def _frac_poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _frac_poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _poly_trim(out)


def is_primitive_root(z, m: int) -> bool:
    """True iff z^m = 1 and z^k != 1 for 1 <= k < m."""
    one = 1
    p = z
    for _ in range(1, m):
        if p == one:
            return False
        p = p * z
    return p == one


@dataclass(frozen=True)
class GroundField:
    """Descriptor of the computation field: Q, or Q(zeta_m) for m >= 1."""

    kind: str  # "Q" | "Q(zeta)"
    order: int = 1

    def __post_init__(self):
        if self.kind not in ("Q", "Q(zeta)"):
            raise SchemaError(f"unknown field kind {self.kind!r}")
        if self.kind == "Q(zeta)" and self.order < 1:
            raise SchemaError("cyclotomic order must be positive")

    @property
    def zero(self):
        return _ZERO if self.kind == "Q" else Cyclotomic.from_rational(self.order, 0)

    @property
    def one(self):
        return _ONE if self.kind == "Q" else Cyclotomic.from_rational(self.order, 1)

    def scalar(self, value):
        """Coerce an int/Fraction/Cyclotomic into this field."""
        if self.kind == "Q":
            if isinstance(value, Cyclotomic):
                return value.rational_value()
            return Fraction(value)
        if isinstance(value, Cyclotomic):
            if value.order == self.order:
                return value
            if value.is_rational():
                return Cyclotomic.from_rational(self.order, value.rational_value())
            raise OrderMismatchError(
                f"scalar of order {value.order} in Q(zeta_{self.order}) context"
            )
        return Cyclotomic.from_rational(self.order, Fraction(value))

    def zeta(self):
        if self.kind == "Q":
            raise SchemaError("Q carries no distinguished root of unity")
        return Cyclotomic.zeta(self.order)


QQ = GroundField("Q")


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_to_str(x, field: GroundField) -> str:
    """Canonical string form: "p/q" over Q, "c0 + c1*z + c2*z^2 + ..." over Q(zeta)."""
    if field.kind == "Q":
        return rational_to_str(field.scalar(x))
    c = field.scalar(x).coeffs
    parts = [rational_to_str(c[0])]
    for k in range(1, len(c)):
        mon = "z" if k == 1 else f"z^{k}"
        parts.append(f"{rational_to_str(c[k])}*{mon}")
    return " + ".join(parts)


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {s!r}") from exc


def scalar_from_str(s: str, field: GroundField):
    if not isinstance(s, str):
        raise SchemaError(f"scalar must be a string, got {type(s).__name__}")
    if field.kind == "Q":
        return _parse_rational(s)
    deg = euler_phi(field.order)
    coeffs = [_ZERO] * deg
    for part in s.split("+"):
        part = part.strip()
        if not part:
            raise SchemaError(f"bad scalar literal {s!r}")
        if "*" in part:
            coeff_s, mon = part.split("*", 1)
            mon = mon.strip()
            if mon == "z":
                k = 1
            elif mon.startswith("z^"):
                k = int(mon[2:])
            else:
                raise SchemaError(f"bad monomial {mon!r} in {s!r}")
        elif part == "z":
            coeff_s, k = "1", 1
        elif part.startswith("z^"):
            coeff_s, k = "1", int(part[2:])
        else:
            coeff_s, k = part, 0
        if not 0 <= k:
            raise SchemaError(f"bad exponent in {s!r}")
        if k >= deg:
            # allow unreduced inputs; reduce below
            coeffs.extend([_ZERO] * (k + 1 - len(coeffs)))
        coeffs[k] += _parse_rational(coeff_s)
    return Cyclotomic(field.order, coeffs)


def scalar_sort_key(x):
    """A total order usable for deterministic tie-breaking (not algebraic order)."""
    if isinstance(x, Cyclotomic):
        return tuple((c.numerator, c.denominator) for c in x.coeffs)
    q = Fraction(x)
    return ((q.numerator, q.denominator),)


def multiplicative_order(z, cap: int = 10_000):
    """Least k >= 1 with z^k = 1, or None if none up to cap."""
    p = z
    for k in range(1, cap + 1):
        if p == 1:
            return k
        p = p * z
    return None


__all__ = [
    "Rational",
    "Cyclotomic",
    "GroundField",
    "QQ",
    "cyclotomic_polynomial",
    "euler_phi",
    "is_primitive_root",
    "multiplicative_order",
    "scalar_to_str",
    "scalar_from_str",
    "rational_to_str",
    "scalar_sort_key",
    "gcd",
]
