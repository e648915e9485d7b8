"""Exact linear algebra over the ground field.

Vectors are tuples of scalars; operators are :class:`Matrix` acting on
column vectors (``apply``). Subspaces carry a canonical reduced
row-echelon basis, so subspace equality is tuple equality. The streaming
:class:`RankAccumulator` handles the factorially wide row families of the
codimension computations with sparse rows against a maintained echelon
basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatchError, NotCompletelyReducibleError
from .field import Cyclotomic

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Matrix:
    """Immutable rectangular matrix of exact scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise DimensionMismatchError("ragged matrix")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(r: int, c: int) -> "Matrix":
        return Matrix([[_ZERO] * c for _ in range(r)])

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise DimensionMismatchError("matrix/vector size mismatch")
        return tuple(
            sum((row[j] * vec[j] for j in range(self.ncols) if vec[j]), _ZERO)
            for row in self.rows
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatchError("matrix product shape mismatch")
            cols = other.transpose().rows
            return Matrix(
                [[sum((r[k] * c[k] for k in range(self.ncols) if r[k]), _ZERO) for c in cols] for r in self.rows]
            )
        return NotImplemented

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Matrix([[a * c for a in r] for r in self.rows])

    def transpose(self):
        return Matrix(list(zip(*self.rows))) if self.rows else Matrix([])

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.nrows, self.ncols))), _ZERO)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def flat(self):
        return tuple(a for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.nrows == other.nrows and all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash(self.rows)

    def __pow__(self, k: int):
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def rank(self) -> int:
        """Fraction-free Bareiss over Q; exact Gaussian elimination otherwise."""
        if not self.rows:
            return 0
        if all(isinstance(a, (int, Fraction)) for r in self.rows for a in r):
            return _bareiss_rank(self.rows)
        rows, _ = rref([list(r) for r in self.rows])
        return len(rows)

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]})"


def _bareiss_rank(rows) -> int:
    # clear denominators row-wise, then integer fraction-free elimination
    m = []
    for r in rows:
        den = 1
        fr = [Fraction(a) for a in r]
        for a in fr:
            den = den * a.denominator // gcd(den, a.denominator)
        m.append([int(a * den) for a in fr])
    nr, nc = len(m), len(m[0])
    prev = 1
    rank = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nr):
            f = m[i][col]
            for j in range(col, nc):
                m[i][j] = (m[i][j] * p - f * m[rank][j]) // prev
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def rref(rows: list[list]) -> tuple[list[tuple], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if isinstance(rows[r][c], Cyclotomic) else Fraction(1) / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(rows[i]) for i in range(r)], pivots


class Subspace:
    """A subspace of F^n with a canonical RREF basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors):
        self.ambient = ambient
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatchError("vector does not match ambient dimension")
        rows, piv = rref(vecs)
        self.basis = tuple(rows)
        self.pivots = tuple(piv)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, [])

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(ambient).rows)

    def reduce(self, vec):
        """Residual of vec after reduction against the basis."""
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def coords(self, vec):
        """Coefficients of vec in the canonical basis, or None."""
        res = self.reduce(vec)
        if any(res):
            return None
        return tuple(self._coords_exact(vec))

    def _coords_exact(self, vec):
        # RREF basis: coefficient of basis row i is vec's pivot entry after
        # clearing previous rows
        v = list(vec)
        out = []
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            out.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return out

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionMismatchError("ambient mismatch in subspace sum")
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionMismatchError("ambient mismatch in intersection")
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient)
        # kernel of [U; V]^T coefficients: a*U = b*V
        stacked = [list(u) for u in self.basis] + [list(v) for v in other.basis]
        ker = kernel(Matrix(list(zip(*stacked))))  # coefficient vectors
        vecs = []
        for coeffs in ker.basis:
            vec = [_ZERO] * self.ambient
            for c, u in zip(coeffs[: self.dim], self.basis):
                if c:
                    vec = [a + c * b for a, b in zip(vec, u)]
            vecs.append(vec)
        return Subspace(self.ambient, vecs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and all(tuple(a) == tuple(b) for a, b in zip(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient})"


def span(vectors, ambient: int) -> Subspace:
    return Subspace(ambient, vectors)


def kernel(m: Matrix) -> Subspace:
    """Right null space {x : m x = 0} with canonical basis."""
    rows, pivots = rref([list(r) for r in m.rows])
    n = m.ncols
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for fc in free:
        v = [_ZERO] * n
        v[fc] = _ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[fc]
        vecs.append(v)
    return Subspace(n, vecs)


def solve(m: Matrix, b) -> tuple | None:
    """One solution of m x = b, or None. Free variables are set to zero."""
    aug = [list(r) + [bv] for r, bv in zip(m.rows, b)]
    rows, pivots = rref(aug)
    n = m.ncols
    x = [_ZERO] * n
    for row, p in zip(rows, pivots):
        if p == n:
            return None  # pivot in augmented column: inconsistent
        x[p] = row[n]
    return tuple(x)


def bilinear_image(v: Subspace, w: Subspace, bilinear, out_dim: int) -> Subspace:
    """Span of bilinear(x, y) over basis vectors x of v and y of w."""
    vecs = [bilinear(x, y) for x in v.basis for y in w.basis]
    return Subspace(out_dim, vecs)


def stable_closure_shrink(v: Subspace, operators) -> Subspace:
    """Largest subspace of v mapped into itself by every operator.

    Fixpoint of U <- {x in U : T x in U for all T}; terminates because the
    dimension strictly decreases until stable.
    """
    current = v
    while True:
        if current.dim == 0:
            return current
        constraints = []
        k = current.dim
        for op in operators:
            images = [op.apply(b) for b in current.basis]
            # residuals of sum(c_i * images_i) after reduction mod current
            for coord_rows in _residual_rows(images, current):
                constraints.append(coord_rows)
        if not constraints:
            return current
        coeffs = kernel(Matrix(constraints))
        if coeffs.dim == k:
            return current
        vecs = []
        for c in coeffs.basis:
            vec = [_ZERO] * current.ambient
            for ci, b in zip(c, current.basis):
                if ci:
                    vec = [a + ci * x for a, x in zip(vec, b)]
            vecs.append(vec)
        nxt = Subspace(current.ambient, vecs)
        if nxt.dim == current.dim:
            return nxt
        current = nxt


def _residual_rows(images, sub: Subspace):
    """Rows of the map coeffs -> residual coordinates (one row per ambient coord)."""
    residuals = [sub.reduce(img) for img in images]
    k = len(images)
    for coord in range(sub.ambient):
        row = [residuals[i][coord] for i in range(k)]
        if any(row):
            yield row


def restrict_operator(op: Matrix, sub: Subspace) -> Matrix:
    """Matrix of op on sub in its canonical basis; op must preserve sub."""
    cols = []
    for b in sub.basis:
        img = op.apply(b)
        c = sub.coords(img)
        if c is None:
            raise DimensionMismatchError("operator does not preserve the subspace")
        cols.append(c)
    return Matrix(list(zip(*cols))) if cols else Matrix([])


def equivariant_projection(operators, s: Subspace, ambient: int) -> Matrix:
    """A projection P with image s, P^2 = P, commuting with every operator.

    P is parameterized as S^T Y (so its image lies in s automatically);
    the constraints P|_s = id and P T = T P are linear in Y. Raises
    :class:`NotCompletelyReducibleError` when no solution exists.
    """
    k = s.dim
    if k == 0:
        return Matrix.zero(ambient, ambient)
    st = Matrix(list(zip(*s.basis)))  # ambient x k, columns = basis of s
    nunk = k * ambient
    rows_sys: list[list] = []
    rhs: list = []

    def unk(i, j):  # Y[i][j], i < k, j < ambient
        return i * ambient + j

    # P x = x for x in basis(s): sum_j Y[i][j] x_j = coords_i(x)
    for bvec in s.basis:
        coords = s.coords(bvec)
        for i in range(k):
            row = [_ZERO] * nunk
            for j in range(ambient):
                if bvec[j]:
                    row[unk(i, j)] = bvec[j]
            rows_sys.append(row)
            rhs.append(coords[i])
    # commutation: S^T (Y T) = T (S^T Y) entrywise
    for op in operators:
        t = op.rows
        for a in range(ambient):
            for bcol in range(ambient):
                row = [_ZERO] * nunk
                # lhs: sum_i S^T[a][i] * sum_j Y[i][j] T[j][bcol]
                for i in range(k):
                    sa = st.rows[a][i]
                    if sa:
                        for j in range(ambient):
                            if t[j][bcol]:
                                row[unk(i, j)] += sa * t[j][bcol]
                # rhs: sum_j T[a][j] * sum_i S^T[j][i] Y[i][bcol]
                for j in range(ambient):
                    ta = t[a][j]
                    if ta:
                        for i in range(k):
                            if st.rows[j][i]:
                                row[unk(i, bcol)] -= ta * st.rows[j][i]
                if any(row):
                    rows_sys.append(row)
                    rhs.append(_ZERO)
    sol = solve(Matrix(rows_sys), rhs)
    if sol is None:
        raise NotCompletelyReducibleError(
            "no equivariant projection: module is not completely reducible "
            "over the given operators"
        )
    y = Matrix([[sol[unk(i, j)] for j in range(ambient)] for i in range(k)])
    p = st * y
    assert p * p == p
    return p


class RankAccumulator:
    """Streaming exact rank of a family of sparse rows.

    Rows are dicts {column index: scalar}. An echelon basis keyed by pivot
    column is maintained; the rank is independent of the order rows
    arrive. Pivot choice is the least column index with a nonzero entry.
    """

    __slots__ = ("pivot_rows", "rows_seen")

    def __init__(self):
        self.pivot_rows: dict[int, dict] = {}
        self.rows_seen = 0

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def add_row(self, row: dict) -> bool:
        """Reduce one row; returns True if it increased the rank."""
        self.rows_seen += 1
        row = {c: v for c, v in row.items() if v}
        while row:
            p = min(row)
            piv = self.pivot_rows.get(p)
            if piv is None:
                f = row[p]
                inv = 1 / f if isinstance(f, Cyclotomic) else Fraction(1) / f
                self.pivot_rows[p] = {c: v * inv for c, v in row.items()}
                return True
            f = row[p]
            for c, v in piv.items():
                cur = row.get(c)
                nv = -(f * v) if cur is None else cur - f * v
                if nv:
                    row[c] = nv
                elif cur is not None:
                    del row[c]
        return False
