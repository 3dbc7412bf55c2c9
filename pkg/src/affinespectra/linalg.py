"""Exact linear algebra over the integers and rationals.

Small dense matrices only (n <= 8 in practice), so everything is written
for clarity and exactness rather than asymptotics: Python ints, stdlib
Fraction, fraction-free (Bareiss) elimination for determinants and ranks,
and an exact Schur-Cohn sign test for the expanding property.  No float
ever participates in a mathematical decision made by this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import (
    NotUnimodular,
    RankDeficient,
    Singular,
    ZeroVector,
)


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"integer entry expected, got {x!r}")
    return x


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with g = s*a + t*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class IntVector:
    """Immutable integer vector."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(_as_int(e) for e in entries)
        if not self.entries:
            raise ValueError("empty vector")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, IntVector) and self.entries == other.entries

    def __hash__(self):
        return hash(("IntVector", self.entries))

    def __repr__(self):
        return f"IntVector({list(self.entries)})"

    def __add__(self, other):
        return IntVector(a + b for a, b in zip(self.entries, other.entries, strict=True))

    def __sub__(self, other):
        return IntVector(a - b for a, b in zip(self.entries, other.entries, strict=True))

    def scaled(self, c: int) -> "IntVector":
        return IntVector(c * e for e in self.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def dot(self, other):
        if len(other) != len(self):
            raise ValueError("dimension mismatch")
        return sum(a * b for a, b in zip(self.entries, other))

    def to_rat(self) -> "RatVector":
        return RatVector(Fraction(e) for e in self.entries)


class RatVector:
    """Immutable rational vector; entries are canonical Fractions."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(Fraction(e) for e in entries)
        if not self.entries:
            raise ValueError("empty vector")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, RatVector) and self.entries == other.entries

    def __hash__(self):
        return hash(("RatVector", self.entries))

    def __repr__(self):
        return f"RatVector([{', '.join(str(e) for e in self.entries)}])"

    def __add__(self, other):
        return RatVector(a + b for a, b in zip(self.entries, other.entries, strict=True))

    def __sub__(self, other):
        return RatVector(a - b for a, b in zip(self.entries, other.entries, strict=True))

    def scaled(self, c) -> "RatVector":
        c = Fraction(c)
        return RatVector(c * e for e in self.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def dot(self, other) -> Fraction:
        if len(other) != len(self):
            raise ValueError("dimension mismatch")
        return sum((Fraction(a) * Fraction(b) for a, b in zip(self.entries, other)), Fraction(0))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def denominator_lcm(self) -> int:
        return lcm(*(e.denominator for e in self.entries))

    def to_int(self) -> IntVector:
        if not self.is_integral():
            raise ValueError(f"{self!r} is not integral")
        return IntVector(int(e) for e in self.entries)

    def to_float(self) -> tuple[float, ...]:
        return tuple(float(e) for e in self.entries)


class IntMatrix:
    """Immutable integer matrix.  Rectangular shapes are allowed; the
    operations that require squareness check for it themselves."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(_as_int(x) for x in row) for row in rows)
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols) -> "IntMatrix":
        cols = [list(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def n(self) -> int:
        self._require_square()
        return self.nrows

    def _require_square(self):
        if self.nrows != self.ncols:
            raise ValueError(f"square matrix required, got {self.nrows}x{self.ncols}")

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(("IntMatrix", self.rows))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __add__(self, other):
        return IntMatrix(
            [a + b for a, b in zip(r1, r2, strict=True)]
            for r1, r2 in zip(self.rows, other.rows, strict=True)
        )

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix([c * x for x in row] for row in self.rows)

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            return IntMatrix(
                [sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows
            )
        if isinstance(other, IntVector):
            if self.ncols != len(other):
                raise ValueError("dimension mismatch")
            return IntVector(sum(a * b for a, b in zip(row, other)) for row in self.rows)
        if isinstance(other, RatVector):
            if self.ncols != len(other):
                raise ValueError("dimension mismatch")
            return RatVector(
                sum((a * b for a, b in zip(row, other)), Fraction(0)) for row in self.rows
            )
        return NotImplemented

    def __pow__(self, k: int) -> "IntMatrix":
        self._require_square()
        if k < 0:
            raise ValueError("negative powers are rational; use inverse() explicitly")
        result = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def trace(self) -> int:
        self._require_square()
        return sum(self.rows[i][i] for i in range(self.nrows))

    def column(self, j: int) -> IntVector:
        return IntVector(row[j] for row in self.rows)

    def submatrix(self, row_range, col_range) -> "IntMatrix":
        return IntMatrix([self.rows[i][j] for j in col_range] for i in row_range)

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(self.rows)


class RatMatrix:
    """Immutable rational matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(("RatMatrix", self.rows))

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in r] for r in self.rows]})"

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            return RatMatrix(
                [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                for row in self.rows
            )
        if isinstance(other, (IntVector, RatVector)):
            if self.ncols != len(other):
                raise ValueError("dimension mismatch")
            return RatVector(
                sum((a * Fraction(b) for a, b in zip(row, other)), Fraction(0))
                for row in self.rows
            )
        return NotImplemented

    def __pow__(self, k: int) -> "RatMatrix":
        if self.nrows != self.ncols:
            raise ValueError("square matrix required")
        if k < 0:
            return inverse(self) ** (-k)
        result = RatMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix is not integral")
        return IntMatrix([int(x) for x in row] for row in self.rows)

    def inf_norm(self) -> Fraction:
        """Induced infinity norm: max absolute row sum.  Exact."""
        return max(sum((abs(x) for x in row), Fraction(0)) for row in self.rows)


class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_as_int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def constant_term(self) -> int:
        return self.coeffs[0]

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __call__(self, x):
        acc = 0 * x  # matches the numeric type of x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: IntMatrix) -> IntMatrix:
        """Horner evaluation at a square integer matrix."""
        n = m.n
        acc = IntMatrix.identity(n).scaled(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * m + IntMatrix.identity(n).scaled(c)
        return acc


# ---------------------------------------------------------------------------
# determinant, rank, characteristic polynomial
# ---------------------------------------------------------------------------


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate value is a minor of the input, so the divisions on
    the update formula are exact; this is asserted rather than assumed.
    """
    m._require_square()
    n = m.nrows
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                quo, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                a[i][j] = quo
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Rank by fraction-free elimination with column skipping."""
    a = [list(row) for row in m.rows]
    nr, nc = m.nrows, m.ncols
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                num = a[i][j] * a[r][c] - a[i][c] * a[r][j]
                quo, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                a[i][j] = quo
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def char_poly(m: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - M), monic, exact.

    Faddeev-LeVerrier recursion; all divisions land on integers because
    the coefficients are integers.  The constant coefficient is checked
    against an independently computed Bareiss determinant.
    """
    n = m.n
    ident = IntMatrix.identity(n)
    work = ident
    a = []
    for k in range(1, n + 1):
        work = m * work
        t = work.trace()
        ak, rem = divmod(-t, k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact"
        a.append(ak)
        if k < n:
            work = work + ident.scaled(ak)
    # f(x) = x^n + a_1 x^{n-1} + ... + a_n; independent determinant route
    assert a[-1] == (-1) ** n * det(m), "constant coefficient disagrees with det"
    return IntPolynomial(list(reversed(a)) + [1])


def krylov(m: IntMatrix, v: IntVector) -> tuple[list[IntVector], int]:
    """Return ([v, Mv, ..., M^{n-1}v], rank of their span)."""
    n = m.n
    if len(v) != n:
        raise ValueError("dimension mismatch")
    if v.is_zero():
        raise ZeroVector("krylov: v must be nonzero")
    vecs = [v]
    cur = v
    for _ in range(n - 1):
        cur = m * cur
        vecs.append(cur)
    return vecs, rank(IntMatrix.from_columns(vecs))


# ---------------------------------------------------------------------------
# unimodular echelon form
# ---------------------------------------------------------------------------


def hnf_unimodular(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular row reduction of a full-column-rank n x r matrix.

    Returns (b, h) with b unimodular (det +-1), h = b*a upper echelon:
    nonzero pivots on the first r diagonal positions, zeros below them,
    and all-zero rows from row r down.

    Pivoting is deterministic: columns are processed left to right; within
    a column the nonzero entry of minimal absolute value is chosen (ties
    broken by lowest row index) and the entries below are reduced by
    Euclidean steps until they vanish.

    Raises RankDeficient if the columns of ``a`` are linearly dependent.
    """
    nr, nc = a.nrows, a.ncols
    work = [list(row) for row in a.rows]
    b = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    row = 0
    for col in range(nc):
        if row == nr:
            raise RankDeficient(f"hnf_unimodular: no pivot row left for column {col}")
        while True:
            cand = [(abs(work[i][col]), i) for i in range(row, nr) if work[i][col] != 0]
            if not cand:
                raise RankDeficient(f"hnf_unimodular: column {col} is dependent")
            _, piv = min(cand)
            if piv != row:
                work[row], work[piv] = work[piv], work[row]
                b[row], b[piv] = b[piv], b[row]
            clean = True
            for i in range(row + 1, nr):
                if work[i][col] == 0:
                    continue
                t = work[i][col] // work[row][col]
                if t:
                    work[i] = [x - t * y for x, y in zip(work[i], work[row])]
                    b[i] = [x - t * y for x, y in zip(b[i], b[row])]
                if work[i][col] != 0:
                    clean = False
            if clean:
                break
        row += 1
    b_mat = IntMatrix(b)
    h_mat = IntMatrix(work)
    assert det(b_mat) in (1, -1), "row operations must stay unimodular"
    assert b_mat * a == h_mat
    return b_mat, h_mat


# ---------------------------------------------------------------------------
# inverses
# ---------------------------------------------------------------------------


def inverse(m) -> RatMatrix:
    """Exact rational inverse by Gauss-Jordan elimination."""
    if isinstance(m, IntMatrix):
        m._require_square()
        rows = [[Fraction(x) for x in row] for row in m.rows]
    elif isinstance(m, RatMatrix):
        if m.nrows != m.ncols:
            raise ValueError("square matrix required")
        rows = [list(row) for row in m.rows]
    else:
        raise TypeError(f"matrix expected, got {type(m).__name__}")
    n = len(rows)
    aug = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return RatMatrix([row[n:] for row in aug])


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, returned with integer entries."""
    d = det(m)
    if d not in (1, -1):
        raise NotUnimodular(f"det = {d}, expected +1 or -1")
    inv = inverse(m)
    assert inv.is_integral(), "unimodular inverse must be integral"
    return inv.to_int()


# ---------------------------------------------------------------------------
# expanding test
# ---------------------------------------------------------------------------


def _no_root_in_closed_unit_disk(coeffs: list[int]) -> bool:
    """Exact test that a nonzero integer polynomial has every complex root
    strictly outside the closed unit disk.

    Schur-Cohn recursion.  Running it on p directly is arithmetically the
    same as running the classical stability recursion on the reversed
    polynomial: with p* the coefficient reversal, all roots of p lie
    outside the closed disk iff |p(0)| > |lead(p)| and the reduced
    polynomial q = p(0)*p - lead(p)*p* (degree drops by at least one)
    again has no root in the closed disk.  The base case, degree zero,
    has no roots at all.  q(0) = p(0)^2 - lead(p)^2 > 0 whenever we
    recurse, so q is never the zero polynomial.
    """
    c = list(coeffs)
    while True:
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if len(c) == 1:
            return True
        a0, an = c[0], c[-1]
        if a0 * a0 <= an * an:
            return False
        deg = len(c) - 1
        c = [a0 * c[i] - an * c[deg - i] for i in range(deg)]


def is_expanding(m: IntMatrix) -> bool:
    """True iff every eigenvalue of m has modulus strictly greater than 1.

    Decided exactly from the characteristic polynomial; no root finding.
    """
    return _no_root_in_closed_unit_disk(list(char_poly(m).coeffs))
