"""Exact linear algebra over Q and quadratic fields Q(sqrt d).

Rationals are :class:`fractions.Fraction`.  Elements of a quadratic field are
:class:`QuadExt`.  :class:`Matrix` is an immutable row-major matrix whose
entries may be either kind of scalar (or plain ints, which are promoted).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from numbers import Rational as _Rational


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class MixedFieldError(LinalgError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, _Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def squarefree_decomposition(q) -> tuple[Fraction, int]:
    """Write a nonzero rational q as m**2 * d with d a squarefree integer.

    Returns ``(m, d)`` with m > 0 rational.
    """
    q = as_fraction(q)
    if q == 0:
        raise LinalgError("zero has no squarefree part")
    # q = num/den = num*den / den**2
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    square, core = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            square *= p
        if n % p == 0:
            n //= p
            core *= p
        p += 1
    core *= n
    return Fraction(square, q.denominator), sign * core


def is_rational_square(q) -> bool:
    q = as_fraction(q)
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


class QuadExt:
    """The element a0 + a1*sqrt(d) of Q(sqrt d)."""

    __slots__ = ("a0", "a1", "d")

    def __init__(self, a0, a1, d: int):
        d = int(d)
        if d in (0, 1) or not is_squarefree(d):
            raise LinalgError(f"d must be squarefree and not 0 or 1, got {d}")
        self.a0 = as_fraction(a0)
        self.a1 = as_fraction(a1)
        self.d = d

    @classmethod
    def sqrt(cls, q) -> "QuadExt":
        """sqrt(q) for a rational non-square q, as m*sqrt(d)."""
        m, d = squarefree_decomposition(q)
        return cls(0, m, d)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise MixedFieldError(f"cannot combine Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        try:
            return QuadExt(as_fraction(other), 0, self.d)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a0 + o.a0, self.a1 + o.a1, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a0, -self.a1, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a0 - o.a0, self.a1 - o.a1, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a0 * o.a0 + self.d * self.a1 * o.a1,
            self.a0 * o.a1 + self.a1 * o.a0,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a0 * self.a0 - self.d * self.a1 * self.a1

    def trace(self) -> Fraction:
        return 2 * self.a0

    def conj(self) -> "QuadExt":
        return QuadExt(self.a0, -self.a1, self.d)

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.a0 / n, -self.a1 / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.a1 == 0 and other.a1 == 0:
                return self.a0 == other.a0
            return (self.a0, self.a1, self.d) == (other.a0, other.a1, other.d)
        try:
            f = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.a1 == 0 and self.a0 == f

    def __hash__(self):
        if self.a1 == 0:
            return hash(self.a0)
        return hash((self.a0, self.a1, self.d))

    def __bool__(self):
        return bool(self.a0) or bool(self.a1)

    def is_rational(self) -> bool:
        return self.a1 == 0

    def __repr__(self):
        return f"QuadExt({self.a0}, {self.a1}, {self.d})"

    def __str__(self):
        if self.a1 == 0:
            return str(self.a0)
        root = f"sqrt({self.d})"
        tail = root if self.a1 == 1 else f"-{root}" if self.a1 == -1 else f"{self.a1}*{root}"
        if self.a0 == 0:
            return tail
        sep = "" if tail.startswith("-") else "+"
        return f"{self.a0}{sep}{tail}"


def conj(x):
    """Galois conjugation; the identity on rationals."""
    if isinstance(x, QuadExt):
        return x.conj()
    return x


def _scalar(x):
    if isinstance(x, (QuadExt, Fraction)):
        return x
    return as_fraction(x)


class Matrix:
    """Immutable dense matrix with exact entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(_scalar(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_columns(cls, columns, rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {self.to_rows()})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for j in range(p):
                s = 0
                for k in range(m):
                    x = arow[k]
                    if x:
                        y = b[k * p + j]
                        if y:
                            s = x * y + s
                out.append(s)
        return Matrix(n, p, out)

    __mul__ = __matmul__

    def apply(self, v) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((self[i, j] * v[j] for j in range(self.cols) if v[j]), Fraction(0))
                     for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self):
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def __pow__(self, k: int) -> "Matrix":
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def submatrix(self, rows, cols) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = hstack([self, Matrix.identity(n)])
        r, rank, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or rank != n:
            raise ZeroDivisionError("matrix is singular")
        return r.submatrix(range(n), range(n, 2 * n))

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        rows = self.to_rows()
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if rows[r][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                det = -det
            piv = rows[c][c]
            det = det * piv
            for r in range(c + 1, n):
                f = rows[r][c]
                if f:
                    f = f / piv
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return det


def hstack(blocks) -> Matrix:
    blocks = list(blocks)
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("hstack needs equal row counts")
    return Matrix.from_rows([[x for b in blocks for x in b.row(i)] for i in range(rows)],
                            sum(b.cols for b in blocks))


def vstack(blocks) -> Matrix:
    blocks = list(blocks)
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatch("vstack needs equal column counts")
    return Matrix(sum(b.rows for b in blocks), cols, [x for b in blocks for x in b.entries])


def block_diag(blocks) -> Matrix:
    blocks = list(blocks)
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix.from_rows(out, m)


def _rref_rows(rows: list[list], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        if piv != 1:
            inv = 1 / piv
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(a: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns of ``a``."""
    rows = a.to_rows()
    pivots = _rref_rows(rows, a.cols)
    return Matrix.from_rows(rows, a.cols) if a.rows else a, len(pivots), pivots


def _integer_rows(a: Matrix) -> list[list[int]] | None:
    out = []
    for i in range(a.rows):
        row = a.row(i)
        if any(isinstance(x, QuadExt) for x in row):
            return None
        den = 1
        for x in row:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _integer_rank(rows: list[list[int]], ncols: int) -> int:
    # fraction-free elimination; each updated row is divided by its content
    rows = [r for r in rows if any(r)]
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        prow = rows[rk]
        piv = prow[c]
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f:
                g = gcd(piv, f)
                a, b = piv // g, f // g
                row = [a * x - b * y for x, y in zip(rows[i], prow)]
                content = 0
                for x in row:
                    if x:
                        content = gcd(content, x)
                        if content == 1:
                            break
                if content > 1:
                    row = [x // content for x in row]
                rows[i] = row
        rk += 1
        if rk == len(rows):
            break
    return rk


def rank(a: Matrix) -> int:
    ints = _integer_rows(a)
    if ints is None:
        return rref(a)[1]
    return _integer_rank(ints, a.cols)


def kernel_basis(a: Matrix) -> list[tuple]:
    """Basis of the null space, one vector per free column.

    Free variables are set to 1 one at a time, in increasing column order.
    """
    r, rk, pivots = rref(a)
    pivset = set(pivots)
    basis = []
    for f in range(a.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b) -> tuple | None:
    """Some x with a x = b, or None.  Free variables are set to zero."""
    b = list(b)
    if len(b) != a.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {a.rows} rows")
    rows = [list(a.row(i)) + [_scalar(b[i])] for i in range(a.rows)]
    pivots = _rref_rows(rows, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][a.cols]
    return tuple(x)


def _field_d(a: Matrix) -> int | None:
    ds = {x.d for x in a.entries if isinstance(x, QuadExt) and not x.is_rational()}
    if len(ds) > 1:
        raise MixedFieldError(f"entries from several quadratic fields: {sorted(ds)}")
    return ds.pop() if ds else None


def quad_conj_matrix(a: Matrix) -> Matrix:
    """Entry-wise Galois conjugation."""
    _field_d(a)
    return Matrix(a.rows, a.cols, [conj(x) for x in a.entries])


def restrict_scalars(a: Matrix, n: int | None = None) -> Matrix:
    """The 2n x 2n rational matrix of ``a`` acting on L^n = Q^(2n).

    Coordinate k of L^n occupies slots 2k (the 1-part) and 2k+1 (the
    sqrt(d)-part).
    """
    if not a.is_square() or (n is not None and a.rows != n):
        raise DimensionMismatch(f"restrict_scalars needs an n x n matrix, got {a.shape}")
    n = a.rows
    d = _field_d(a) or 0
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        for l in range(n):
            x = a[k, l]
            if isinstance(x, QuadExt):
                x0, x1 = x.a0, x.a1
            else:
                x0, x1 = x, Fraction(0)
            out[2 * k][2 * l] = x0
            out[2 * k][2 * l + 1] = x1 * d
            out[2 * k + 1][2 * l] = x1
            out[2 * k + 1][2 * l + 1] = x0
    return Matrix.from_rows(out, 2 * n)
