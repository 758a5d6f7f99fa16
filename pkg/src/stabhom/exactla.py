"""Exact dense linear algebra over a prime field or the rationals.

Everything here is exact. Prime-field entries are machine integers kept
reduced mod p inside int64 numpy arrays; rational entries are
fractions.Fraction objects inside object-dtype arrays. No floating point
is used anywhere.

Conventions:
  * Matrices act on column vectors, so a matrix of shape (r, c) maps k^c
    into k^r.
  * A Subspace of k^n is stored as a matrix whose rows form a basis,
    kept in reduced row echelon form so equality is literal comparison.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

PRIME = "prime"
RATIONAL = "rational"


class FieldMismatch(ValueError):
    """Raised when operands live over different coefficient fields."""


class ShapeMismatch(ValueError):
    """Raised when operand shapes are incompatible."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Coefficient field: F_p (kind 'prime') or Q (kind 'rational')."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: Optional[int] = None):
        if kind == PRIME:
            if p is None or not _is_prime(int(p)):
                raise ValueError(f"prime field needs a prime modulus, got {p!r}")
            self.p = int(p)
        elif kind == RATIONAL:
            if p is not None:
                raise ValueError("rational field takes no modulus")
            self.p = None
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(PRIME, p)

    @classmethod
    def rational(cls) -> "Field":
        return cls(RATIONAL)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return f"F_{self.p}" if self.kind == PRIME else "Q"

    # -- scalar plumbing ------------------------------------------------

    def coerce(self, x):
        """Bring a Python number (or string) into canonical scalar form."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        if self.kind == PRIME:
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero(self):
        return 0 if self.kind == PRIME else Fraction(0)

    def one(self):
        return 1 if self.kind == PRIME else Fraction(1)

    def inv(self, x):
        if self.kind == PRIME:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, self.p - 2, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x

    def parse_scalar(self, s: str):
        """Parse a serialized scalar: decimal for F_p, 'num/den' or decimal for Q."""
        s = s.strip()
        if self.kind == PRIME:
            return int(s) % self.p
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))

    def format_scalar(self, x) -> str:
        if self.kind == PRIME:
            return str(int(x) % self.p)
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"

    # -- array plumbing -------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.kind == PRIME else object

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p if self.kind == PRIME else arr

    def array(self, rows: Sequence[Sequence]) -> np.ndarray:
        r = len(rows)
        c = len(rows[0]) if r else 0
        out = np.empty((r, c), dtype=self.dtype)
        for i, row in enumerate(rows):
            if len(row) != c:
                raise ShapeMismatch("ragged rows")
            for j, x in enumerate(row):
                out[i, j] = self.coerce(x)
        return out

    def random_scalar(self, rng):
        if self.kind == PRIME:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-2, 2))

    def add(self, a, b):
        return (a + b) % self.p if self.kind == PRIME else a + b

    def neg(self, a):
        return (-a) % self.p if self.kind == PRIME else -a


class Matrix:
    """Immutable dense matrix over a Field.

    data is a 2-D numpy array (int64 reduced mod p, or Fraction objects)
    marked read-only after construction.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data: np.ndarray, _trusted: bool = False):
        if not _trusted:
            data = np.asarray(data)
            if data.ndim != 2:
                raise ShapeMismatch("matrix data must be 2-D")
            if field.kind == PRIME:
                data = data.astype(np.int64) % field.p
            else:
                out = np.empty(data.shape, dtype=object)
                for i in range(data.shape[0]):
                    for j in range(data.shape[1]):
                        out[i, j] = field.coerce(data[i, j])
                data = out
        data.flags.writeable = False
        self.field = field
        self.data = data

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        if field.kind == PRIME:
            data = np.zeros((rows, cols), dtype=np.int64)
        else:
            data = np.empty((rows, cols), dtype=object)
            data[...] = Fraction(0)
        return cls(field, data, _trusted=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        data = m.data.copy()
        one = field.one()
        for i in range(n):
            data[i, i] = one
        return cls(field, data, _trusted=True)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        return cls(field, field.array(rows), _trusted=True)

    # -- shape ------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        out = self.field.normalize(np.dot(self.data, other.data))
        return Matrix(self.field, out, _trusted=True)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.field.normalize(self.data + other.data), _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.field.normalize(self.data - other.data), _trusted=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.normalize(-self.data), _trusted=True)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix(self.field, self.field.normalize(self.data * c), _trusted=True)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy(), _trusted=True)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix times column vector, given and returned as 1-D arrays."""
        if vec.shape[0] != self.cols:
            raise ShapeMismatch(f"{self.shape} applied to length-{vec.shape[0]} vector")
        return self.field.normalize(np.dot(self.data, vec))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    def entries(self) -> List:
        """Row-major flat list of entries."""
        return list(self.data.reshape(-1))


def vstack(field: Field, mats: Sequence[Matrix], cols: Optional[int] = None) -> Matrix:
    if not mats:
        if cols is None:
            raise ShapeMismatch("vstack of nothing needs an explicit column count")
        return Matrix.zeros(field, 0, cols)
    c = mats[0].cols
    for m in mats:
        if m.field != field or m.cols != c:
            raise ShapeMismatch("vstack shape/field mismatch")
    return Matrix(field, np.vstack([m.data for m in mats]), _trusted=True)


def hstack(field: Field, mats: Sequence[Matrix], rows: Optional[int] = None) -> Matrix:
    if not mats:
        if rows is None:
            raise ShapeMismatch("hstack of nothing needs an explicit row count")
        return Matrix.zeros(field, rows, 0)
    r = mats[0].rows
    for m in mats:
        if m.field != field or m.rows != r:
            raise ShapeMismatch("hstack shape/field mismatch")
    return Matrix(field, np.hstack([m.data for m in mats]), _trusted=True)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Matrix.zeros(field, rows, cols).data.copy()
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m.data
        r += m.rows
        c += m.cols
    return Matrix(field, out, _trusted=True)


def kron(a: Matrix, b: Matrix) -> Matrix:
    a._check(b)
    return Matrix(a.field, a.field.normalize(np.kron(a.data, b.data)), _trusted=True)


# -- gaussian elimination ----------------------------------------------


def rref(m: Matrix) -> Tuple[Matrix, int, Tuple[int, ...]]:
    """Reduced row echelon form. Returns (rref matrix, rank, pivot columns)."""
    field = m.field
    a = m.data.copy()
    nr, nc = a.shape
    pivots: List[int] = []
    row = 0
    for col in range(nc):
        if row == nr:
            break
        piv = None
        for i in range(row, nr):
            if a[i, col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = field.inv(a[row, col])
        a[row] = field.normalize(a[row] * inv)
        factors = a[:, col].copy()
        factors[row] = field.zero()
        a = field.normalize(a - np.outer(factors, a[row]))
        pivots.append(col)
        row += 1
    return Matrix(field, a, _trusted=True), len(pivots), tuple(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def kernel_basis(m: Matrix) -> Matrix:
    """Basis (as rows) of the right kernel {x : m x = 0}."""
    field = m.field
    r, nrank, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    out = Matrix.zeros(field, len(free), m.cols).data.copy()
    one = field.one()
    for k, fc in enumerate(free):
        out[k, fc] = one
        for i, pc in enumerate(pivots):
            out[k, pc] = field.normalize(-r.data[i, fc])
    return Matrix(field, out, _trusted=True)


def solve_matrix(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """One solution X of m @ X = b, or None when inconsistent."""
    m._check(b)
    if m.rows != b.rows:
        raise ShapeMismatch(f"solve: {m.shape} vs rhs {b.shape}")
    aug = hstack(m.field, [m, b])
    r, _, pivots = rref(aug)
    for p in pivots:
        if p >= m.cols:
            return None
    out = Matrix.zeros(m.field, m.cols, b.cols).data.copy()
    for i, p in enumerate(pivots):
        out[p, :] = r.data[i, m.cols :]
    return Matrix(m.field, out, _trusted=True)


def solve_right(m: Matrix, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution x of m x = b for a 1-D right side, or None."""
    bm = Matrix(m.field, np.asarray(b).reshape(-1, 1))
    x = solve_matrix(m, bm)
    return None if x is None else x.data[:, 0].copy()


# -- subspaces -----------------------------------------------------------


class QuotientSpace:
    """A surjection k^n -> k^q whose kernel is a chosen subspace.

    projection has shape (q, n); section has shape (n, q) and satisfies
    projection @ section = identity.
    """

    __slots__ = ("projection", "section")

    def __init__(self, projection: Matrix, section: Matrix):
        self.projection = projection
        self.section = section

    @property
    def dim(self) -> int:
        return self.projection.rows

    @property
    def ambient_dim(self) -> int:
        return self.projection.cols


class Subspace:
    """Subspace of k^n given by a row-basis matrix held in rref."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field: Field, ambient_dim: int, rows: Optional[Matrix] = None):
        self.field = field
        self.ambient_dim = ambient_dim
        if rows is None:
            rows = Matrix.zeros(field, 0, ambient_dim)
        if rows.cols != ambient_dim:
            raise ShapeMismatch("basis rows do not match ambient dimension")
        r, nrank, _ = rref(rows)
        self.basis = Matrix(field, r.data[:nrank].copy(), _trusted=True)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"

    def contains_vector(self, vec: np.ndarray) -> bool:
        if self.dim == 0:
            return not np.asarray(vec).any()
        return solve_right(self.basis.transpose(), vec) is not None

    def contains(self, other: "Subspace") -> bool:
        if other.dim == 0:
            return True
        return (self + other).dim == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, vstack(self.field, [self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # x in both spans: x = U^T a = V^T b; read a-part off the kernel of [U^T | -V^T]
        stacked = hstack(self.field, [self.basis.transpose(), -other.basis.transpose()])
        ker = kernel_basis(stacked)
        acoef = Matrix(self.field, ker.data[:, : self.dim].copy(), _trusted=True)
        return Subspace(self.field, self.ambient_dim, acoef @ self.basis)

    def _check(self, other: "Subspace"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise ShapeMismatch("ambient dimensions differ")

    def quotient(self) -> QuotientSpace:
        """Canonical surjection of the ambient space with this as kernel."""
        field = self.field
        n = self.ambient_dim
        _, _, pivots = rref(self.basis)
        free = [c for c in range(n) if c not in pivots]
        proj = Matrix.zeros(field, len(free), n).data.copy()
        one = field.one()
        for j, fc in enumerate(free):
            proj[j, fc] = one
            for i, pc in enumerate(pivots):
                proj[j, pc] = field.normalize(-self.basis.data[i, fc])
        sect = Matrix.zeros(field, n, len(free)).data.copy()
        for j, fc in enumerate(free):
            sect[fc, j] = one
        return QuotientSpace(
            Matrix(field, proj, _trusted=True), Matrix(field, sect, _trusted=True)
        )


def row_space(m: Matrix) -> Subspace:
    return Subspace(m.field, m.cols, m)


def column_space(m: Matrix) -> Subspace:
    return Subspace(m.field, m.rows, m.transpose())


def coordinates_in_rows(basis: Matrix, vectors: Matrix) -> Optional[Matrix]:
    """Express each row of `vectors` in the row basis `basis`.

    Returns C with C @ basis = vectors, or None if some row is outside
    the span.
    """
    sol = solve_matrix(basis.transpose(), vectors.transpose())
    return None if sol is None else sol.transpose()
