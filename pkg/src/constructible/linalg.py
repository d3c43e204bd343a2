"""Exact linear algebra over the rationals or a prime field.

Matrices are immutable and small; everything is Gaussian elimination on
Python objects (``Fraction`` or ``int`` modulo ``p``).  No floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the integers modulo a prime ``p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, x) -> Fraction | int:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        return "q" if self.p is None else f"p:{self.p}"


QQ = Field()


@dataclass(frozen=True)
class Matrix:
    """A ``nrows x ncols`` matrix; a map from ``k^ncols`` to ``k^nrows``."""

    nrows: int
    ncols: int
    rows: tuple[tuple, ...]
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None,
                  field: Field = QQ) -> "Matrix":
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), ncols, rows, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        z = field.zero
        return cls(nrows, ncols, tuple((z,) * ncols for _ in range(nrows)), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls(n, n, tuple(tuple(field.one if i == j else field.zero
                                     for j in range(n)) for i in range(n)), field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int,
                     field: Field = QQ) -> "Matrix":
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(nrows)], len(columns), field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = f.zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.nrows, other.ncols, tuple(out), f)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(self.nrows, self.ncols, tuple(
            tuple(f.add(a, b) for a, b in zip(r, s))
            for r, s in zip(self.rows, other.rows)), f)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(self.nrows, self.ncols, tuple(
            tuple(f.sub(f.zero, a) for a in r) for r in self.rows), f)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, tuple(self.columns()), self.field)

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> "Matrix":
        return Matrix(len(rows), len(cols), tuple(
            tuple(self.rows[i][j] for j in cols) for i in rows), self.field)

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        f = self.field
        p = f.p
        m = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            row = m[r]
            inv = f.inv(row[c])
            if inv != 1:
                row = [f.mul(inv, x) if x else x for x in row]
                m[r] = row
            # only the nonzero tail of the pivot row changes the other rows
            support = [j for j in range(c, self.ncols) if row[j]]
            for i in range(self.nrows):
                factor = m[i][c]
                if i == r or not factor:
                    continue
                other = m[i]
                if p is None:
                    for j in support:
                        other[j] = other[j] - factor * row[j]
                else:
                    for j in support:
                        other[j] = (other[j] - factor * row[j]) % p
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(self.nrows, self.ncols, tuple(tuple(x) for x in m), f), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Matrix":
        """Columns form a basis of the null space (shape ``ncols x nullity``)."""
        f = self.field
        reduced, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for c in free:
            v = [f.zero] * self.ncols
            v[c] = f.one
            for i, p in enumerate(pivots):
                v[p] = f.sub(f.zero, reduced.rows[i][c])
            basis.append(v)
        return Matrix.from_columns(basis, self.ncols, f)

    def left_kernel(self) -> "Matrix":
        """Rows form a basis of ``{w : w @ self = 0}`` (shape ``corank x nrows``)."""
        return self.transpose().kernel().transpose()

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("non-square matrix has no inverse")
        n = self.nrows
        aug = hstack([self, Matrix.identity(n, self.field)])
        reduced, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return reduced.submatrix(range(n), range(n, 2 * n))

    def solve_left(self, target: "Matrix") -> "Matrix":
        """Return ``X`` with ``X @ self == target``; raise ``ValueError`` if none."""
        xt = self.transpose().solve(target.transpose())
        return xt.transpose()

    def solve(self, target: "Matrix") -> "Matrix":
        """Return one ``X`` with ``self @ X == target``; raise ``ValueError`` if none."""
        if target.nrows != self.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        aug = hstack([self, target])
        reduced, pivots = aug.rref()
        if any(p >= self.ncols for p in pivots):
            raise ValueError("inconsistent system")
        x = [[f.zero] * target.ncols for _ in range(self.ncols)]
        for i, p in enumerate(pivots):
            for j in range(target.ncols):
                x[p][j] = reduced.rows[i][self.ncols + j]
        return Matrix(self.ncols, target.ncols, tuple(tuple(r) for r in x), f)

    def to_json(self) -> list[list]:
        def enc(x):
            if self.field.p is not None or x.denominator == 1:
                return int(x)
            return f"{x.numerator}/{x.denominator}"
        return [[enc(x) for x in r] for r in self.rows]

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.rows) + "]"


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    nrows = blocks[0].nrows
    field = blocks[0].field
    if any(b.nrows != nrows for b in blocks):
        raise ValueError("row counts differ")
    ncols = sum(b.ncols for b in blocks)
    rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(nrows))
    return Matrix(nrows, ncols, rows, field)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    ncols = blocks[0].ncols
    field = blocks[0].field
    if any(b.ncols != ncols for b in blocks):
        raise ValueError("column counts differ")
    rows = sum((b.rows for b in blocks), ())
    return Matrix(len(rows), ncols, rows, field)


def block_diag(blocks: Sequence[Matrix], field: Field = QQ) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = [[field.zero] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(nrows, ncols, tuple(tuple(r) for r in out), field)
