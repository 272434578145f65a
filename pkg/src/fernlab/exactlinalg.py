"""Exact rational matrices and canonical subspaces.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator coprime with a positive denominator. Subspaces are stored by
their reduced row-echelon basis, so two subspaces are equal exactly when
their stored bases are equal.

>>> rref(Matrix.from_rows([[2, 0], [0, 3]]))[1]
[0, 1]
>>> span([(1, 1), (2, 2)], 2).dim
1
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError, Singular

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

EQUAL = "equal"
A_IN_B = "a_in_b"
B_IN_A = "b_in_a"
INCOMPARABLE = "incomparable"


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
    raise ParseError(f"not a rational: {x!r}")


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    @staticmethod
    def from_rows(data: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = tuple(tuple(to_rational(x) for x in r) for r in data)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        return Matrix(len(rows), ncols, rows)

    @staticmethod
    def identity(n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return Matrix(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(r: int, c: int) -> "Matrix":
        return Matrix(r, c, tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r)))

    @staticmethod
    def permutation(one_line: Sequence[int]) -> "Matrix":
        """Matrix M with M e_k = e_{w(k)} (1-based one-line notation)."""
        n = len(one_line)
        data = [[0] * n for _ in range(n)]
        for k, wk in enumerate(one_line):
            data[wk - 1][k] = 1
        return Matrix.from_rows(data)

    @staticmethod
    def elementary(n: int, i: int, j: int) -> "Matrix":
        """e^{i,j}: a single 1 in row i, column j (1-based)."""
        data = [[0] * n for _ in range(n)]
        data[i - 1][j - 1] = 1
        return Matrix.from_rows(data)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.transpose().entries
        out = []
        for r in self.entries:
            out.append(tuple(_dot(r, c) for c in cols))
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def apply(self, v: Sequence) -> tuple:
        return tuple(_dot(r, v) for r in self.entries)

    def flatten(self) -> tuple:
        return tuple(a for r in self.entries for a in r)

    @staticmethod
    def unflatten(vec: Sequence, n: int) -> "Matrix":
        return Matrix(n, n, tuple(tuple(vec[i * n:(i + 1) * n]) for i in range(n)))

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise Singular("non-square matrix")
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        red, piv = _rref_rows(aug, n)
        if piv != list(range(n)):
            raise Singular("matrix is not invertible")
        return Matrix(n, n, tuple(tuple(r[n:]) for r in red))

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def to_json(self) -> list:
        return [[fmt_rational(a) for a in r] for r in self.entries]


def _dot(a: Sequence, b: Sequence) -> Fraction:
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def _rref_rows(rows: list, ncols: int | None = None) -> tuple[list, list]:
    """Gauss-Jordan on a list of mutable rows; pivots only in the first ncols columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    width = len(rows[0])
    limit = width if ncols is None else ncols
    pivots: list[int] = []
    top = 0
    for c in range(limit):
        p = None
        for r in range(top, len(rows)):
            if rows[r][c]:
                p = r
                break
        if p is None:
            continue
        rows[top], rows[p] = rows[p], rows[top]
        piv = rows[top]
        inv = 1 / piv[c]
        if inv != 1:
            for k in range(c, width):
                if piv[k]:
                    piv[k] *= inv
        nz = [k for k in range(c, width) if piv[k]]
        for r in range(len(rows)):
            if r != top:
                f = rows[r][c]
                if f:
                    row = rows[r]
                    for k in nz:
                        row[k] -= f * piv[k]
        pivots.append(c)
        top += 1
        if top == len(rows):
            break
    return rows[:top] if ncols is None else rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    red, piv = _rref_rows(list(m.entries))
    return Matrix(len(red), m.cols, tuple(tuple(r) for r in red)), piv


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple  # RREF rows
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix(len(self.basis), self.ambient_dim, self.basis)

    def contains(self, v: Sequence) -> bool:
        v = [to_rational(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k in range(p, self.ambient_dim):
                    if row[k]:
                        v[k] -= c * row[k]
        return not any(v)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [[fmt_rational(a) for a in r] for r in self.basis]}


def zero_space(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, (), ())


def full_space(ambient_dim: int) -> Subspace:
    return coordinate_span(range(ambient_dim), ambient_dim)


def coordinate_span(coords: Iterable[int], ambient_dim: int) -> Subspace:
    """Span of the standard basis vectors at the given 0-based coordinates."""
    cs = sorted(set(coords))
    rows = tuple(tuple(Fraction(int(k == c)) for k in range(ambient_dim)) for c in cs)
    return Subspace(ambient_dim, rows, tuple(cs))


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows.append([to_rational(x) for x in v])
    red, piv = _rref_rows(rows)
    return Subspace(ambient_dim, tuple(tuple(r) for r in red), tuple(piv))


def _check(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    if not b.basis:
        return a
    if not a.basis:
        return b
    return span(a.basis + b.basis, a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: RREF of [[a, a], [b, 0]]; rows with zero left half give a ∩ b."""
    _check(a, b)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return zero_space(n)
    zero = (Fraction(0),) * n
    rows = [list(r) + list(r) for r in a.basis] + [list(r) + list(zero) for r in b.basis]
    red, piv = _rref_rows(rows)
    meet = [r[n:] for r, p in zip(red, piv) if p >= n]
    return span(meet, n)


def compare(a: Subspace, b: Subspace) -> str:
    _check(a, b)
    if a == b:
        return EQUAL
    if a.dim <= b.dim and all(b.contains(v) for v in a.basis):
        return A_IN_B
    if b.dim <= a.dim and all(a.contains(v) for v in b.basis):
        return B_IN_A
    return INCOMPARABLE


def vanishing_subspace(space: Subspace, coords: Sequence[int]) -> Subspace:
    """Vectors of `space` whose coordinates at `coords` are all zero.

    Cheaper than intersecting with a coordinate subspace: a nullspace of the
    basis restricted to `coords`.
    """
    if not space.basis:
        return space
    if not coords:
        return space
    k = space.dim
    # rows: restricted coordinates | identity on basis index
    rows = [[row[c] for c in coords] + [Fraction(int(i == j)) for j in range(k)]
            for i, row in enumerate(space.basis)]
    red, piv = _rref_rows(rows)
    m = len(coords)
    combos = [r[m:] for r, p in zip(red, piv) if p >= m]
    vecs = []
    for comb in combos:
        v = [Fraction(0)] * space.ambient_dim
        for ci, row in zip(comb, space.basis):
            if ci:
                for t, x in enumerate(row):
                    if x:
                        v[t] += ci * x
        vecs.append(v)
    return span(vecs, space.ambient_dim)


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-exact elimination."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        piv = a[c][c]
        out *= piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f /= piv
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return out
