"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Matrices are dense
and immutable; the incremental :class:`Subspace` is the workhorse used by the
degreewise computations elsewhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


class QMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        data = tuple(as_fraction(x) for x in entries)
        if not data:
            data = (ZERO,) * (rows * cols)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMatrix":
        columns = list(columns)
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols)

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), ZERO))
        return QMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), ZERO) for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    # in place on a list of row lists
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = ONE / pr[c]
        if inv != ONE:
            for k in range(c, ncols):
                if pr[k]:
                    pr[k] *= inv
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for k in range(c, ncols):
                    if pr[k]:
                        ri[k] -= f * pr[k]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: QMatrix) -> Tuple[QMatrix, List[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return QMatrix.from_rows(rows, m.cols) if rows else QMatrix(0, m.cols), pivots


def rank(m: QMatrix) -> int:
    return len(_rref_rows(m.to_rows(), m.cols)[1])


def kernel_basis(m: QMatrix) -> QMatrix:
    """Matrix whose columns form a basis of the right kernel of ``m``."""
    vecs = kernel_vectors(m.to_rows(), m.cols)
    return QMatrix.from_columns(vecs, m.cols) if vecs else QMatrix(m.cols, 0)


def kernel_vectors(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """Kernel basis as a list of vectors; one per free column, in column order."""
    red, pivots = _rref_rows([list(r) for r in rows], ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        out.append(tuple(v))
    return out


def rank_of_vectors(vectors: Iterable[Sequence[Fraction]], ncols: int) -> int:
    return len(_rref_rows([list(v) for v in vectors], ncols)[1])


class Subspace:
    """A subspace of Q^n kept as fully reduced echelon rows.

    ``add`` is incremental, so greedy complement selection (keep the vectors
    that are new modulo what is already there) is cheap.
    """

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n: int, vectors: Iterable[Sequence[Fraction]] = ()):
        self.n = n
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Fraction]) -> List[Fraction]:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                for k, x in enumerate(row):
                    if x:
                        w[k] -= f * x
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero(self.reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add ``v``; return True when it enlarged the subspace."""
        w = self.reduce(v)
        p = next((k for k, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = ONE / w[p]
        if inv != ONE:
            w = [x * inv for x in w]
        for row in self.rows:
            f = row[p]
            if f:
                for k, x in enumerate(w):
                    if x:
                        row[k] -= f * x
        # keep pivots sorted so the rows stay in echelon order
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < p:
            pos += 1
        self.rows.insert(pos, w)
        self.pivots.insert(pos, p)
        return True

    def basis(self) -> List[Vector]:
        return [tuple(r) for r in self.rows]

    def complement_positions(self) -> List[int]:
        piv = set(self.pivots)
        return [k for k in range(self.n) if k not in piv]

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of ``v`` (assumed inside the subspace) in ``basis()``."""
        return tuple(v[p] for p in self.pivots)
