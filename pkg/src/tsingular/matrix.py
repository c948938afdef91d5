"""Dense matrices and subspaces over GF(q).

A :class:`Subspace` is stored as its reduced row-echelon basis, so equality and
hashing of subspaces is equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .field import FieldSpec


class DimensionError(ValueError):
    pass


Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Matrix:
    spec: FieldSpec
    rows: int
    cols: int
    data: Rows

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Iterable[Sequence[int]], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionError("column count is required for a matrix with no rows")
            cols = len(data[0])
        q = spec.q
        for r in data:
            if len(r) != cols:
                raise DimensionError(f"row {r} does not have {cols} entries")
            for a in r:
                if not 0 <= a < q:
                    raise ValueError(f"entry {a} out of range for {spec!r}")
        return cls(spec, len(data), cols, data)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(spec, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(spec, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat view."""
        return tuple(a for r in self.data for a in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def columns(self, lo: int, hi: int) -> "Matrix":
        return Matrix(self.spec, self.rows, hi - lo, tuple(r[lo:hi] for r in self.data))

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionError(f"cannot stack {self.cols}-column and {other.cols}-column matrices")
        return Matrix(self.spec, self.rows + other.rows, self.cols, self.data + other.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __str__(self):
        return format_matrix(self)


def _rref_rows(rows: Iterable[Sequence[int]], ncols: int, spec: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan elimination; returns (nonzero RREF rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if work[i][c]:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        lead = work[r][c]
        if lead != 1:
            work[r] = spec.scale(spec.inv(lead), work[r])
        prow = work[r]
        for i in range(nrows):
            if i != r:
                f = work[i][c]
                if f:
                    work[i] = spec.axpy(spec.neg(f), work[i], prow)
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form with zero rows dropped, its rank and pivot columns."""
    rows, pivots = _rref_rows(m.data, m.cols, m.spec)
    out = Matrix(m.spec, len(rows), m.cols, tuple(tuple(r) for r in rows))
    return out, len(rows), pivots


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.data, m.cols, m.spec)[0])


def rank_rows(rows: Sequence[Sequence[int]], ncols: int, spec: FieldSpec) -> int:
    return len(_rref_rows(rows, ncols, spec)[0])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.spec != b.spec:
        raise DimensionError("matrices over different fields")
    return Matrix(a.spec, a.rows, b.cols, tuple(tuple(r) for r in _mul_rows(a.data, b.data, b.cols, a.spec)))


def _mul_rows(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], bcols: int, spec: FieldSpec) -> list[list[int]]:
    out = []
    for row in a:
        acc = [0] * bcols
        for x, brow in zip(row, b):
            if x:
                acc = spec.axpy(x, acc, brow)
        out.append(acc)
    return out


def is_invertible(m: Matrix) -> bool:
    if m.rows != m.cols:
        raise DimensionError(f"{m.rows}x{m.cols} matrix is not square")
    return rank(m) == m.rows


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(q)^ambient held by its RREF basis (no zero rows)."""

    ambient: int
    basis: Matrix

    @classmethod
    def span(cls, spec: FieldSpec, ambient: int, rows: Iterable[Sequence[int]] = ()) -> "Subspace":
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != ambient:
                raise DimensionError(f"vector {r} is not in GF(q)^{ambient}")
        red, _ = _rref_rows(rows, ambient, spec)
        return cls._from_rref(spec, ambient, red)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        return cls.span(m.spec, m.cols, m.data)

    @classmethod
    def _from_rref(cls, spec: FieldSpec, ambient: int, rows) -> "Subspace":
        data = tuple(tuple(r) for r in rows)
        return cls(ambient, Matrix(spec, len(data), ambient, data))

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "Subspace":
        return cls(n, Matrix(spec, 0, n, ()))

    @classmethod
    def full(cls, spec: FieldSpec, n: int) -> "Subspace":
        return cls(n, Matrix.identity(spec, n))

    @property
    def spec(self) -> FieldSpec:
        return self.basis.spec

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def rows(self) -> Rows:
        return self.basis.data

    @property
    def key(self) -> Rows:
        """Sort key: the RREF entries."""
        return self.basis.data

    def __contains__(self, v: Sequence[int]) -> bool:
        return rank_rows(self.rows + (tuple(v),), self.ambient, self.spec) == self.dim

    def contains(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return rank_rows(self.rows + other.rows, self.ambient, self.spec) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __str__(self):
        return format_matrix(self.basis)


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient dimensions differ: {a.ambient} != {b.ambient}")
    if a.spec != b.spec:
        raise DimensionError("subspaces over different fields")


def sum_space(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    red, _ = _rref_rows(a.rows + b.rows, a.ambient, a.spec)
    return Subspace._from_rref(a.spec, a.ambient, red)


def left_kernel(rows: Sequence[Sequence[int]], ncols: int, spec: FieldSpec) -> list[list[int]]:
    """Basis of {x : x M = 0} for the matrix M with the given rows."""
    m = len(rows)
    aug = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    red, pivots = _rref_rows(aug, ncols + m, spec)
    return [r[ncols:] for r, p in zip(red, pivots) if p >= ncols]


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b from the solutions of x·A = y·B."""
    _check_same(a, b)
    spec, n = a.spec, a.ambient
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(spec, n)
    ker = left_kernel(a.rows + b.rows, n, spec)
    # each kernel vector (x, y) has x·A = -y·B, which lies in both spaces
    vecs = _mul_rows([k[: a.dim] for k in ker], a.rows, n, spec)
    red, _ = _rref_rows(vecs, n, spec)
    return Subspace._from_rref(spec, n, red)


def project(s: Subspace, lo: int, hi: int) -> Subspace:
    """Image of s on the coordinates lo..hi-1."""
    if not 0 <= lo <= hi <= s.ambient:
        raise DimensionError(f"bad coordinate range [{lo}, {hi}) for ambient {s.ambient}")
    red, _ = _rref_rows([r[lo:hi] for r in s.rows], hi - lo, s.spec)
    return Subspace._from_rref(s.spec, hi - lo, red)


def enumerate_subspaces(n: int, k: int, spec: FieldSpec) -> Iterator[Subspace]:
    """Every k-dim subspace of GF(q)^n once: pivot columns, then the free entries."""
    if not 0 <= k <= n:
        raise DimensionError(f"need 0 <= k <= n, got k={k}, n={n}")
    q = spec.q
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivset]
        template = [[0] * n for _ in range(k)]
        for r, p in enumerate(pivots):
            template[r][p] = 1
        for fill in product(range(q), repeat=len(free)):
            for (r, c), a in zip(free, fill):
                template[r][c] = a
            yield Subspace._from_rref(spec, n, template)


def enumerate_all_subspaces(n: int, spec: FieldSpec) -> Iterator[Subspace]:
    for k in range(n + 1):
        yield from enumerate_subspaces(n, k, spec)


def enumerate_matrices(m: int, n: int, spec: FieldSpec) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All m x n matrices as row tuples, lexicographic in row-major codes."""
    rows = list(product(range(spec.q), repeat=n))
    for choice in product(rows, repeat=m):
        yield choice


# -- text format: one row per line, entries separated by single spaces ---------

def format_matrix(m: Matrix) -> str:
    return "\n".join(" ".join(str(a) for a in r) for r in m.data)


def parse_matrix(text: str, spec: FieldSpec, cols: int | None = None) -> Matrix:
    """Parse the text format.  A blank text is a 0 x cols matrix."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows = []
    for ln in lines:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError:
            raise ValueError(f"bad matrix row {ln!r}") from None
    if not rows:
        if cols is None:
            raise DimensionError("empty matrix text needs an explicit column count")
        return Matrix(spec, 0, cols, ())
    m = Matrix.from_rows(spec, rows)
    if cols is not None and m.cols != cols:
        raise DimensionError(f"matrix has {m.cols} columns, expected {cols}")
    return m
