"""t-singular linear spaces: GF(q)^(n_1+...+n_t) under the block upper-triangular group.

Blocks and the filtration subspaces E_i are numbered from 1 as usual; E_1 is
the whole space and E_i is spanned by the last n_i + ... + n_t coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .field import FieldSpec
from .matrix import (
    DimensionError,
    Matrix,
    Subspace,
    _mul_rows,
    _rref_rows,
    enumerate_subspaces,
    is_invertible,
    rank_rows,
)
from .qcount import TypeVector, check_shape, group_order, is_valid_type

DEFAULT_GUARD = 10**6


class GroupTooLarge(RuntimeError):
    pass


def offsets(shape: Sequence[int]) -> list[int]:
    """Start coordinate of each block, plus the total dimension at the end."""
    out = [0]
    for n in shape:
        out.append(out[-1] + n)
    return out


def e_subspace(shape: Sequence[int], i: int, spec: FieldSpec) -> Subspace:
    shape = check_shape(shape)
    if not 1 <= i <= len(shape):
        raise ValueError(f"E_{i} undefined for t={len(shape)}")
    off = offsets(shape)
    N = off[-1]
    return Subspace._from_rref(spec, N, [[int(c == r) for c in range(N)] for r in range(off[i - 1], N)])


def type_of(shape: Sequence[int], s: Subspace) -> TypeVector:
    """(dim s, dim s∩E_2, ..., dim s∩E_t) via ranks of leading column blocks."""
    shape = check_shape(shape)
    off = offsets(shape)
    if s.ambient != off[-1]:
        raise DimensionError(f"subspace of GF(q)^{s.ambient} does not fit shape {shape}")
    k1 = s.dim
    rows = s.rows
    out = [k1]
    for i in range(1, len(shape)):
        w = off[i]
        out.append(k1 - rank_rows([r[:w] for r in rows], w, s.spec))
    return tuple(out)


def orbit_representative(shape: Sequence[int], k: Sequence[int], spec: FieldSpec) -> Subspace:
    """Block-diagonal (I 0) representative of the type-k orbit."""
    shape = check_shape(shape)
    if not is_valid_type(shape, k):
        raise ValueError(f"{tuple(k)} is not a valid type for shape {shape}")
    off = offsets(shape)
    N = off[-1]
    kk = list(k) + [0]
    rows = []
    for j in range(len(shape)):
        for r in range(kk[j] - kk[j + 1]):
            rows.append([int(c == off[j] + r) for c in range(N)])
    return Subspace._from_rref(spec, N, rows)


def enumerate_by_type(shape: Sequence[int], k: Sequence[int], spec: FieldSpec) -> Iterator[Subspace]:
    """Every subspace of type k, by filtering all k_1-dim subspaces."""
    shape = check_shape(shape)
    if not is_valid_type(shape, k):
        return
    k = tuple(k)
    for s in enumerate_subspaces(sum(shape), k[0], spec):
        if type_of(shape, s) == k:
            yield s


@dataclass(frozen=True)
class GroupElement:
    shape: tuple[int, ...]
    mat: Matrix

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if self.shape != other.shape:
            raise DimensionError("group elements of different shapes")
        return GroupElement(self.shape, self.mat @ other.mat)


def is_group_element(shape: Sequence[int], m: Matrix) -> bool:
    off = offsets(shape)
    blk = [j for j, n in enumerate(shape) for _ in range(n)]
    if m.rows != off[-1] or m.cols != off[-1]:
        return False
    if any(m.data[r][c] for r in range(m.rows) for c in range(m.cols) if blk[r] > blk[c]):
        return False
    return is_invertible(m)


def identity_element(shape: Sequence[int], spec: FieldSpec) -> GroupElement:
    shape = check_shape(shape)
    return GroupElement(shape, Matrix.identity(spec, sum(shape)))


@lru_cache(maxsize=None)
def general_linear(n: int, spec: FieldSpec) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Members of GL_n(q) as row tuples, each row chosen outside the span of the previous ones."""
    q = spec.q
    vectors = list(product(range(q), repeat=n))
    out = []

    def rec(rows, span):
        if len(rows) == n:
            out.append(tuple(rows))
            return
        for v in vectors:
            if v in span:
                continue
            new_span = {tuple(spec.axpy(c, s, v)) for s in span for c in range(q)}
            rec(rows + [v], new_span)

    rec([], {(0,) * n})
    return tuple(out)


def enumerate_group(shape: Sequence[int], spec: FieldSpec, guard: int = DEFAULT_GUARD) -> Iterator[GroupElement]:
    """Every block upper-triangular invertible matrix for the shape, once each."""
    shape = check_shape(shape)
    order = group_order(shape, spec.q)
    if order > guard:
        raise GroupTooLarge(f"group for shape {shape} over GF({spec.q}) has order {order} > guard {guard}")
    off = offsets(shape)
    N = off[-1]
    blk = [j for j, n in enumerate(shape) for _ in range(n)]
    upper = [(r, c) for r in range(N) for c in range(N) if blk[r] < blk[c]]
    diag_lists = [general_linear(n, spec) for n in shape]
    q = spec.q
    for diags in product(*diag_lists):
        base = [[0] * N for _ in range(N)]
        for j, block in enumerate(diags):
            o = off[j]
            for r, row in enumerate(block):
                base[o + r][o : o + len(row)] = row
        for fill in product(range(q), repeat=len(upper)):
            for (r, c), a in zip(upper, fill):
                base[r][c] = a
            yield GroupElement(shape, Matrix(spec, N, N, tuple(tuple(row) for row in base)))


@lru_cache(maxsize=2)
def group_elements(shape: tuple[int, ...], spec: FieldSpec, guard: int = DEFAULT_GUARD) -> tuple[GroupElement, ...]:
    """Materialized ``enumerate_group``; the last two groups are kept."""
    return tuple(enumerate_group(shape, spec, guard))


def act(s: Subspace, g: GroupElement) -> Subspace:
    """Right action: the row space of basis(s) * g."""
    m = g.mat
    if m.rows != s.ambient:
        raise DimensionError(f"cannot act by a {m.rows}x{m.cols} matrix on GF(q)^{s.ambient}")
    spec = s.spec
    red, _ = _rref_rows(_mul_rows(s.rows, m.data, m.cols, spec), m.cols, spec)
    return Subspace._from_rref(spec, m.cols, red)
