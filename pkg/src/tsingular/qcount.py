"""Closed-form counts: Gaussian coefficients, rank counts, anzahl formulas.

Every function returns an exact Python int.  Parameters outside the natural
range of a count give 0; a field size below 2 or a malformed shape raises.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

Shape = tuple[int, ...]
TypeVector = tuple[int, ...]


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")


def _exact_div(a: int, b: int) -> int:
    quo, rem = divmod(a, b)
    assert rem == 0, f"inexact division {a} / {b}"
    return quo


@lru_cache(maxsize=None)
def _gauss(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return _exact_div(num, den)


def gauss(n: int, k: int, q: int) -> int:
    """Gaussian binomial [n choose k]_q."""
    _check_q(q)
    if k < 0 or k > n:
        return 0
    return _gauss(n, min(k, n - k), q)


def gl_order(n: int, q: int) -> int:
    _check_q(q)
    out = 1
    for s in range(n):
        out *= q**n - q**s
    return out


def count_rank_matrices(i: int, m: int, n: int, q: int) -> int:
    """Number of m x n matrices of rank i over GF(q)."""
    _check_q(q)
    if m < 0 or n < 0 or i < 0 or i > min(m, n):
        return 0
    out = q ** (i * (i - 1) // 2) * gauss(m, i, q)
    for t in range(n - i + 1, n + 1):
        out *= q**t - 1
    return out


def count_intersecting_subspaces(m: int, n: int, i: int, q: int) -> int:
    """m-dim subspaces meeting a fixed m-dim subspace of GF(q)^n in dimension m - i."""
    _check_q(q)
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if not 0 <= i <= min(m, n - m):
        raise ValueError(f"need 0 <= i <= min(m, n-m) = {min(m, n - m)}, got i={i}")
    return q ** (i * i) * gauss(n - m, i, q) * gauss(m, i, q)


def count_row_extension(t1: int, t2: int, m2: int, n: int, q: int) -> int:
    """Blocks A2 (m2 x n) with rank of A1 stacked over A2 equal to t2, given rank A1 = t1."""
    _check_q(q)
    if not 0 <= t1 <= t2:
        raise ValueError(f"need 0 <= t1 <= t2, got t1={t1}, t2={t2}")
    return q ** (m2 * t1) * count_rank_matrices(t2 - t1, m2, n - t1, q)


def count_col_extension(t1: int, t2: int, m: int, n2: int, q: int) -> int:
    """Blocks A2 (m x n2) with rank (A1 A2) = t2, given rank A1 = t1."""
    _check_q(q)
    if not 0 <= t1 <= t2:
        raise ValueError(f"need 0 <= t1 <= t2, got t1={t1}, t2={t2}")
    return q ** (t1 * n2) * count_rank_matrices(t2 - t1, m - t1, n2, q)


def count_block_rank(m1: int, m2: int, n1: int, n2: int, alpha: int, q: int) -> int:
    """Block matrices [[A, B], [C, D]] (rows m1, m2; cols n1, n2) with
    rank (C D) = rank [B; D] = alpha."""
    _check_q(q)
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    N = count_rank_matrices
    total = 0
    for l in range(max(0, alpha - n1, alpha - m1), alpha + 1):
        term = N(l, m2, n2, q) * N(alpha - l, m1, n2 - l, q) * N(alpha - l, m2 - l, n1, q)
        if term:
            total += q ** ((m1 + n1) * l + m1 * n1) * term
    return total


# -- t-singular spaces -------------------------------------------------------

def check_shape(shape: Sequence[int]) -> Shape:
    shape = tuple(shape)
    if len(shape) < 1:
        raise ValueError("shape needs at least one block")
    if any(n < 0 for n in shape):
        raise ValueError(f"block sizes must be >= 0, got {shape}")
    return shape


def _check_lengths(shape: Sequence[int], *types: Sequence[int]) -> None:
    for k in types:
        if len(k) != len(shape):
            raise ValueError(f"type {tuple(k)} does not match shape {tuple(shape)}")


def _diffs(k: Sequence[int]) -> list[int]:
    """k_i - k_{i+1}, with k_{t+1} = 0."""
    return [a - b for a, b in zip(k, list(k[1:]) + [0])]


def group_order(shape: Sequence[int], q: int) -> int:
    """Order of the block upper-triangular group with diagonal block sizes ``shape``."""
    shape = check_shape(shape)
    out = 1
    for n in shape:
        out *= gl_order(n, q)
    upper = sum(shape[i] * shape[j] for i in range(len(shape)) for j in range(i + 1, len(shape)))
    return out * q**upper


def is_valid_type(shape: Sequence[int], k: Sequence[int]) -> bool:
    _check_lengths(shape, k)
    return all(0 <= d <= n for d, n in zip(_diffs(k), shape))


def is_valid_type_pair(shape: Sequence[int], k: Sequence[int], l: Sequence[int]) -> bool:
    """True iff type-l subspaces occur inside a type-k subspace."""
    _check_lengths(shape, k, l)
    return all(0 <= dl <= dk <= n for dl, dk, n in zip(_diffs(l), _diffs(k), shape))


def _tails(shape: Sequence[int]) -> list[int]:
    """tails[j] = n_{j+1} + ... + n_t (0-based j)."""
    out = [0] * len(shape)
    acc = 0
    for j in range(len(shape) - 1, -1, -1):
        out[j] = acc
        acc += shape[j]
    return out


def anzahl(shape: Sequence[int], k: Sequence[int], q: int) -> int:
    """Number of subspaces of type k."""
    shape = check_shape(shape)
    _check_q(q)
    if not is_valid_type(shape, k):
        return 0
    t = len(shape)
    tails = _tails(shape)
    out = gauss(shape[-1], k[-1], q)
    for j in range(t - 1):
        d = k[j] - k[j + 1]
        out *= q ** (d * (tails[j] - k[j + 1])) * gauss(shape[j], d, q)
    return out


def count_contained(shape: Sequence[int], k: Sequence[int], l: Sequence[int], q: int) -> int:
    """Type-l subspaces inside a fixed type-k subspace."""
    shape = check_shape(shape)
    _check_q(q)
    if not is_valid_type_pair(shape, k, l):
        return 0
    t = len(shape)
    out = gauss(k[-1], l[-1], q)
    for j in range(t - 1):
        dl = l[j] - l[j + 1]
        out *= q ** (dl * (k[j + 1] - l[j + 1])) * gauss(k[j] - k[j + 1], dl, q)
    return out


def count_containing(shape: Sequence[int], l: Sequence[int], k: Sequence[int], q: int) -> int:
    """Type-k subspaces containing a fixed type-l subspace."""
    shape = check_shape(shape)
    _check_q(q)
    if not is_valid_type_pair(shape, k, l):
        return 0
    t = len(shape)
    tails = _tails(shape)
    expo = 0
    out = gauss(shape[-1] - l[-1], k[-1] - l[-1], q)
    for j in range(t - 1):
        free = k[j] - k[j + 1] - l[j] + l[j + 1]
        expo += free * (tails[j] - k[j + 1])
        out *= gauss(shape[j] - l[j] + l[j + 1], free, q)
    return q**expo * out


def valid_types(shape: Sequence[int]) -> list[TypeVector]:
    """All valid types for a shape, in lexicographic order."""
    shape = check_shape(shape)
    out = []
    for diffs in product(*(range(n + 1) for n in shape)):
        # k_i is the sum of the differences from block i onward
        out.append(tuple(sum(diffs[i:]) for i in range(len(shape))))
    return sorted(out)
