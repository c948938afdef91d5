from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import all_subspace_sets, gauss_pascal, rank_by_span, span_set
from tsingular.field import gf
from tsingular.matrix import (
    DimensionError,
    Matrix,
    Subspace,
    enumerate_all_subspaces,
    enumerate_subspaces,
    format_matrix,
    intersect,
    is_invertible,
    mat_mul,
    parse_matrix,
    project,
    rank,
    rref,
    sum_space,
)


def M(spec, rows, cols=None):
    return Matrix.from_rows(spec, rows, cols)


def S(spec, rows, n=None):
    return Subspace.span(spec, n if n is not None else len(rows[0]), rows)


@st.composite
def matrices(draw, q=(2, 3, 4), max_rows=4, max_cols=4):
    spec = gf(draw(st.sampled_from(q)))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, spec.q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(spec, rows, c)


def _is_rref(m: Matrix) -> bool:
    last = -1
    for row in m.data:
        nz = [c for c, a in enumerate(row) if a]
        if not nz:
            return False
        p = nz[0]
        if p <= last or row[p] != 1:
            return False
        if any(other[p] for other in m.data if other is not row):
            return False
        last = p
    return True


class TestRref:
    def test_identity(self, F2):
        out, r, piv = rref(Matrix.identity(F2, 2))
        assert out.data == ((1, 0), (0, 1)) and r == 2 and piv == [0, 1]

    def test_duplicate_rows(self, F2):
        out, r, piv = rref(M(F2, [[1, 1], [1, 1]]))
        assert out.data == ((1, 1),) and r == 1 and piv == [0]

    def test_swap_and_reduce(self, F2):
        out, r, piv = rref(M(F2, [[0, 1, 1], [1, 0, 1]]))
        assert out.data == ((1, 0, 1), (0, 1, 1)) and r == 2

    @given(matrices())
    def test_rref_invariants(self, m):
        out, r, piv = rref(m)
        assert _is_rref(out)
        assert rref(out)[0] == out
        assert span_set(out.data, m.cols, m.spec) == span_set(m.data, m.cols, m.spec)
        assert r == rank_by_span(m.data, m.cols, m.spec)

    def test_empty(self, F3):
        out, r, piv = rref(Matrix.zeros(F3, 0, 3))
        assert out.rows == 0 and r == 0 and piv == []
        assert rref(Matrix.zeros(F3, 2, 0))[1] == 0


class TestSubspaceOps:
    def test_intersect_examples(self, F2):
        assert intersect(S(F2, [[1, 0]]), S(F2, [[0, 1]])).dim == 0
        a = S(F2, [[1, 0, 0], [0, 1, 0]])
        b = S(F2, [[0, 1, 0], [0, 0, 1]])
        assert intersect(a, a) == a
        assert intersect(a, b) == S(F2, [[0, 1, 0]])

    def test_sum_examples(self, F2):
        a = S(F2, [[1, 1, 0]])
        assert sum_space(a, Subspace.zero(F2, 3)) == a
        assert sum_space(S(F2, [[1, 0]]), S(F2, [[0, 1]])) == Subspace.full(F2, 2)
        assert sum_space(a, S(F2, [[0, 1, 1]])).rows == ((1, 0, 1), (0, 1, 1))

    def test_project_examples(self, F2):
        assert project(Subspace.full(F2, 4), 1, 3) == Subspace.full(F2, 2)
        assert project(S(F2, [[1, 1, 0]]), 0, 1) == S(F2, [[1]])
        assert project(S(F2, [[1, 1, 0], [0, 0, 1]]), 1, 3) == Subspace.full(F2, 2)
        with pytest.raises(DimensionError):
            project(Subspace.full(F2, 2), 1, 3)

    def test_ambient_mismatch(self, F2):
        with pytest.raises(DimensionError):
            intersect(Subspace.full(F2, 2), Subspace.full(F2, 3))
        with pytest.raises(DimensionError):
            sum_space(Subspace.full(F2, 2), Subspace.full(F2, 3))

    @pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 2)])
    def test_intersect_and_sum_match_sets(self, q, n):
        spec = gf(q)
        subs = list(enumerate_all_subspaces(n, spec))
        sets = {s: span_set(s.rows, n, spec) for s in subs}
        for a, b in product(subs, repeat=2):
            assert span_set(intersect(a, b).rows, n, spec) == sets[a] & sets[b]
            total = sum_space(a, b)
            assert sets[a] | sets[b] <= span_set(total.rows, n, spec)
            assert a.contains(intersect(a, b)) and total.contains(a) and total.contains(b)

    @pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
    def test_dimension_formula(self, q, n):
        spec = gf(q)
        subs = list(enumerate_all_subspaces(n, spec))
        for a, b in product(subs, repeat=2):
            assert intersect(a, b).dim + sum_space(a, b).dim == a.dim + b.dim

    def test_projection_of_everything_is_identity(self, F3):
        for s in enumerate_all_subspaces(3, F3):
            assert project(s, 0, 3) == s

    def test_zero_ambient(self, F2):
        z = Subspace.zero(F2, 0)
        assert list(enumerate_subspaces(0, 0, F2)) == [z]
        assert intersect(z, z) == z and sum_space(z, z) == z and project(z, 0, 0) == z


class TestEnumeration:
    def test_examples(self, F2):
        got = list(enumerate_subspaces(2, 1, F2))
        assert sorted(s.rows for s in got) == [((0, 1),), ((1, 0),), ((1, 1),)]
        assert list(enumerate_subspaces(3, 0, F2)) == [Subspace.zero(F2, 3)]
        assert sum(1 for _ in enumerate_subspaces(4, 2, F2)) == 35

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("n", range(6))
    def test_counts_are_gaussian(self, q, n):
        spec = gf(q)
        for k in range(n + 1):
            subs = list(enumerate_subspaces(n, k, spec))
            assert len(set(subs)) == len(subs) == gauss_pascal(n, k, q)
            assert all(s.dim == k for s in subs)

    @pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3), (4, 2)])
    def test_matches_closure_oracle(self, q, n):
        spec = gf(q)
        ours = {span_set(s.rows, n, spec) for s in enumerate_all_subspaces(n, spec)}
        assert ours == all_subspace_sets(n, spec)

    def test_k_above_n_rejected(self, F2):
        with pytest.raises(DimensionError):
            list(enumerate_subspaces(2, 3, F2))


class TestProducts:
    def test_examples(self, F2):
        a = M(F2, [[1, 1], [0, 1]])
        assert mat_mul(a, Matrix.identity(F2, 2)) == a
        assert is_invertible(a)
        assert mat_mul(a, a) == Matrix.identity(F2, 2)

    def test_errors(self, F2):
        with pytest.raises(DimensionError):
            mat_mul(M(F2, [[1, 1]]), M(F2, [[1, 1]]))
        with pytest.raises(DimensionError):
            is_invertible(M(F2, [[1, 1]]))

    @given(matrices(max_rows=3, max_cols=3))
    def test_invertible_iff_full_rank(self, m):
        if m.rows == m.cols:
            assert is_invertible(m) == (rank_by_span(m.data, m.cols, m.spec) == m.rows)

    def test_gf4_product(self, F4):
        a = M(F4, [[2, 0], [0, 1]])
        assert mat_mul(a, a).data == ((3, 0), (0, 1))


class TestTextFormat:
    def test_roundtrip(self, F3):
        m = M(F3, [[0, 1, 2], [2, 2, 0]])
        assert format_matrix(m) == "0 1 2\n2 2 0"
        assert parse_matrix(format_matrix(m) + "\n", F3) == m

    def test_blank_is_zero_rows(self, F2):
        m = parse_matrix("\n", F2, cols=3)
        assert (m.rows, m.cols) == (0, 3)
        with pytest.raises(DimensionError):
            parse_matrix("", F2)

    def test_bad_input(self, F2):
        with pytest.raises(ValueError):
            parse_matrix("1 2", F2)
        with pytest.raises(DimensionError):
            parse_matrix("1 0\n1", F2)
        with pytest.raises(DimensionError):
            parse_matrix("1 0", F2, cols=3)


def test_rank_helper(F3):
    assert rank(M(F3, [[1, 2], [2, 1]])) == 1
