from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import all_matrices, all_subspace_sets, span_set, type_by_sets
from tsingular.field import gf
from tsingular.matrix import Matrix, Subspace, enumerate_all_subspaces, intersect
from tsingular.qcount import anzahl, group_order, valid_types
from tsingular.spaces import (
    GroupElement,
    GroupTooLarge,
    act,
    e_subspace,
    enumerate_by_type,
    enumerate_group,
    general_linear,
    identity_element,
    is_group_element,
    orbit_representative,
    type_of,
)

SHAPES = [(1,), (2,), (1, 1), (2, 1), (1, 2), (0, 2), (1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (1, 0, 2)]


def S(spec, rows):
    return Subspace.span(spec, len(rows[0]), rows)


class TestFiltration:
    def test_examples(self, F2):
        assert e_subspace((1, 1, 1), 3, F2) == S(F2, [[0, 0, 1]])
        assert e_subspace((1, 1, 1), 2, F2) == S(F2, [[0, 1, 0], [0, 0, 1]])
        assert e_subspace((2, 2), 2, F2) == S(F2, [[0, 0, 1, 0], [0, 0, 0, 1]])
        assert e_subspace((2, 2), 1, F2) == Subspace.full(F2, 4)

    def test_out_of_range(self, F2):
        with pytest.raises(ValueError):
            e_subspace((1, 1), 3, F2)
        with pytest.raises(ValueError):
            e_subspace((1, 1), 0, F2)


class TestTypeOf:
    def test_examples(self, F2):
        s = (1, 1, 1)
        assert type_of(s, S(F2, [[0, 0, 1]])) == (1, 1, 1)
        assert type_of(s, S(F2, [[1, 1, 0]])) == (1, 0, 0)
        assert type_of(s, e_subspace(s, 2, F2)) == (2, 2, 1)
        assert type_of(s, Subspace.zero(F2, 3)) == (0, 0, 0)

    @pytest.mark.parametrize("shape", [(1, 1, 1), (2, 1), (1, 2, 1), (2, 2)])
    @pytest.mark.parametrize("q", [2, 3])
    def test_matches_intersections(self, shape, q):
        spec = gf(q)
        Es = [e_subspace(shape, i, spec) for i in range(1, len(shape) + 1)]
        for P in enumerate_all_subspaces(sum(shape), spec):
            assert type_of(shape, P) == tuple(intersect(P, E).dim for E in Es)

    @pytest.mark.parametrize("shape,q", [((1, 1, 1), 2), ((2, 1), 3), ((1, 2), 2), ((1, 1, 1), 3)])
    def test_matches_set_oracle(self, shape, q):
        # the oracle never touches RREF: subspaces are closures, types are set intersections
        spec = gf(q)
        n = sum(shape)
        by_type = {}
        for s in all_subspace_sets(n, spec):
            k = type_by_sets(shape, s, spec)
            by_type[k] = by_type.get(k, 0) + 1
        for k in valid_types(shape):
            assert by_type.pop(k, 0) == anzahl(shape, k, q) == sum(1 for _ in enumerate_by_type(shape, k, spec))
        assert not by_type

    def test_ambient_mismatch(self, F2):
        with pytest.raises(Exception):
            type_of((1, 1), Subspace.full(F2, 3))


class TestRepresentative:
    def test_examples(self, F2):
        assert orbit_representative((1, 1, 1), (1, 0, 0), F2) == S(F2, [[1, 0, 0]])
        assert orbit_representative((1, 1, 1), (2, 1, 0), F2) == S(F2, [[1, 0, 0], [0, 1, 0]])
        assert orbit_representative((2, 1), (1, 1), F2) == S(F2, [[0, 0, 1]])

    @pytest.mark.parametrize("shape", SHAPES + [(2, 2, 1), (3, 1, 2)])
    def test_has_its_type(self, shape, F3):
        for k in valid_types(shape):
            assert type_of(shape, orbit_representative(shape, k, F3)) == k

    def test_invalid(self, F2):
        with pytest.raises(ValueError):
            orbit_representative((1, 1, 1), (2, 0, 0), F2)


class TestEnumerateByType:
    def test_examples(self, F2):
        got = list(enumerate_by_type((1, 1, 1), (1, 0, 0), F2))
        assert sorted(s.rows for s in got) == [((1, b, c),) for b in range(2) for c in range(2)]
        assert list(enumerate_by_type((1, 1, 1), (1, 1, 1), F2)) == [S(F2, [[0, 0, 1]])]
        assert sum(1 for _ in enumerate_by_type((1, 1), (1, 0), gf(3))) == 3

    def test_invalid_type_is_empty(self, F2):
        assert list(enumerate_by_type((1, 1, 1), (2, 0, 0), F2)) == []

    @pytest.mark.parametrize("shape", SHAPES)
    @pytest.mark.parametrize("q", [2, 3])
    def test_counts_match_anzahl(self, shape, q):
        spec = gf(q)
        for k in valid_types(shape):
            got = list(enumerate_by_type(shape, k, spec))
            assert len(got) == len(set(got)) == anzahl(shape, k, q)


class TestGroup:
    def test_examples(self, F2):
        assert sum(1 for _ in enumerate_group((1, 1, 1), F2)) == 8
        assert sum(1 for _ in enumerate_group((1,), F2)) == 1
        assert sum(1 for _ in enumerate_group((2, 1), F2)) == 24

    @pytest.mark.parametrize("shape,q", [((1, 1, 1), 2), ((2, 1), 2), ((1, 2), 2), ((1, 1), 3)])
    def test_is_exactly_the_filter(self, shape, q):
        # compare with a filter over every N x N matrix
        spec = gf(q)
        N = sum(shape)
        ours = {g.mat.data for g in enumerate_group(shape, spec)}
        scan = {a for a in all_matrices(N, N, q) if is_group_element(shape, Matrix(spec, N, N, a))}
        assert ours == scan
        assert len(ours) == group_order(shape, q)

    def test_guard(self, F3):
        with pytest.raises(GroupTooLarge, match=f"order {group_order((2, 1, 1), 3)}"):
            list(enumerate_group((2, 1, 1), F3, guard=1000))

    def test_closed_under_products(self, F2):
        G = list(enumerate_group((1, 2), F2))
        mats = {g.mat.data for g in G}
        for g, h in product(G[:8], G):
            assert (g @ h).mat.data in mats

    def test_non_members(self, F2):
        assert not is_group_element((1, 1), Matrix.from_rows(F2, [[1, 0], [1, 1]]))
        assert not is_group_element((1, 1), Matrix.from_rows(F2, [[1, 1], [0, 0]]))
        assert not is_group_element((1, 1), Matrix.identity(F2, 3))


class TestAction:
    def test_examples(self, F2):
        g = GroupElement((1, 1, 1), Matrix.from_rows(F2, [[1, 1, 0], [0, 1, 1], [0, 0, 1]]))
        assert act(S(F2, [[1, 0, 0]]), g) == S(F2, [[1, 1, 0]])
        assert act(S(F2, [[0, 1, 0]]), g) == S(F2, [[0, 1, 1]])
        U = S(F2, [[1, 0, 1]])
        assert act(U, identity_element((1, 1, 1), F2)) == U

    def test_composition(self, F2):
        shape = (1, 1, 1)
        G = list(enumerate_group(shape, F2))
        subs = list(enumerate_all_subspaces(3, F2))
        for g, h in product(G, repeat=2):
            for s in subs:
                assert act(act(s, g), h) == act(s, g @ h)

    def test_matches_set_image(self, F3):
        for g in list(enumerate_group((1, 2), F3))[::7]:
            for s in enumerate_all_subspaces(3, F3):
                image = {tuple(sum(v[r] * g.mat.data[r][c] for r in range(3)) % 3 for c in range(3)) for v in span_set(s.rows, 3, F3)}
                assert frozenset(image) == span_set(act(s, g).rows, 3, F3)

    @pytest.mark.parametrize("shape,q", [((1, 1, 1), 2), ((2, 1), 2), ((1, 2), 2), ((1, 1, 2), 2), ((2, 1, 1), 2), ((1, 1, 1), 3), ((2, 1), 3)])
    def test_types_are_orbits(self, shape, q):
        # transitivity on each M(k) and invariance of the type
        spec = gf(q)
        G = list(enumerate_group(shape, spec))
        for k in valid_types(shape):
            U = orbit_representative(shape, k, spec)
            orbit = {act(U, g) for g in G}
            assert orbit == set(enumerate_by_type(shape, k, spec))


@st.composite
def subspace_and_element(draw):
    shape = draw(st.sampled_from([(1, 1, 1), (2, 1), (1, 2, 1), (2, 2)]))
    spec = gf(draw(st.sampled_from([2, 3, 4])))
    N = sum(shape)
    rows = draw(st.lists(st.lists(st.integers(0, spec.q - 1), min_size=N, max_size=N), max_size=N))
    s = Subspace.span(spec, N, rows)
    blk = [j for j, n in enumerate(shape) for _ in range(n)]
    data = [[draw(st.integers(0, spec.q - 1)) if blk[r] < blk[c] else 0 for c in range(N)] for r in range(N)]
    o = 0
    for n in shape:
        for r, row in enumerate(draw(st.sampled_from(general_linear(n, spec)))):
            data[o + r][o : o + n] = row
        o += n
    m = Matrix.from_rows(spec, data)
    assert is_group_element(shape, m)
    return shape, s, GroupElement(shape, m)


@given(subspace_and_element())
def test_type_is_invariant(case):
    shape, s, g = case
    assert type_of(shape, act(s, g)) == type_of(shape, s)
