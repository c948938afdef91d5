"""Exact counting and orbit computations for t-singular linear spaces over GF(q)."""

from .field import FieldSpec, gf
from .matrix import Matrix, Subspace, intersect, project, rref, sum_space
from .qcount import (
    anzahl,
    count_block_rank,
    count_col_extension,
    count_contained,
    count_containing,
    count_intersecting_subspaces,
    count_rank_matrices,
    count_row_extension,
    gauss,
    group_order,
    is_valid_type,
    is_valid_type_pair,
)
from .spaces import act, e_subspace, enumerate_by_type, enumerate_group, orbit_representative, type_of
from .suborbits import cross_validate, invariant_tuple, orbits_oracle

__version__ = "0.1.0"
