"""Suborbits of the 3-singular linear group on subspaces of one type.

Fix the block representative U of type k.  Each Q of type k gets six
dimensions measured against U (``raw_dims``), which are repackaged as the
label (i1, i2, i3, j3-i2-i3, j2-i1-i2, i2+j1-j2-j3) (``invariant_tuple``).
The closed forms for the number and lengths of suborbits are evaluated exactly
as printed; ``orbits_oracle`` computes the stabilizer orbits by brute force and
``cross_validate`` compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

from .field import FieldSpec
from .matrix import Subspace, intersect, project
from .qcount import anzahl, check_shape, count_rank_matrices, gauss, group_order, is_valid_type
from .spaces import (
    DEFAULT_GUARD,
    GroupElement,
    act,
    e_subspace,
    enumerate_by_type,
    group_elements,
    orbit_representative,
    type_of,
)


class GuardExceeded(RuntimeError):
    pass


class SeparationError(AssertionError):
    """Two members with equal labels in different orbits, or the reverse."""


class FormulaUndefined(ArithmeticError):
    """A printed formula needs a negative power of q for these parameters."""


class RawDims(NamedTuple):
    u_cap_q: int  # dim(U ∩ Q)
    d11: int  # first block images
    d22: int  # second block images of the E_2 parts
    d33: int  # (U ∩ E_3) ∩ (Q ∩ E_3)
    d12: int  # images on the first two blocks
    d23: int  # (U ∩ E_2) ∩ (Q ∩ E_2)


class InvariantTuple(NamedTuple):
    i1: int
    i2: int
    i3: int
    rank_b: int  # j3 - i2 - i3
    rank_a: int  # j2 - i1 - i2
    rank_c: int  # i2 + j1 - j2 - j3

    @classmethod
    def from_ij(cls, i1, i2, i3, j1, j2, j3) -> "InvariantTuple":
        return cls(i1, i2, i3, j3 - i2 - i3, j2 - i1 - i2, i2 + j1 - j2 - j3)

    def ij(self) -> tuple[int, int, int, int, int, int]:
        """Recover (i1, i2, i3, j1, j2, j3)."""
        i1, i2, i3 = self.i1, self.i2, self.i3
        j3 = self.rank_b + i2 + i3
        j2 = self.rank_a + i1 + i2
        j1 = self.rank_c + j2 + j3 - i2
        return i1, i2, i3, j1, j2, j3

    @property
    def nonnegative(self) -> bool:
        return min(self) >= 0


def _check_t3(shape: Sequence[int]) -> tuple[int, int, int]:
    shape = check_shape(shape)
    if len(shape) != 3:
        raise ValueError(f"suborbit formulas need t = 3, got shape {shape}")
    return shape


def raw_dims(U: Subspace, Q: Subspace, shape: Sequence[int]) -> RawDims:
    n1, n2, n3 = _check_t3(shape)
    k = type_of(shape, U)
    if type_of(shape, Q) != k:
        raise ValueError(f"types differ: {k} vs {type_of(shape, Q)}")
    spec = U.spec
    E2 = e_subspace(shape, 2, spec)
    E3 = e_subspace(shape, 3, spec)
    U2, Q2 = intersect(U, E2), intersect(Q, E2)
    U3, Q3 = intersect(U, E3), intersect(Q, E3)
    a, b = n1, n1 + n2
    return RawDims(
        u_cap_q=intersect(U, Q).dim,
        d11=intersect(project(U, 0, a), project(Q, 0, a)).dim,
        d22=intersect(project(U2, a, b), project(Q2, a, b)).dim,
        d33=intersect(U3, Q3).dim,
        d12=intersect(project(U, 0, b), project(Q, 0, b)).dim,
        d23=intersect(U2, Q2).dim,
    )


def invariant_tuple(U: Subspace, Q: Subspace, shape: Sequence[int], k: Sequence[int]) -> InvariantTuple:
    k1, k2, k3 = k
    d = raw_dims(U, Q, shape)
    return InvariantTuple.from_ij(
        i1=(k1 - k2) - d.d11,
        i2=(k2 - k3) - d.d22,
        i3=k3 - d.d33,
        j1=k1 - d.u_cap_q,
        j2=(k1 - k3) - d.d12,
        j3=k2 - d.d23,
    )


def printed_constraint_failures(shape: Sequence[int], k: Sequence[int], tup: Sequence[int]) -> list[int]:
    """Which of the six printed constraint lines (numbered 1..6) the label violates."""
    n1, n2, n3 = _check_t3(shape)
    k1, k2, k3 = k
    i1, i2, i3, j1, j2, j3 = InvariantTuple(*tup).ij()
    lines = (
        0 <= i1 <= min(k1 - k2, n1 + k2 - k1),
        0 <= i2 <= min(k2 - k3, n2 + k3 - k2),
        0 <= i3 <= min(k3, n3 - k3),
        0 <= j3 - i2 - i3 <= min(k3 - i3, k2 - k3 - i2),
        0 <= j2 - i1 - i2 <= min(k2 - k3 - i2, k1 - k2 - i1, n2 + k3 - k2 - i2),
        0 <= i2 + j1 - j2 - j3 <= min(k1 - k2 + i2 - j2, n3 - k3 + i2 - j3),
    )
    return [n for n, ok in enumerate(lines, 1) if not ok]


def is_valid_tuple_printed(shape: Sequence[int], k: Sequence[int], tup: Sequence[int]) -> bool:
    """The six printed constraint lines on a label, checked literally."""
    return not printed_constraint_failures(shape, k, tup)


def _check_type(shape, k):
    if not is_valid_type(shape, k):
        raise ValueError(f"{tuple(k)} is not a valid type for shape {tuple(shape)}")


def suborbit_count_printed(shape: Sequence[int], k: Sequence[int], q: int) -> int:
    """The printed five-fold sum for the number of suborbits.

    The innermost term 1 + min{...} is added as is, so the value can go
    negative for parameters where that min is below -1.
    """
    n1, n2, n3 = _check_t3(shape)
    _check_type(shape, k)
    k1, k2, k3 = k
    total = 0
    for i1 in range(min(k1 - k2, n1 + k2 - k1) + 1):
        for i2 in range(min(k2 - k3, n2 + k3 - k2) + 1):
            for i3 in range(min(k3, n3 - k3) + 1):
                for j3 in range(i2 + i3, min(k3 + i2, k2 - k3 + i3) + 1):
                    for j2 in range(i1 + i2, min(k2 - k3 + i1, k1 - k2 + i2, n2 + k3 - k2 + i1) + 1):
                        total += 1 + min(k1 - k2 + i2 - j2, n3 - k3 + i2 - j3)
    return total


def _qpow(q: int, e: int) -> int:
    if e < 0:
        raise FormulaUndefined(f"q^{e}")
    return q**e


def suborbit_length_printed(shape: Sequence[int], k: Sequence[int], tup: Sequence[int], q: int) -> int:
    """The printed product formula for the length of the suborbit with label ``tup``."""
    n1, n2, n3 = _check_t3(shape)
    _check_type(shape, k)
    k1, k2, k3 = k
    i1, i2, i3, j1, j2, j3 = InvariantTuple(*tup).ij()
    N = count_rank_matrices

    coeff = (
        gauss(n1 + k2 - k1, i1, q)
        * gauss(k1 - k2, i1, q)
        * gauss(n2 + k3 - k2, i2, q)
        * gauss(k2 - k3, i2, q)
        * gauss(n3 - k3, i3, q)
        * gauss(k3, i3, q)
        * N(j3 - i2 - i3, k2 - k3 - i2, n3 - k3 - i3, q)
        * N(j2 - i1 - i2, k1 - k2 - i1, n2 + k3 - k2 - i2, q)
    )
    if coeff == 0:
        return 0

    c = i2 + j1 - j2 - j3
    lo = max(0, 2 * i2 + j1 - j2 - 2 * j3 + i3, 2 * i2 + j1 - 2 * j2 - j3 + i1)
    inner = 0
    for l in range(lo, c + 1):
        term = (
            N(l, k1 - k2 - j2 + i2, n3 - k3 - j3 + i2, q)
            * N(c - l, j2 - i1 - i2, n3 - k3 - j3 + i2 - l, q)
            * N(c - l, k1 - k2 - j2 + i2 - l, j3 - i2 - i3, q)
        )
        if term:
            inner += _qpow(q, (j2 + j3 - i1 - i3) * l + (j2 - i1 - i2) * (j3 - i2 - i3)) * term
    if inner == 0:
        return 0

    expo = (
        (n2 + n3 - k2) * i1
        + (n3 + k1 - k2 - k3 - i1) * i2
        + (k1 - k3 - i1 - i2) * i3
        + i1 * i1
        + i2 * i2
        + i3 * i3
    )
    return _qpow(q, expo) * coeff * inner


def printed_tuples(shape: Sequence[int], k: Sequence[int]) -> list[InvariantTuple]:
    """All labels satisfying the printed constraints, found by a box search."""
    _check_t3(shape)
    k1, k2, k3 = k
    # per-coordinate ceilings implied by the constraint lines
    box = [k1 - k2, k2 - k3, k3, k3, k1 - k2, k1]
    return [
        InvariantTuple(*t)
        for t in product(*(range(b + 1) for b in box))
        if is_valid_tuple_printed(shape, k, t)
    ]


# -- brute force ---------------------------------------------------------------

@dataclass
class OraclePartition:
    shape: tuple[int, ...]
    type: tuple[int, ...]
    q: int
    representative: Subspace
    group_order: int
    stabilizer_order: int
    orbits: list[list[Subspace]]  # each sorted; ordered by first member

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]


def coordinate_support(U: Subspace) -> list[int] | None:
    """Coordinates spanning U if U is spanned by standard basis vectors, else None."""
    support = []
    for row in U.rows:
        nz = [c for c, a in enumerate(row) if a]
        if len(nz) != 1 or row[nz[0]] != 1:
            return None
        support.append(nz[0])
    return support


def stabilizer(U: Subspace, shape: Sequence[int], guard: int = DEFAULT_GUARD) -> list[GroupElement]:
    """Elements g of the full group with act(U, g) == U, by filtering."""
    elements = group_elements(tuple(shape), U.spec, guard)
    support = coordinate_support(U)
    if support is None:
        return [g for g in elements if act(U, g) == U]
    # U g = U iff the rows of g indexed by the support vanish off the support
    outside = [c for c in range(U.ambient) if c not in support]
    return [g for g in elements if not any(g.mat.data[r][c] for r in support for c in outside)]


def orbits_oracle(shape: Sequence[int], k: Sequence[int], spec: FieldSpec, guard: int = DEFAULT_GUARD) -> OraclePartition:
    """Partition M(k) into orbits of the stabilizer of the representative (any t)."""
    shape = check_shape(shape)
    k = tuple(k)
    _check_type(shape, k)
    order = group_order(shape, spec.q)
    size = anzahl(shape, k, spec.q)
    if order > guard or size > guard:
        raise GuardExceeded(
            f"shape {shape}, type {k}, q={spec.q}: group order {order}, orbit size {size}, guard {guard}"
        )
    U = orbit_representative(shape, k, spec)
    stab = stabilizer(U, shape, guard)
    members = sorted(enumerate_by_type(shape, k, spec), key=lambda s: s.key)
    member_set = set(members)
    remaining = len(members)
    assigned: set[Subspace] = set()
    orbits = []
    for Q in members:
        if Q in assigned:
            continue
        orbit = {Q}
        for g in stab:
            if len(orbit) == remaining:
                # orbits are disjoint, so nothing unassigned is left to reach
                break
            img = act(Q, g)
            if img not in member_set:
                raise AssertionError(f"action left the type class: {img.rows}")
            orbit.add(img)
        assigned |= orbit
        remaining -= len(orbit)
        orbits.append(sorted(orbit, key=lambda s: s.key))
    return OraclePartition(shape, k, spec.q, U, order, len(stab), orbits)


# -- cross validation ----------------------------------------------------------

@dataclass
class TupleRecord:
    tuple: InvariantTuple
    printed_valid: bool
    printed_length: int | None
    oracle_length: int
    member_count: int

    def to_json(self) -> dict:
        return {
            "tuple": list(self.tuple),
            "printed_valid": self.printed_valid,
            "printed_length": None if self.printed_length is None else str(self.printed_length),
            "oracle_length": str(self.oracle_length),
            "member_count": str(self.member_count),
        }


@dataclass
class OrbitReport:
    shape: tuple[int, ...]
    type: tuple[int, ...]
    q: int
    records: list[TupleRecord]
    printed_count: int
    oracle_count: int
    anzahl: int
    stabilizer_order: int
    partition_ok: bool
    orbit_stabilizer_ok: bool
    zero_orbit_ok: bool
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def hard_ok(self) -> bool:
        return self.partition_ok and self.orbit_stabilizer_ok and self.zero_orbit_ok

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "type": list(self.type),
            "q": self.q,
            "anzahl": str(self.anzahl),
            "stabilizer_order": str(self.stabilizer_order),
            "printed_count": str(self.printed_count),
            "oracle_count": str(self.oracle_count),
            "partition_ok": self.partition_ok,
            "orbit_stabilizer_ok": self.orbit_stabilizer_ok,
            "zero_orbit_ok": self.zero_orbit_ok,
            "records": [r.to_json() for r in self.records],
            "discrepancies": self.discrepancies,
        }


def _printed_length_or_none(shape, k, tup, q):
    try:
        return suborbit_length_printed(shape, k, tup, q)
    except FormulaUndefined:
        return None


def cross_validate(shape: Sequence[int], k: Sequence[int], spec: FieldSpec, guard: int = DEFAULT_GUARD) -> OrbitReport:
    """Compare labels, printed count and printed lengths with the brute-force orbits.

    Raises SeparationError if the labels do not separate the orbits exactly.
    Disagreements with the printed formulas are only recorded.
    """
    shape = _check_t3(shape)
    k = tuple(k)
    q = spec.q
    part = orbits_oracle(shape, k, spec, guard)
    U = part.representative

    label_of_orbit: list[InvariantTuple] = []
    orbit_of_label: dict[InvariantTuple, int] = {}
    for idx, orbit in enumerate(part.orbits):
        labels = {invariant_tuple(U, Q, shape, k) for Q in orbit}
        if len(labels) != 1:
            raise SeparationError(f"shape {shape}, type {k}, q={q}: one orbit carries labels {sorted(labels)}")
        (lab,) = labels
        if lab in orbit_of_label:
            raise SeparationError(f"shape {shape}, type {k}, q={q}: label {tuple(lab)} on two orbits")
        orbit_of_label[lab] = idx
        label_of_orbit.append(lab)

    printed_valid = set(printed_tuples(shape, k))
    records = []
    discrepancies = []
    case = {"shape": list(shape), "type": list(k), "q": q}
    for lab in sorted(set(orbit_of_label) | printed_valid):
        valid = lab in printed_valid
        plen = _printed_length_or_none(shape, k, lab, q) if lab.nonnegative else None
        olen = len(part.orbits[orbit_of_label[lab]]) if lab in orbit_of_label else 0
        records.append(TupleRecord(lab, valid, plen, olen, olen))
        detail = dict(case, tuple=list(lab), printed_length=None if plen is None else str(plen), oracle_length=str(olen))
        if olen == 0:
            discrepancies.append(dict(detail, kind="printed_tuple_not_realized"))
        elif not valid:
            discrepancies.append(dict(detail, kind="realized_tuple_outside_printed_constraints"))
        elif plen != olen:
            discrepancies.append(dict(detail, kind="suborbit_length_mismatch"))

    printed_count = suborbit_count_printed(shape, k, q)
    oracle_count = len(part.orbits)
    if printed_count != oracle_count:
        discrepancies.append(
            dict(case, kind="suborbit_count_mismatch", printed=str(printed_count), oracle=str(oracle_count))
        )
    if printed_count != len(printed_valid):
        discrepancies.append(
            dict(case, kind="printed_count_vs_constraints", printed=str(printed_count), constraint_tuples=str(len(printed_valid)))
        )

    size = anzahl(shape, k, q)
    zero = InvariantTuple(0, 0, 0, 0, 0, 0)
    zero_orbit = part.orbits[orbit_of_label[zero]] if zero in orbit_of_label else []
    zero_ok = zero_orbit == [U] and _printed_length_or_none(shape, k, zero, q) == 1
    return OrbitReport(
        shape=shape,
        type=k,
        q=q,
        records=records,
        printed_count=printed_count,
        oracle_count=oracle_count,
        anzahl=size,
        stabilizer_order=part.stabilizer_order,
        partition_ok=sum(part.sizes) == size,
        orbit_stabilizer_ok=all(part.stabilizer_order % s == 0 for s in part.sizes),
        zero_orbit_ok=zero_ok,
        discrepancies=discrepancies,
    )
