"""Formula-versus-enumeration checks over a small parameter grid.

Hard checks (a failure makes the run fail): every anzahl-type count against
enumeration, the rank and extension counts against matrix scans, label
separation of the stabilizer orbits, and the partition identities.  Soft
checks compare the printed suborbit count and lengths with the brute force;
disagreements land in ``discrepancies`` and do not fail the run.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass
from itertools import product
from typing import Iterator

from .field import FieldSpec, factor_prime_power, FieldError
from .matrix import Subspace, _mul_rows, enumerate_matrices, enumerate_subspaces, rank_rows
from .qcount import (
    anzahl,
    count_block_rank,
    count_col_extension,
    count_contained,
    count_containing,
    count_rank_matrices,
    count_row_extension,
    gauss,
    group_order,
    is_valid_type_pair,
    valid_types,
)
from .spaces import enumerate_by_type, orbit_representative, type_of
from .suborbits import GuardExceeded, SeparationError, cross_validate

log = logging.getLogger(__name__)

SECTIONS = (
    "anzahl",
    "anzahl_sum",
    "incidence",
    "rank",
    "row_extension",
    "col_extension",
    "block_rank",
    "suborbits",
    "skipped",
)


@dataclass
class VerifyConfig:
    max_q: int = 3
    max_total_dim: int = 4
    max_t: int = 3
    group_guard: int = 10**6
    subspace_guard: int = 10**5
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        for name in ("max_q", "max_total_dim", "max_t", "group_guard", "subspace_guard"):
            if getattr(self, name) < (0 if name == "max_total_dim" else 1):
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"output_format must be json or csv, got {self.output_format!r}")

    def fields(self) -> list[FieldSpec]:
        out = []
        for q in range(2, self.max_q + 1):
            try:
                factor_prime_power(q)
            except FieldError:
                continue
            out.append(FieldSpec.from_q(q))
        return out


def compositions(total_max: int, t: int, positive: bool = False) -> Iterator[tuple[int, ...]]:
    """Shapes with t blocks and block sum at most total_max, lexicographic."""
    lo = 1 if positive else 0
    for shape in product(range(lo, total_max + 1), repeat=t):
        if sum(shape) <= total_max:
            yield shape


def _s(x: int) -> str:
    return str(x)


class _Run:
    def __init__(self, config: VerifyConfig):
        self.config = config
        self.cases = {name: [] for name in SECTIONS}
        self.hard_failures: list[dict] = []
        self.discrepancies: list[dict] = []

    def record(self, section: str, ok: bool, **fields):
        entry = dict(fields, ok=ok)
        self.cases[section].append(entry)
        if not ok:
            self.hard_failures.append(dict(entry, section=section))

    def skip(self, section: str, reason: str, **fields):
        self.cases["skipped"].append(dict(fields, section=section, reason=reason))

    # -- type counts ----------------------------------------------------------

    def check_types(self, shape, spec: FieldSpec):
        q = spec.q
        N = sum(shape)
        total = sum(gauss(N, d, q) for d in range(N + 1))
        where = {"shape": list(shape), "q": q}
        if total > self.config.subspace_guard:
            self.skip("anzahl", f"{total} subspaces > subspace guard {self.config.subspace_guard}", **where)
            return
        types = valid_types(shape)
        members = {k: list(enumerate_by_type(shape, k, spec)) for k in types}
        for k in types:
            f, o = anzahl(shape, k, q), len(members[k])
            self.record("anzahl", f == o, **where, type=list(k), formula=_s(f), oracle=_s(o))
        fsum = sum(anzahl(shape, k, q) for k in types)
        self.record("anzahl_sum", fsum == total, **where, formula=_s(fsum), oracle=_s(total))

        for k in types:
            P = orbit_representative(shape, k, spec)
            inside = Counter(type_of(shape, s) for s in _subspaces_of(P))
            for l in types:
                Pl = orbit_representative(shape, l, spec)
                contained = inside.get(l, 0)
                containing = sum(1 for Q in members[k] if Q.contains(Pl))
                fc = count_contained(shape, k, l, q)
                fg = count_containing(shape, l, k, q)
                lhs = fg * anzahl(shape, l, q)
                rhs = fc * anzahl(shape, k, q)
                self.record(
                    "incidence",
                    fc == contained and fg == containing and lhs == rhs,
                    **where,
                    type=list(k),
                    sub_type=list(l),
                    pair_valid=is_valid_type_pair(shape, k, l),
                    contained_formula=_s(fc),
                    contained_oracle=_s(contained),
                    containing_formula=_s(fg),
                    containing_oracle=_s(containing),
                    double_count=[_s(lhs), _s(rhs)],
                )

    # -- matrix rank counts -----------------------------------------------------

    def check_ranks(self, spec: FieldSpec):
        q = spec.q
        top = min(3, self.config.max_total_dim)
        for m, n in product(range(top + 1), repeat=2):
            hist = Counter(rank_rows(a, n, spec) for a in enumerate_matrices(m, n, spec))
            for i in range(min(m, n) + 2):
                f = count_rank_matrices(i, m, n, q)
                self.record("rank", f == hist.get(i, 0), m=m, n=n, i=i, q=q, formula=_s(f), oracle=_s(hist.get(i, 0)))

    def check_extensions(self, spec: FieldSpec):
        q = spec.q
        top = min(3, self.config.max_total_dim)
        # row extension: A1 is m1 x n, A2 is m2 x n
        for m1, m2, n in product(range(top + 1), repeat=3):
            if m1 + m2 > top:
                continue
            self._extension("row_extension", spec, m1, m2, n, rows=True)
        # column extension: A1 is m x n1, A2 is m x n2
        for m, n1, n2 in product(range(top + 1), repeat=3):
            if n1 + n2 > top:
                continue
            self._extension("col_extension", spec, m, n1, n2, rows=False)

    def _extension(self, section, spec, a, b, c, rows):
        q = spec.q
        # agreement[(t1, t2)] = [base matrices checked, base matrices agreeing]
        agreement: dict[tuple[int, int], list[int]] = {}
        if rows:
            m1, m2, n = a, b, c
            bases, exts = enumerate_matrices(m1, n, spec), list(enumerate_matrices(m2, n, spec))
        else:
            m, n1, n2 = a, b, c
            bases, exts = enumerate_matrices(m, n1, spec), list(enumerate_matrices(m, n2, spec))
        for A1 in bases:
            if rows:
                t1 = rank_rows(A1, n, spec)
                hist = Counter(rank_rows(A1 + A2, n, spec) for A2 in exts)
            else:
                t1 = rank_rows(A1, n1, spec)
                hist = Counter(rank_rows([r1 + r2 for r1, r2 in zip(A1, A2)], n1 + n2, spec) for A2 in exts)
            for t2 in range(t1, t1 + max(a, b, c) + 2):
                if rows:
                    f = count_row_extension(t1, t2, m2, n, q)
                else:
                    f = count_col_extension(t1, t2, m, n2, q)
                cell = agreement.setdefault((t1, t2), [0, 0, f])
                cell[0] += 1
                cell[1] += f == hist.get(t2, 0)
        names = ("m1", "m2", "n") if rows else ("m", "n1", "n2")
        for (t1, t2), (checked, agreeing, f) in sorted(agreement.items()):
            self.record(
                section,
                checked == agreeing,
                q=q,
                **dict(zip(names, (a, b, c))),
                t1=t1,
                t2=t2,
                formula=_s(f),
                base_matrices=checked,
                base_matrices_agreeing=agreeing,
            )

    def check_block_rank(self, spec: FieldSpec):
        q = spec.q
        top = min(2, self.config.max_total_dim)
        for m1, m2, n1, n2 in product(range(top + 1), repeat=4):
            hist: Counter = Counter()
            for M in enumerate_matrices(m1 + m2, n1 + n2, spec):
                lower = M[m1:]
                right = [r[n1:] for r in M]
                hist[(rank_rows(lower, n1 + n2, spec), rank_rows(right, n2, spec))] += 1
            for alpha in range(min(m2, n1 + n2) + 2):
                f = count_block_rank(m1, m2, n1, n2, alpha, q)
                o = hist.get((alpha, alpha), 0)
                self.record("block_rank", f == o, m1=m1, m2=m2, n1=n1, n2=n2, alpha=alpha, q=q, formula=_s(f), oracle=_s(o))

    # -- suborbits ---------------------------------------------------------------

    def check_suborbits(self, shape, spec: FieldSpec):
        q = spec.q
        guard = self.config.group_guard
        for k in valid_types(shape):
            where = {"shape": list(shape), "type": list(k), "q": q}
            size = anzahl(shape, k, q)
            order = group_order(shape, q)
            if size > self.config.subspace_guard:
                self.skip("suborbits", f"orbit size {size} > subspace guard", **where)
                continue
            try:
                report = cross_validate(shape, k, spec, guard)
            except GuardExceeded as exc:
                self.skip("suborbits", str(exc), **where, group_order=_s(order))
                continue
            except SeparationError as exc:
                self.record("suborbits", False, **where, separation=False, error=str(exc))
                continue
            entry = report.to_json()
            entry.pop("discrepancies")
            self.record("suborbits", report.hard_ok, separation=True, **entry)
            self.discrepancies.extend(report.discrepancies)

    # -----------------------------------------------------------------------------

    def run(self) -> dict:
        cfg = self.config
        fields = cfg.fields()
        for spec in fields:
            for t in range(1, cfg.max_t + 1):
                for shape in compositions(cfg.max_total_dim, t):
                    log.info("types: q=%d shape=%s", spec.q, shape)
                    self.check_types(shape, spec)
        for spec in fields:
            if spec.q <= 3:
                self.check_ranks(spec)
            if spec.q == 2:
                self.check_extensions(spec)
                self.check_block_rank(spec)
        if cfg.max_t >= 3:
            for spec in fields:
                for shape in compositions(cfg.max_total_dim, 3, positive=True):
                    log.info("suborbits: q=%d shape=%s", spec.q, shape)
                    self.check_suborbits(shape, spec)
        # where the report is written is not part of it; runs differing only by --out match byte for byte
        params = {k: v for k, v in asdict(cfg).items() if k != "output_path"}
        return {
            "params": params,
            "hard_failures": self.hard_failures,
            "discrepancies": self.discrepancies,
            "cases": self.cases,
        }


def _subspaces_of(P: Subspace) -> Iterator[Subspace]:
    """Every subspace of P, as coordinate combinations of P's basis."""
    spec = P.spec
    for d in range(P.dim + 1):
        for s in enumerate_subspaces(P.dim, d, spec):
            yield Subspace.span(spec, P.ambient, _mul_rows(s.rows, P.rows, P.ambient, spec))


def run_verify(config: VerifyConfig | None = None) -> dict:
    return _Run(config or VerifyConfig()).run()


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "ok", "case"])
    for section in SECTIONS:
        for entry in report["cases"][section]:
            case = {k: v for k, v in entry.items() if k != "ok"}
            w.writerow([section, entry.get("ok", ""), json.dumps(case, sort_keys=True)])
    for d in report["discrepancies"]:
        w.writerow(["discrepancy", "", json.dumps(d, sort_keys=True)])
    return buf.getvalue()
