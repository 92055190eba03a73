"""Checks of computed hat tables against predictions and structural symmetries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .f2_homology import GradedDimTable
from .grid_core import MultiGrading
from .predictions import CONJECTURE, THEOREM, PredictionTable

MATCH = "match"
MISMATCH = "mismatch"
CONJ_MATCH = "conjecture-match"
CONJ_MISMATCH = "conjecture-mismatch"
UNPREDICTED = "unpredicted-support"


@dataclass
class PointResult:
    status: str
    computed: Dict[int, int]
    predicted: Dict[int, int]


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""


@dataclass
class VerificationReport:
    n: int
    points: Dict[Tuple[int, ...], PointResult] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    alexander2_offset: Tuple[int, ...] = ()

    def with_status(self, *statuses: str) -> List[Tuple[int, ...]]:
        return sorted(a for a, p in self.points.items() if p.status in statuses)

    @property
    def theorem_failures(self) -> List[Tuple[int, ...]]:
        return self.with_status(MISMATCH, UNPREDICTED)

    @property
    def conjecture_failures(self) -> List[Tuple[int, ...]]:
        return self.with_status(CONJ_MISMATCH)

    @property
    def failed_checks(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def exit_code(self, strict_conjecture: bool = False) -> int:
        if self.theorem_failures or self.failed_checks:
            return 1
        if self.conjecture_failures:
            return 1 if strict_conjecture else 2
        return 0

    def to_dict(self) -> dict:
        def ranks(d):
            return [{"maslov": m, "rank": r} for m, r in sorted(d.items(), reverse=True)]

        return {
            "n": self.n,
            "alexander2_offset": list(self.alexander2_offset),
            "points": [
                {
                    "alexander2": list(a),
                    "status": p.status,
                    "computed": ranks(p.computed),
                    "predicted": ranks(p.predicted),
                }
                for a, p in sorted(self.points.items())
            ],
            "checks": [{"name": c.name, "passed": c.passed, "details": c.details} for c in self.checks],
        }


def _width(t: GradedDimTable) -> Optional[int]:
    for k in t.entries:
        return len(k.alexander2)
    return t.n_components


def align(computed: GradedDimTable, n: int) -> Tuple[GradedDimTable, Tuple[int, ...]]:
    """Shift so the highest support vertex sits at doubled ((n-1), ..., (n-1))."""
    if not computed.entries:
        return computed, (0,) * n
    top = max(computed.support(), key=lambda a: (sum(a), a))
    offset = tuple(n - 1 - a for a in top)
    if any(offset):
        return computed.shifted(offset), offset
    return computed, offset


def compare(computed: GradedDimTable, predicted: PredictionTable) -> VerificationReport:
    n = predicted.n_components
    w = _width(computed)
    if w is not None and w != n:
        raise ValueError(f"computed table has {w} components, prediction has {n}")
    aligned, offset = align(computed, n)
    report = VerificationReport(n=n, alexander2_offset=offset)
    got = aligned.by_alexander()
    want = predicted.by_alexander()
    prov: Dict[Tuple[int, ...], str] = {}
    for k, tag in predicted.provenance.items():
        prov[k.alexander2] = tag
    for a2 in sorted(set(got) | set(want)):
        c = got.get(a2, {})
        p = want.get(a2, {})
        if a2 not in want:
            status = UNPREDICTED
        elif prov.get(a2, THEOREM) == CONJECTURE:
            status = CONJ_MATCH if c == p else CONJ_MISMATCH
        else:
            status = MATCH if c == p else MISMATCH
        report.points[a2] = PointResult(status, c, p)
    if any(offset):
        report.checks.append(CheckResult("alignment", True, f"recentred by {offset}"))
    return report


def orbit_check(t: GradedDimTable) -> List[Tuple[MultiGrading, MultiGrading, int, int]]:
    """Entries whose coordinate-permuted image carries a different rank."""
    violations = []
    for k, r in t.sorted_items():
        for perm in set(itertools.permutations(k.alexander2)):
            other = MultiGrading(perm, k.maslov)
            r2 = t.entries.get(other, 0)
            if r2 != r:
                violations.append((k, other, r, r2))
    return violations


def conjugation_check(t: GradedDimTable) -> List[Tuple[MultiGrading, MultiGrading, int, int]]:
    """Entries where rank(v, m) != rank(-v, m - 2 delta(v))."""
    violations = []
    for k, r in t.sorted_items():
        other = MultiGrading(tuple(-a for a in k.alexander2), k.maslov - sum(k.alexander2))
        r2 = t.entries.get(other, 0)
        if r2 != r:
            violations.append((k, other, r, r2))
    return violations


@dataclass
class FiberResult:
    target: Tuple[int, ...]
    e1: Dict[int, int]
    e_inf: Dict[int, int]
    euler_ok: bool
    rank_ok: bool
    cancellation_ok: bool

    @property
    def passed(self) -> bool:
        return self.euler_ok and self.rank_ok and self.cancellation_ok

    @property
    def strict(self) -> bool:
        return sum(self.e1.values()) > sum(self.e_inf.values())


@dataclass
class ForgetfulReport:
    component: int
    fibers: Dict[Tuple[int, ...], FiberResult]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.fibers.values())

    def failures(self) -> List[Tuple[int, ...]]:
        return sorted(a for a, f in self.fibers.items() if not f.passed)


def _euler(d: Dict[int, int]) -> int:
    return sum(r if m % 2 == 0 else -r for m, r in d.items())


def _cancels(e1: Dict[int, int], e_inf: Dict[int, int]) -> bool:
    """e1 - e_inf == (1 + q^-1) * Q with Q >= 0 coefficientwise."""
    diff = {m: e1.get(m, 0) - e_inf.get(m, 0) for m in set(e1) | set(e_inf)}
    diff = {m: v for m, v in diff.items() if v}
    if not diff:
        return True
    hi, lo = max(diff), min(diff)
    q_prev = 0
    for m in range(hi, lo - 2, -1):
        q = diff.get(m, 0) - q_prev
        if q < 0:
            return False
        q_prev = q
    return q_prev == 0


def forgetful_check(
    t_n: GradedDimTable,
    t_prev: GradedDimTable,
    i: int,
    alexander2_shift: int = -1,
) -> ForgetfulReport:
    """Fibers of the map forgetting coordinate ``i``.

    The remaining coordinates shift by ``alexander2_shift`` (doubled; minus
    the linking number with the forgotten component).  Each fiber's E1 page
    is the sum of its hat groups; it must converge to the previous link's
    group tensored with F_0 + F_-1.
    """
    n = _width(t_n)
    m_prev = _width(t_prev)
    if n is None:
        raise ValueError("empty table")
    if m_prev is not None and m_prev != n - 1:
        raise ValueError(f"component counts {n} and {m_prev} are not consecutive")
    if not 0 <= i < n:
        raise ValueError(f"component index {i} out of range")
    e1: Dict[Tuple[int, ...], Dict[int, int]] = {}
    for k, r in t_n.entries.items():
        tgt = tuple(a + alexander2_shift for j, a in enumerate(k.alexander2) if j != i)
        e1.setdefault(tgt, {})
        e1[tgt][k.maslov] = e1[tgt].get(k.maslov, 0) + r
    prev = t_prev.by_alexander()
    fibers = {}
    for tgt in sorted(set(e1) | set(prev)):
        inf: Dict[int, int] = {}
        for m, r in prev.get(tgt, {}).items():
            inf[m] = inf.get(m, 0) + r
            inf[m - 1] = inf.get(m - 1, 0) + r
        page = e1.get(tgt, {})
        fibers[tgt] = FiberResult(
            target=tgt,
            e1=page,
            e_inf=inf,
            euler_ok=_euler(page) == _euler(inf),
            rank_ok=sum(page.values()) >= sum(inf.values()),
            cancellation_ok=_cancels(page, inf),
        )
    return ForgetfulReport(i, fibers)


def totals_check(tilde: GradedDimTable, hat: GradedDimTable, grid_size: int, n: int) -> CheckResult:
    want = hat.total_rank() * 2 ** (grid_size - n)
    got = tilde.total_rank()
    problems = []
    if got != want:
        problems.append(f"tilde total {got} != hat total * 2^{grid_size - n} = {want}")
    if hat.entries:
        top_m = max(k.maslov for k in hat.entries)
        top_vertex = max(hat.support(), key=lambda a: (sum(a), a))
        at_top = {k.alexander2 for k in hat.entries if k.maslov == top_m}
        if top_m != 0:
            problems.append(f"maximal Maslov degree is {top_m}, expected 0")
        if at_top != {top_vertex}:
            problems.append(f"top degree attained at {sorted(at_top)}, expected only {top_vertex}")
    else:
        problems.append("hat table is empty")
    return CheckResult("totals", not problems, "; ".join(problems) or f"tilde total {got}")
