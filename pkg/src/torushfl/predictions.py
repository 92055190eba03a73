"""Closed-form graded ranks of hat link Floer homology of T(n, n).

Alexander vectors are doubled throughout.  In "working" coordinates the
lattice point with absolute doubled vector ``a`` has ``w_j = (n - 1 - a_j)/2``;
cube ``c`` (1-based, top first) consists of the points with every
``w_j`` in ``{c - 1, c}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Optional, Set, Tuple

from .f2_homology import GradedDimTable
from .grid_core import MultiGrading

MAX_N = 64

THEOREM = "theorem"
CONJECTURE = "conjecture"


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the configured cap {MAX_N}")


@dataclass(frozen=True)
class LatticePoint:
    """Classification of a doubled Alexander vector for T(n, n).

    ``kind`` is one of "endpoint-top", "endpoint-bottom", "interior",
    "junction", "outside-support"; ``c``/``s`` are set for interior points,
    ``junction`` for junction points.
    """

    alexander2: Tuple[int, ...]
    kind: str
    c: Optional[int] = None
    s: Optional[int] = None
    junction: Optional[int] = None

    def __post_init__(self):
        n = len(self.alexander2)
        if self.kind == "interior":
            assert 1 <= self.c <= n - 1 and 2 <= self.s <= n
        elif self.kind == "junction":
            assert 1 <= self.junction <= n - 2


def support(n: int) -> Set[Tuple[int, ...]]:
    """Vertices of the n-1 unit hypercubes along the diagonal (doubled)."""
    _check_n(n)
    pts = set()
    for c in range(1, n):
        hi, lo = n - 1 - 2 * (c - 1), n - 1 - 2 * c
        pts.update(itertools.product((hi, lo), repeat=n))
    return pts


def working(alexander2) -> Tuple[int, ...]:
    n = len(alexander2)
    out = []
    for a in alexander2:
        if (n - 1 - a) % 2:
            raise ValueError(f"coordinate {a} has the wrong parity for n={n}")
        out.append((n - 1 - a) // 2)
    return tuple(out)


def from_working(w) -> Tuple[int, ...]:
    n = len(w)
    return tuple(n - 1 - 2 * v for v in w)


def classify(n: int, alexander2) -> LatticePoint:
    a2 = tuple(int(v) for v in alexander2)
    if len(a2) != n:
        raise ValueError(f"expected {n} coordinates, got {len(a2)}")
    w = working(a2)
    lo, hi = min(w), max(w)
    if lo == hi:
        if lo == 0:
            return LatticePoint(a2, "endpoint-top")
        if lo == n - 1:
            return LatticePoint(a2, "endpoint-bottom")
        if 1 <= lo <= n - 2:
            return LatticePoint(a2, "junction", junction=lo)
        return LatticePoint(a2, "outside-support")
    if hi - lo == 1 and lo >= 0 and hi <= n - 1:
        return LatticePoint(a2, "interior", c=hi, s=w.count(hi) + 1)
    return LatticePoint(a2, "outside-support")


def slice_point(n: int, c: int, s: int) -> Tuple[int, ...]:
    """Non-decreasing (working) representative of slice s in cube c, doubled."""
    return from_working((c - 1,) * (n - s + 1) + (c,) * (s - 1))


def junction_point(n: int, C: int) -> Tuple[int, ...]:
    return from_working((C,) * n)


def interior_prediction(n: int, c: int, s: int) -> Tuple[int, int]:
    """(rank, maslov) at a point in slice s of cube c."""
    _check_n(n)
    if not (1 <= c <= n - 1 and 2 <= s <= n):
        raise ValueError(f"(c, s) = ({c}, {s}) out of range for n={n}")
    return comb(n - 2, c - 1), -c * c - s + 2


def endpoint_prediction(n: int, which: str) -> Tuple[int, int]:
    _check_n(n)
    if which == "top":
        return 1, 0
    if which == "bottom":
        return 1, n - n * n
    raise ValueError(f"which must be 'top' or 'bottom', got {which!r}")


def _junction_direct(n: int, C: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i in range(C + 1):
        d = -C * C - C - i
        out[d] = out.get(d, 0) + comb(n - 1, i)
    for j in range(C):
        d = -C * C - C - n + 2 + j
        out[d] = out.get(d, 0) + comb(n - 1, j)
    return out


def junction_prediction(n: int, C: int) -> Dict[int, int]:
    """Conjectured {maslov: rank} where cubes C and C+1 meet."""
    _check_n(n)
    if not 1 <= C <= n - 2:
        raise ValueError(f"junction index {C} out of range for n={n}")
    if 2 * C <= n - 1:
        return _junction_direct(n, C)
    shift = n * n - n - 2 * C * n
    return {d + shift: r for d, r in _junction_direct(n, n - 1 - C).items()}


@dataclass(eq=False)
class PredictionTable(GradedDimTable):
    """Predicted table with per-entry provenance (THEOREM or CONJECTURE)."""

    provenance: Dict[MultiGrading, str] = field(default_factory=dict)

    def provenance_at(self, alexander2) -> Optional[str]:
        for k, v in self.provenance.items():
            if k.alexander2 == tuple(alexander2):
                return v
        return None


def point_prediction(n: int, alexander2) -> Tuple[Dict[int, int], Optional[str]]:
    """({maslov: rank}, provenance) at one lattice point; ({}, None) off support."""
    p = classify(n, alexander2)
    if p.kind == "endpoint-top" or p.kind == "endpoint-bottom":
        r, m = endpoint_prediction(n, "top" if p.kind == "endpoint-top" else "bottom")
        return {m: r}, THEOREM
    if p.kind == "interior":
        r, m = interior_prediction(n, p.c, p.s)
        return {m: r}, THEOREM
    if p.kind == "junction":
        return junction_prediction(n, p.junction), CONJECTURE
    return {}, None


def full_table(n: int) -> PredictionTable:
    _check_n(n)
    entries: Dict[MultiGrading, int] = {}
    prov: Dict[MultiGrading, str] = {}
    for a2 in sorted(support(n)):
        ranks, tag = point_prediction(n, a2)
        for m, r in ranks.items():
            key = MultiGrading(a2, m)
            entries[key] = r
            prov[key] = tag
    return PredictionTable(
        entries,
        kind="predicted",
        link={"family": "torus", "n": n, "multiplier": 1, "n_components": n},
        provenance=prov,
    )


def reflect(t: GradedDimTable, n: Optional[int] = None) -> GradedDimTable:
    """Map the entry at (v, m) to (-v, m - 2 delta(v)), delta(v) = sum(v).

    Works on GradedDimTable and PredictionTable alike (provenance follows
    the entries).
    """

    def image(k: MultiGrading) -> MultiGrading:
        if n is not None and len(k.alexander2) != n:
            raise ValueError(f"entry {k} does not have {n} coordinates")
        return MultiGrading(tuple(-a for a in k.alexander2), k.maslov - sum(k.alexander2))

    entries = {image(k): v for k, v in t.entries.items()}
    if isinstance(t, PredictionTable):
        prov = {image(k): v for k, v in t.provenance.items()}
        return PredictionTable(entries, kind=t.kind, link=dict(t.link), provenance=prov)
    return GradedDimTable(entries, kind=t.kind, link=dict(t.link))
