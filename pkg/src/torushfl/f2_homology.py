"""Tilde grid complex over GF(2), split by Alexander multigrading."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from . import kernels
from .grid_core import GridDiagram, GridState, MultiGrading

log = logging.getLogger(__name__)

BYTES_PER_STATE = 32
DEFAULT_MEMORY_BUDGET = 1 << 30  # refuses N >= 11


class BudgetExceededError(RuntimeError):
    def __init__(self, size: int, needed: int, budget: int):
        super().__init__(
            f"enumerating {size}! states needs ~{needed / 2**20:.0f} MiB, budget is {budget / 2**20:.0f} MiB"
        )
        self.size = size
        self.needed = needed
        self.budget = budget


@dataclass
class GradedDimTable:
    """Finite map MultiGrading -> positive rank.

    ``kind`` is one of "tilde", "hat", "predicted"; ``link`` carries metadata
    such as ``{"family": "torus", "n": 3, "multiplier": 1}``.
    """

    entries: Dict[MultiGrading, int] = field(default_factory=dict)
    kind: str = "hat"
    link: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for k, v in self.entries.items():
            if v < 0:
                raise ValueError(f"negative rank {v} at {k}")
            if v:
                cleaned[k] = int(v)
        self.entries = cleaned

    @classmethod
    def from_items(cls, items: Iterable[Tuple[Tuple[int, ...], int, int]], **kw) -> "GradedDimTable":
        """Build from (alexander2, maslov, rank) triples; repeated keys add."""
        acc: Dict[MultiGrading, int] = {}
        for a2, m, r in items:
            key = MultiGrading(tuple(a2), int(m))
            acc[key] = acc.get(key, 0) + int(r)
        return cls(acc, **kw)

    @property
    def n_components(self) -> Optional[int]:
        if "n_components" in self.link:
            return int(self.link["n_components"])
        for k in self.entries:
            return len(k.alexander2)
        return None

    def total_rank(self) -> int:
        return sum(self.entries.values())

    def support(self) -> set:
        return {k.alexander2 for k in self.entries}

    def at(self, alexander2: Tuple[int, ...]) -> Dict[int, int]:
        """Graded ranks {maslov: rank} at one Alexander multigrading."""
        a2 = tuple(alexander2)
        return {k.maslov: v for k, v in self.entries.items() if k.alexander2 == a2}

    def by_alexander(self) -> Dict[Tuple[int, ...], Dict[int, int]]:
        out: Dict[Tuple[int, ...], Dict[int, int]] = {}
        for k, v in self.entries.items():
            out.setdefault(k.alexander2, {})[k.maslov] = v
        return out

    def sorted_items(self) -> List[Tuple[MultiGrading, int]]:
        """Entries sorted by alexander2 ascending, then maslov descending."""
        return sorted(self.entries.items(), key=lambda kv: kv[0].sort_key())

    def shifted(self, alexander2_offset: Tuple[int, ...], maslov_offset: int = 0) -> "GradedDimTable":
        return GradedDimTable(
            {
                MultiGrading(tuple(a + d for a, d in zip(k.alexander2, alexander2_offset)), k.maslov + maslov_offset): v
                for k, v in self.entries.items()
            },
            kind=self.kind,
            link=dict(self.link),
        )

    def __eq__(self, other):
        if not isinstance(other, GradedDimTable):
            return NotImplemented
        return self.entries == other.entries


@dataclass
class Bucket:
    """All states sharing one Alexander multigrading.

    ``ranks`` holds the lexicographic indices of the states (sorted) and
    ``maslov`` their Maslov degrees, aligned with ``ranks``.
    """

    alexander2: Tuple[int, ...]
    ranks: np.ndarray
    maslov: np.ndarray
    size: int

    def __len__(self) -> int:
        return len(self.ranks)

    @property
    def states(self) -> Dict[int, List[GridState]]:
        """maslov -> states, materialised as GridState objects."""
        perms = kernels.impl.unrank(self.ranks.astype(np.int64), self.size)
        out: Dict[int, List[GridState]] = {}
        for m, p in zip(self.maslov.tolist(), perms):
            out.setdefault(m, []).append(GridState(tuple(int(v) for v in p)))
        return dict(sorted(out.items(), reverse=True))

    def maslov_range(self) -> Tuple[int, int]:
        return int(self.maslov.min()), int(self.maslov.max())


def check_budget(size: int, budget: Optional[int] = DEFAULT_MEMORY_BUDGET) -> None:
    if budget is None:
        return
    needed = factorial(size) * BYTES_PER_STATE
    if needed > budget:
        raise BudgetExceededError(size, needed, budget)


def build_buckets(g: GridDiagram, memory_budget: Optional[int] = DEFAULT_MEMORY_BUDGET, backend=None) -> List[Bucket]:
    """Grade every state once and group the states by Alexander multigrading."""
    check_budget(g.size, memory_budget)
    mas, alex = kernels.grade_all(g, backend)
    ell = alex.shape[1]
    order = np.lexsort(tuple(alex[:, j] for j in reversed(range(ell))))
    sorted_alex = alex[order]
    change = np.any(sorted_alex[1:] != sorted_alex[:-1], axis=1)
    starts = np.concatenate(([0], np.nonzero(change)[0] + 1, [len(order)]))
    buckets = []
    for lo, hi in zip(starts[:-1], starts[1:]):
        idx = order[lo:hi]  # lexsort is stable, so idx is already increasing
        buckets.append(Bucket(tuple(int(v) for v in sorted_alex[lo]), idx.astype(np.int64), mas[idx].astype(np.int32), g.size))
    return buckets


def _bucket_edges(size: int, free: np.ndarray, bucket: Bucket, backend) -> Tuple[np.ndarray, np.ndarray]:
    """Differential inside a bucket as (source, target) local indices."""
    perms = backend.unrank(bucket.ranks, size)
    src, tgt_rank = backend.boundary_targets(perms, free)
    tgt = np.searchsorted(bucket.ranks, tgt_rank)
    if len(tgt) and (
        np.any(tgt >= len(bucket.ranks))
        or np.any(bucket.ranks[np.minimum(tgt, len(bucket.ranks) - 1)] != tgt_rank)
    ):
        raise AssertionError(f"differential leaves Alexander grading {bucket.alexander2}")
    if len(src) and np.any(bucket.maslov[tgt] != bucket.maslov[src] - 1):
        raise AssertionError(f"differential does not drop Maslov by one in {bucket.alexander2}")
    return src.astype(np.int64), tgt.astype(np.int64)


def bucket_homology(size: int, free: np.ndarray, bucket: Bucket, backend=None) -> Dict[int, int]:
    """{maslov: dim H} for one bucket: dim C_m - rank d_m - rank d_{m+1}."""
    backend = backend or kernels.impl
    src, tgt = _bucket_edges(size, free, bucket, backend)
    mas = bucket.maslov
    levels = np.unique(mas)
    pos = np.empty(len(mas), dtype=np.int64)
    dims = {}
    for m in levels.tolist():
        members = np.nonzero(mas == m)[0]
        pos[members] = np.arange(len(members))
        dims[m] = len(members)
    ranks = {}
    src_m = mas[src] if len(src) else np.empty(0, dtype=mas.dtype)
    for m in levels.tolist():
        if m - 1 not in dims:
            ranks[m] = 0
            continue
        sel = src_m == m
        cols = pos[src[sel]]
        rows = pos[tgt[sel]]
        order = np.argsort(cols, kind="stable")
        cols, rows = cols[order], rows[order]
        indptr = np.zeros(dims[m] + 1, dtype=np.int64)
        np.cumsum(np.bincount(cols, minlength=dims[m]), out=indptr[1:])
        ranks[m] = backend.gf2_rank(indptr, rows.astype(np.int32), dims[m - 1])
    return {m: dims[m] - ranks[m] - ranks.get(m + 1, 0) for m in levels.tolist() if dims[m] - ranks[m] - ranks.get(m + 1, 0)}


def d_squared_is_zero(g: GridDiagram, bucket: Bucket, backend=None) -> bool:
    """Check d o d = 0 on one bucket by composing the edge lists mod 2."""
    backend = backend or kernels.impl
    src, tgt = _bucket_edges(g.size, kernels.marking_free_table(g), bucket, backend)
    out: Dict[int, List[int]] = {}
    for s, t in zip(src.tolist(), tgt.tolist()):
        out.setdefault(s, []).append(t)
    for s, mids in out.items():
        parity: Dict[int, int] = {}
        for t in mids:
            for u in out.get(t, ()):
                parity[u] = parity.get(u, 0) ^ 1
        if any(parity.values()):
            return False
    return True


_worker_state: dict = {}


def _init_worker(size: int, free: np.ndarray, backend_name: str):
    _worker_state["size"] = size
    _worker_state["free"] = free
    _worker_state["backend"] = kernels.get_backend(backend_name)


def _worker_task(bucket: Bucket):
    return bucket.alexander2, bucket_homology(
        _worker_state["size"], _worker_state["free"], bucket, _worker_state["backend"]
    )


def tilde_homology(
    g: GridDiagram,
    workers: int = 1,
    memory_budget: Optional[int] = DEFAULT_MEMORY_BUDGET,
    backend=None,
) -> GradedDimTable:
    """Homology of the fully blocked grid complex, one entry per (Alexander, Maslov)."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    backend = backend or kernels.impl
    buckets = build_buckets(g, memory_budget, backend)
    free = kernels.marking_free_table(g)
    results: Dict[Tuple[int, ...], Dict[int, int]] = {}
    if workers == 1:
        for b in buckets:
            results[b.alexander2] = bucket_homology(g.size, free, b, backend)
    else:
        name = "python" if backend.__name__.endswith("_pykernels") else "compiled"
        # largest buckets first keeps the pool busy
        ordered = sorted(buckets, key=len, reverse=True)
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(g.size, free, name)) as pool:
            for a2, hom in pool.map(_worker_task, ordered):
                results[a2] = hom
    log.info("grid %d: %d buckets, %d states", g.size, len(buckets), factorial(g.size))
    items = ((a2, m, r) for a2 in sorted(results) for m, r in results[a2].items())
    return GradedDimTable.from_items(items, kind="tilde", link=grid_link_info(g))


def grid_link_info(g: GridDiagram) -> Dict[str, object]:
    info: Dict[str, object] = {"family": g.family, "grid_size": g.size, "n_components": g.n_components}
    if g.family == "torus":
        info["n"], info["multiplier"] = g.params
    return info


def poincare(t: GradedDimTable) -> Dict[Tuple[int, Tuple[int, ...]], int]:
    """Coefficients of sum rank * q^maslov * prod t_i^(alexander2_i / 2).

    Keys are (maslov, alexander2) exponent pairs, with doubled t-exponents.
    """
    return {(k.maslov, k.alexander2): v for k, v in t.entries.items()}


def from_poincare(poly: Mapping[Tuple[int, Tuple[int, ...]], int], kind: str = "hat", link=None) -> GradedDimTable:
    return GradedDimTable.from_items(((a2, m, c) for (m, a2), c in poly.items()), kind=kind, link=dict(link or {}))
