"""Grid -> tilde -> hat, with optional caching, and the full verification run."""

from __future__ import annotations

import logging
from typing import Optional

from .cache import TableCache
from .deconvolution import FactorSpec, strip_factors
from .f2_homology import DEFAULT_MEMORY_BUDGET, GradedDimTable, tilde_homology
from .grid_core import GridDiagram, torus_grid
from .predictions import full_table
from .verifier import (
    CheckResult,
    VerificationReport,
    compare,
    conjugation_check,
    forgetful_check,
    orbit_check,
    totals_check,
)

log = logging.getLogger(__name__)


def unknot_grid() -> GridDiagram:
    return GridDiagram((0, 1), (1, 0), family="unknot", params=(1, 0))


def tilde_table(
    g: GridDiagram,
    cache: Optional[TableCache] = None,
    workers: int = 1,
    memory_budget: Optional[int] = DEFAULT_MEMORY_BUDGET,
) -> GradedDimTable:
    if cache is not None:
        hit = cache.load(g)
        if hit is not None:
            return hit
    t = tilde_homology(g, workers=workers, memory_budget=memory_budget)
    if cache is not None:
        cache.store(g, t)
    return t


def hat_from_tilde(g: GridDiagram, tilde: GradedDimTable) -> GradedDimTable:
    hat = strip_factors(tilde, FactorSpec.for_grid(g))
    hat.link = dict(tilde.link, n_components=g.n_components)
    return hat


def hat_table(g: GridDiagram, **kw) -> GradedDimTable:
    return hat_from_tilde(g, tilde_table(g, **kw))


def torus_tables(n: int, multiplier: int = 1, **kw):
    """(grid, tilde, hat) for T(n, s*n); n = 1 gives the unknot."""
    g = unknot_grid() if n == 1 else torus_grid(n, multiplier)
    tilde = tilde_table(g, **kw)
    return g, tilde, hat_from_tilde(g, tilde)


def _violations_check(name, violations) -> CheckResult:
    if not violations:
        return CheckResult(name, True, "no violations")
    shown = "; ".join(f"{a} rank {r} vs {b} rank {r2}" for a, b, r, r2 in violations[:5])
    return CheckResult(name, False, f"{len(violations)} violations: {shown}")


def _check(name: str, n: int, g, tilde, hat, kw) -> CheckResult:
    if name == "orbit":
        return _violations_check("orbit", orbit_check(hat))
    if name == "conjugation":
        return _violations_check("conjugation", conjugation_check(hat))
    if name == "totals":
        return totals_check(tilde, hat, g.size, n)
    if name == "forgetful":
        _, _, prev = torus_tables(n - 1, **kw)
        bad = []
        strict = 0
        for i in range(n):
            rep = forgetful_check(hat, prev, i)
            bad += [(i, a) for a in rep.failures()]
            strict += sum(f.strict for f in rep.fibers.values())
        detail = f"{len(bad)} failing fibers {bad[:5]}" if bad else f"all fibers pass ({strict} with nonzero higher differentials)"
        return CheckResult("forgetful", not bad, detail)
    raise ValueError(f"unknown property {name!r}")


PROPERTIES = ("orbit", "conjugation", "forgetful", "totals")


def run_property(name: str, n: int, **kw) -> CheckResult:
    """One structural check on the computed T(n, n) tables."""
    if name not in PROPERTIES:
        raise ValueError(f"unknown property {name!r}")
    g, tilde, hat = torus_tables(n, **kw)
    return _check(name, n, g, tilde, hat, kw)


def verify(n: int, **kw) -> VerificationReport:
    """Compute T(n, n), compare with the closed forms, and run all structural checks."""
    g, tilde, hat = torus_tables(n, **kw)
    report = compare(hat, full_table(n))
    for name in ("orbit", "conjugation", "totals", "forgetful"):
        report.checks.append(_check(name, n, g, tilde, hat, kw))
    return report
