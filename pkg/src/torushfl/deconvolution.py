"""Recover hat homology from tilde homology by exact polynomial division.

Grid homology of the fully blocked complex is the hat theory tensored with
``n_i - 1`` copies of ``V_i = F(m=0, A=0) + F(m=-1, A_i=-1)`` per component.
In Poincare-polynomial terms each copy is the factor ``1 + q^-1 t_i^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .f2_homology import GradedDimTable
from .grid_core import GridDiagram, MultiGrading


class NonDivisibleError(ArithmeticError):
    """The table is not a multiple of the factor polynomial."""


@dataclass(frozen=True)
class FactorSpec:
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @classmethod
    def for_grid(cls, g: GridDiagram) -> "FactorSpec":
        return cls(tuple(k - 1 for k in g.o_counts))


def _order_key(key: MultiGrading):
    return (sum(key.alexander2), key.alexander2, key.maslov)


def _check_width(t: GradedDimTable, f: FactorSpec) -> None:
    for k in t.entries:
        if len(k.alexander2) != len(f.exponents):
            raise ValueError(f"table entry {k} does not match {len(f.exponents)} components")


def multiply_factors(t: GradedDimTable, f: FactorSpec) -> GradedDimTable:
    """t * prod_i (1 + q^-1 t_i^-1)^e_i."""
    _check_width(t, f)
    cur: Dict[MultiGrading, int] = dict(t.entries)
    for i, e in enumerate(f.exponents):
        for _ in range(e):
            nxt = dict(cur)
            for k, v in cur.items():
                a2 = list(k.alexander2)
                a2[i] -= 2
                low = MultiGrading(tuple(a2), k.maslov - 1)
                nxt[low] = nxt.get(low, 0) + v
            cur = nxt
    return GradedDimTable(cur, kind="tilde", link=dict(t.link))


def _divide_once(entries: Dict[MultiGrading, int], i: int) -> Dict[MultiGrading, int]:
    rem = dict(entries)
    out: Dict[MultiGrading, int] = {}
    # top-down: the factor's leading term is 1, and subtraction only touches
    # strictly lower monomials, so one descending pass suffices
    for top in sorted(entries, key=_order_key, reverse=True):
        c = rem.pop(top, 0)
        if c == 0:
            continue
        out[top] = c
        a2 = list(top.alexander2)
        a2[i] -= 2
        low = MultiGrading(tuple(a2), top.maslov - 1)
        left = rem.get(low, 0) - c
        if left < 0:
            raise NonDivisibleError(f"subtraction goes negative at {low} (factor {i})")
        if left:
            rem[low] = left
        else:
            rem.pop(low, None)
    return out


def strip_factors(t: GradedDimTable, f: FactorSpec) -> GradedDimTable:
    """Table h with poincare(t) == poincare(h) * prod (1 + q^-1 t_i^-1)^e_i."""
    _check_width(t, f)
    cur = dict(t.entries)
    for i, e in enumerate(f.exponents):
        for _ in range(e):
            cur = _divide_once(cur, i)
    kind = "hat" if t.kind == "tilde" else t.kind
    return GradedDimTable(cur, kind=kind, link=dict(t.link))
