"""Toroidal grid diagrams, grid states and their gradings.

Coordinates: the grid is the square ``[0, N)^2`` with opposite sides
identified.  Markings sit at cell centres ``(c + 1/2, r + 1/2)``; the point
of a state in column ``i`` sits on the lattice point ``(i, perm[i])``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class GridState:
    """A generator of the grid complex: column ``i`` holds row ``perm[i]``."""

    perm: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")

    def __len__(self) -> int:
        return len(self.perm)

    def pack(self) -> int:
        """Pack into one integer, 4 bits per column (column 0 lowest)."""
        if len(self.perm) > 16:
            raise ValueError("packing supports N <= 16")
        word = 0
        for i, r in enumerate(self.perm):
            word |= r << (4 * i)
        return word

    @classmethod
    def unpack(cls, word: int, size: int) -> "GridState":
        return cls(tuple((word >> (4 * i)) & 0xF for i in range(size)))


@dataclass(frozen=True)
class MultiGrading:
    """Doubled Alexander vector plus Maslov degree."""

    alexander2: Tuple[int, ...]
    maslov: int

    def sort_key(self):
        return (self.alexander2, -self.maslov)


@dataclass(frozen=True)
class Rectangle:
    """Rectangle on the torus.

    Its interior covers cell columns ``left, left+1, ..., right-1`` and cell
    rows ``bottom, ..., top-1`` (all mod N).  The lower-left and upper-right
    corners belong to the initial state, the other two to the terminal one.
    """

    left: int
    right: int
    bottom: int
    top: int
    size: int

    @property
    def columns(self) -> List[int]:
        return _cyclic_range(self.left, self.right, self.size)

    @property
    def rows(self) -> List[int]:
        return _cyclic_range(self.bottom, self.top, self.size)

    def contains_cell(self, col: int, row: int) -> bool:
        return _cyclic_between(col, self.left, self.right, self.size, closed_left=True) and _cyclic_between(
            row, self.bottom, self.top, self.size, closed_left=True
        )

    def contains_point(self, col: int, row: int) -> bool:
        """Lattice point strictly inside."""
        return _cyclic_between(col, self.left, self.right, self.size) and _cyclic_between(
            row, self.bottom, self.top, self.size
        )


def _cyclic_range(a: int, b: int, n: int) -> List[int]:
    width = (b - a) % n
    return [(a + k) % n for k in range(width)]


def _cyclic_between(v: int, a: int, b: int, n: int, closed_left: bool = False) -> bool:
    off = (v - a) % n
    width = (b - a) % n
    if closed_left:
        return off < width
    return 0 < off < width


@dataclass(frozen=True)
class GridDiagram:
    """N x N toroidal grid with one O and one X in every row and column.

    ``o_perm[i]`` / ``x_perm[i]`` are the rows of the O / X marking in column
    ``i``.  Components are the cycles of ``c -> o_perm^-1(x_perm(c))`` on
    columns, labelled in order of their smallest column.
    """

    o_perm: Tuple[int, ...]
    x_perm: Tuple[int, ...]
    family: str = "custom"
    params: Tuple[int, ...] = ()
    mirrored: bool = False
    component_of: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.o_perm)
        if n < 1 or len(self.x_perm) != n:
            raise ValueError("o_perm and x_perm must have the same positive length")
        for p in (self.o_perm, self.x_perm):
            if sorted(p) != list(range(n)):
                raise ValueError(f"not a permutation: {p}")
        if n > 1 and any(o == x for o, x in zip(self.o_perm, self.x_perm)):
            raise ValueError("an O and an X share a cell")
        object.__setattr__(self, "o_perm", tuple(self.o_perm))
        object.__setattr__(self, "x_perm", tuple(self.x_perm))
        o_inv = [0] * n
        for c, r in enumerate(self.o_perm):
            o_inv[r] = c
        comp = [-1] * n
        label = 0
        for start in range(n):
            if comp[start] >= 0:
                continue
            c = start
            while comp[c] < 0:
                comp[c] = label
                c = o_inv[self.x_perm[c]]
            label += 1
        object.__setattr__(self, "component_of", tuple(comp))

    @property
    def size(self) -> int:
        return len(self.o_perm)

    @property
    def n_components(self) -> int:
        return max(self.component_of) + 1

    @property
    def o_counts(self) -> Tuple[int, ...]:
        """Number of O markings on each component."""
        counts = [0] * self.n_components
        for c in self.component_of:
            counts[c] += 1
        return tuple(counts)

    def o_markings(self) -> List[Tuple[int, int]]:
        return list(enumerate(self.o_perm))

    def x_markings(self) -> List[Tuple[int, int]]:
        return list(enumerate(self.x_perm))

    def mirror(self) -> "GridDiagram":
        """Reflect the columns; presents the mirror image link."""
        n = self.size
        return GridDiagram(
            tuple(self.o_perm[n - 1 - j] for j in range(n)),
            tuple(self.x_perm[n - 1 - j] for j in range(n)),
            family=self.family,
            params=self.params,
            mirrored=not self.mirrored,
        )

    def marking_grid(self) -> List[List[int]]:
        """``grid[col][row]``: 0 empty, 1 O, 2 X."""
        n = self.size
        grid = [[0] * n for _ in range(n)]
        for c in range(n):
            grid[c][self.o_perm[c]] = 1
            grid[c][self.x_perm[c]] = 2
        return grid

    def key(self) -> str:
        """Stable textual description, used for cache hashing."""
        return "o=" + ",".join(map(str, self.o_perm)) + ";x=" + ",".join(map(str, self.x_perm))


def torus_grid(n: int, multiplier: int = 1) -> GridDiagram:
    """Grid for the positive torus link T(n, s*n), s = ``multiplier``.

    Size ``N = n(s+1)``.  The O markings start on the main diagonal and the X
    markings are shifted by ``s*n``; that grid presents the negative torus
    link under the vertical-over-horizontal convention, so the columns are
    reflected once and the result is flagged ``mirrored``.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if multiplier < 1:
        raise ValueError(f"multiplier must be >= 1, got {multiplier}")
    size = n * (multiplier + 1)
    shift = multiplier * n
    raw = GridDiagram(
        tuple(range(size)),
        tuple((i + shift) % size for i in range(size)),
        family="torus",
        params=(n, multiplier),
    )
    assert raw.n_components == gcd(size, shift) == n
    return raw.mirror()


def linking_matrix(g: GridDiagram) -> List[List[int]]:
    """Pairwise linking numbers from the planar grid projection.

    Vertical segments run from X to O and pass over horizontal segments,
    which run from O to X.  A crossing is positive when (over, under) is a
    positively oriented frame.
    """
    n = g.size
    ell = g.n_components
    o_col_of_row = [0] * n
    x_col_of_row = [0] * n
    for c in range(n):
        o_col_of_row[g.o_perm[c]] = c
        x_col_of_row[g.x_perm[c]] = c
    twice = [[0] * ell for _ in range(ell)]
    for c in range(n):
        lo, hi = sorted((g.o_perm[c], g.x_perm[c]))
        v_dir = 1 if g.o_perm[c] > g.x_perm[c] else -1
        for r in range(lo + 1, hi):
            left, right = sorted((o_col_of_row[r], x_col_of_row[r]))
            if not left < c < right:
                continue
            h_dir = 1 if x_col_of_row[r] > o_col_of_row[r] else -1
            # over = (0, v_dir), under = (h_dir, 0): cross = -v_dir * h_dir
            sign = -v_dir * h_dir
            a = g.component_of[c]
            b = g.component_of[o_col_of_row[r]]
            if a != b:
                twice[a][b] += sign
                twice[b][a] += sign
    return [[v // 2 for v in row] for row in twice]


def enumerate_states(g: GridDiagram) -> Iterator[GridState]:
    """All N! states in lexicographic order."""
    for p in itertools.permutations(range(g.size)):
        yield GridState(p)


def _comparable(col: float, row: float, pcol: int, prow: int) -> bool:
    # True when one point is strictly south-west of the other.
    return (pcol < col) == (prow < row)


def _j2_points_markings(perm: Sequence[int], marks: Sequence[Tuple[int, int]]) -> int:
    """2 * J(x, M) for lattice points x and cell-centre markings M."""
    total = 0
    for c, r in marks:
        mc, mr = c + 0.5, r + 0.5
        for i, p in enumerate(perm):
            if _comparable(mc, mr, i, p):
                total += 1
    return total


def _j2_markings(a: Sequence[Tuple[int, int]], b: Sequence[Tuple[int, int]]) -> int:
    """2 * J(A, B) for two sets of markings."""
    total = 0
    for ca, ra in a:
        for cb, rb in b:
            if (ca < cb and ra < rb) or (cb < ca and rb < ra):
                total += 1
    return total


def _inversions_up(perm: Sequence[int]) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] < perm[j])


def maslov(g: GridDiagram, x: GridState) -> int:
    """M(x) = J(x,x) - 2J(x,O) + J(O,O) + 1."""
    o = g.o_markings()
    return _inversions_up(x.perm) - _j2_points_markings(x.perm, o) + _j2_markings(o, o) // 2 + 1


def alexander_constants(g: GridDiagram) -> Tuple[int, ...]:
    """State-independent part of each doubled Alexander coordinate."""
    xs, os_ = g.x_markings(), g.o_markings()
    both = xs + os_
    out = []
    for comp in range(g.n_components):
        xi = [m for m in xs if g.component_of[m[0]] == comp]
        oi = [m for m in os_ if g.component_of[m[0]] == comp]
        # -J(X+O, X_i - O_i), doubled
        j2 = _j2_markings(both, xi) - _j2_markings(both, oi)
        if j2 % 2:
            raise AssertionError("non-integral Alexander constant")
        out.append(-(j2 // 2) - (len(oi) - 1))
    return tuple(out)


def alexander(g: GridDiagram, x: GridState) -> Tuple[int, ...]:
    """Doubled Alexander vector: 2A_i = 2J(x - (X+O)/2, X_i - O_i) - (n_i - 1)."""
    consts = alexander_constants(g)
    out = list(consts)
    for c in range(g.size):
        comp = g.component_of[c]
        for row, sgn in ((g.x_perm[c], 1), (g.o_perm[c], -1)):
            mc, mr = c + 0.5, row + 0.5
            cnt = sum(1 for i, p in enumerate(x.perm) if _comparable(mc, mr, i, p))
            out[comp] += sgn * cnt
    return tuple(out)


def grading(g: GridDiagram, x: GridState) -> MultiGrading:
    return MultiGrading(alexander(g, x), maslov(g, x))


def rectangles(g: GridDiagram, x: GridState) -> List[Tuple[GridState, Rectangle]]:
    """All N(N-1) rectangles starting at ``x``."""
    n = g.size
    perm = x.perm
    out = []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            rect = Rectangle(a, b, perm[a], perm[b], n)
            y = list(perm)
            y[a], y[b] = perm[b], perm[a]
            out.append((GridState(tuple(y)), rect))
    return out


def points_inside(x: GridState, rect: Rectangle) -> int:
    return sum(1 for i, p in enumerate(x.perm) if rect.contains_point(i, p))


def markings_inside(g: GridDiagram, rect: Rectangle) -> Tuple[List[int], List[int]]:
    """Per-component counts of (O, X) markings in the rectangle."""
    o_cnt = [0] * g.n_components
    x_cnt = [0] * g.n_components
    for c in rect.columns:
        comp = g.component_of[c]
        if rect.contains_cell(c, g.o_perm[c]):
            o_cnt[comp] += 1
        if rect.contains_cell(c, g.x_perm[c]):
            x_cnt[comp] += 1
    return o_cnt, x_cnt


def empty_rectangles(g: GridDiagram, x: GridState) -> List[Tuple[GridState, Rectangle]]:
    """Rectangles from ``x`` whose interior avoids state points and all markings."""
    out = []
    for y, rect in rectangles(g, x):
        if points_inside(x, rect):
            continue
        o_cnt, x_cnt = markings_inside(g, rect)
        if any(o_cnt) or any(x_cnt):
            continue
        out.append((y, rect))
    return out
