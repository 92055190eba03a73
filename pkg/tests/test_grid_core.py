import itertools
import random
from collections import Counter
from math import factorial

import pytest

from torushfl.grid_core import (
    GridDiagram,
    GridState,
    alexander,
    alexander_constants,
    empty_rectangles,
    enumerate_states,
    linking_matrix,
    markings_inside,
    maslov,
    points_inside,
    rectangles,
    torus_grid,
)

from .conftest import random_grid_perms

UNKNOT2 = GridDiagram((0, 1), (1, 0))


def crossing_oracle(g):
    """Linking numbers counting only crossings where component a passes over b.

    Independent of linking_matrix's averaged count: every crossing in a grid
    projection has the vertical strand on top, so lk(a, b) is the signed
    number of crossings with a vertical, b horizontal.
    """
    n = g.size
    segs_v, segs_h = [], []
    for c in range(n):
        # vertical: X -> O
        segs_v.append((c, g.x_perm[c], g.o_perm[c], g.component_of[c]))
    o_col = {r: c for c, r in enumerate(g.o_perm)}
    x_col = {r: c for c, r in enumerate(g.x_perm)}
    for r in range(n):
        # horizontal: O -> X
        segs_h.append((r, o_col[r], x_col[r], g.component_of[o_col[r]]))
    ell = g.n_components
    over = [[0] * ell for _ in range(ell)]
    for (c, y0, y1, a), (r, x0, x1, b) in itertools.product(segs_v, segs_h):
        if a != b and min(y0, y1) < r < max(y0, y1) and min(x0, x1) < c < max(x0, x1):
            up = 1 if y1 > y0 else -1
            right = 1 if x1 > x0 else -1
            # det[(0, up), (right, 0)] = -up * right
            over[a][b] += -up * right
    return over


class TestTorusGrid:
    def test_hopf(self):
        g = torus_grid(2)
        assert g.size == 4 and g.n_components == 2

    def test_three_components(self):
        g = torus_grid(3)
        assert g.size == 6 and g.n_components == 3

    def test_multiplier(self):
        g = torus_grid(2, 2)
        assert g.size == 6 and g.n_components == 2
        assert g.o_counts == (3, 3)

    @pytest.mark.parametrize("n,s", [(1, 1), (0, 1), (2, 0), (3, -1)])
    def test_rejects(self, n, s):
        with pytest.raises(ValueError):
            torus_grid(n, s)

    def test_reflected_once_for_chirality(self):
        g = torus_grid(3)
        assert g.mirrored
        assert not g.mirror().mirrored
        # before reflection: O on the diagonal, X shifted by n
        raw = g.mirror()
        assert raw.o_perm == tuple(range(6))
        assert raw.x_perm == tuple((i + 3) % 6 for i in range(6))

    @pytest.mark.parametrize("n,s", [(2, 1), (3, 1), (4, 1), (5, 1), (2, 2), (3, 2), (2, 3)])
    def test_component_count_and_linking(self, n, s):
        g = torus_grid(n, s)
        assert g.n_components == n
        lk = linking_matrix(g)
        for i in range(n):
            for j in range(n):
                assert lk[i][j] == (0 if i == j else s)

    def test_invalid_grid(self):
        with pytest.raises(ValueError):
            GridDiagram((0, 1), (0, 1))
        with pytest.raises(ValueError):
            GridDiagram((0, 0), (1, 1))


class TestLinking:
    def test_hopf(self):
        assert linking_matrix(torus_grid(2)) == [[0, 1], [1, 0]]
        assert crossing_oracle(torus_grid(2)) == [[0, 1], [1, 0]]

    def test_t33(self):
        lk = linking_matrix(torus_grid(3))
        assert lk == crossing_oracle(torus_grid(3))
        assert all(lk[i][j] == 1 for i in range(3) for j in range(3) if i != j)

    def test_t24(self):
        assert linking_matrix(torus_grid(2, 2)) == [[0, 2], [2, 0]]
        assert crossing_oracle(torus_grid(2, 2)) == [[0, 2], [2, 0]]

    def test_mirror_negates(self):
        g = torus_grid(3)
        assert linking_matrix(g.mirror()) == [[-v for v in row] for row in linking_matrix(g)]

    def test_random_grids_match_oracle(self):
        rng = random.Random(7)
        for _ in range(30):
            g = GridDiagram(*random_grid_perms(rng.randint(2, 7), rng))
            assert linking_matrix(g) == crossing_oracle(g)


class TestStates:
    @pytest.mark.parametrize("size", [1, 4, 6])
    def test_counts(self, size):
        if size == 1:
            g = GridDiagram((0,), (0,))
        else:
            g = torus_grid(size // 2)
        states = list(enumerate_states(g))
        assert len(states) == factorial(size)
        assert len(set(states)) == len(states)
        assert [s.perm for s in states] == sorted(s.perm for s in states)

    def test_pack_roundtrip(self):
        s = GridState((3, 0, 2, 1))
        assert GridState.unpack(s.pack(), 4) == s

    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            GridState((0, 0, 1))


class TestGradings:
    def test_unknot2(self):
        vals = sorted((maslov(UNKNOT2, s), alexander(UNKNOT2, s)) for s in enumerate_states(UNKNOT2))
        assert vals == [(-1, (-2,)), (0, (0,))]

    def test_hopf_max_maslov(self):
        g = torus_grid(2)
        assert max(maslov(g, s) for s in enumerate_states(g)) == 0

    def test_alexander_parity(self):
        # each coordinate has the parity of n - 1 for T(n, n)
        for n in (2, 3):
            g = torus_grid(n)
            for s in enumerate_states(g):
                assert all((a - (n - 1)) % 2 == 0 for a in alexander(g, s))

    @pytest.mark.parametrize("g", [torus_grid(2), torus_grid(3), torus_grid(2, 2)], ids=["T22", "T33", "T24"])
    def test_state_alexander_multiset_symmetric(self, g):
        e = [k - 1 for k in g.o_counts]
        c = Counter(tuple(a + ei for a, ei in zip(alexander(g, s), e)) for s in enumerate_states(g))
        for k, v in c.items():
            assert c[tuple(-a for a in k)] == v


def rectangle_rule_grids():
    rng = random.Random(11)
    grids = [UNKNOT2, torus_grid(2), GridDiagram((0, 1, 2), (1, 2, 0))]
    grids += [GridDiagram(*random_grid_perms(5, rng)) for _ in range(3)]
    grids += [GridDiagram(*random_grid_perms(4, rng)) for _ in range(2)]
    return grids


@pytest.mark.parametrize("g", rectangle_rule_grids())
def test_rectangle_rules_all_rectangles(g):
    """Every rectangle, empty or not: grading differences follow from its contents."""
    gr = {s: (maslov(g, s), alexander(g, s)) for s in enumerate_states(g)}
    for x in gr:
        rects = rectangles(g, x)
        assert len(rects) == g.size * (g.size - 1)
        for y, r in rects:
            o_cnt, x_cnt = markings_inside(g, r)
            k = points_inside(x, r)
            assert gr[x][0] - gr[y][0] == 1 - 2 * sum(o_cnt) + 2 * k
            for i in range(g.n_components):
                assert gr[x][1][i] - gr[y][1][i] == 2 * (x_cnt[i] - o_cnt[i])


class TestEmptyRectangles:
    def test_unknot2_has_none(self):
        # every cell of the 2x2 grid is marked
        for s in enumerate_states(UNKNOT2):
            assert empty_rectangles(UNKNOT2, s) == []

    def test_unknot2_from_diagonal_exhaustive(self):
        x = GridState((0, 1))
        assert len(rectangles(UNKNOT2, x)) == 2
        for y, r in rectangles(UNKNOT2, x):
            assert y == GridState((1, 0))
            assert sum(map(sum, markings_inside(UNKNOT2, r))) == 1

    @pytest.mark.parametrize("g", [torus_grid(2), torus_grid(3)], ids=["T22", "T33"])
    def test_drop_maslov_keep_alexander(self, g):
        seen = 0
        for x in enumerate_states(g):
            for y, r in empty_rectangles(g, x):
                seen += 1
                assert maslov(g, x) - maslov(g, y) == 1
                assert alexander(g, x) == alexander(g, y)
                assert sum(a != b for a, b in zip(x.perm, y.perm)) == 2
        assert seen > 0


def test_alexander_constants_integral():
    rng = random.Random(3)
    for _ in range(20):
        g = GridDiagram(*random_grid_perms(rng.randint(2, 7), rng))
        assert len(alexander_constants(g)) == g.n_components
