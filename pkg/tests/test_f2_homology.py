import random
from collections import Counter

import numpy as np
import pytest

from torushfl import kernels
from torushfl.f2_homology import (
    BudgetExceededError,
    GradedDimTable,
    bucket_homology,
    build_buckets,
    check_budget,
    d_squared_is_zero,
    from_poincare,
    poincare,
    tilde_homology,
)
from torushfl.grid_core import (
    GridDiagram,
    MultiGrading,
    alexander,
    empty_rectangles,
    enumerate_states,
    maslov,
    torus_grid,
)

from .conftest import random_grid_perms
from .test_kernels import dense_rank_oracle

UNKNOT2 = GridDiagram((0, 1), (1, 0))


def homology_oracle(g):
    """Dense GF(2) homology straight from the single-state reference functions."""
    states = list(enumerate_states(g))
    grade = {s: (alexander(g, s), maslov(g, s)) for s in states}
    groups = {}
    for s in states:
        groups.setdefault(grade[s], []).append(s)
    pos = {s: i for key in groups for i, s in enumerate(groups[key])}

    def rank_d(a2, m):
        if (a2, m - 1) not in groups:
            return 0
        cols = []
        for x in groups.get((a2, m), []):
            v = 0
            for y, _ in empty_rectangles(g, x):
                v ^= 1 << pos[y]
            cols.append(v)
        return dense_rank_oracle(cols)

    out = Counter()
    for (a2, m), members in groups.items():
        h = len(members) - rank_d(a2, m) - rank_d(a2, m + 1)
        if h:
            out[MultiGrading(a2, m)] = h
    return GradedDimTable(dict(out), kind="tilde")


def tensor_v(entries, i):
    """Tensor a {(a2, m): rank} dict with F(0,0) + F(-1, -2 e_i)."""
    out = Counter()
    for (a2, m), r in entries.items():
        out[(a2, m)] += r
        low = tuple(a - 2 if j == i else a for j, a in enumerate(a2))
        out[(low, m - 1)] += r
    return dict(out)


class TestExamples:
    def test_unknot2(self):
        t = tilde_homology(UNKNOT2)
        assert t.entries == {MultiGrading((0,), 0): 1, MultiGrading((-2,), -1): 1}

    def test_hopf_is_tensor_expansion(self):
        # four corners at doubled (+-1, +-1), Maslov 0, -1, -1, -2
        hopf = {((1, 1), 0): 1, ((1, -1), -1): 1, ((-1, 1), -1): 1, ((-1, -1), -2): 1}
        expanded = tensor_v(tensor_v(hopf, 0), 1)
        want = GradedDimTable.from_items((a2, m, r) for (a2, m), r in expanded.items())
        assert tilde_homology(torus_grid(2)) == want

    @pytest.mark.parametrize("g", [UNKNOT2, torus_grid(2), torus_grid(3), torus_grid(2, 2), GridDiagram((0, 1, 2), (1, 2, 0))],
                             ids=["U2", "T22", "T33", "T24", "U3"])
    def test_matches_dense_oracle(self, g):
        assert tilde_homology(g) == homology_oracle(g)

    def test_random_grids_match_dense_oracle(self):
        rng = random.Random(21)
        for _ in range(6):
            g = GridDiagram(*random_grid_perms(rng.randint(3, 5), rng))
            assert tilde_homology(g) == homology_oracle(g)


class TestBuckets:
    def test_partition(self):
        g = torus_grid(2)
        buckets = build_buckets(g)
        assert sum(len(b) for b in buckets) == 24
        ranks = np.concatenate([b.ranks for b in buckets])
        assert sorted(ranks.tolist()) == list(range(24))
        for b in buckets:
            for m, states in b.states.items():
                for s in states:
                    assert alexander(g, s) == b.alexander2
                    assert maslov(g, s) == m

    def test_states_sorted_descending(self):
        b = max(build_buckets(torus_grid(2)), key=len)
        ms = list(b.states)
        assert ms == sorted(ms, reverse=True)
        lo, hi = b.maslov_range()
        assert lo == ms[-1] and hi == ms[0]


class TestDSquared:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_torus_grids(self, n):
        g = GridDiagram((0, 1), (1, 0)) if n == 1 else torus_grid(n)
        assert all(d_squared_is_zero(g, b) for b in build_buckets(g))

    def test_random_grids(self):
        rng = random.Random(1234)
        for _ in range(50):
            g = GridDiagram(*random_grid_perms(rng.randint(2, 6), rng))
            assert all(d_squared_is_zero(g, b) for b in build_buckets(g))


class TestIndependence:
    def test_bucket_order(self):
        g = torus_grid(3)
        free = kernels.marking_free_table(g)
        buckets = build_buckets(g)
        fwd = {b.alexander2: bucket_homology(g.size, free, b) for b in buckets}
        rev = {b.alexander2: bucket_homology(g.size, free, b) for b in reversed(buckets)}
        assert fwd == rev

    def test_state_order(self):
        # permuting the states inside a bucket must not change its homology
        g = torus_grid(3)
        free = kernels.marking_free_table(g)
        rng = np.random.default_rng(0)
        for b in build_buckets(g)[:40]:
            perm = rng.permutation(len(b))
            shuffled = type(b)(b.alexander2, b.ranks[perm], b.maslov[perm], b.size)
            # bucket ranks must stay sorted for lookup; re-sort both arrays together
            order = np.argsort(shuffled.ranks, kind="stable")
            shuffled = type(b)(b.alexander2, shuffled.ranks[order], shuffled.maslov[order], b.size)
            assert bucket_homology(g.size, free, shuffled) == bucket_homology(g.size, free, b)

    def test_workers(self):
        g = torus_grid(3)
        assert tilde_homology(g, workers=2) == tilde_homology(g, workers=1)

    def test_backends(self):
        try:
            compiled = kernels.get_backend("compiled")
        except ImportError:
            pytest.skip("extension not built")
        g = torus_grid(3)
        assert tilde_homology(g, backend=kernels.get_backend("python")) == tilde_homology(g, backend=compiled)


class TestBudget:
    def test_refuses_n6_by_default(self):
        with pytest.raises(BudgetExceededError):
            check_budget(12)
        check_budget(10)

    def test_explicit_override(self):
        check_budget(12, None)
        with pytest.raises(BudgetExceededError):
            tilde_homology(torus_grid(2), memory_budget=100)


class TestPoincare:
    def test_empty(self):
        assert poincare(GradedDimTable()) == {}

    def test_single(self):
        t = GradedDimTable({MultiGrading((1, -1), -3): 3})
        assert poincare(t) == {(-3, (1, -1)): 3}

    def test_hopf_hat(self, tables):
        p = poincare(tables[2][2])
        assert len(p) == 4 and set(p.values()) == {1}

    def test_roundtrip(self, tables):
        for _, tilde, hat in tables.values():
            assert from_poincare(poincare(tilde)) == tilde
            assert from_poincare(poincare(hat)) == hat


class TestTable:
    def test_drops_zero_rejects_negative(self):
        t = GradedDimTable({MultiGrading((0,), 0): 0, MultiGrading((0,), -1): 2})
        assert t.entries == {MultiGrading((0,), -1): 2}
        with pytest.raises(ValueError):
            GradedDimTable({MultiGrading((0,), 0): -1})

    def test_from_items_adds(self):
        t = GradedDimTable.from_items([((0,), 0, 1), ((0,), 0, 2)])
        assert t.total_rank() == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_totals_identity(tables, n):
    g, tilde, hat = tables[n]
    assert tilde.total_rank() == hat.total_rank() * 2 ** (g.size - n)
