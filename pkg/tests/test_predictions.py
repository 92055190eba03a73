import itertools
import random
from math import comb

import pytest

from torushfl.f2_homology import GradedDimTable
from torushfl.grid_core import MultiGrading
from torushfl.predictions import (
    CONJECTURE,
    THEOREM,
    classify,
    endpoint_prediction,
    full_table,
    interior_prediction,
    junction_point,
    junction_prediction,
    point_prediction,
    reflect,
    slice_point,
    support,
)


def support_oracle(n):
    """Brute force: doubled vectors whose entries span at most one unit and
    lie in [-(n-1), n-1] with the right parity."""
    vals = range(-(n - 1), n, 2)
    return {v for v in itertools.product(vals, repeat=n) if max(v) - min(v) <= 2}


class TestSupport:
    @pytest.mark.parametrize("n,count", [(2, 4), (3, 15), (4, 46)])
    def test_counts(self, n, count):
        assert len(support(n)) == count
        assert support(n) == support_oracle(n)

    def test_hopf(self):
        assert support(2) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}

    @pytest.mark.parametrize("n", range(2, 8))
    def test_count_formula(self, n):
        assert len(support(n)) == (n - 1) * 2**n - (n - 2)

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            support(1)


class TestClassify:
    def test_top(self):
        assert classify(3, (2, 2, 2)).kind == "endpoint-top"

    def test_junction(self):
        p = classify(3, (0, 0, 0))
        assert p.kind == "junction" and p.junction == 1

    def test_interior(self):
        p = classify(4, (1, 1, 3, 3))
        assert (p.kind, p.c, p.s) == ("interior", 1, 3)

    def test_bottom_and_outside(self):
        assert classify(3, (-2, -2, -2)).kind == "endpoint-bottom"
        assert classify(3, (2, 0, -2)).kind == "outside-support"
        assert classify(3, (4, 4, 4)).kind == "outside-support"

    def test_malformed(self):
        with pytest.raises(ValueError):
            classify(3, (1, 1, 1))
        with pytest.raises(ValueError):
            classify(3, (2, 2))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_every_support_point_classified(self, n):
        for v in support(n):
            assert classify(n, v).kind != "outside-support"

    @pytest.mark.parametrize("n", range(3, 7))
    def test_slice_point_roundtrip(self, n):
        for c in range(1, n):
            for s in range(2, n + 1):
                p = classify(n, slice_point(n, c, s))
                assert (p.kind, p.c, p.s) == ("interior", c, s)
        for C in range(1, n - 1):
            assert classify(n, junction_point(n, C)).junction == C


class TestFormulas:
    def test_interior(self):
        assert interior_prediction(4, 2, 3) == (2, -5)
        assert interior_prediction(3, 2, 3) == (1, -5)
        for n in range(2, 9):
            assert interior_prediction(n, 1, 2) == (1, -1)

    def test_interior_range(self):
        with pytest.raises(ValueError):
            interior_prediction(4, 0, 2)
        with pytest.raises(ValueError):
            interior_prediction(4, 1, 5)

    def test_endpoints(self):
        assert endpoint_prediction(2, "bottom") == (1, -2)
        assert endpoint_prediction(4, "bottom") == (1, -12)
        for n in range(2, 9):
            assert endpoint_prediction(n, "top") == (1, 0)

    def test_junctions(self):
        assert junction_prediction(3, 1) == {-2: 1, -3: 3}
        assert junction_prediction(4, 1) == {-2: 1, -3: 3, -4: 1}
        assert junction_prediction(4, 2) == {-6: 1, -7: 3, -8: 1}
        assert junction_prediction(5, 2) == {-6: 1, -7: 4, -8: 10, -9: 1}

    def test_junction_range(self):
        with pytest.raises(ValueError):
            junction_prediction(4, 3)
        with pytest.raises(ValueError):
            junction_prediction(4, 0)


class TestFullTable:
    def test_hopf(self):
        t = full_table(2)
        assert t.entries == {
            MultiGrading((1, 1), 0): 1,
            MultiGrading((1, -1), -1): 1,
            MultiGrading((-1, 1), -1): 1,
            MultiGrading((-1, -1), -2): 1,
        }

    def test_n3_total(self):
        t = full_table(3)
        # 13 theorem points of rank 1, junction of rank 4
        assert t.at((0, 0, 0)) == {-2: 1, -3: 3}
        assert t.total_rank() == 1 + 12 + 4 + 1

    def test_n4_spot(self):
        t = full_table(4)
        for v in set(itertools.permutations(slice_point(4, 2, 3))):
            assert t.at(v) == {-5: 2}

    def test_provenance(self):
        t = full_table(4)
        for k, tag in t.provenance.items():
            want = CONJECTURE if classify(4, k.alexander2).kind == "junction" else THEOREM
            assert tag == want

    @pytest.mark.parametrize("n", range(2, 9))
    def test_reflection_symmetric(self, n):
        t = full_table(n)
        assert reflect(t) == t

    @pytest.mark.parametrize("n", range(2, 9))
    def test_orbit_constant(self, n):
        rng = random.Random(n)
        t = full_table(n)
        for v in rng.sample(sorted(support(n)), min(60, len(support(n)))):
            w = list(v)
            rng.shuffle(w)
            assert t.at(tuple(w)) == t.at(v) == point_prediction(n, sorted(v))[0]

    @pytest.mark.parametrize("n", range(2, 7))
    def test_signed_rank_sum_zero(self, n):
        t = full_table(n)
        assert sum((-1) ** (k.maslov % 2) * r for k, r in t.entries.items()) == 0

    def test_outside_support_empty(self):
        assert point_prediction(3, (4, 4, 4)) == ({}, None)


@pytest.mark.parametrize("n", range(3, 9))
def test_junction_shift_relation(n):
    for C in range(1, n - 1):
        shift = n * n - n - 2 * C * n
        partner = junction_prediction(n, n - 1 - C)
        assert junction_prediction(n, C) == {m + shift: r for m, r in partner.items()}


@pytest.mark.parametrize("n", range(3, 9))
def test_junction_direct_formula_rank(n):
    # total rank at junction C is sum_{i<=C} C(n-1,i) + sum_{j<C} C(n-1,j)
    for C in range(1, n - 1):
        Cd = min(C, n - 1 - C)
        want = sum(comb(n - 1, i) for i in range(Cd + 1)) + sum(comb(n - 1, j) for j in range(Cd))
        assert sum(junction_prediction(n, C).values()) == want


class TestReflect:
    def test_top_to_bottom(self):
        for n in range(2, 7):
            top = GradedDimTable({MultiGrading((n - 1,) * n, 0): 1})
            assert reflect(top).entries == {MultiGrading((1 - n,) * n, -n * (n - 1)): 1}

    def test_zero(self):
        assert reflect(GradedDimTable()) == GradedDimTable()

    def test_involution(self):
        t = full_table(3)
        assert reflect(reflect(t)) == t
        assert reflect(reflect(t)).provenance == t.provenance

    def test_width_checked(self):
        with pytest.raises(ValueError):
            reflect(full_table(3), n=4)
