import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordanova import (
    CONSISTENT,
    PAPER_LITERAL,
    DofConvention,
    pooled_probabilities,
    statistic_in,
    statistic_in_null,
    statistic_ip,
    total_variation,
)
from ordanova.statistics import DegenerateTableError, weighted_count_form

from .conftest import TABLE3, count_tables, make_table


class TestIP:
    def test_table3(self, table3):
        assert statistic_ip(table3, CONSISTENT) == pytest.approx(3.6, abs=1e-12)

    def test_two_labs(self):
        assert statistic_ip(make_table([[2, 0], [0, 2]])) == pytest.approx(3.0, abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateTableError, match="undefined"):
            statistic_ip(make_table([[0, 4, 0], [0, 4, 0]]))

    def test_dof_values(self):
        assert (CONSISTENT.df_between(5, 5), CONSISTENT.df_total(5, 5)) == (4, 24)
        assert (PAPER_LITERAL.df_between(5, 5), PAPER_LITERAL.df_total(5, 5)) == (20, 24)
        assert DofConvention.from_name("paper") == PAPER_LITERAL
        with pytest.raises(ValueError):
            DofConvention("other")

    @settings(max_examples=300, deadline=None)
    @given(count_tables())
    def test_dof_scaling(self, rows):
        t = make_table(rows)
        if total_variation(t) == 0:
            return
        ratio = (t.M - 1) / (t.M * (t.n - 1))
        assert statistic_ip(t, PAPER_LITERAL) == pytest.approx(
            statistic_ip(t, CONSISTENT) * ratio, rel=1e-12, abs=1e-15
        )

    def test_not_pooling_invariant(self, table3):
        # same column totals (0,5,10,10,0) spread evenly over the labs
        shuffled = make_table([[0, 1, 2, 2, 0]] * 5)
        assert statistic_ip(shuffled) == 0.0
        assert statistic_ip(table3) == pytest.approx(3.6)
        assert statistic_in(shuffled) == pytest.approx(statistic_in(table3), abs=1e-12)


class TestIN:
    def test_published_example_tables(self, table3, table4):
        assert statistic_in(table3) == pytest.approx(0.4, abs=1e-12)
        assert statistic_in(table4) == pytest.approx(0.6496, abs=1e-12)

    def test_single_category(self):
        assert statistic_in(make_table([[5, 0, 0], [5, 0, 0]])) == 0.0

    def test_weighted_form_uses_rank_weights(self, table3):
        # weights K-k, not 4-k; the latter would give -0.6 for this table
        assert weighted_count_form(table3) == pytest.approx(0.4, abs=1e-12)

    @settings(max_examples=300, deadline=None)
    @given(count_tables(), st.randoms(use_true_random=False))
    def test_pooling_invariance(self, rows, rnd):
        t = make_table(rows)
        # move single observations between labs so that column totals and
        # row sums are both preserved
        counts = t.counts.copy()
        M, K = counts.shape
        for _ in range(20):
            a, b = rnd.randrange(M), rnd.randrange(M)
            i, j = rnd.randrange(K), rnd.randrange(K)
            if counts[a, i] > 0 and counts[b, j] > 0:
                counts[a, i] -= 1
                counts[a, j] += 1
                counts[b, j] -= 1
                counts[b, i] += 1
        moved = make_table(counts.tolist())
        assert statistic_in(moved) == pytest.approx(statistic_in(t), abs=1e-12)

    @settings(max_examples=300, deadline=None)
    @given(count_tables())
    def test_reversal(self, rows):
        t = make_table(rows)
        r = t.reversed_categories()
        assert statistic_in(r) == pytest.approx(statistic_in(t), abs=1e-12)
        if total_variation(t) > 0:
            assert statistic_ip(r) == pytest.approx(statistic_ip(t), rel=1e-10)

    @settings(max_examples=300, deadline=None)
    @given(count_tables())
    def test_null_form_matches_at_pooled(self, rows):
        t = make_table(rows)
        assert statistic_in_null(t, pooled_probabilities(t)) == pytest.approx(
            statistic_in(t), abs=1e-12
        )


def test_null_form_category_mismatch(table3):
    from ordanova import ProbabilityVector

    with pytest.raises(ValueError):
        statistic_in_null(table3, ProbabilityVector(np.array([0.5, 0.5])))
