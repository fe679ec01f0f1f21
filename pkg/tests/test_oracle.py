import itertools

import pytest

from regames.exprs import (
    EMPTY, Alphabet, Atom, Cat, Dialect, dialect_of, render_expr, separates,
    size, star_count,
)
from regames.game import Position
from regames.oracle import EnumSpec, count_exprs, crosscheck, enumerate_exprs, min_separating


@pytest.fixture(scope="module")
def a_only():
    return Alphabet("a")


class TestEnumeration:
    def test_size_one_leaves(self, a_only):
        got = list(enumerate_exprs(EnumSpec(a_only, Dialect.RE, 1)))
        assert [render_expr(e) for e in got] == ["\\0", "\\e", "a"]

    def test_size_two_adds_stars(self, a_only):
        got = [render_expr(e) for e in enumerate_exprs(EnumSpec(a_only, Dialect.RE, 2))]
        assert got[3:] == ["\\0*", "\\e*", "a*"]

    def test_nondecreasing_and_unique(self, ab):
        seen = []
        last = 1
        for e in enumerate_exprs(EnumSpec(ab, Dialect.GRE, 4)):
            assert size(e) >= last
            last = size(e)
            seen.append(e)
        assert len(seen) == len(set(seen))

    def test_frozen_regression_count(self, ab):
        assert count_exprs(EnumSpec(ab, Dialect.RE, 3)) == 44

    @pytest.mark.parametrize("dialect", [Dialect.RE, Dialect.RESF, Dialect.GRE])
    def test_counts_match_independent_recurrence(self, ab, dialect):
        # grammar recurrences written independently of the enumerator
        sigma = len(ab)
        top = 5
        re_c = {1: sigma + 2}
        sf_c = {1: sigma + 2}
        resf_c = {1: sigma + 2}
        gre_c = {1: sigma + 2}
        for n in range(2, top + 1):
            binop = lambda c: 2 * sum(c[i] * c[n - 1 - i] for i in range(1, n - 1))
            re_c[n] = re_c[n - 1] + binop(re_c)
            sf_c[n] = sf_c[n - 1] + binop(sf_c)
            resf_c[n] = resf_c[n - 1] + sf_c[n - 1] + binop(resf_c)
            gre_c[n] = 2 * gre_c[n - 1] + binop(gre_c)
        expected = {Dialect.RE: re_c, Dialect.RESF: resf_c, Dialect.GRE: gre_c}[dialect]
        per_size = {n: 0 for n in range(1, top + 1)}
        for e in enumerate_exprs(EnumSpec(ab, dialect, top)):
            per_size[size(e)] += 1
        assert per_size == expected

    def test_no_dialect_leaks(self, ab):
        for e in enumerate_exprs(EnumSpec(ab, Dialect.RESF, 4)):
            assert dialect_of(e) in (Dialect.RE, Dialect.RESF)
        for e in enumerate_exprs(EnumSpec(ab, Dialect.RE, 4)):
            assert dialect_of(e) is Dialect.RE

    def test_star_budget_respected(self, ab):
        for e in enumerate_exprs(EnumSpec(ab, Dialect.RE, 5, max_stars=1)):
            assert star_count(e) <= 1

    def test_algebraic_pruning_is_a_subset(self, ab):
        from regames.exprs import Union

        full = set(enumerate_exprs(EnumSpec(ab, Dialect.RE, 4)))
        pruned = set(enumerate_exprs(EnumSpec(ab, Dialect.RE, 4), algebraic_pruning=True))
        assert pruned < full
        assert Union(EMPTY, Atom("a")) in full
        assert Union(EMPTY, Atom("a")) not in pruned
        assert Cat(EMPTY, Atom("a")) in pruned  # only unions are pruned

    def test_bad_bounds_rejected(self, ab):
        with pytest.raises(ValueError):
            EnumSpec(ab, Dialect.RE, 0)
        with pytest.raises(ValueError):
            EnumSpec(ab, Dialect.RE, 3, max_stars=-1)


class TestMinSeparating:
    def test_spec_example(self, ab):
        got = min_separating(["ab"], ["a", "b", ""], EnumSpec(ab, Dialect.RE, 3))
        assert render_expr(got.expr) == "ab"
        assert (got.size, got.stars) == (3, 0)

    def test_overlap_is_none(self, ab):
        assert min_separating(["a"], ["a"], EnumSpec(ab, Dialect.RE, 5)) is None

    def test_empty_a_side(self, ab):
        got = min_separating([], ["a", "ab"], EnumSpec(ab, Dialect.RE, 3))
        assert got.expr == EMPTY and got.size == 1

    def test_none_within_bounds(self, ab):
        assert min_separating(["ab"], ["a", "b", ""], EnumSpec(ab, Dialect.RE, 2)) is None

    def test_result_is_optimal_by_rescan(self, ab):
        a_words, b_words = ["", "ab"], ["a", "aa"]
        got = min_separating(a_words, b_words, EnumSpec(ab, Dialect.GRE, 5, 1))
        assert got is not None
        for e in enumerate_exprs(EnumSpec(ab, Dialect.GRE, 5, 1)):
            if size(e) < got.size:
                assert not separates(e, a_words, b_words)
            elif size(e) == got.size and star_count(e) < got.stars:
                assert not separates(e, a_words, b_words)

    def test_witness_checks(self, ab):
        got = min_separating(["aa", "ab"], ["", "b"], EnumSpec(ab, Dialect.RESF, 6, 1))
        assert got is not None
        assert separates(got.expr, ["aa", "ab"], ["", "b"])
        assert Dialect.RESF.admits(dialect_of(got.expr))


class TestCrosscheck:
    def test_agreeing_s(self, ab):
        rep = crosscheck(Position(Dialect.RE, 3, None, ["ab"], ["a", "b", ""], ab))
        assert rep.agree and rep.game_winner == "S"
        assert render_expr(rep.oracle_separator.expr) == "ab"

    def test_agreeing_d(self, ab):
        rep = crosscheck(Position(Dialect.RE, 2, None, ["ab"], ["a", "b", ""], ab))
        assert rep.agree and rep.game_winner == "D" and rep.oracle_separator is None

    def test_not_empty_witness(self, ab):
        rep = crosscheck(Position(Dialect.GRE, 2, 0, ["a", "b", "", "aa"], [], ab))
        assert rep.agree and rep.game_winner == "S"
        assert render_expr(rep.oracle_separator.expr) == "!\\0"
