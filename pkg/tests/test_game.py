import pytest

from regames.exprs import Alphabet, Dialect
from regames.game import (
    AtomMove, CatMove, Children, DChoice, EmptyMove, GameRules, NegMove,
    Position, StarMove, Terminal, UnionMove, apply_move,
    d_winning_by_chain_lemma, d_winning_by_lemma5, runs, status_of,
    validate_move, IllegalMoveError, WonByD,
)
from regames.solver import enumerate_s_moves


def pos(dialect, k, s, a, b, alphabet=None):
    return Position(dialect, k, s, a, b, alphabet or Alphabet("ab"))


class TestPosition:
    def test_canonical_order_and_dedup(self, ab):
        p = pos(Dialect.RE, 3, None, ["ba", "a", "a", ""], ["b"])
        assert p.a_words == ("", "a", "ba")

    def test_star_budget_rules(self, ab):
        with pytest.raises(ValueError):
            pos(Dialect.RE, 3, 1, ["a"], [])
        with pytest.raises(ValueError):
            pos(Dialect.GRE, 3, None, ["a"], [])
        with pytest.raises(ValueError):
            pos(Dialect.GRE, 1, 2, ["a"], [])

    def test_words_must_fit_alphabet(self, ab):
        with pytest.raises(ValueError):
            pos(Dialect.RE, 3, None, ["ac"], [])

    def test_k_zero_is_lost(self, ab):
        assert isinstance(status_of(pos(Dialect.RE, 0, None, ["a"], [])), WonByD)


class TestValidate:
    def test_star_with_epsilon_in_b(self, ab):
        p = pos(Dialect.GRE, 3, 1, ["ab"], [""])
        violation = validate_move(p, StarMove({"ab": [1]}, []))
        assert violation is not None and "D wins on ε" in violation

    def test_union_budget_arithmetic(self, ab):
        p = pos(Dialect.RE, 5, None, ["a", "b"], [])
        assert validate_move(p, UnionMove(["a"], ["b"], 2, 2)) is None
        bad = validate_move(p, UnionMove(["a"], ["b"], 2, 1))
        assert bad is not None and "k1+k2+1" in bad

    def test_neg_forbidden_in_re(self, ab):
        p = pos(Dialect.RE, 3, None, ["a"], ["b"])
        violation = validate_move(p, NegMove())
        assert violation is not None and "¬" in violation

    def test_union_must_cover(self, ab):
        p = pos(Dialect.RE, 5, None, ["a", "b"], [])
        assert "cover" in validate_move(p, UnionMove(["a"], ["a"], 2, 2))

    def test_union_overlapping_cover_ok(self, ab):
        p = pos(Dialect.RE, 5, None, ["a", "b"], [])
        assert validate_move(p, UnionMove(["a", "b"], ["b"], 2, 2)) is None

    def test_cat_needs_all_sides(self, ab):
        p = pos(Dialect.RE, 3, None, ["ab"], ["a"])
        bad = CatMove({"ab": 1}, {"a": [1]}, 1, 1)
        assert "2-splits" in validate_move(p, bad)

    def test_cat_side_values(self, ab):
        p = pos(Dialect.RE, 3, None, ["ab"], ["a"])
        bad = CatMove({"ab": 1}, {"a": [1, 3]}, 1, 1)
        assert "1 or 2" in validate_move(p, bad)

    def test_star_needs_budget(self, ab):
        p = pos(Dialect.GRE, 3, 0, ["ab"], ["a"])
        assert "star budget" in validate_move(p, StarMove({"ab": [1]}, ["a"]))

    def test_star_bprime_must_hit_compositions(self, ab):
        p = pos(Dialect.GRE, 3, 1, ["ab"], ["aa"])
        ok = StarMove({"ab": [1]}, ["a", "aa"])
        assert validate_move(p, ok) is None
        missing = StarMove({"ab": [1]}, ["a"])
        assert "decomposition" in validate_move(p, missing)

    def test_star_bprime_must_be_factors(self, ab):
        p = pos(Dialect.GRE, 3, 1, ["ab"], ["aa"])
        stray = StarMove({"ab": [1]}, ["a", "aa", "b"])
        assert "factor" in validate_move(p, stray)

    def test_star_epsilon_words_exempt(self, ab):
        p = pos(Dialect.GRE, 3, 1, ["", "ab"], [])
        assert validate_move(p, StarMove({"ab": [1]}, [])) is None

    def test_game_over_rejects_moves(self, ab):
        p = pos(Dialect.RE, 0, None, ["a"], [])
        assert "k=0" in validate_move(p, AtomMove("a"))

    def test_gre_neg_needs_headroom(self, ab):
        p = pos(Dialect.GRE, 2, 2, ["a"], ["b"])
        assert "complement" in validate_move(p, NegMove())


class TestApply:
    def test_atom_terminal_s(self, ab):
        p = pos(Dialect.RE, 1, None, ["a"], ["b", ""])
        assert apply_move(p, AtomMove("a")) == Terminal("S")

    def test_atom_terminal_d(self, ab):
        p = pos(Dialect.RE, 1, None, ["a", "b"], [])
        assert apply_move(p, AtomMove("a")) == Terminal("D")

    def test_epsilon_atom(self, ab):
        p = pos(Dialect.RE, 1, None, [""], ["a"])
        assert apply_move(p, AtomMove("")) == Terminal("S")

    def test_empty_move(self, ab):
        assert apply_move(pos(Dialect.RE, 1, None, [], ["a"]), EmptyMove()) == Terminal("S")
        assert apply_move(pos(Dialect.RE, 1, None, ["a"], []), EmptyMove()) == Terminal("D")

    def test_cat_children_from_sides(self, ab):
        # hand-derived: splitting ab as (a, b); the split (a, ε) of the
        # B-word a goes to side 1, (ε, a) to side 2
        p = pos(Dialect.GRE, 4, 1, ["ab"], ["a"])
        move = CatMove({"ab": 1}, {"a": [2, 1]}, 1, 2, 0, 1)
        out = apply_move(p, move)
        assert isinstance(out, Children)
        first, second = out.positions
        assert first.a_words == ("a",) and first.b_words == ("a",)
        assert second.a_words == ("b",) and second.b_words == ("a",)
        assert (first.k, first.s, second.k, second.s) == (1, 0, 2, 1)

    def test_union_children_keep_b(self, ab):
        p = pos(Dialect.RE, 5, None, ["a", "b"], ["ab"])
        out = apply_move(p, UnionMove(["a"], ["b"], 2, 2))
        assert [c.b_words for c in out.positions] == [("ab",), ("ab",)]

    def test_star_child(self, ab):
        p = pos(Dialect.GRE, 4, 2, ["abab", ""], ["aa"])
        move = StarMove({"abab": [2]}, ["a", "aa"])
        out = apply_move(p, move)
        child, = out.positions
        assert child.a_words == ("ab",)
        assert child.b_words == ("a", "aa")
        assert (child.k, child.s) == (3, 1)

    def test_star_in_re_game_keeps_no_budget(self, ab):
        p = pos(Dialect.RE, 4, None, ["ab"], ["aa"])
        child, = apply_move(p, StarMove({"ab": [1]}, ["a", "aa"])).positions
        assert child.s is None

    def test_gre_neg_preserves_stars(self, ab):
        p = pos(Dialect.GRE, 4, 1, ["a"], ["b"])
        child, = apply_move(p, NegMove()).positions
        assert (child.k, child.s) == (3, 1)
        assert child.a_words == ("b",) and child.b_words == ("a",)

    def test_resf_neg_zeroes_stars(self, ab):
        p = pos(Dialect.RESF, 4, 1, ["a"], ["b"])
        child, = apply_move(p, NegMove()).positions
        assert (child.k, child.s) == (3, 0)

    def test_resf_neg_rule_flag(self, ab):
        p = pos(Dialect.RESF, 4, 1, ["a"], ["b"])
        free = GameRules(resf_neg_costs_size=False)
        child, = apply_move(p, NegMove(), free).positions
        assert (child.k, child.s) == (4, 0)

    def test_invalid_move_raises(self, ab):
        with pytest.raises(IllegalMoveError):
            apply_move(pos(Dialect.RE, 3, None, ["a"], []), NegMove())


class TestBudgetConservation:
    def test_all_enumerated_moves_conserve(self, ab):
        p = pos(Dialect.GRE, 5, 1, ["ab", "b"], ["a"])
        count = 0
        for move in enumerate_s_moves(p):
            assert validate_move(p, move) is None
            out = apply_move(p, move)
            if isinstance(out, Children) and len(out.positions) == 2:
                c1, c2 = out.positions
                assert c1.k + c2.k + 1 == p.k
                assert c1.s + c2.s == p.s
                assert c1.k >= c1.s and c2.k >= c2.s
                count += 1
        assert count > 0


class TestLemmas:
    def test_lemma5_examples(self, ab):
        assert d_winning_by_lemma5(pos(Dialect.RE, 3, None, ["ab"], ["ab", "b"]))
        assert not d_winning_by_lemma5(pos(Dialect.RE, 3, None, ["a"], ["b"]))
        assert not d_winning_by_lemma5(pos(Dialect.RE, 3, None, [], []))

    def test_chain_lemma_examples(self, ab):
        long_a = pos(Dialect.GRE, 3, 0, ["aaaaab"], ["aaaaaab"])
        assert d_winning_by_chain_lemma(long_a)
        roomy = pos(Dialect.GRE, 5, 0, ["aaaaab"], ["aaaaaab"])
        assert not d_winning_by_chain_lemma(roomy)
        starry = pos(Dialect.GRE, 2, 1, ["aaab"], ["aaaab"])
        assert not d_winning_by_chain_lemma(starry)

    def test_chain_lemma_ignores_re_positions(self, ab):
        assert not d_winning_by_chain_lemma(pos(Dialect.RE, 3, None, ["aaaaab"], ["aaaaaab"]))

    def test_chain_lemma_needs_matching_run_structure(self, ab):
        assert not d_winning_by_chain_lemma(
            pos(Dialect.GRE, 1, 0, ["aaab"], ["bbba"]))

    def test_runs(self):
        assert runs("baabbaaa") == [("b", 1), ("a", 2), ("b", 2), ("a", 3)]

    def test_lemma5_preserved_under_any_move(self, ab):
        # mirror of the shared-word argument: for every legal move either the
        # move loses outright or some branch keeps a shared word
        p = pos(Dialect.GRE, 3, 1, ["a", "ab"], ["ab"])
        for move in enumerate_s_moves(p):
            out = apply_move(p, move)
            if isinstance(out, Terminal):
                assert out.winner == "D"
            else:
                assert any(set(c.a_words) & set(c.b_words) for c in out.positions)
