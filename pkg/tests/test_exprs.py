import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_words, expr_strategy, naive_language
from regames.exprs import (
    EMPTY, EPS, Alphabet, Atom, Cat, Dialect, ExprSyntaxError, Not, Star,
    Union, UnknownSymbolError, compositions, dialect_of, factors, intersect,
    matches, parse_expr, render_expr, separates, size, splits2, star_count,
)


class TestMetrics:
    def test_leaf_sizes(self):
        assert size(Atom("a")) == size(EPS) == size(EMPTY) == 1

    def test_size_star_of_cat(self, ab):
        assert size(parse_expr("(ab)*", ab)) == 4

    def test_size_not_empty(self, ab):
        assert size(parse_expr(r"!\0", ab)) == 2

    def test_star_counts(self, ab):
        assert star_count(Atom("a")) == 0
        assert star_count(parse_expr("(ab)*", ab)) == 1
        assert star_count(parse_expr("(a*b*)*", ab)) == 3

    def test_additivity(self, ab):
        left = parse_expr("(ab)*", ab)
        right = parse_expr("!a", ab)
        assert size(Union(left, right)) == size(left) + size(right) + 1
        assert size(Cat(left, right)) == size(left) + size(right) + 1
        assert size(Star(left)) == size(left) + 1
        assert star_count(Cat(left, right)) == star_count(left) + star_count(right)


class TestDialect:
    def test_star_only_is_re(self, ab):
        assert dialect_of(parse_expr("(ab)*", ab)) is Dialect.RE

    def test_star_above_not_is_resf(self, ab):
        assert dialect_of(parse_expr("(!(ab))*", ab)) is Dialect.RESF

    def test_star_under_not_is_gre(self, ab):
        assert dialect_of(parse_expr("!(a*)", ab)) is Dialect.GRE

    def test_inclusion_order(self):
        assert Dialect.GRE.admits(Dialect.RE)
        assert Dialect.RESF.admits(Dialect.RE)
        assert not Dialect.RE.admits(Dialect.RESF)

    def test_subexpressions_of_re_are_re(self, ab):
        e = parse_expr("(a|b)*(ab)*", ab)
        stack = [e]
        while stack:
            node = stack.pop()
            assert dialect_of(node) is Dialect.RE
            if isinstance(node, (Union, Cat)):
                stack.extend([node.left, node.right])
            elif isinstance(node, Star):
                stack.append(node.inner)


class TestMatching:
    def test_star_free_equivalent_of_ab_star(self, ab):
        loop = parse_expr("(ab)*", ab)
        star_free = parse_expr(r"\e|(a!\0&!\0b&!(!\0aa!\0)&!(!\0bb!\0))", ab)
        for w in all_words(ab, 6):
            assert matches(star_free, w) == matches(loop, w)
        assert matches(star_free, "abab")

    def test_empty_language(self):
        assert not matches(EMPTY, "")

    def test_not_empty_matches_everything(self, ab):
        top = Not(EMPTY)
        for w in all_words(ab, 3):
            assert matches(top, w)

    def test_separates_examples(self, ab):
        assert separates(Atom("a"), ["a"], ["b", ""])
        assert not separates(Atom("a"), ["a", "b"], [])
        assert separates(parse_expr("(ab)*", ab), ["", "ab", "abab"], ["a", "ba"])

    @settings(max_examples=150, deadline=None)
    @given(expr_strategy(max_leaves=5), st.integers(0, 62))
    def test_matches_agrees_with_naive_semantics(self, e, seed):
        ab = Alphabet("ab")
        words = all_words(ab, 4)
        lang = naive_language(e, ab, 4)
        w = words[seed % len(words)]
        assert matches(e, w) == (w in lang)

    @settings(max_examples=80, deadline=None)
    @given(expr_strategy(max_leaves=4), expr_strategy(max_leaves=4))
    def test_de_morgan_intersection(self, e1, e2):
        ab = Alphabet("ab")
        both = intersect(e1, e2)
        for w in ("", "a", "ab", "ba", "aab"):
            assert matches(both, w) == (matches(e1, w) and matches(e2, w))

    @settings(max_examples=60, deadline=None)
    @given(expr_strategy(max_leaves=4))
    def test_star_contains_epsilon(self, e):
        assert matches(Star(e), "")

    @settings(max_examples=60, deadline=None)
    @given(expr_strategy(max_leaves=3), st.integers(1, 3))
    def test_star_contains_piece_catenations(self, e, copies):
        ab = Alphabet("ab")
        pieces = sorted(w for w in naive_language(e, ab, 2) if w)[:2]
        for piece in pieces:
            assert matches(Star(e), piece * copies)


class TestSplits:
    def test_splits2(self):
        assert splits2("ab") == [("", "ab"), ("a", "b"), ("ab", "")]

    def test_compositions_of_aba(self):
        assert set(compositions("aba")) == {
            ("aba",), ("a", "ba"), ("ab", "a"), ("a", "b", "a")}

    def test_composition_count(self):
        assert len(compositions("aabab")) == 16
        assert compositions("") == []

    def test_factors(self):
        assert factors("ab") == {"", "a", "b", "ab"}


class TestSyntax:
    def test_precedence(self):
        abc = Alphabet("abc")
        assert parse_expr("(ab)*|c", abc) == Union(Star(Cat(Atom("a"), Atom("b"))), Atom("c"))

    def test_escaped_paren_atom(self):
        paren = Alphabet("()")
        assert parse_expr(r"!\(", paren) == Not(Atom("("))

    def test_union_left_association(self):
        abc = Alphabet("abc")
        assert render_expr(parse_expr("a|b|c", abc)) == "a|b|c"

    def test_intersection_sugar_expands(self, ab):
        e = parse_expr("a&b", ab)
        assert e == Not(Union(Not(Atom("a")), Not(Atom("b"))))
        assert render_expr(e) == "!(!a|!b)"

    def test_star_binds_tighter_than_not(self, ab):
        assert parse_expr("!a*", ab) == Not(Star(Atom("a")))

    def test_syntax_error_position(self, ab):
        with pytest.raises(ExprSyntaxError) as err:
            parse_expr("a|(b", ab)
        assert err.value.position == 2

    def test_unknown_symbol(self, ab):
        with pytest.raises(UnknownSymbolError):
            parse_expr("ac", ab)

    def test_reserved_char_needs_escape(self, ab):
        with pytest.raises(ExprSyntaxError):
            parse_expr("a)b", ab)

    @settings(max_examples=200, deadline=None)
    @given(expr_strategy(max_leaves=6))
    def test_render_parse_roundtrip(self, e):
        ab = Alphabet("ab")
        assert parse_expr(render_expr(e), ab) == e

    def test_roundtrip_with_reserved_alphabet(self):
        paren = Alphabet("()*")
        e = Star(Cat(Atom("("), Not(Atom("*"))))
        assert parse_expr(render_expr(e), paren) == e


class TestAlphabet:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Alphabet("")

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            Alphabet("aa")

    def test_rejects_long_symbols(self):
        with pytest.raises(ValueError):
            Alphabet(["ab"])

    def test_validates_words(self, ab):
        ab.validate_word("abba")
        with pytest.raises(ValueError):
            ab.validate_word("abc")
