import random

import pytest
from hypothesis import given, settings

from conftest import all_words, expr_strategy
from regames import _ops_py, backend, synth
from regames.exprs import (
    Alphabet, Dialect, dialect_of, matches, render_expr, separates, size,
    star_count,
)
from regames.oracle import EnumSpec, min_separating


compiled = pytest.importorskip("regames._ops_cy")


class TestProgramCodec:
    @settings(max_examples=100, deadline=None)
    @given(expr_strategy(max_leaves=6))
    def test_encode_decode_roundtrip(self, e):
        assert backend.decode_program(backend.encode_program(e)) == e


class TestBackendParity:
    @settings(max_examples=150, deadline=None)
    @given(expr_strategy(max_leaves=5))
    def test_match_parity(self, e):
        prog = backend.encode_program(e)
        for w in ("", "a", "b", "ab", "ba", "aabba"):
            assert _ops_py.match_word(prog, w) == compiled.match_word(prog, w)

    def test_long_word_delegation(self):
        prog = backend.encode_program(
            backend.decode_program(((backend.OP_ATOM, ord("a")), (backend.OP_STAR, 0))))
        w = "a" * 100
        assert compiled.match_word(prog, w) == _ops_py.match_word(prog, w) is True

    def test_parity_on_wide_factor_tables(self, ab):
        # factor counts beyond the C int width once truncated the compiled
        # complement mask; keep a dense-op differential on a wide table
        import random

        from regames.exprs import EMPTY, EPS, Atom, Cat, Not, Star, Union

        words = ["aaaaabbbb", "aaaabbbbb", "ab", "ba", "aab", "abab", "babab"]
        tables = synth.build_tables(words, ab)
        assert len(tables.factor_list) > 32
        rng = random.Random(11)

        def rand_expr(depth):
            if depth == 0:
                return rng.choice([EMPTY, EPS, Atom("a"), Atom("b")])
            ctor = rng.choice([Star, Not, Union, Cat])
            if ctor in (Star, Not):
                return ctor(rand_expr(depth - 1))
            return ctor(rand_expr(depth - 1), rand_expr(depth - 1))

        for _ in range(400):
            e = rand_expr(rng.randint(1, 4))
            prog = backend.encode_program(e)
            vec_pure = _ops_py.vec_of_program(tables.kernel_tables, prog)
            vec_comp = compiled.vec_of_program(tables.kernel_tables, prog)
            assert vec_pure == vec_comp
            for i, f in enumerate(tables.factor_list[::7]):
                idx = tables.index[f]
                assert bool(vec_pure >> idx & 1) == compiled.match_word(prog, f)

    def test_wide_table_search_parity(self, ab):
        words = ["aaaaabbbb", "aaaabbbbb", "ab", "ba", "aab", "abab", "babab"]
        tables = synth.build_tables(words, ab)
        pos = tables.mask_of(words[:2])
        neg = tables.mask_of(words[2:])
        for dialect in (0, 1, 2):
            for max_size in (5, 9):
                args = (tables.kernel_tables, dialect, max_size, 1, pos, neg, 2_000_000)
                assert _ops_py.search_separator(*args) == compiled.search_separator(*args)

    def test_search_parity_randomized(self, ab):
        rng = random.Random(99)
        words = all_words(ab, 3)
        for _ in range(60):
            a = rng.sample(words, rng.randint(1, 3))
            b = [w for w in rng.sample(words, rng.randint(0, 3)) if w not in a]
            dialect = rng.choice([Dialect.RE, Dialect.RESF, Dialect.GRE])
            bounds = (rng.randint(1, 5), rng.choice([0, 1, 2]))
            tables = synth.build_tables(a + b, ab)
            args = (tables.kernel_tables, {"re": 0, "resf": 1, "gre": 2}[dialect.value],
                    bounds[0], bounds[1], tables.mask_of(a), tables.mask_of(b),
                    2_000_000)
            assert _ops_py.search_separator(*args) == compiled.search_separator(*args)


class TestFindSeparator:
    def test_matches_oracle_existence(self, ab):
        rng = random.Random(3)
        words = all_words(ab, 3)
        for _ in range(80):
            a = rng.sample(words, rng.randint(1, 3))
            b = [w for w in rng.sample(words, rng.randint(0, 3)) if w not in a]
            dialect = rng.choice([Dialect.RE, Dialect.RESF, Dialect.GRE])
            max_size = rng.randint(1, 5)
            max_stars = rng.choice([0, 1, None])
            fast = synth.find_separator(a, b, ab, dialect, max_size, max_stars)
            slow = min_separating(a, b, EnumSpec(ab, dialect, max_size, max_stars))
            assert (fast is None) == (slow is None)
            if fast is not None:
                assert size(fast) == slow.size
                assert separates(fast, a, b)
                assert dialect.admits(dialect_of(fast))
                if max_stars is not None:
                    assert star_count(fast) <= max_stars

    def test_overlap_returns_none(self, ab):
        assert synth.find_separator(["a"], ["a"], ab, Dialect.RE, 4) is None

    def test_limit_error(self, ab):
        with pytest.raises(synth.SearchLimitError):
            synth.find_separator(["abab"], ["a", "b", "aa", "bb"], ab,
                                 Dialect.GRE, 9, 2, max_entries=5)

    def test_behavior_of_matches_matcher(self, ab):
        tables = synth.build_tables(["ab", "ba"], ab)
        from regames.exprs import parse_expr

        e = parse_expr("(a|b)b*", ab)
        vec = synth.behavior_of(e, tables)
        for i, f in enumerate(tables.factor_list):
            assert bool(vec >> i & 1) == matches(e, f)
