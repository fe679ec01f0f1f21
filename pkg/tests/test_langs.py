import json

import pytest

from regames import langs, synth
from regames.exprs import Alphabet, Dialect, matches, render_expr, size, star_count
from regames.oracle import EnumSpec


class TestTower:
    def test_values(self):
        assert [langs.twr(n) for n in range(5)] == [1, 2, 4, 16, 65536]

    def test_overflow_reported(self):
        with pytest.raises(OverflowError):
            langs.twr(6)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            langs.twr(-1)


class TestHierarchyEncodings:
    def test_level_sizes(self):
        assert [len(langs.hierarchy_level(n)) for n in range(5)] == [0, 1, 2, 4, 16]

    def test_pair_set_has_both_encodings(self):
        pair = frozenset({frozenset(), frozenset({frozenset()})})
        assert set(langs._encodings(pair)) == {"(()(()))", "((())())"}

    def test_enc_language_small(self):
        assert langs.enc_language(0) == ("()",)
        assert langs.enc_language(1) == ("()", "(())")
        assert len(langs.enc_language(2)) == 5

    def test_enc_language_counts_beat_tower(self):
        for n in (1, 2, 3):
            assert len(langs.enc_language(n)) >= langs.twr(n)

    def test_frozen_level3_count(self):
        assert len(langs.enc_language(3)) == 114

    def test_words_balanced(self):
        for w in langs.enc_language(2):
            assert w[0] == "(" and w[-1] == ")"
            depth = 0
            for c in w:
                depth += 1 if c == "(" else -1
                assert depth >= 0
            assert depth == 0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            langs.enc_language(4)


class TestEvenChains:
    def test_membership_examples(self):
        assert langs.even_chain_member("aabbb", 2) is True
        assert langs.even_chain_member("ababa", 2) is False
        assert langs.even_chain_member("", 2) is True

    def test_expr_matches_membership(self):
        e = langs.even_chain_expr(2)
        assert size(e) == 13 and star_count(e) == 2
        for w in langs.words_up_to(langs.chain_alphabet(2), 6):
            assert matches(e, w) == langs.even_chain_member(w, 2)

    def test_make_lnk(self):
        assert langs.make_lnk(2, 2) == ("aaaaabbbb", "aaaabbbbb")
        for w in langs.make_lnk(3, 1):
            assert langs.even_chain_member(w, 3)

    def test_make_lnk_words_leave_language_when_perturbed(self):
        for w in langs.make_lnk(2, 2):
            assert langs.even_chain_member(w, 2)
        assert not langs.even_chain_member("aaaaabbbbb", 2)


class TestCertify:
    def test_seed_sample(self):
        a_words = langs.make_lnk(2, 2)
        pred = lambda w: not langs.even_chain_member(w, 2)
        assert langs.seed_sample(a_words, pred, langs.chain_alphabet(2)) == (
            "ab", "ba", "aaaaabbbbb")

    def test_trivial_survivor_epsilon(self):
        spec = EnumSpec(langs.chain_alphabet(2), Dialect.RE, 1)
        out = langs.certify_lower_bound([""], lambda w: w != "", spec, horizon=6)
        assert out.status == "candidate-survives-horizon"
        assert render_expr(out.survivor) == "\\e"

    def test_small_certificate_and_replay(self):
        spec = EnumSpec(langs.chain_alphabet(2), Dialect.RE, 2)
        out = langs.certify_lower_bound(
            ["ab"], lambda w: w != "ab", spec, horizon=5)
        assert out.is_certificate
        assert langs.replay_certificate(out.certificate)

    def test_a_word_in_complement_rejected(self):
        spec = EnumSpec(langs.chain_alphabet(2), Dialect.RE, 3)
        with pytest.raises(ValueError):
            langs.certify_lower_bound(["ab"], lambda w: True, spec)

    def test_certificate_json_roundtrip(self):
        spec = EnumSpec(langs.chain_alphabet(2), Dialect.RE, 2)
        out = langs.certify_lower_bound(["ab"], lambda w: w != "ab", spec, horizon=5)
        text = langs.certificate_to_json(out)
        body = json.loads(text)
        assert body["status"] == "certificate"
        cert = langs.certificate_from_json(text)
        assert cert.a_words == ("ab",)
        assert cert.size_bound == 2
        assert langs.replay_certificate(cert)


class TestWordFiles:
    def test_roundtrip_with_epsilon(self, tmp_path):
        path = tmp_path / "words.txt"
        alphabet = Alphabet("ab")
        langs.write_word_file(path, ["", "ab", "a"], alphabet)
        got_alpha, got_words = langs.read_word_file(path)
        assert got_alpha.symbols == ("a", "b")
        assert got_words == ("", "a", "ab")
        assert "EPS" in path.read_text()

    def test_literal_eps_rejected(self, tmp_path):
        alphabet = Alphabet("EPS")
        with pytest.raises(ValueError):
            langs.write_word_file(tmp_path / "x.txt", ["EPS"], alphabet)

    def test_header_required(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("ab\n")
        with pytest.raises(ValueError):
            langs.read_word_file(path)
