"""The acceptance gate: every criterion runs at its stated tolerance.

One test per criterion; each prints its canonical report block, so a plain
`pytest -s tests/test_acceptance.py` reads as the acceptance record.  All
comparisons are exact (zero tolerance).
"""

import pytest

from regames import acceptance


@pytest.fixture(scope="module")
def suite():
    results, report = acceptance.run_all(include_determinism=True)
    return {r.number: r for r in results}, report


def _check(suite, number):
    results, _report = suite
    result = results[number]
    print()
    print(result.render())
    assert result.passed, result.render()


def test_criterion_1_theorem_equivalence_grid(suite):
    _check(suite, 1)


def test_criterion_2_witness_soundness_and_playouts(suite):
    _check(suite, 2)


def test_criterion_3_lemma_suite(suite):
    _check(suite, 3)


def test_criterion_4_log_size_bound(suite):
    _check(suite, 4)


def test_criterion_5_encoding_constructions(suite):
    _check(suite, 5)


def test_criterion_6_star_lower_bound(suite):
    _check(suite, 6)


def test_criterion_7_determinism(suite):
    _check(suite, 7)
