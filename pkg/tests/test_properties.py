"""Randomized invariants, one test per suite (seeded, deterministic)."""

import pytest

import prop_suites


@pytest.mark.parametrize("suite", prop_suites.ALL_SUITES,
                         ids=lambda fn: fn.__name__)
def test_property_suite(suite):
    assert suite() > 0


def test_total_trials_at_least_ten_thousand():
    counts = prop_suites.run_all_suites()
    assert sum(counts.values()) >= 10_000
