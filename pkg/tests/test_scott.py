import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.classdata import UnsupportedQuery, record
from hurwitz.scott import (
    FamilyMismatch,
    enumerate_admissible,
    modules_for,
    render_table,
    scott_check,
    upper_bounds,
    verdict,
)

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 29, 43, 49, 64, 343, 729]


def _labels(family, q, **kw):
    return {t.labels for t in enumerate_admissible(family, q, **kw)}


def test_scott_check_examples():
    L = [("L", 52)]
    assert scott_check(record("F4", "A1+~A1", 2), record("F4", "3C", 3), record("F4", "7O", 7), L)
    assert not scott_check(record("F4", "2B", 2), record("F4", "3C", 3), record("F4", "7N", 7), L)
    with pytest.raises(FamilyMismatch):
        scott_check(record("F4", "2A", 2), record("E6", "3C", 3), record("F4", "7N", 7), L)


def test_enumerate_examples():
    assert _labels("F4", 27) == {("2A", "A2+~A1", "7N"), ("2A", "~A2+A1", "7N"), ("2A", "~A2+A1", "7O")}
    assert _labels("F4", 3) == {("2A", "A2+~A1", "7N"), ("2A", "~A2+A1", "7N")}
    assert _labels("E6", 3) == {("2A", "2A2+A1", "7N")}
    assert _labels("E6", 7) == {("2A", "3C", z) for z in ("A4+A1", "A5", "D5(a1)", "E6(a3)")}
    assert _labels("F4", 8) == {("A1+~A1", "3C", "7O")}
    with pytest.raises(UnsupportedQuery):
        enumerate_admissible("E7", 2)


def test_computed_reduced_values_admit_more():
    # with the computed d^{M'} of A2+~A1 a further type passes when 7O exists
    assert ("2A", "A2+~A1", "7O") in _labels("F4", 27, computed=True)
    assert ("2A", "A2+~A1", "7O") not in _labels("F4", 27)


def test_golden_table():
    from pathlib import Path

    golden = (Path(__file__).parent / "golden" / "table1.txt").read_text().strip().splitlines()
    assert render_table(lines=True).strip().splitlines() == golden


@pytest.mark.parametrize("family,q", [("F4", 2), ("F4", 4), ("F4", 32), ("SE6", 7), ("2E6", 7)])
def test_impossible(family, q):
    v = verdict(family, q)
    assert v.status == "impossible" and not v.possible
    assert "not a Hurwitz group" in v.reason


@pytest.mark.parametrize("family,q", [("F4", 3), ("F4", 8), ("F4", 5), ("E6", 3), ("SE6", 5)])
def test_possible(family, q):
    v = verdict(family, q)
    assert v.possible and v.triples


def test_e7_e8_bounds():
    assert upper_bounds("E7", 2) == {"x": 71, "y": 44, "z": 20}
    v = verdict("E7", 2)
    assert v.constraints["x"] == ["4A1"]
    assert verdict("E8", 7).possible


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["F4", "E6", "SE6", "2E6"]), st.sampled_from(PRIME_POWERS), st.integers(1, 10))
def test_monotone_in_module_dimension(family, q, extra):
    mods = modules_for(family, q)
    base = _labels(family, q, modules=mods)
    bigger = _labels(family, q, modules=[(k, d + extra) for k, d in mods])
    fewer = _labels(family, q, modules=mods[1:])
    assert base <= bigger
    assert base <= fewer


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["F4", "E6"]), st.sampled_from(PRIME_POWERS))
def test_admissible_triples_satisfy_inequality(family, q):
    for t in enumerate_admissible(family, q):
        assert all(s <= d for _, s, d in t.sums)


def test_strict_policy_is_subset_for_se6():
    for q in (5, 7, 11, 13):
        assert _labels("SE6", q, policy="strict") <= _labels("SE6", q)
