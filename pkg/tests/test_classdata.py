from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.classdata import (
    ClassDataError,
    Fingerprint,
    UnsupportedQuery,
    classify,
    condition_holds,
    describe_condition_in_n,
    format_partition,
    load_classes,
    load_lemmas,
    lookup,
    parse_classes,
    parse_partition,
    prime_power,
    record,
)
from hurwitz.rootsys import build_root_system, torus_fixed_dims, weight_set


def _labels(recs):
    return {r.label for r in recs}


def _raw():
    return resources.files("hurwitz.data").joinpath("classes.dat").read_text()


def test_table_loads_and_is_consistent():
    recs = load_classes()
    assert len(recs) == 86
    for r in recs:
        for kind, parts in r.partitions:
            assert sum(parts) == {"M": {"F4": 26, "E6": 27, "E7": 56}, "L": {"F4": 52, "E6": 78, "E7": 133},
                                  "Mp": {"F4": 25}}[kind][r.family]


def test_edited_table_refused():
    text = _raw()
    tampered = text.replace("F4|7N|7|s|2|10", "F4|7N|7|s|3|10")
    assert tampered != text
    with pytest.raises(ClassDataError, match="checksum"):
        parse_classes(tampered)
    with pytest.raises(ClassDataError):
        parse_classes(text.rsplit("# checksum", 1)[0])


def test_lookup_examples():
    assert _labels(lookup("F4", 4, 2)) == {"A1", "~A1", "~A1(2)", "A1+~A1"}
    sevens = lookup("F4", 5, 7)
    assert _labels(sevens) == {"7N"}
    assert _labels(lookup("F4", 5, 7, check_existence=False)) == {"7L", "7N", "7O"}
    assert {r.cond for r in lookup("F4", 5, 7, check_existence=False)} == {"all", "q=+-1(7)"}
    assert "3B" not in _labels(lookup("E6", 2, 3))
    assert "3B" in _labels(lookup("E6", 4, 3))
    assert _labels(lookup("F4", 13, 7)) == {"7L", "7N", "7O"}


def test_lookup_errors():
    with pytest.raises(UnsupportedQuery):
        lookup("G2", 3, 2)
    with pytest.raises(UnsupportedQuery):
        lookup("F4", 3, 5)
    with pytest.raises(UnsupportedQuery):
        lookup("F4", 6, 2)


def test_se7_replaces_involution():
    labs = _labels(lookup("SE7", 5, 2))
    assert {"A1D6/24", "A1D6/32"} <= labs and "A1D6" not in labs


def test_classify_examples():
    assert classify(Fingerprint.make(2, {"M'": 13}), "F4", 3) == ["2A"]
    assert classify(Fingerprint.make(7, {"M'": 1}), "F4", 3) == ["7N"]
    assert classify(Fingerprint.make(7, {"M": 3, "L": 14}), "E6", 5) == ["7M"]
    assert classify(Fingerprint.make(7, {"M": 7}), "E6", 5) == []


def test_classify_uses_partitions():
    fp = Fingerprint.make(3, {"M'": 9}, {"M'": [3] * 7 + [2, 2]})
    assert classify(fp, "F4", 3) == ["A2+~A1"]
    fp = Fingerprint.make(3, {"M'": 9}, {"M'": [3] * 8 + [1]})
    assert classify(fp, "F4", 3) == ["~A2+A1"]
    # dimension alone leaves both (computed values)
    assert set(classify(Fingerprint.make(3, {"M'": 9}), "F4", 3)) == {"A2+~A1", "~A2+A1"}


def test_reduced_module_values():
    r = record("F4", "A2+~A1", 3)
    assert r.dim_on("M'") == 10 and r.dim_on("M'", computed=True) == 9
    assert record("F4", "2A", 2).dim_on("M'") == 13
    assert record("F4", "7N", 7).dim_on("M'") == 1


@pytest.mark.parametrize("label,m", [("F4", 2), ("F4", 3), ("F4", 7), ("E6", 2), ("E6", 3), ("E6", 7)])
def test_semisimple_records_attained_by_torus(label, m):
    rs = build_root_system(label)
    h = torus_fixed_dims(rs, weight_set(rs, "M"), m)
    for r in load_classes():
        if r.family == label and r.order == m and not r.unipotent:
            assert h.attains(r.dM, r.dL), r.label


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=12))
def test_partition_text_round_trip(parts):
    parts = sorted(parts, reverse=True)
    assert parse_partition(format_partition(parts)) == parts


@pytest.mark.parametrize(
    "cond,q,want",
    [("all", 2, True), ("q=1(7)", 8, True), ("q=1(7)", 13, False), ("q=-1(7)", 13, True),
     ("q=+-1(7)", 27, True), ("q=+-1(7)", 9, False), ("q=1(3)", 4, True), ("q=1(3)", 2, False)],
)
def test_conditions(cond, q, want):
    assert condition_holds(cond, q) == want


def test_twisted_condition_and_n_description():
    assert condition_holds("q=1(3)", 2, twisted=True)
    assert describe_condition_in_n("q=+-1(7)", 2) == "3 | n"
    assert describe_condition_in_n("q=+-1(7)", 3) == "3 | n"
    assert describe_condition_in_n("all", 5) == "always"
    assert prime_power(343) == (7, 3)


def test_lemma_facts():
    facts = load_lemmas()
    e7 = [f for f in facts if f.family == "E7" and f.applies(2)]
    assert len(e7) == 1 and e7[0].get("x") == "70"
    assert [f.char for f in facts if f.family == "E8" and f.applies(11)] == ["p>=5"]


@pytest.mark.parametrize("label", ["E7", "E8"])
def test_lemma_z_bound_equals_torus_minimum(label):
    m = torus_fixed_dims(build_root_system(label), None, 7).min_dL
    for f in load_lemmas():
        if f.family == label:
            assert int(f.get("z")) == m
