from collections import Counter
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.chevgrp import gl3_2, group_for
from hurwitz.classdata import classify
from hurwitz.ffla.matrix import MatrixGF, element_order
from hurwitz.search import (
    BudgetExhausted,
    NotAdmissible,
    ProductReplacement,
    SearchLimits,
    WitnessFormatError,
    certificate_spec,
    certify_generation,
    decode_steps,
    encode_steps,
    group_closure_size,
    hunt,
    load_witness,
    make_target,
    measure,
    random_element_of_order,
    replay_word,
    verify_witness,
)

STORED = Path(__file__).resolve().parents[1] / "witnesses" / "F4_3_seed1.txt"
SMALL = SearchLimits(rounds=200, batch=16)


def _all_elements(ctx):
    F = ctx.field
    seen = {np.eye(ctx.dim, dtype=np.int64).tobytes(): np.eye(ctx.dim, dtype=np.int64)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in ctx.gens:
                b = (MatrixGF(F, a, check=False) @ g).a
                if b.tobytes() not in seen:
                    seen[b.tobytes()] = b
                    nxt.append(b)
        frontier = nxt
    return [MatrixGF(F, a, check=False) for a in seen.values()]


def test_gl3_2_order_spectrum():
    ctx = gl3_2()
    elems = _all_elements(ctx)
    assert len(elems) == 168 == group_closure_size(ctx.field, [g.a for g in ctx.gens])
    spectrum = Counter(element_order(g) for g in elems)
    assert spectrum == {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}


def test_order_exhaustion():
    ctx = gl3_2()
    with pytest.raises(BudgetExhausted):
        random_element_of_order(ctx, 5, np.random.default_rng(0), retries=100)
    g = random_element_of_order(ctx, 7, np.random.default_rng(0))
    assert element_order(g) == 7


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 40))
def test_product_replacement_replay(seed, n):
    ctx = gl3_2()
    gens = [g.a for g in ctx.gens]
    walk = ProductReplacement(ctx.field, gens, np.random.default_rng(seed), inverses=True)
    for _ in range(n):
        acc, inv = walk.next_with_inverse()
    assert np.array_equal(replay_word(ctx.field, gens, walk.word()), acc)
    assert (MatrixGF(ctx.field, acc) @ MatrixGF(ctx.field, inv)).is_identity()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9), st.booleans()).filter(lambda t: t[0] != t[1]),
                max_size=30))
def test_step_encoding_round_trip(steps):
    assert decode_steps(encode_steps(10, steps)) == (10, steps)


@pytest.mark.parametrize("word", ["xx", "pra:01", "pra:00l", "pra:0bl", "pra:01x"])
def test_bad_words(word):
    with pytest.raises(WitnessFormatError):
        decode_steps(word)


def test_targets_refused():
    with pytest.raises(NotAdmissible):
        make_target("F4", 4, "M", ["A1+~A1", "3C", "7O"])
    with pytest.raises(NotAdmissible):
        make_target("F4", 3, "M'", ["2A", "3C", "7N"])
    with pytest.raises(NotAdmissible):
        make_target("F4", 3, "M'", None)
    with pytest.raises(NotAdmissible):
        make_target("E7", 2, "M", ["(3A1)'", "A2A5", "s(8/19)"])
    t = make_target("E7", 2, "M", ["4A1", "A2A5", "s(8/19)"])
    assert t.fingerprints[2].dim("M") == 8


def _smoke_witness(seed=0, family="GL3", q=2, kind="natural"):
    ctx = group_for(family, q, kind)
    out = hunt(ctx, make_target(family, q, kind, None), seed=seed, limits=SMALL)
    return ctx, certify_generation(ctx.field, out.witness, certificate_spec(family, q))


def test_smoke_witness_round_trip():
    ctx, w = _smoke_witness()
    assert w.status == "certified" and w.closure == 168
    text = w.dumps()
    assert load_witness(text).dumps() == text
    assert verify_witness(load_witness(text), ctx).ok


def test_hunt_differs_across_seeds_but_not_within():
    texts = [_smoke_witness(s, "A1", 7, "L")[1].dumps() for s in (0, 0, 1)]
    assert texts[0] == texts[1]
    assert texts[0] != texts[2]


def _corrupt_matrix(text, name):
    lines = text.splitlines()
    k = lines.index(next(l for l in lines if l.startswith(f"matrix {name} ")))
    row = lines[k + 1]
    lines[k + 1] = ("1" if row[0] == "0" else "0") + row[1:]
    return "\n".join(lines) + "\n"


def _failed(text, ctx=None):
    return {c.name for c in verify_witness(load_witness(text), ctx).failures()}


@pytest.fixture(scope="module")
def stored_text():
    return STORED.read_text()


def test_stored_witness_verifies(stored_text):
    w = load_witness(stored_text)
    assert w.family == "F4" and w.q == 3 and w.labels == ("2A", "~A2+A1", "7N")
    rep = verify_witness(w)
    assert rep.ok, rep.render()


def test_corrupted_matrix_detected(stored_text):
    bad = _failed(_corrupt_matrix(stored_text, "y"))
    assert "x y z = 1" in bad


def test_corrupted_fingerprint_detected(stored_text):
    bad = _failed(stored_text.replace("fp z order=7 dim[M']=1", "fp z order=7 dim[M']=2"))
    assert "fingerprint of z" in bad


def test_corrupted_certificate_detected(stored_text):
    lines = stored_text.splitlines()
    k = next(i for i, l in enumerate(lines) if l.startswith("cert 73 "))
    o, word = lines[k].split(" ", 2)[1:]
    base, e = word.rsplit("^", 1)
    lines[k] = f"cert 73 {base[:-3]}^{e}"
    assert "element of order 73 in <x, z>" in _failed("\n".join(lines) + "\n")
    del lines[k]
    assert "all required orders certified" in _failed("\n".join(lines) + "\n")


def test_wrong_type_detected(stored_text):
    assert "classified type is admissible" in _failed(stored_text.replace("type 2A ~A2+A1 7N", "type 2A A2+~A1 7N"))


def test_group_hash_checked(stored_text):
    ctx = group_for("GL3", 2, "natural")
    assert "group hash" in _failed(stored_text, ctx)


@pytest.mark.parametrize("cut", ["head", "tail", "modulus"])
def test_malformed_files(stored_text, cut):
    text = {"head": stored_text[10:], "tail": stored_text.rsplit("end", 1)[0],
            "modulus": stored_text.replace("modulus ", "modulus 9")}[cut]
    with pytest.raises(WitnessFormatError):
        load_witness(text)


def test_measure_and_classify_real_elements(stored_text):
    w = load_witness(stored_text)

    class _Ctx:
        kind, p = "M'", 3

    for name, order, label in (("x", 2, "2A"), ("y", 3, "~A2+A1"), ("z", 7, "7N")):
        fp = measure(_Ctx, getattr(w, name), order)
        assert classify(fp, "F4", 3) == [label]
