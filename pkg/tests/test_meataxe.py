import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.chevgrp import chevalley_group, gl3_2, load_group
from hurwitz.ffla.field import GF
from hurwitz.ffla.matrix import MatrixGF, raw_inverse, raw_matmul
from hurwitz.meataxe import IrreducibleInputError, ModuleAction, is_invariant, is_irreducible, split, spin_up


def _span_closure(p, mats, v):
    """Submodule generated by v as a set of tuples, by naive closure (prime fields only)."""
    d = len(v)
    sub = {tuple([0] * d), tuple(v)}
    grew = True
    while grew:
        grew = False
        cur = list(sub)
        for a in cur:
            for m in mats:
                img = tuple(int(x) for x in (np.array(a) @ m) % p)
                if img not in sub:
                    sub.add(img)
                    grew = True
            for b in cur:
                s = tuple((x + y) % p for x, y in zip(a, b))
                if s not in sub:
                    sub.add(s)
                    grew = True
    return sub


def _brute_irreducible(p, mats):
    d = mats[0].shape[0]
    for v in itertools.product(range(p), repeat=d):
        if any(v) and len(_span_closure(p, mats, v)) < p**d:
            return False
    return True


@st.composite
def small_modules(draw):
    p, d = draw(st.sampled_from([(2, 3), (2, 4), (2, 5), (3, 3)]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    mats = [rng.integers(0, p, (d, d)) for _ in range(2)]
    if draw(st.booleans()):
        # force an invariant subspace: block lower triangular, then conjugate
        k = draw(st.integers(1, d - 1))
        for m in mats:
            m[:k, k:] = 0
        F = GF(p)
        while True:
            c = MatrixGF(F, rng.integers(0, p, (d, d)))
            if c.is_invertible():
                break
        ci = c.inverse()
        mats = [(ci.a @ m @ c.a) % p for m in mats]
    return p, [np.asarray(m, dtype=np.int64) for m in mats]


@settings(max_examples=60, deadline=None)
@given(small_modules())
def test_meataxe_against_brute_force(mod):
    p, mats = mod
    act = ModuleAction(GF(p), mats)
    res = is_irreducible(act, budget=200)
    truth = _brute_irreducible(p, mats)
    assert res.status != "inconclusive"
    assert res.irreducible == truth
    if not truth:
        assert 0 < res.subspace.shape[0] < act.dim
        assert is_invariant(res.subspace, act)


@settings(max_examples=30, deadline=None)
@given(small_modules())
def test_split_blocks_are_actions(mod):
    p, mats = mod
    F = GF(p)
    act = ModuleAction(F, mats)
    res = is_irreducible(act, budget=200)
    if res.irreducible:
        with pytest.raises(IrreducibleInputError):
            split(act, budget=200)
        return
    sp = split(act, res.subspace)
    k = sp.sub_dim
    P, Pinv = sp.basis_change, raw_inverse(F, sp.basis_change)
    for g, s, q in zip(mats, sp.sub, sp.quotient):
        h = raw_matmul(F, raw_matmul(F, P, g), Pinv)
        assert not h[:k, k:].any()
        assert np.array_equal(h[:k, :k], s) and np.array_equal(h[k:, k:], q)
    # products of generators act blockwise
    g01 = raw_matmul(F, mats[0], mats[1])
    sp2 = split(ModuleAction(F, [g01]), res.subspace)
    assert np.array_equal(sp2.sub[0], raw_matmul(F, sp.sub[0], sp.sub[1]))
    assert np.array_equal(sp2.quotient[0], raw_matmul(F, sp.quotient[0], sp.quotient[1]))
    assert sp.sub_dim + sp.quotient_dim == act.dim and k > 0


def test_gl3_2_natural_irreducible():
    G = gl3_2()
    assert is_irreducible(ModuleAction(G.field, [g.a for g in G.gens])).irreducible


def test_permutation_module_reducible():
    F = GF(3)
    cyc = np.roll(np.eye(5, dtype=np.int64), 1, axis=1)
    swap = np.eye(5, dtype=np.int64)[[1, 0, 2, 3, 4]]
    res = is_irreducible(ModuleAction(F, [cyc, swap]))
    assert res.status == "reducible"
    assert res.subspace.shape[0] in (1, 4)


@pytest.mark.parametrize(
    "label,q,kind,dims",
    [("F4", 3, "M", {1, 25}), ("F4", 2, "L", {26}), ("E6", 3, "L", {1, 77})],
)
def test_exceptional_splittings_both_routes(label, q, kind, dims):
    G = chevalley_group(label, q, kind)
    act = ModuleAction(G.field, [g.a for g in G.gens])
    for a in (act, act.transposed()):
        res = is_irreducible(a, rng=np.random.default_rng(1))
        assert res.status == "reducible"
        sp = split(a, res.subspace)
        assert {sp.sub_dim, sp.quotient_dim} == dims


@pytest.mark.parametrize("label,q,kind", [("F4", 3, "M'"), ("F4", 2, "L'"), ("E6", 3, "L'")])
def test_subquotients_irreducible(label, q, kind):
    G = load_group(label, q, kind)
    res = is_irreducible(ModuleAction(G.field, [g.a for g in G.gens]))
    assert res.irreducible, res.status


def test_spin_up_of_fixed_vector():
    G = chevalley_group("F4", 3, "M")
    act = ModuleAction(G.field, [g.a for g in G.gens])
    res = is_irreducible(act, rng=np.random.default_rng(0))
    W = res.subspace
    assert spin_up(W, act).shape[0] == W.shape[0]


def test_soundness_on_constructed_block_actions():
    rng = np.random.default_rng(2024)
    for trial in range(100):
        p = [2, 3, 5][trial % 3]
        d = int(rng.integers(2, 9))
        k = int(rng.integers(1, d))
        mats = [rng.integers(0, p, (d, d)) for _ in range(2)]
        for m in mats:
            m[:k, k:] = 0
        act = ModuleAction(GF(p), mats)
        res = is_irreducible(act)
        assert not res.irreducible
        if res.status == "reducible":
            assert is_invariant(res.subspace, act)


def test_spin_up_examples():
    F = GF(3)
    lower = [np.array([[1, 0, 0], [2, 1, 0], [1, 1, 2]]), np.array([[2, 0, 0], [0, 1, 0], [1, 0, 1]])]
    act = ModuleAction(F, lower)
    assert spin_up(np.zeros((1, 3), dtype=np.int64), act).shape[0] == 0
    # rows act on the right, so e1 spans an invariant line under lower-triangular matrices
    assert spin_up(np.array([[1, 0, 0]]), act).tolist() == [[1, 0, 0]]
    G = gl3_2()
    full = spin_up(np.array([[0, 1, 1]]), ModuleAction(G.field, [g.a for g in G.gens]))
    assert full.shape[0] == 3


def test_split_constructed_two_three():
    F = GF(5)
    rng = np.random.default_rng(7)
    mats = [rng.integers(0, 5, (5, 5)) for _ in range(3)]
    for m in mats:
        m[:2, 2:] = 0
    sp = split(ModuleAction(F, mats), np.eye(5, dtype=np.int64)[:2])
    assert (sp.sub_dim, sp.quotient_dim) == (2, 3)
