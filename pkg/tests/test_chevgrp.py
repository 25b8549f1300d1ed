import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.chevgrp import (
    ReductionNotApplicable,
    build_integral_rep,
    chevalley_group,
    gl3_2,
    group_for,
    levi_regular_unipotent,
    load_group,
    module_of,
)
from hurwitz.ffla.matrix import MatrixGF, element_order, fixed_space_dim, jordan_partition
from hurwitz.rootsys import build_root_system, structure_constants, torus_dims_single, weight_set


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@pytest.mark.parametrize("label,kind", [("A2", "M"), ("G2", "M"), ("G2", "L"), ("F4", "M"), ("E6", "M")])
def test_root_operators_satisfy_brackets(label, kind):
    """[e_a, e_b] = s N(a, b) e_(a+b) with one overall sign s for the module."""
    rep = build_integral_rep(label, kind)
    rs = build_root_system(label)
    N = structure_constants(rs)
    e = rep.nilpotent
    signs = set()
    for a in rs.roots:
        for b in rs.roots:
            if a >= b:
                continue
            br = e[a] @ e[b] - e[b] @ e[a]
            c = _add(a, b)
            if c in rs.root_set:
                n = N[(a, b)]
                for s in (1, -1):
                    if np.array_equal(br, s * n * e[c]):
                        signs.add(s)
                        break
                else:
                    pytest.fail(f"bracket of {a}, {b} is not a multiple of e_{c}")
            elif any(c):
                assert not br.any()
    assert len(signs) == 1


@pytest.mark.parametrize("label,kind,q", [("G2", "M", 4), ("F4", "M", 5), ("E6", "M", 2)])
def test_root_subgroups_are_homomorphic_images(label, kind, q):
    G = chevalley_group(label, q, kind)
    F = G.field
    rs = build_root_system(label)
    rng = np.random.default_rng(0)
    for a in (rs.simple[0], rs.highest_root(), tuple(-c for c in rs.positive[len(rs.positive) // 2])):
        t, u = (int(x) for x in rng.integers(1, q, 2))
        assert G.root_element(a, t) @ G.root_element(a, u) == G.root_element(a, F.sadd(t, u))
        assert G.root_element(a, 0).is_identity()


def test_commuting_root_elements():
    G = chevalley_group("F4", 3, "M")
    rs = build_root_system("F4")
    checked = 0
    for a in rs.positive[:10]:
        for b in rs.positive:
            c = _add(a, b)
            if c not in rs.root_set and a != b:
                x, y = G.root_element(a, 1), G.root_element(b, 2)
                assert x @ y == y @ x
                checked += 1
    assert checked > 20


@pytest.mark.parametrize("label,q,m", [("F4", 7, 3), ("F4", 8, 7), ("E6", 4, 3)])
def test_torus_elements_match_weight_count(label, q, m):
    G = chevalley_group(label, q, "M")
    rs = build_root_system(label)
    ws = weight_set(rs, "M")
    rng = np.random.default_rng(m)
    for _ in range(5):
        v = tuple(int(x) for x in rng.integers(0, m, rs.rank))
        t = G.torus_element(v, m)
        assert fixed_space_dim(t) == torus_dims_single(rs, ws, v, m)[0]
        assert (t ** m).is_identity()


@pytest.mark.parametrize("label,q", [("F4", 3), ("E6", 2)])
def test_generators_have_expected_orders(label, q):
    G = chevalley_group(label, q, "M")
    assert G.dim == {"F4": 26, "E6": 27}[label]
    for g in G.gens:
        assert g.is_invertible()
    # x_a(1) is unipotent of order p
    rs = build_root_system(label)
    assert element_order(G.root_element(rs.simple[0], 1)) == G.p


@pytest.mark.parametrize(
    "label,q,idx,kind,parts",
    [
        # frozen from the Levi-product construction
        ("F4", 3, (1, 2, 4), "M", [3, 3, 3, 3, 3, 3, 3, 2, 2, 1]),
        ("F4", 3, (3, 4, 1), "M", [3, 3, 3, 3, 3, 3, 3, 3, 2]),
        ("E6", 3, (1, 3, 5, 6, 2), "M", [3, 3, 3, 3, 3, 3, 3, 3, 3]),
    ],
)
def test_levi_unipotent_partitions(label, q, idx, kind, parts):
    G = chevalley_group(label, q, kind)
    u = levi_regular_unipotent(G, idx)
    assert jordan_partition(u) == parts


def test_reduced_module_cache_round_trip(tmp_path):
    a = load_group("F4", 3, "M'", cache_dir=tmp_path)
    assert list(tmp_path.iterdir())
    b = load_group("F4", 3, "M'", cache_dir=tmp_path)
    assert [g.a.tolist() for g in a.gens] == [g.a.tolist() for g in b.gens]
    assert a.dim == b.dim == 25
    # transport agrees with the cached generators
    base = a.base()
    assert a.transport(base.gens[0]) == a.gens[0]


def test_reduction_refused_in_good_characteristic():
    with pytest.raises(ReductionNotApplicable):
        module_of(chevalley_group("F4", 5, "M"), "M'")


def test_gl3_2_group():
    G = gl3_2()
    assert G.dim == 3 and [element_order(g) for g in G.gens] == [2, 7]
    with pytest.raises(ValueError):
        group_for("GL3", 4, "natural")
