import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.rootsys import (
    UnsupportedRootSystem,
    build_root_system,
    structure_constants,
    torus_dims_single,
    torus_fixed_dims,
    weight_inner,
    weight_multiplicities,
    weight_set,
)

ROOT_COUNTS = {"A1": 2, "A2": 6, "G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240}


@pytest.mark.parametrize("label,n", ROOT_COUNTS.items())
def test_root_counts_and_highest_root(label, n):
    rs = build_root_system(label)
    assert len(rs.roots) == n
    hr = rs.highest_root()
    assert all(sum(hr) >= sum(r) for r in rs.positive)
    # the highest root is dominant
    assert all(c >= 0 for c in rs.dynkin(hr))


def test_unknown_label():
    with pytest.raises(UnsupportedRootSystem):
        build_root_system("H3")


def _weyl_dimension(rs, hw):
    """Weyl's dimension formula, independent of the multiplicity computation."""
    rho = (1,) * rs.rank
    lam_rho = tuple(a + b for a, b in zip(hw, rho))
    num, den = Fraction(1), Fraction(1)
    for a in rs.positive:
        # pair with the coroot through the dual (Dynkin) coordinates of the root
        da = rs.dynkin(a)
        num *= weight_inner(rs, lam_rho, da)
        den *= weight_inner(rs, rho, da)
    return num / den


@pytest.mark.parametrize(
    "label,hw,dim",
    [
        ("G2", (0, 1), 14), ("G2", (1, 0), 7),
        ("F4", (0, 0, 0, 1), 26), ("F4", (1, 0, 0, 0), 52), ("F4", (0, 0, 0, 2), 324),
        ("E6", (1, 0, 0, 0, 0, 0), 27), ("E6", (0, 1, 0, 0, 0, 0), 78),
        ("E7", (0, 0, 0, 0, 0, 0, 1), 56), ("E7", (1, 0, 0, 0, 0, 0, 0), 133),
    ],
)
def test_freudenthal_matches_weyl_dimension(label, hw, dim):
    rs = build_root_system(label)
    mult = weight_multiplicities(rs, hw)
    assert sum(mult.values()) == dim
    assert _weyl_dimension(rs, hw) == dim


@pytest.mark.parametrize("label,dm,dl", [("F4", 26, 52), ("E6", 27, 78), ("E7", 56, 133)])
def test_module_weight_sets(label, dm, dl):
    rs = build_root_system(label)
    assert weight_set(rs, "M").dim == dm
    assert weight_set(rs, "L").dim == dl
    # zero weight of L has multiplicity rank
    wl = weight_set(rs, "L")
    assert dict(zip(wl.weights, wl.multiplicities))[(0,) * rs.rank] == rs.rank


@pytest.mark.parametrize("label,m", [("G2", 7), ("F4", 2), ("F4", 3), ("F4", 7), ("E6", 3)])
def test_torus_histogram_against_direct_count(label, m):
    rs = build_root_system(label)
    ws = weight_set(rs, "M") if label != "G2" else None
    h = torus_fixed_dims(rs, ws, m)
    direct = {}
    for v in itertools.product(range(m), repeat=rs.rank):
        key = torus_dims_single(rs, ws, v, m)
        direct[key] = direct.get(key, 0) + 1
    assert h.counts == direct
    assert h.identity == (ws.dim if ws else 0, len(rs.roots) + rs.rank)
    del direct[h.identity]
    assert h.min_dL == min(k[1] for k in direct)


def test_torus_frozen_values():
    # frozen from full enumeration; 7^7 and 7^8 vectors
    assert torus_fixed_dims(build_root_system("E7"), None, 7).min_dL == 19
    assert torus_fixed_dims(build_root_system("E8"), None, 7).min_dL == 36
    f4 = torus_fixed_dims(build_root_system("F4"), weight_set(build_root_system("F4"), "M"), 2)
    assert f4.counts == {(26, 52): 1, (14, 24): 12, (10, 36): 3}


@pytest.mark.parametrize("label", ["A2", "G2", "F4", "E6"])
def test_structure_constants_properties(label):
    rs = build_root_system(label)
    N = structure_constants(rs)
    for (a, b), n in N.items():
        assert n != 0
        assert N[(b, a)] == -n
        # |N| = p + 1 where p is the bottom of the beta string through alpha
        assert abs(n) == rs.string_bottom(b, a) + 1
        neg = (tuple(-c for c in a), tuple(-c for c in b))
        assert N[neg] in (n, -n)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=4, max_size=4))
def test_torus_single_is_weyl_invariant(v):
    rs = build_root_system("F4")
    ws = weight_set(rs, "M")
    base = torus_dims_single(rs, ws, v, 7)
    for j in range(rs.rank):
        assert torus_dims_single(rs, ws, rs.reflect_coweight(v, j, 7), 7) == base
