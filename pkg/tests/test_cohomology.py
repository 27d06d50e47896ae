import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pargal import cohomology as coh
from pargal import fixtures
from pargal.errors import PreconditionError


def _random_cochain(action, n, rng):
    pos, corners, units = coh._position_data(action, n)
    vals = np.array([rng.choice(u) for u in units], dtype=np.int64)
    return coh.Cochain(action, n, vals)


# ---------------------------------------------------- cochain basics

def test_cochain_space_sizes_frozen():
    # corner unit counts worked out by hand for the rotation fixtures
    E1, E2, E3 = (fixtures.fixture(k) for k in ("E1", "E2", "E3"))
    assert coh.cochain_space_size(E1, 1) == 1
    assert coh.cochain_space_size(E2, 0) == 9
    assert coh.cochain_space_size(E2, 1) == 81
    assert coh.cochain_space_size(E2, 2) == 6561
    assert coh.cochain_space_size(E3, 1) == 27 ** 3
    assert coh.cochain_space_size(fixtures.fixture("E0"), 2) == 1


def test_cochain_membership_enforced():
    E2 = fixtures.fixture("E2")
    vals = np.full(3, E2.ring.one, dtype=np.int64)
    # value 1 at position (g,) is not in the corner D_g
    with pytest.raises(PreconditionError):
        coh.Cochain(E2, 1, vals)


def test_identity_cochain_and_corner_idem():
    E2 = fixtures.fixture("E2")
    ident = coh.identity_cochain(E2, 2)
    assert ident[(1, 1)] == E2.ring.zero  # 1_g·1_{g^2} = 0
    assert ident[(0, 1)] == E2.one(1)
    assert coh.corner_idem(E2, ()) == E2.ring.one


def test_delta0_of_one_is_identity_cochain():
    for name in ("E1", "E2", "E3"):
        act = fixtures.fixture(name)
        one = coh.cochain_from_map(act, 0, act.ring.one)
        assert coh.coboundary(act, one) == coh.identity_cochain(act, 1)


def test_delta0_component_formula_on_e2():
    E2 = fixtures.fixture("E2")
    R = E2.ring
    # R = F4 x F4; delta0(x)(g) = alpha_g(x·1_{g^-1})·x^{-1} per component
    for x in (u for u in range(R.order)):
        inv_map, _ = coh._machinery(E2)
        if inv_map[R.one][x] < 0:
            continue
        f = coh.coboundary(E2, coh.cochain_from_map(E2, 0, x))
        xin = inv_map[R.one][x]
        for g in range(3):
            expect = R.mul[E2.apply(g, x), xin]
            assert f[(g,)] == int(R.mul[expect, E2.one(g)])


# ---------------------------------------------------- delta composition

def test_delta_delta_identity_exhaustive_small_arity():
    # n = 0 and n = 1 over every cochain of E1 and E2
    for name in ("E1", "E2"):
        act = fixtures.fixture(name)
        for n in (0, 1):
            ident = coh.identity_cochain(act, n + 2)
            for table in coh._enumerate_cochains(act, n):
                f = coh.Cochain(act, n, np.array(table, dtype=np.int64))
                assert coh.coboundary(act, coh.coboundary(act, f)) == ident


def test_delta_delta_identity_arity2_sampled():
    rng = random.Random(11)
    act = fixtures.fixture("E2")
    ident = coh.identity_cochain(act, 4)
    for _ in range(300):
        f = _random_cochain(act, 2, rng)
        assert coh.coboundary(act, coh.coboundary(act, f)) == ident


@settings(max_examples=30)
@given(st.integers(0, 10**9))
def test_delta_is_homomorphism(seed):
    rng = random.Random(seed)
    act = fixtures.fixture("E2")
    n = rng.choice([0, 1, 2])
    f, f2 = _random_cochain(act, n, rng), _random_cochain(act, n, rng)
    lhs = coh.coboundary(act, coh.cochain_mul(f, f2))
    rhs = coh.cochain_mul(coh.coboundary(act, f), coh.coboundary(act, f2))
    assert lhs == rhs


def test_z1_shape_matches_direct_formula():
    # delta^1 f = identity  iff  alpha_g(f(h)1_{g^-1})·f(g) = f(gh)·1_g
    act = fixtures.fixture("E2")
    R, G = act.ring, act.group
    for table in coh._enumerate_cochains(act, 1):
        f = dict(zip(coh.positions(act, 1), table))
        direct = all(
            int(R.mul[act.apply(g, f[(h,)]), f[(g,)]])
            == int(R.mul[f[(G.op(g, h),)], act.one(g)])
            for g in range(3) for h in range(3))
        via_delta = tuple(table) in set(coh._kernel_dfs(act, 1))
        assert direct == via_delta


def test_z2_shape_matches_direct_formula():
    act = fixtures.fixture("E2")
    R, G = act.ring, act.group
    z2 = set(coh._kernel_dfs(act, 2))
    rng = random.Random(5)
    checked = 0
    for table in coh._enumerate_cochains(act, 2):
        if rng.random() > 0.05 and tuple(table) not in z2:
            continue  # all cocycles plus a 5% sample of the rest
        f = dict(zip(coh.positions(act, 2), table))
        direct = all(
            int(R.mul[act.apply(g, f[(h, l)]), f[(g, G.op(h, l))]])
            == int(R.mul[f[(G.op(g, h), l)], f[(g, h)]])
            for g in range(3) for h in range(3) for l in range(3))
        assert direct == (tuple(table) in z2)
        checked += 1
    assert checked >= 27


# ---------------------------------------------------- orders (frozen)

FROZEN = {
    # name, n: (z, b, h)
    ("E0", 0): (1, 1, 1), ("E0", 1): (1, 1, 1), ("E0", 2): (1, 1, 1),
    ("E1", 0): (1, 1, 1), ("E1", 1): (1, 1, 1), ("E1", 2): (1, 1, 1),
    ("E1", 3): (1, 1, 1),
    ("E2", 0): (3, 1, 3), ("E2", 1): (3, 3, 1), ("E2", 2): (27, 27, 1),
    ("E3", 0): (3, 1, 3), ("E3", 1): (9, 9, 1), ("E3", 2): (2187, 2187, 1),
    ("N1", 0): (1, 1, 1), ("N1", 1): (1, 1, 1), ("N1", 2): (1, 1, 1),
}


@pytest.mark.parametrize("name,n", sorted(FROZEN))
def test_frozen_orders_enumeration(name, n):
    act = fixtures.fixture(name)
    grp = coh.cohomology_group(act, n, engine="enumerate")
    assert (grp.z_order, grp.b_order, grp.h_order) == FROZEN[(name, n)]


@pytest.mark.parametrize("name,n", sorted(FROZEN))
def test_frozen_orders_structure(name, n):
    act = fixtures.fixture(name)
    grp = coh.cohomology_group(act, n, engine="structure")
    assert (grp.z_order, grp.b_order, grp.h_order) == FROZEN[(name, n)]


def test_engines_agree_via_both():
    for name in ("E1", "E2", "E0", "E3"):
        act = fixtures.fixture(name)
        for n in (1, 2):
            grp = coh.cohomology_group(act, n, engine="both")
            assert grp.z_order == grp.b_order * grp.h_order


def test_h0_is_invariant_units():
    # H^0 = Z^0 = {x in U(R) : alpha_g(x·1_{g^-1}) = x·1_g}
    for name in ("E2", "E3"):
        act = fixtures.fixture(name)
        R = act.ring
        inv_map, _ = coh._machinery(act)
        direct = [
            x for x in range(R.order)
            if inv_map[R.one][x] >= 0 and all(
                act.apply(g, x) == int(R.mul[x, act.one(g)])
                for g in range(act.group.order))]
        grp = coh.cohomology_group(act, 0)
        assert grp.z_order == len(direct)
        assert grp.h_order == len(direct)


def test_b_inside_z_all_fixtures():
    for name in ("E1", "E2", "E3"):
        act = fixtures.fixture(name)
        for n in (1, 2):
            z = set(coh._kernel_dfs(act, n))
            b = coh._image_scan(act, n)
            assert b <= z


def test_representatives_lex_least_enumeration():
    act = fixtures.fixture("E2")
    grp = coh.cohomology_group(act, 1, engine="enumerate")
    assert grp.lex_least
    assert len(grp.representatives) == grp.h_order
    rep = grp.representatives[0]
    # the identity coset's least element: B^1 contains the identity cochain,
    # whose value table starts with 1 = element index 5? comparison is by
    # raw index tuples, so just assert the rep really is minimal in its coset
    b = sorted(coh._image_scan(act, 1))
    orbit = sorted(
        tuple(int(act.ring.mul[a, c]) for a, c in zip(rep.value_tuple(), bt))
        for bt in b)
    assert orbit[0] == rep.value_tuple()


def test_h_structure_presentation():
    act = fixtures.fixture("E2")
    g0 = coh.cohomology_group(act, 0)
    assert g0.h_structure.invariant_factors == (3,)
    g1 = coh.cohomology_group(act, 1)
    assert g1.h_structure.invariant_factors == ()


def test_arity3_consistency():
    # no independent oracle for H^3 here; check internal consistency and
    # cross-engine agreement instead
    act = fixtures.fixture("E2")
    grp = coh.cohomology_group(act, 3, engine="both")
    assert grp.z_order == grp.b_order * grp.h_order
    assert grp.b_order == 6561 // 27  # |C^2| / |Z^2|
    with pytest.raises(PreconditionError):
        coh.cohomology_group(act, 4)


# ---------------------------------------------------- witnesses

def test_cohomologous_reflexive():
    act = fixtures.fixture("E2")
    rng = random.Random(3)
    f = _random_cochain(act, 1, rng)
    eps = coh.cohomologous(act, f, f)
    assert eps is not None
    # witness must satisfy f = f·delta(eps)
    prod = coh.cochain_mul(f, coh.coboundary(act, eps))
    assert prod == f


def test_cohomologous_round_trip():
    act = fixtures.fixture("E2")
    rng = random.Random(4)
    eps0 = _random_cochain(act, 1, rng)
    f = coh.coboundary(act, eps0)  # a 2-coboundary
    ident = coh.identity_cochain(act, 2)
    eps = coh.cohomologous(act, f, ident)
    assert eps is not None
    assert coh.cochain_mul(ident, coh.coboundary(act, eps)) == f


def test_cohomologous_negative_conclusive():
    # on E2 take f in Z^1 and f' = f·(nontrivial non-coboundary shift)?
    # H^1 is trivial there, so instead take arities where C^0 search is
    # exhaustive: any two distinct cocycles ARE cohomologous on E2 (H^1=1);
    # a conclusive negative needs non-cohomologous inputs, so use E3 with
    # two 1-cochains differing outside B^1's reach
    act = fixtures.fixture("E3")
    z = coh._kernel_dfs(act, 1)
    b = coh._image_scan(act, 1)
    assert set(z) == b  # H^1 trivial: every pair IS cohomologous
    f = coh.Cochain(act, 1, np.array(z[0], dtype=np.int64))
    f2 = coh.Cochain(act, 1, np.array(z[-1], dtype=np.int64))
    assert coh.cohomologous(act, f, f2) is not None
    # manufacture a non-cohomologous pair: a cocycle vs a non-cocycle
    # (delta·eps keeps cocycles cocycles, so no witness can exist)
    pos, corners, units = coh._position_data(act, 1)
    non = None
    for table in itertools.islice(coh._enumerate_cochains(act, 1), 200):
        if table not in set(z):
            non = coh.Cochain(act, 1, np.array(table, dtype=np.int64))
            break
    assert non is not None
    assert coh.cohomologous(act, f, non) is None


# ---------------------------------------------------- normalization

def test_normalize_1cocycle_identity_path():
    act = fixtures.fixture("E2")
    for table in coh._kernel_dfs(act, 1):
        f = coh.Cochain(act, 1, np.array(table, dtype=np.int64))
        out = coh.normalize_1cocycle(act, f)
        assert out == f
        assert f[(act.group.identity,)] == act.ring.one


def test_normalize_2cocycle_already_normalized():
    act = fixtures.fixture("E2")
    ident = coh.identity_cochain(act, 2)
    out, eps = coh.normalize_2cocycle(act, ident)
    assert out == ident
    assert eps == coh.identity_cochain(act, 1)


def test_normalize_2cocycle_round_trip():
    act = fixtures.fixture("E2")
    rng = random.Random(9)
    # pick eps0 with eps0(1) != 1 so delta(eps0) is an unnormalized cocycle
    _, _, units = coh._position_data(act, 1)
    for _ in range(50):
        vals = np.array([rng.choice(u) for u in units], dtype=np.int64)
        eps0 = coh.Cochain(act, 1, vals)
        f = coh.coboundary(act, eps0)
        if any(f[(act.group.identity, g)]
               != coh.corner_idem(act, (act.group.identity, g))
               for g in range(act.group.order)):
            break
    else:
        pytest.skip("no unnormalized coboundary found")
    tilde, eps = coh.normalize_2cocycle(act, f)
    # output is normalized and differs from f by delta(eps)
    G = act.group
    for g in range(G.order):
        assert tilde[(G.identity, g)] == coh.corner_idem(act, (G.identity, g))
        assert tilde[(g, G.identity)] == coh.corner_idem(act, (g, G.identity))
    assert coh.cochain_mul(tilde, coh.coboundary(act, eps)) == f
    # normalized forms are still cocycles
    assert coh.is_cocycle(act, tilde)


def test_normalize_all_z2_cocycles_e2():
    act = fixtures.fixture("E2")
    for table in coh._kernel_dfs(act, 2):
        f = coh.Cochain(act, 2, np.array(table, dtype=np.int64))
        tilde, eps = coh.normalize_2cocycle(act, f)
        assert coh.is_cocycle(act, tilde)
        assert coh.cochain_mul(tilde, coh.coboundary(act, eps)) == f
