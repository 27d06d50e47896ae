import numpy as np
import pytest
from hypothesis import given, strategies as st

from pargal import finring
from pargal.errors import BudgetError


def _check_ring_laws(R):
    n = R.order
    assert n <= 256, "exhaustive law check reserved for small rings"
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert R.add[R.add[a, b], c] == R.add[a, R.add[b, c]]
                assert R.mul[R.mul[a, b], c] == R.mul[a, R.mul[b, c]]
                assert R.mul[a, R.add[b, c]] == R.add[R.mul[a, b], R.mul[a, c]]


def test_z6_idempotents():
    R = finring.make_ring("Z6")
    # solved by hand: e^2 = e mod 6 for e in {0,1,3,4}
    assert finring.idempotents(R) == (0, 1, 3, 4)
    assert finring.primitive_idempotents(R) == (3, 4)


def test_z6_units_and_corner_units():
    R = finring.make_ring("Z6")
    U = finring.units(R)
    assert U.elements == (1, 5)
    assert U.inv(5) == 5
    # corner at e=3: R*3 = {0,3}, identity 3, only unit 3
    C = finring.corner_units(R, 3)
    assert C.elements == (3,)
    # corner at e=4: R*4 = {0,2,4}, units {2,4} since 2*2=4
    C4 = finring.corner_units(R, 4)
    assert C4.elements == (2, 4)
    assert C4.inv(2) == 2


def test_gf4_structure():
    R = finring.make_ring("GF(4;x^2+x+1)")
    assert R.order == 4
    assert R.field_params == (2, 2)
    _check_ring_laws(R)
    # nonzero elements form a cyclic group of order 3: every cube is 1
    for a in range(1, 4):
        assert R.elem_pow(a, 3) == R.one
    # x * (x+1) = x^2 + x = 1 with x^2 = x+1
    x, x1 = 2, 3
    assert R.mul[x, x1] == 1
    assert R.names[2] == "x" and R.names[3] == "x+1"
    assert finring.idempotents(R) == (0, 1)


def test_gf8_and_gf9():
    R8 = finring.make_ring("GF(8;x^3+x+1)")
    _check_ring_laws(R8)
    for a in range(1, 8):
        assert R8.elem_pow(a, 7) == 1
    R9 = finring.make_ring("GF(9;x^2+1)")
    _check_ring_laws(R9)
    for a in range(1, 9):
        assert R9.elem_pow(a, 8) == 1
    assert R9.field_params == (3, 2)


def test_reducible_polynomial_rejected():
    with pytest.raises(ValueError, match="reducible"):
        finring.make_ring("GF(4;x^2+1)")
    with pytest.raises(ValueError):
        finring.make_ring("GF(4)")  # needs an explicit modulus


def test_product_ring_layout():
    R = finring.make_ring("GF(2)*GF(2)*GF(2)")
    assert R.order == 8
    # leftmost factor most significant: index 4 = (1,0,0)
    assert finring.component_indices(R, 4) == (1, 0, 0)
    assert finring.element_from_components(R, (1, 1, 0)) == 6
    assert R.one == 7 and R.zero == 0
    # idempotents are all 8 tuples over {0,1}
    assert finring.idempotents(R) == tuple(range(8))
    assert finring.primitive_idempotents(R) == (1, 2, 4)
    _check_ring_laws(R)


def test_mixed_product_and_names():
    R = finring.make_ring("Z4*GF(4;x^2+x+1)")
    assert R.order == 16
    assert R.names[R.one] == "(1,1)"
    assert finring.idempotents(R) == tuple(
        finring.element_from_components(R, (a, b))
        for a in (0, 1) for b in (0, 1))
    _check_ring_laws(R)


def test_corner_ring_of_product():
    R = finring.make_ring("GF(2)*GF(2)*GF(2)")
    e = finring.element_from_components(R, (1, 1, 0))
    C = finring.corner_ring(R, e)
    assert C.order == 4
    assert C.one == C.names.index("(1,1,0)")
    # corner of a boolean product is again boolean
    assert all(C.mul[a, a] == a for a in range(4))


def test_subring_generated():
    R = finring.make_ring("GF(4;x^2+x+1)")
    S = finring.subring_generated(R, ())
    assert S.members == (0, 1)  # prime field
    S2 = finring.subring_generated(R, (2,))
    assert S2.members == (0, 1, 2, 3)


def test_diagonal_subring_of_cube():
    R = finring.make_ring("GF(2)*GF(2)*GF(2)")
    d = finring.element_from_components(R, (1, 1, 1))
    assert d == R.one
    S = finring.subring_generated(R, ())
    assert S.members == (0, 7)


def test_ring_cap():
    with pytest.raises(BudgetError):
        finring.make_ring("Z5000")
    with pytest.raises(BudgetError):
        finring.make_ring("Z100*Z100")
    finring.make_ring("Z100*Z40")  # 4000 <= 4096


def test_descriptor_roundtrip():
    for tag in ["Z6", "GF(4;x^2+x+1)", "Z2*Z2", "GF(9;x^2+1)*Z3"]:
        R = finring.make_ring(tag)
        R2 = finring.make_ring(R.tag)
        assert np.array_equal(R.add, R2.add)
        assert np.array_equal(R.mul, R2.mul)


def test_frobenius_is_automorphism():
    R = finring.make_ring("GF(9;x^2+1)")
    fr = finring.frobenius_table(R)
    for a in range(9):
        for b in range(9):
            assert fr[R.add[a, b]] == R.add[fr[a], fr[b]]
            assert fr[R.mul[a, b]] == R.mul[fr[a], fr[b]]
    assert sorted(fr.tolist()) == list(range(9))
    # squaring fixes exactly the prime field
    fixed = [a for a in range(9) if fr[a] == a]
    assert fixed == [0, 1, 2]


def test_product_automorphism_shift():
    R = finring.make_ring("GF(2)*GF(2)*GF(2)")
    # value in slot j moves to slot j+1 (mod 3)
    sigma = finring.product_automorphism(R, perm=(1, 2, 0))
    a = finring.element_from_components(R, (1, 0, 0))
    assert finring.component_indices(R, int(sigma[a])) == (0, 1, 0)
    # order 3
    s3 = sigma[sigma[sigma]]
    assert np.array_equal(s3, np.arange(8))


@given(st.integers(1, 40))
def test_zmod_laws_and_units(n):
    R = finring.zmod(n)
    import math
    U = finring.units(R)
    assert U.order == sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1) \
        if n > 1 else 1
    for u in U.elements:
        assert (u * U.inv(u)) % n == 1 % n


@given(st.sampled_from(["Z4", "Z6", "GF(4;x^2+x+1)", "Z2*Z3", "GF(2)*Z4"]))
def test_neg_table(tag):
    R = finring.make_ring(tag)
    for a in range(R.order):
        assert R.add[a, R.neg[a]] == R.zero
