import math

from hypothesis import given, strategies as st

from ktor.ring import H, ONE, ZERO, Poly, add, clmul, h_valuation, mul

polys = st.integers(min_value=0, max_value=(1 << 12) - 1).map(Poly)


def P(*exps):
    return Poly.from_exponents(exps)


def test_add_examples():
    assert add(P(0, 1), P(1)) == P(0)
    assert add(P(), P(3)) == P(3)
    assert add(P(2, 5), P(2, 5)) == ZERO


def test_mul_examples():
    assert mul(P(2), P(3)) == P(5)
    assert mul(P(0, 1), P(0, 1)) == P(0, 2)
    assert mul(ONE, P(4, 7)) == P(4, 7)


def test_valuation():
    assert h_valuation(P(3, 7)) == 3
    assert h_valuation(ZERO) == math.inf
    assert h_valuation(H) == 1


def test_repeated_exponents_cancel():
    assert P(2, 2, 3) == P(3)


def test_str():
    assert str(ZERO) == "0"
    assert str(P(0, 2)) == "H^0+H^2"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == ZERO


@given(polys, polys)
def test_valuation_of_product(a, b):
    assert h_valuation(a * b) == h_valuation(a) + h_valuation(b)


@given(st.integers(0, 1 << 20), st.integers(0, 1 << 20))
def test_clmul_matches_schoolbook(a, b):
    ref = 0
    for i in range(b.bit_length()):
        if (b >> i) & 1:
            ref ^= a << i
    assert clmul(a, b) == ref
