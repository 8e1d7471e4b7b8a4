import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from genorbit.rings import (
    InfiniteRingError,
    Integers,
    PolyFp,
    PrincipalIdeal,
    Product,
    Residue,
    RingElement,
    RingError,
    enumerate_elements,
    exact_div,
    gcd_bezout,
    invert_unit,
    is_unit,
    join_components,
    ring_from_json,
    split_components,
)

Z = Integers()
RINGS = [Z, Residue(8), Residue(12), Residue(2), PolyFp(2), PolyFp(5), Product((Residue(4), Residue(9))),
         Product((Z, PolyFp(3)))]


def payloads(R):
    if isinstance(R, Integers):
        return st.integers(-10**6, 10**6)
    if isinstance(R, Residue):
        return st.integers(0, R.n - 1)
    if isinstance(R, PolyFp):
        return st.lists(st.integers(0, R.p - 1), max_size=5).map(R.canonical)
    return st.tuples(*(payloads(f) for f in R.factors))


def ring_and(k):
    return st.sampled_from(RINGS).flatmap(lambda R: st.tuples(st.just(R), *([payloads(R)] * k)))


# -- examples --------------------------------------------------------------


def test_gcd_bezout_integer_example():
    g, u, v = gcd_bezout(Z(12), Z(8))
    assert g == Z(4)
    assert u * 12 + v * 8 == g


def test_gcd_bezout_zero():
    g, u, v = gcd_bezout(Z(0), Z(0))
    assert (g, u, v) == (Z(0), Z(0), Z(0))


def test_gcd_bezout_residue_example():
    R = Residue(8)
    g, u, v = gcd_bezout(R(6), R(4))
    assert g == R(2)
    assert u * 6 + v * 4 == R(2)
    # exhaustive search confirms that 2 is reachable
    assert any((a * 6 + b * 4) % 8 == 2 for a in range(8) for b in range(8))


def test_units():
    assert is_unit(Z(1)) and not is_unit(Z(2))
    R = Residue(8)
    assert is_unit(R(3)) and invert_unit(R(3)) == R(3)
    assert sorted(x.payload for x in enumerate_elements(R) if is_unit(x)) == [1, 3, 5, 7]
    with pytest.raises(RingError):
        invert_unit(Z(2))


def test_exact_div_examples():
    assert exact_div(Z(8), Z(2)) == Z(4)
    R = Residue(8)
    assert exact_div(R(4), R(2)) == R(2)
    assert {q for q in range(8) if q * 2 % 8 == 4} == {2, 6}
    assert exact_div(Z(0), Z(0)) == Z(0)
    with pytest.raises(RingError):
        exact_div(Z(3), Z(2))


def test_split_join_examples():
    R = Product((Residue(4), Residue(9)))
    a = R((3, 2))
    parts = split_components(a)
    assert [p.payload for p in parts] == [3, 2]
    assert join_components(parts) == a
    assert [p.payload for p in split_components(R(1))] == [1, 1]
    with pytest.raises(RingError):
        split_components(Z(3))


def test_enumeration_counts():
    assert len(list(enumerate_elements(Residue(4)))) == 4
    assert len(list(enumerate_elements(Product((Residue(2), Residue(3)))))) == 6
    assert len(list(enumerate_elements(Product((Residue(4), Residue(9)))))) == 36
    with pytest.raises(InfiniteRingError):
        list(enumerate_elements(Z))


def test_invariants_of_handles():
    with pytest.raises(RingError):
        Residue(1)
    with pytest.raises(RingError):
        PolyFp(4)
    with pytest.raises(RingError):
        Product(())
    with pytest.raises(RingError):
        Product((Product((Residue(2),)),))
    assert Residue(6).is_finite() and not Z.is_finite() and not PolyFp(3).is_finite()
    assert Product((Residue(2), Residue(3))).is_finite()
    assert not Product((Residue(2), Z)).is_finite()


def test_owner_mismatch():
    with pytest.raises(RingError):
        gcd_bezout(Z(2), Residue(4)(2))
    with pytest.raises(RingError):
        Z(2) + Residue(4)(1)


def test_product_gcd_requires_split():
    R = Product((Residue(4), Residue(9)))
    with pytest.raises(RingError):
        gcd_bezout(R((1, 1)), R((2, 3)))


def test_principal_ideals():
    R = Residue(12)
    assert PrincipalIdeal.of(R, 8) == PrincipalIdeal.of(R, 4)
    assert PrincipalIdeal.of(R, 5).is_whole_ring()
    assert PrincipalIdeal.of(R, 0).is_zero()
    P = PolyFp(5)
    assert PrincipalIdeal.of(P, (2, 3)).generator == P.canonical([4, 1])
    assert PrincipalIdeal.of(Z, -6).generator == 6


def test_json_roundtrip():
    for R in RINGS:
        assert ring_from_json(R.to_json()) == R
    P = PolyFp(5)
    assert P.element_to_json(P.canonical([1, 0, 3])) == [1, 0, 3]
    assert Z.element_to_json(-7) == "-7"
    R = Product((Residue(4), PolyFp(3)))
    x = (3, (1, 2))
    assert R.element_from_json(R.element_to_json(x)) == x


def test_units_lists():
    assert Z.units() == [1, -1]
    assert PolyFp(5).units() == [(1,), (2,), (3,), (4,)]
    assert Residue(9).units() == [1, 2, 4, 5, 7, 8]
    assert len(Product((Residue(4), Residue(9))).units()) == 12


def test_residues_modulo():
    P = PolyFp(2)
    res = list(P.residues(P.canonical([1, 1, 1])))
    assert len(res) == 4 and len(set(res)) == 4
    assert list(Residue(12).residues(8)) == [0, 1, 2, 3]
    with pytest.raises(InfiniteRingError):
        list(Z.residues(0))


# -- properties -------------------------------------------------------------


@settings(max_examples=300)
@given(ring_and(3))
def test_ring_axioms(data):
    R, a, b, c = data
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero()
    assert R.mul(a, R.one()) == a


@settings(max_examples=300)
@given(ring_and(2))
def test_bezout_postcondition(data):
    R, a, b = data
    if R.is_product:
        return
    g, u, v = R.gcdex(a, b)
    assert R.add(R.mul(u, a), R.mul(v, b)) == g
    assert R.divides(g, a) and R.divides(g, b)
    assert R.canonical_associate(g)[0] == g
    gm, s, t, x, y = R.gcdex_matrix(a, b)
    assert R.add(R.mul(s, a), R.mul(t, b)) == gm
    assert R.add(R.mul(x, a), R.mul(y, b)) == R.zero()
    assert R.sub(R.mul(s, y), R.mul(t, x)) == R.one()


@settings(max_examples=300)
@given(ring_and(2))
def test_exact_div_and_associates(data):
    R, a, b = data
    c, u = R.canonical_associate(a)
    assert R.is_unit(u) and R.mul(u, c) == a
    assert R.canonical_associate(c)[0] == c
    ab = R.mul(a, b)
    q = R.exact_div(ab, b)
    assert R.mul(q, b) == ab


@settings(max_examples=200)
@given(ring_and(2))
def test_canonical_idempotent(data):
    R, a, _ = data
    assert R.canonical(a) == a
    assert R.element_from_json(R.element_to_json(a)) == a


@settings(max_examples=200)
@given(st.tuples(payloads(Product((Residue(4), Residue(9)))), payloads(Product((Residue(4), Residue(9))))))
def test_product_is_componentwise(pair):
    R = Product((Residue(4), Residue(9)))
    a, b = pair
    A, B = R(a), R(b)
    for op in ("add", "mul", "sub"):
        joined = getattr(R, op)(a, b)
        parts = [getattr(f, op)(x, y) for f, x, y in zip(R.factors, a, b)]
        assert list(joined) == parts
    assert [p.payload for p in split_components(A * B)] == [
        x.payload * y.payload % f.n for x, y, f in zip(split_components(A), split_components(B), R.factors)
    ]


def test_residue_exact_div_smallest():
    R = Residue(12)
    for a, b in itertools.product(range(12), repeat=2):
        sols = [q for q in range(12) if q * b % 12 == a]
        if sols:
            assert R.exact_div(a, b) == min(sols)
        else:
            with pytest.raises(RingError):
                R.exact_div(a, b)


def test_residue_canonical_divisors():
    R = Residue(12)
    for a in range(12):
        c, u = R.canonical_associate(a)
        assert c == math.gcd(a, 12) % 12
        assert R.mul(u, c) == a and R.is_unit(u)


def test_ring_element_wrapper():
    R = Residue(8)
    x = R(5)
    assert isinstance(x, RingElement)
    assert x * 5 == R(1)
    assert 3 - x == R(6)
    assert repr(R(3)).startswith("3")
