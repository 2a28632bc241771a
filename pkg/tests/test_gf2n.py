import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import coprime_ks, naive_irreducible, naive_mul, naive_pow
from kasami_apn import gf2n
from kasami_apn.errors import DivisionByZero, InvalidField, NotCoprime, NotInvertibleExponent
from kasami_apn.gf2n import (
    exp_inv,
    frobenius,
    inv,
    make_field,
    mul,
    power,
    solve_frobenius_affine,
    trace,
    trace_by_definition,
)


# --- make_field -----------------------------------------------------------

@pytest.mark.parametrize("n", range(2, 11))
def test_default_poly_is_smallest_irreducible(n):
    expected = next(p for p in range((1 << n) | 1, 1 << (n + 1)) if naive_irreducible(p))
    assert make_field(n).reduction_poly == expected


def test_known_polys():
    assert make_field(2).reduction_poly == 0x7
    assert make_field(3).reduction_poly == 0xB


@pytest.mark.parametrize("bad", [0xF, 0x9, 0x7, 0x1B])
def test_override_rejected(bad):
    with pytest.raises(InvalidField):
        make_field(3, bad)


def test_override_accepted():
    f = make_field(3, 0xD)  # x^3 + x^2 + 1
    assert f.reduction_poly == 0xD
    assert mul(f, 0x4, 0x2) == 0xD ^ 0x8


@pytest.mark.parametrize("n", [0, 1, 29, 64])
def test_n_out_of_range(n):
    with pytest.raises(InvalidField):
        make_field(n)


@pytest.mark.parametrize("n", range(2, 13))
def test_rabin_matches_trial_division(n):
    for p in range((1 << n) | 1, 1 << (n + 1), 2):
        assert gf2n.is_irreducible(p) == naive_irreducible(p), hex(p)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 12, 16, 20, 24, 28])
def test_generator_is_primitive(n):
    f = make_field(n)
    N = f.group_order
    for p in gf2n.prime_factors(N):
        assert power(f, f.generator, N // p) != 1
    assert power(f, f.generator, N) == 1
    # smallest such element
    for g in range(2, f.generator):
        assert any(power(f, g, N // p) == 1 for p in gf2n.prime_factors(N))


# --- GF(8) examples -------------------------------------------------------

def test_gf8_examples(gf8):
    assert mul(gf8, 0x2, 0x4) == 0x3
    assert inv(gf8, 0x2) == 0x5
    assert power(gf8, 0x2, 7) == 1
    assert trace(gf8, 1) == 1
    assert trace(gf8, 0x2) == 0
    assert trace(gf8, 0x3) == 1
    for a in range(8):
        assert mul(gf8, a, 1) == a
        assert mul(gf8, a, 0) == 0
        assert frobenius(gf8, a, 3) == a


def test_pow_zero_conventions(gf8):
    assert power(gf8, 0, 0) == 1
    assert power(gf8, 0, 5) == 0
    with pytest.raises(DivisionByZero):
        power(gf8, 0, -1)
    with pytest.raises(DivisionByZero):
        inv(gf8, 0)


def test_exp_inv():
    assert exp_inv(make_field(3), 3) == 5
    assert exp_inv(make_field(3), 1) == 1
    with pytest.raises(NotInvertibleExponent):
        exp_inv(make_field(4), 3)


def test_solve_frobenius_affine_examples(gf8):
    assert solve_frobenius_affine(gf8, 1, 0) == {0, 1}
    assert solve_frobenius_affine(gf8, 1, 0x2) == {0x4, 0x5}
    assert solve_frobenius_affine(gf8, 1, 1) == set()
    with pytest.raises(NotCoprime):
        solve_frobenius_affine(make_field(4), 2, 1)


# --- against the schoolbook oracle ----------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_mul_matches_schoolbook_exhaustive(n):
    f = make_field(n)
    for a in range(f.size):
        for b in range(f.size):
            assert mul(f, a, b) == naive_mul(a, b, f.reduction_poly, n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pow_matches_repeated_mul(n):
    f = make_field(n)
    for a in range(1, f.size):
        for e in range(-3, 2 * f.size):
            ref = naive_pow(a, e % f.group_order, f.reduction_poly, n)
            assert power(f, a, e) == ref


@pytest.mark.parametrize("n", [8, 16, 20, 24, 28])
def test_scalar_and_vector_routes_agree(n):
    f = make_field(n)
    rng = np.random.default_rng(n)
    a = rng.integers(0, f.size, 2000)
    b = rng.integers(0, f.size, 2000)
    v = gf2n.vmul(f, a, b)
    c = gf2n.vmul_carryless(f, a, b)
    assert np.array_equal(v, c)
    for x, y, z in zip(a[:200].tolist(), b[:200].tolist(), v[:200].tolist()):
        assert mul(f, x, y) == z == naive_mul(x, y, f.reduction_poly, n)
    e = 12345
    assert gf2n.vpow(f, a[:50], e).tolist() == [power(f, x, e) for x in a[:50].tolist()]
    assert gf2n.vfrob(f, a[:50], 5).tolist() == [frobenius(f, x, 5) for x in a[:50].tolist()]
    assert gf2n.vtrace(f, a[:50]).tolist() == [trace_by_definition(f, x) for x in a[:50].tolist()]


# --- properties -----------------------------------------------------------

field_and_elems = st.sampled_from([3, 5, 8, 11, 16, 21, 24, 28]).flatmap(
    lambda n: st.tuples(
        st.just(make_field(n)),
        st.integers(0, (1 << n) - 1),
        st.integers(0, (1 << n) - 1),
        st.integers(0, (1 << n) - 1),
    )
)


@given(field_and_elems)
def test_field_axioms(t):
    f, a, b, c = t
    assert mul(f, a, b) == mul(f, b, a)
    assert mul(f, mul(f, a, b), c) == mul(f, a, mul(f, b, c))
    assert mul(f, a, b ^ c) == mul(f, a, b) ^ mul(f, a, c)
    if a:
        assert mul(f, a, inv(f, a)) == 1
        assert power(f, a, f.group_order) == 1
        assert power(f, a, -1) == inv(f, a)


@given(field_and_elems, st.integers(-40, 40))
def test_frobenius_is_additive_power(t, i):
    f, a, b, _ = t
    assert frobenius(f, a ^ b, i) == frobenius(f, a, i) ^ frobenius(f, b, i)
    if a:
        assert frobenius(f, a, i) == power(f, a, 1 << (i % f.n))


@given(field_and_elems)
def test_trace_linear_and_frobenius_invariant(t):
    f, a, b, _ = t
    assert trace(f, a ^ b) == trace(f, a) ^ trace(f, b)
    assert trace(f, mul(f, a, a)) == trace(f, a)
    assert trace(f, a) == trace_by_definition(f, a)


@given(st.integers(3, 28).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, (1 << n) - 2))))
def test_exp_inv_involution(t):
    n, e = t
    f = make_field(n)
    try:
        e2 = exp_inv(f, e)
    except NotInvertibleExponent:
        return
    assert (e * e2) % f.group_order == 1
    assert exp_inv(f, e2) == e % f.group_order


@pytest.mark.parametrize("n", range(2, 13))
def test_pow_order_and_trace_balance_exhaustive(n):
    f = make_field(n)
    X = gf2n.elements(f)
    assert np.all(gf2n.vpow(f, X[1:], f.group_order) == 1)
    tr = gf2n.vtrace(f, X)
    assert int((tr == 0).sum()) == 1 << (n - 1)


@pytest.mark.parametrize("n", range(3, 13))
def test_solve_frobenius_affine_exhaustive(n):
    f = make_field(n)
    X = gf2n.elements(f)
    for k in coprime_ks(n):
        image = gf2n.vfrob(f, X, k) ^ X
        pre = {}
        for u, w in enumerate(image.tolist()):
            pre.setdefault(w, set()).add(u)
        for w in range(f.size):
            assert solve_frobenius_affine(f, k, w) == pre.get(w, set())
