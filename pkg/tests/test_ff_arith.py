import itertools
import pickle

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from expsums.ff_arith import (
    FieldError,
    build_field,
    embed,
    enumerate_field,
    frobenius,
    is_irreducible,
    norm_to_prime,
    primitive_element,
    relative_trace,
    trace_to_prime,
)

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 4), (3, 3)]


def elements(field):
    return st.integers(0, field.q - 1).map(field.from_index)


def test_prime_field_modulus():
    F5 = build_field(5)
    assert F5.q == 5 and F5.s == 1
    assert F5(7) == F5(2)


def test_f4_modulus():
    assert build_field(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_is_first_in_scan():
    assert build_field(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (5, 2), (7, 3), (11, 2)])
def test_modulus_matches_sympy_scan(p, s):
    """Independent oracle: first monic irreducible in the same order, tested by sympy."""
    t = sympy.symbols("t")
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=s - 1):
            low = (c0,) + rest
            poly = sympy.Poly(t**s + sum(c * t**i for i, c in enumerate(low)), t, modulus=p)
            if poly.is_irreducible:
                assert build_field(p, s).modulus == low + (1,)
                return
    pytest.fail("sympy found no irreducible polynomial")


@pytest.mark.parametrize("p,s", [(2, 4), (3, 4), (5, 3)])
def test_irreducibility_agrees_with_sympy(p, s):
    t = sympy.symbols("t")
    for low in itertools.islice(itertools.product(range(p), repeat=s), 60):
        poly = sympy.Poly(t**s + sum(c * t**i for i, c in enumerate(low)), t, modulus=p)
        assert is_irreducible(low + (1,), p) == poly.is_irreducible


def test_large_extension_builds_quickly():
    big = build_field(7, 12, size_bound=2**62)
    assert big.modulus[-1] == 1
    F49 = build_field(7, 2)
    r = embed(F49.gen, big)
    assert r * r == embed(F49.gen * F49.gen, big)


def test_size_bound_enforced():
    with pytest.raises(FieldError):
        build_field(2, 40)


@pytest.mark.parametrize("bad", [(4, 1), (1, 1), (5, 0)])
def test_invalid_parameters(bad):
    with pytest.raises(FieldError):
        build_field(*bad)


def test_trace_examples():
    F4 = build_field(2, 2)
    assert trace_to_prime(F4.gen) == 1
    assert trace_to_prime(F4.zero) == 0
    for p, s in [(3, 2), (5, 3), (2, 3)]:
        assert trace_to_prime(build_field(p, s).one) == s % p


def test_frobenius_examples():
    F4 = build_field(2, 2)
    assert frobenius(F4.gen) == F4.gen + 1
    F = build_field(3, 3)
    for c in range(3):
        assert frobenius(F(c)) == F(c)


def test_enumeration():
    assert [x.coeffs for x in enumerate_field(build_field(2))] == [(0,), (1,)]
    F4 = build_field(2, 2)
    assert len({x for x in enumerate_field(F4)}) == 4
    F9 = build_field(3, 2)
    xs = list(enumerate_field(F9))
    assert len(xs) == 9
    assert sum(xs, F9.zero) == F9.zero


def test_enumeration_chunks_partition():
    F = build_field(5, 2)
    parts = [list(enumerate_field(F, (i, 7))) for i in range(7)]
    assert [x for part in parts for x in part] == list(enumerate_field(F))


@pytest.mark.parametrize("p,s,m", [(2, 1, 6), (2, 2, 3), (3, 1, 4), (3, 2, 2), (5, 1, 3), (7, 1, 2), (2, 3, 2)])
def test_trace_transitivity_exhaustive(p, s, m):
    sub = build_field(p, s)
    big = build_field(p, s * m)
    for x in enumerate_field(big):
        rel = relative_trace(x, sub)
        # rel lies in the image of sub; find its preimage to take the trace there
        assert rel ** sub.q == rel
        pre = [y for y in enumerate_field(sub) if embed(y, big) == rel]
        assert len(pre) == 1
        assert trace_to_prime(x) == trace_to_prime(pre[0])


@pytest.mark.parametrize("p,s", SMALL_FIELDS)
def test_frobenius_bijection_fixing_prime_field(p, s):
    F = build_field(p, s)
    xs = list(enumerate_field(F))
    images = [frobenius(x) for x in xs]
    assert len(set(images)) == F.q
    fixed = [x for x, y in zip(xs, images) if x == y]
    assert sorted(x.coeffs for x in fixed) == sorted(F(c).coeffs for c in range(p))
    it = xs
    for _ in range(s):
        it = [frobenius(x) for x in it]
    assert it == xs


@pytest.mark.parametrize("p,s", [(2, 2), (3, 2), (5, 2), (2, 3)])
def test_frobenius_is_additive_and_multiplicative(p, s):
    F = build_field(p, s)
    xs = list(enumerate_field(F))
    for x, y in itertools.product(xs, repeat=2):
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(x * y) == frobenius(x) * frobenius(y)


@pytest.mark.parametrize("sub_s,big_s,p", [(2, 4, 2), (2, 4, 3), (1, 3, 5), (3, 6, 2)])
def test_embedding_homomorphism_exhaustive(sub_s, big_s, p):
    sub, big = build_field(p, sub_s), build_field(p, big_s)
    xs = list(enumerate_field(sub))
    images = {x: embed(x, big) for x in xs}
    assert len(set(images.values())) == len(xs)
    assert embed(sub.zero, big) == big.zero
    for c in range(p):
        assert embed(sub(c), big) == big(c)
    for x, y in itertools.product(xs, repeat=2):
        assert images[x + y] == images[x] + images[y]
        assert images[x * y] == images[x] * images[y]


F25, F625 = build_field(5, 2), build_field(5, 4)


@given(elements(F25), elements(F25))
def test_embedding_homomorphism_random(x, y):
    assert embed(x * y, F625) == embed(x, F625) * embed(y, F625)
    assert embed(x - y, F625) == embed(x, F625) - embed(y, F625)


F243 = build_field(3, 5)


@given(elements(F243), elements(F243), elements(F243))
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if not x.is_zero():
        assert x * x.inverse() == F243.one
        assert x ** (F243.q - 1) == F243.one


@given(elements(F243))
def test_norm_is_multiplicative_power(x):
    # Norm equals x^{(q-1)/(p-1)}, which lies in the prime field
    val = x ** ((F243.q - 1) // 2)
    assert val == F243(norm_to_prime(x))


def test_primitive_element_generates():
    F = build_field(3, 3)
    g = primitive_element(F)
    seen = set()
    x = F.one
    for _ in range(F.q - 1):
        seen.add(x)
        x = x * g
    assert len(seen) == F.q - 1


def test_tables_agree_with_element_arithmetic():
    F = build_field(7, 2)
    tb = F.tables
    xs = list(enumerate_field(F))
    import numpy as np

    logs = np.array([tb.log_of(x) for x in xs])
    for y in xs[:10]:
        ly = tb.log_of(y)
        prod = tb.lmul(logs, ly)
        add = tb.ladd(logs, ly)
        for i, x in enumerate(xs):
            assert (0 if prod[i] == tb.ZERO else tb.exp[prod[i]]) == (x * y).index
            assert (0 if add[i] == tb.ZERO else tb.exp[add[i]]) == (x + y).index
        assert all(tb.trace[x.index] == trace_to_prime(x) for x in xs)


def test_descriptor_pickles_to_same_field():
    F = build_field(3, 4)
    assert pickle.loads(pickle.dumps(F)) is F


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        build_field(5).one + build_field(5, 2).one
