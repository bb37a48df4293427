import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsums.ff_arith import build_field, enumerate_field
from expsums.mpoly import QQ, MultiPoly, PolySyntaxError, grevlex_key, parse

F5, F7, F25 = build_field(5), build_field(7), build_field(5, 2)


def polys(field, nvars, max_deg=3, max_terms=5):
    mono = st.tuples(*[st.integers(0, max_deg)] * nvars)
    coeff = st.integers(0, field.q - 1).map(field.from_index)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda t: MultiPoly(field, nvars, t))


def points(field, nvars):
    return st.lists(st.integers(0, field.q - 1).map(field.from_index), min_size=nvars, max_size=nvars)


def test_parse_examples():
    f = parse("x1^3 + x2^3 + x1*x2", 2, F5)
    assert len(f.terms) == 3 and f.degree() == 3
    assert parse("0", 2, F5).is_zero()
    g = parse("x1^2*x2 + x2^2", 2, F5)
    assert len(g.terms) == 2
    assert parse("6*x1", 1, F5) == parse("x1", 1, F5)


def test_parse_accepts_parentheses_and_double_star():
    assert parse("(x1 + x2)**2", 2, F5) == parse("x1^2 + 2*x1*x2 + x2^2", 2, F5)
    assert parse("-x1 - -x2", 2, F5) == parse("4*x1 + x2", 2, F5)


@pytest.mark.parametrize("text,pos", [("x1 +", 4), ("x3", 0), ("x1 $ x2", 3), ("x1^x2", 3), ("(x1", 3), ("x1 x2", 3)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(PolySyntaxError) as exc:
        parse(text, 2, F5)
    assert exc.value.pos == pos


def test_exponent_overflow_is_an_error():
    with pytest.raises((OverflowError, PolySyntaxError)):
        parse("x1^70000", 1, F5)


def test_homogeneous_components():
    f = parse("x1^3 + x2^3 + x1*x2 + 1", 2, F5)
    comps = f.homogeneous_components()
    assert comps == {3: parse("x1^3 + x2^3", 2, F5), 2: parse("x1*x2", 2, F5), 0: parse("1", 2, F5)}
    assert parse("x1^2*x2", 2, F5).homogeneous_components() == {3: parse("x1^2*x2", 2, F5)}
    g = parse("x1^2*x2 + x2^2", 2, F5)
    assert g.homogeneous_components() == {3: parse("x1^2*x2", 2, F5), 2: parse("x2^2", 2, F5)}


def test_partials():
    assert parse("x1^3 + x2^2", 2, F7).partial(0) == parse("3*x1^2", 2, F7)
    assert parse("x1^5", 1, F5).partial(0).is_zero()
    assert parse("x1^2*x2", 2, F7).partial(1) == parse("x1^2", 2, F7)


def test_linear_change_examples():
    f = parse("x1^2*x2", 2, F7)
    assert f.linear_change([[1, 0], [0, 1]]) == f
    assert f.linear_change([[0, 1], [1, 0]]) == parse("x2^2*x1", 2, F7)
    with pytest.raises(ValueError):
        f.linear_change([[1, 1], [1, 1]])


def test_dehomogenize_translate_examples():
    u2 = parse("x1^2*x2", 2, F7).dehomogenize_translate([F7(0), F7(1)])
    assert u2 == parse("x1^2", 1, F7)
    uv = parse("x1*x2", 3, F7).dehomogenize_translate([F7(0), F7(0), F7(1)])
    assert uv == parse("x1*x2", 2, F7)
    off = parse("x1^2*x2", 2, F7).dehomogenize_translate([F7(1), F7(1)])
    assert not off.constant_term().is_zero()


def test_evaluate_examples():
    assert parse("0", 2, F5).evaluate([F5(1), F5(2)]) == F5.zero
    assert parse("x1^2 + x2^2", 2, F5).evaluate([F5(1), F5(2)]) == F5.zero


def test_evaluate_in_extension():
    f = parse("x1^2 + 1", 1, F5)
    assert any(f.evaluate([x]).is_zero() for x in enumerate_field(F5))
    F49 = build_field(7, 2)
    g = parse("x1^2 + 1", 1, F7)
    roots = [x for x in enumerate_field(F49) if g.evaluate([x]).is_zero()]
    assert len(roots) == 2


@given(polys(F25, 3), points(F25, 3))
def test_horner_matches_naive(f, pt):
    assert f.evaluate(pt) == f.evaluate_naive(pt)


@given(polys(F7, 2), polys(F7, 2), polys(F7, 2))
def test_ring_axioms_finite_field(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b - b == a


def rational_polys(nvars):
    mono = st.tuples(*[st.integers(0, 2)] * nvars)
    coeff = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
    return st.dictionaries(mono, coeff, max_size=4).map(lambda t: MultiPoly(QQ, nvars, t))


@given(rational_polys(2), rational_polys(2), rational_polys(2))
def test_ring_axioms_rationals(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c


def homogeneous(field, nvars, d):
    monos = [m for m in itertools.product(range(d + 1), repeat=nvars) if sum(m) == d]
    return st.lists(st.integers(0, field.q - 1), min_size=len(monos), max_size=len(monos)).map(
        lambda cs: MultiPoly(field, nvars, {m: field.from_index(c) for m, c in zip(monos, cs)})
    )


@given(homogeneous(F7, 3, 4))
def test_euler_relation(F):
    lhs = MultiPoly.zero_poly(F7, 3)
    for j in range(3):
        lhs = lhs + MultiPoly.var(F7, 3, j) * F.partial(j)
    assert lhs == F.scale(F7(4))


@given(polys(F5, 3))
def test_components_reassemble(f):
    total = MultiPoly.zero_poly(F5, 3)
    for comp in f.homogeneous_components().values():
        assert comp.is_homogeneous()
        total = total + comp
    assert total == f


@given(polys(F7, 2))
def test_linear_change_inverse_roundtrip(f):
    M = [[1, 2], [3, 4]]
    inv = [[F7(4) / F7(-2), F7(-2) / F7(-2)], [F7(-3) / F7(-2), F7(1) / F7(-2)]]
    # f o M o M^{-1} = f
    assert f.linear_change(M).linear_change(inv) == f


def test_grevlex_is_strict_total_order():
    monos = list(itertools.product(range(3), repeat=3))
    keys = [grevlex_key(m) for m in monos]
    assert len(set(keys)) == len(monos)
    assert grevlex_key((1, 0, 0)) > grevlex_key((0, 1, 0)) > grevlex_key((0, 0, 1))
    # x1*x3 > x2^2 is lex, grevlex says x2^2 > x1*x3
    assert grevlex_key((0, 2, 0)) > grevlex_key((1, 0, 1))


def test_to_string_roundtrip():
    rng = random.Random(1)
    for _ in range(30):
        terms = {tuple(rng.randrange(4) for _ in range(3)): F7(rng.randrange(7)) for _ in range(4)}
        f = MultiPoly(F7, 3, terms)
        assert parse(f.to_string(), 3, F7) == f


def test_rational_coefficients():
    f = MultiPoly(QQ, 1, {(1,): Fraction(1, 2)})
    assert (f * 2).coeff((1,)) == 1
