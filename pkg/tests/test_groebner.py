import random

import pytest
import sympy

from expsums.ff_arith import build_field
from expsums.groebner import (
    groebner_basis,
    ideal_dimension,
    is_unit_ideal,
    is_zero_dimensional,
    minimal_polynomial,
    normal_form,
    quotient_dimension,
    standard_monomials,
)
from expsums.mpoly import MultiPoly, parse

F7, F11 = build_field(7), build_field(11)
X = sympy.symbols("x1:4")


def to_sympy(f: MultiPoly):
    out = 0
    for m, c in f.terms.items():
        term = int(c.coeffs[0])
        for v, k in zip(X, m):
            term *= v**k
        out += term
    return out


def sympy_reduced(polys, n, p):
    G = sympy.groebner([to_sympy(f) for f in polys], *X[:n], modulus=p, order="grevlex")
    return {sympy.Poly(g, *X[:n], modulus=p).as_expr() for g in G.exprs}


def ours(polys, n, p):
    G = groebner_basis(polys)
    return {sympy.Poly(to_sympy(g), *X[:n], modulus=p).as_expr() for g in G}


CASES = [
    (["x1^2 + x2^2 - 1", "x1 - x2"], 2),
    (["x1*x2 - 1", "x1^2 + x2"], 2),
    (["x1^3 - x2", "x2^2 - x1*x3", "x3 - x1*x2"], 3),
    (["3*x1^2", "2*x2"], 2),
    (["x1^2*x2 + x2^3", "x1^3 + x1*x2^2 + 1"], 2),
]


@pytest.mark.parametrize("texts,n", CASES)
def test_reduced_basis_matches_sympy(texts, n):
    polys = [parse(t, n, F7) for t in texts]
    assert ours(polys, n, 7) == sympy_reduced(polys, n, 7)


def test_random_ideals_match_sympy():
    rng = random.Random(3)
    for _ in range(12):
        n = rng.choice([2, 3])
        polys = []
        for _ in range(rng.choice([2, 3])):
            terms = {tuple(rng.randrange(3) for _ in range(n)): F11(rng.randrange(1, 11)) for _ in range(3)}
            polys.append(MultiPoly(F11, n, terms))
        if all(f.is_zero() for f in polys):
            continue
        assert ours(polys, n, 11) == sympy_reduced(polys, n, 11)


def test_standard_monomials_examples():
    assert standard_monomials(groebner_basis([parse("x2", 2, F7), parse("x1", 2, F7)]), 2) == [(0, 0)]
    G = groebner_basis([parse("3*x1^2", 2, F7), parse("2*x2", 2, F7)])
    assert sorted(standard_monomials(G, 2)) == [(0, 0), (1, 0)]
    G = groebner_basis([parse("x1^2", 2, F7), parse("x2^2", 2, F7)])
    assert quotient_dimension(G, 2) == 4


def test_dimension_and_unit_ideal():
    G = groebner_basis([parse("x1*x3", 3, F7), parse("x1^2", 3, F7)])
    assert not is_zero_dimensional(G, 3)
    assert ideal_dimension(G, 3) == 2
    assert is_unit_ideal(groebner_basis([parse("x1", 1, F7), parse("x1 + 1", 1, F7)]))


def test_normal_form_is_zero_on_ideal_members():
    polys = [parse("x1^2 + x2^2 - 1", 2, F7), parse("x1 - x2", 2, F7)]
    G = groebner_basis(polys)
    h = polys[0] * parse("x1 + 3", 2, F7) + polys[1] * parse("x2^4", 2, F7)
    assert normal_form(h, G).is_zero()


def test_minimal_polynomial_annihilates():
    polys = [parse("x1^2 + x2^2 - 1", 2, F7), parse("x1 - 2*x2", 2, F7)]
    G = groebner_basis(polys)
    mp = minimal_polynomial(G, 1, 2)
    u = MultiPoly.zero_poly(F7, 2)
    for k, c in enumerate(mp):
        u = u + MultiPoly(F7, 2, {(0, k): c})
    assert normal_form(u, G).is_zero()
    assert len(mp) - 1 == 2
