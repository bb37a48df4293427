"""Dense univariate polynomials over a finite field (coefficient lists, low degree first)."""
from __future__ import annotations

import numpy as np

from .ff_arith import TABLE_LIMIT, FieldDescriptor, FieldElement, embed, enumerate_field


def trim(a: list) -> list:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def deg(a: list) -> int:
    return len(trim(a)) - 1


def sub(a, b, zero):
    n = max(len(a), len(b))
    a = a + [zero] * (n - len(a))
    b = b + [zero] * (n - len(b))
    return trim([x - y for x, y in zip(a, b)])


def mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a, b, zero):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [zero] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = a[k + i] - c * y
        a = trim(a)
    return trim(q), a


def monic(a):
    a = trim(a)
    inv = a[-1].inverse()
    return [x * inv for x in a]


def gcd(a, b, zero):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b, zero)[1]
    return monic(a) if a else a


def derivative(a):
    return trim([c * i for i, c in enumerate(a)][1:])


def pth_root(a, field: FieldDescriptor):
    """g with g^p = a, assuming a is a polynomial in x^p."""
    p = field.p
    inv_frob = field.q // p  # c -> c^(q/p) inverts c -> c^p
    return trim([a[i] ** inv_frob for i in range(0, len(a), p)])


def radical(a, field: FieldDescriptor):
    """Product of the distinct monic irreducible factors of a (over a perfect field)."""
    zero = field.zero
    a = trim(a)
    if len(a) <= 1:
        return [field.one]
    da = derivative(a)
    if not da:
        return radical(pth_root(a, field), field)
    g = gcd(a, da, zero)
    w = monic(divmod_(a, g, zero)[0])
    rg = radical(g, field)
    common = gcd(w, rg, zero)
    return monic(divmod_(mul(w, rg, zero), common, zero)[0])


def evaluate(a, x):
    acc = x.field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def powmod(base, e: int, mod, zero, one):
    result = [one]
    base = divmod_(base, mod, zero)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, zero), mod, zero)[1]
        e >>= 1
        if e:
            base = divmod_(mul(base, base, zero), mod, zero)[1]
    return result


def roots_in_exhaustive(a, target: FieldDescriptor) -> list[FieldElement]:
    """All roots of a lying in target, by evaluating at every element (test oracle)."""
    coeffs = [embed(c, target) for c in trim(a)]
    if not coeffs:
        raise ValueError("zero polynomial has every element as a root")
    if len(coeffs) == 1:
        return []
    if 64 < target.q <= TABLE_LIMIT:
        tb = target.tables
        acc = np.full(target.q, tb.ZERO, dtype=np.int64)
        for c in reversed(coeffs):
            acc = tb.ladd(tb.lmul(acc, tb.log), tb.log_of(c))
        return [target.from_index(int(i)) for i in np.nonzero(acc == tb.ZERO)[0]]
    return [x for x in enumerate_field(target) if evaluate(coeffs, x).is_zero()]


def _split_linear(g, field: FieldDescriptor) -> list[FieldElement]:
    """Roots of a monic squarefree g that splits into linear factors over field."""
    zero, one = field.zero, field.one
    g = monic(g)
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [-g[0]]
    p, Q = field.p, field.q
    for idx in range(1, Q):
        a = field.from_index(idx)
        if p == 2:
            w = [zero, a]
            acc = list(w)
            for _ in range(field.s - 1):
                w = divmod_(mul(w, w, zero), g, zero)[1]
                acc = sub(acc, [zero - c for c in w], zero)
            h = acc
        else:
            h = sub(powmod([a, one], (Q - 1) // 2, g, zero, one), [one], zero)
        d = gcd(g, h, zero) if h else []
        if d and 1 < len(d) < len(g):
            return _split_linear(d, field) + _split_linear(divmod_(g, d, zero)[0], field)
    raise ArithmeticError("failed to split polynomial")  # unreachable for squarefree split g


def roots_in(a, base: FieldDescriptor, target: FieldDescriptor) -> list[FieldElement]:
    """Roots in target of a squarefree polynomial with coefficients in base.

    Isolates the part of a splitting over target as gcd(a, x^Q - x), then
    splits it by Cantor-Zassenhaus with a deterministic choice of shifts.
    Roots are returned sorted by element index.
    """
    zero, one = base.zero, base.one
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial has every element as a root")
    if len(a) == 1:
        return []
    a = monic(a)
    xq = powmod([zero, one], target.q, a, zero, one)
    g = gcd(a, sub(xq, [zero, one], zero), zero) if sub(xq, [zero, one], zero) else a
    roots = _split_linear([embed(c, target) for c in g], target)
    return sorted(roots, key=lambda r: r.index)
