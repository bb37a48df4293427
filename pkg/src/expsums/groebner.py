"""Buchberger's algorithm in graded reverse lexicographic order.

Works over any exact field domain used by :mod:`expsums.mpoly`.  Besides the
reduced basis this module answers the quotient questions the singularity
code needs: finiteness, standard monomials, and minimal polynomials of
coordinate functions on a zero-dimensional quotient.
"""
from __future__ import annotations

from itertools import combinations

from .mpoly import MultiPoly, grevlex_key, monomial_divides


class NotZeroDimensional(ArithmeticError):
    """The quotient ring is infinite dimensional."""


def _lm(f: dict):
    return max(f, key=grevlex_key)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_mul(f: dict, c, shift, g: dict, zero):
    """f - c * x^shift * g, in place."""
    for m, v in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        w = f.get(mm, zero) - c * v
        if w == zero:
            f.pop(mm, None)
        else:
            f[mm] = w


def _reduce(f: dict, basis: list[tuple[tuple, dict]], zero) -> dict:
    """Full reduction of f by monic basis elements (lm, poly)."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = _lm(f)
        c = f[m]
        for gm, g in basis:
            if monomial_divides(gm, m):
                shift = tuple(x - y for x, y in zip(m, gm))
                _sub_mul(f, c, shift, g, zero)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(f: dict, one):
    m = _lm(f)
    inv = one / f[m]
    return {k: v * inv for k, v in f.items()}


def groebner_basis(polys: list[MultiPoly]) -> list[MultiPoly]:
    """Reduced, monic Groebner basis (grevlex) of the ideal generated by polys."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    dom, n = polys[0].domain, polys[0].nvars
    zero, one = dom.zero, dom.one

    G: list[tuple[tuple, dict]] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: dict):
        h = _monic(h, one)
        hm = _lm(h)
        G.append((hm, h))
        k = len(G) - 1
        for i in range(k):
            pairs.add((i, k))

    for p in sorted(polys, key=lambda p: grevlex_key(p.leading_monomial())):
        r = _reduce(p.terms, G, zero)
        if r:
            add(r)

    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(G[ij[0]][0], G[ij[1]][0])), ij))
        pairs.discard((i, j))
        mi, fi = G[i]
        mj, fj = G[j]
        L = _lcm(mi, mj)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue
        # chain criterion
        if any(
            k not in (i, j)
            and monomial_divides(G[k][0], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        s: dict = {}
        _sub_mul(s, -one, tuple(a - b for a, b in zip(L, mi)), fi, zero)
        _sub_mul(s, one, tuple(a - b for a, b in zip(L, mj)), fj, zero)
        r = _reduce(s, G, zero)
        if r:
            if all(v == 0 for v in _lm(r)):
                return [MultiPoly.constant(dom, n, one)]
            add(r)

    # minimal then reduced
    lms = [g[0] for g in G]
    keep = []
    for idx, (m, g) in enumerate(G):
        if any(
            monomial_divides(lms[o], m) and (lms[o] != m or o < idx)
            for o in range(len(G))
            if o != idx
        ):
            continue
        keep.append((m, g))
    reduced = []
    for idx, (m, g) in enumerate(keep):
        others = [h for k, h in enumerate(keep) if k != idx]
        tail = {k: v for k, v in g.items() if k != m}
        r = _reduce(tail, others, zero)
        r[m] = one
        reduced.append((m, r))
    reduced.sort(key=lambda mg: grevlex_key(mg[0]))
    return [MultiPoly(dom, n, g) for _, g in reduced]


def normal_form(f: MultiPoly, G: list[MultiPoly]) -> MultiPoly:
    basis = [(g.leading_monomial(), g.monic().terms) for g in G]
    return MultiPoly(f.domain, f.nvars, _reduce(f.terms, basis, f.domain.zero))


def is_unit_ideal(G: list[MultiPoly]) -> bool:
    return any(g.degree() == 0 for g in G)


def pure_power_bounds(G: list[MultiPoly], nvars: int) -> list[int | None]:
    """For each variable, the smallest N with x_j^N a leading monomial (None if absent)."""
    out: list[int | None] = [None] * nvars
    for g in G:
        m = g.leading_monomial()
        nz = [j for j, e in enumerate(m) if e]
        if len(nz) == 1:
            j = nz[0]
            if out[j] is None or m[j] < out[j]:
                out[j] = m[j]
    return out


def is_zero_dimensional(G: list[MultiPoly], nvars: int) -> bool:
    if is_unit_ideal(G):
        return True
    return all(b is not None for b in pure_power_bounds(G, nvars))


def standard_monomials(G: list[MultiPoly], nvars: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """Monomials outside the leading-term ideal, in increasing grevlex order.

    Raises NotZeroDimensional if the set is infinite, or if some pure power
    x_j^N needed to bound it has N > limit.
    """
    if is_unit_ideal(G):
        return []
    bounds = pure_power_bounds(G, nvars)
    for j, b in enumerate(bounds):
        if b is None or (limit is not None and b > limit):
            raise NotZeroDimensional(f"no leading term x{j + 1}^N" + ("" if b is None else f" with N <= {limit}"))
    lms = [g.leading_monomial() for g in G]
    out = []

    def rec(prefix: list[int], var: int):
        if var == nvars:
            out.append(tuple(prefix))
            return
        for e in range(bounds[var]):
            cand = prefix + [e] + [0] * (nvars - var - 1)
            if any(monomial_divides(lm, cand) for lm in lms):
                break
            rec(prefix + [e], var + 1)

    rec([], 0)
    # rec prunes with zero-padded tails; filter exact membership
    out = [m for m in out if not any(monomial_divides(lm, m) for lm in lms)]
    return sorted(out, key=grevlex_key)


def quotient_dimension(G: list[MultiPoly], nvars: int, limit: int | None = None) -> int:
    return len(standard_monomials(G, nvars, limit))


def minimal_polynomial(G: list[MultiPoly], var: int, nvars: int) -> list:
    """Monic minimal polynomial of x_var on k[x]/(G), coefficients low degree first."""
    dom = G[0].domain
    std = standard_monomials(G, nvars)
    index = {m: i for i, m in enumerate(std)}
    dim = len(std)
    x = MultiPoly.var(dom, nvars, var)
    power = MultiPoly.constant(dom, nvars, dom.one)
    # rows: reduced echelon vectors with a record of which powers combine into them
    pivots: list[tuple[int, list, list]] = []
    for k in range(dim + 1):
        nf = normal_form(power, G)
        vec = [dom.zero] * dim
        for m, c in nf.terms.items():
            vec[index[m]] = c
        combo = [dom.zero] * (k + 1)
        combo[k] = dom.one
        for piv, pvec, pcombo in pivots:
            c = vec[piv]
            if c != dom.zero:
                vec = [a - c * b for a, b in zip(vec, pvec)]
                combo = [a - c * (pcombo[i] if i < len(pcombo) else dom.zero) for i, a in enumerate(combo)]
        nz = next((i for i, v in enumerate(vec) if v != dom.zero), None)
        if nz is None:
            lead = combo[-1]
            return [c / lead for c in combo]
        inv = dom.one / vec[nz]
        pivots.append((nz, [v * inv for v in vec], [c * inv for c in combo]))
        power = normal_form(power * x, G)
    raise ArithmeticError("no linear dependency found")  # impossible for finite dimension


def ideal_dimension(G: list[MultiPoly], nvars: int) -> int:
    """Krull dimension of k[x]/(G) from the leading-term ideal (max independent set)."""
    if is_unit_ideal(G):
        return -1
    lms = [g.leading_monomial() for g in G]
    best = 0
    for size in range(nvars, 0, -1):
        for S in combinations(range(nvars), size):
            if not any(all(lm[j] == 0 for j in range(nvars) if j not in S) for lm in lms):
                return size
    return best
