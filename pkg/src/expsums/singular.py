"""Singular points of projective hypersurfaces and their local germs.

The singular locus of a form F of degree d prime to p is the common zero
set of its partials (Euler's relation makes F itself redundant).  Points are
found exactly: on each affine chart x_0 = ... = x_{i-1} = 0, x_i = 1 the
Jacobian ideal gets a Groebner basis, each coordinate's minimal polynomial
is solved over F_{q^e} for increasing e, and the number of geometric points
(the length of the radical quotient) says when the search is complete.

Germs are analysed through their Jacobian algebras: exact local Milnor
numbers, weight detection over the rationals, and a quasi-homogeneous
normal form test for germs that are weighted homogeneous only after a
change of coordinates (u^k times a unit, an ordinary multiple point).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product

import numpy as np

from . import _upoly
from .ff_arith import FieldDescriptor, FieldElement, build_field
from .groebner import (
    NotZeroDimensional,
    groebner_basis,
    ideal_dimension,
    is_unit_ideal,
    is_zero_dimensional,
    minimal_polynomial,
    quotient_dimension,
    standard_monomials,
)
from .mpoly import MultiPoly

DEFAULT_E_MAX = 6
WEIGHT_SEARCH_LIMIT = 256


class NonIsolatedSingularities(ArithmeticError):
    """The singular locus (or a germ's critical locus) has positive dimension."""


class ExtensionBoundExceeded(ArithmeticError):
    """Some singular point is defined only over F_{q^e} with e > e_max."""

    def __init__(self, e_max: int, found: int, expected: int):
        super().__init__(f"e_max exceeded: found {found} of {expected} geometric singular points with e <= {e_max}")
        self.e_max = e_max
        self.found = found
        self.expected = expected


# -- points -------------------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivePoint:
    """A geometric point of P^{n-1}, scaled so its first nonzero coordinate is 1.

    ``coords`` live in F_{q^e} where e is the exact size of the point's
    Frobenius orbit over the base field F_q.
    """

    coords: tuple[FieldElement, ...]
    e: int

    @property
    def field(self) -> FieldDescriptor:
        return self.coords[0].field

    @property
    def chart(self) -> int:
        return next(i for i, c in enumerate(self.coords) if not c.is_zero())

    def sort_key(self):
        return (self.e, self.chart, tuple(c.index for c in self.coords))

    def label(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> dict:
        fd = self.field
        return {
            "e": self.e,
            "field": [fd.p, fd.s],
            "coords": [list(c.coeffs) for c in self.coords],
            "label": self.label(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProjectivePoint":
        fd = build_field(*data["field"])
        return cls(tuple(fd.element(c) for c in data["coords"]), int(data["e"]))


def _orbit_size(coords, q: int) -> int:
    cur = tuple(coords)
    k = 1
    while True:
        cur = tuple(c**q for c in cur)
        if cur == tuple(coords):
            return k
        k += 1


def _check_form(F: MultiPoly) -> FieldDescriptor:
    dom = F.domain
    if not isinstance(dom, FieldDescriptor):
        raise TypeError("singular point search needs a finite-field polynomial")
    if F.is_zero():
        raise ValueError("the zero form defines all of projective space")
    if not F.is_homogeneous():
        raise ValueError("expected a homogeneous form")
    d = int(F.degree())
    if math.gcd(dom.p, d) != 1:
        raise ValueError(f"degree {d} is divisible by the characteristic {dom.p}; Euler's relation does not apply")
    return dom


def chart_ideal(F: MultiPoly, i: int) -> list[MultiPoly]:
    """Partials of F on the chart x_0..x_{i-1} = 0, x_i = 1, in the n-1-i free coordinates."""
    dom = F.domain
    fixed = {j: dom.zero for j in range(i)}
    fixed[i] = dom.one
    return [g.substitute(fixed) for g in F.gradient()]


def _univariate_in(coeffs, var: int, nvars: int, dom) -> MultiPoly:
    terms = {}
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            terms[tuple(k if j == var else 0 for j in range(nvars))] = c
    return MultiPoly(dom, nvars, terms)


def geometric_point_count(G: list[MultiPoly], nvars: int) -> int:
    """Number of distinct geometric zeros of a zero-dimensional ideal.

    Adjoining the squarefree part of every coordinate's minimal polynomial
    produces the radical (the field is perfect), whose quotient length is
    the point count.
    """
    if is_unit_ideal(G):
        return 0
    if nvars == 0:
        return 1
    base = G[0].domain
    extra = []
    for j in range(nvars):
        h = minimal_polynomial(G, j, nvars)
        extra.append(_univariate_in(_upoly.radical(h, base), j, nvars, base))
    return quotient_dimension(groebner_basis(G + extra), nvars)


def _solve_chart(G: list[MultiPoly], nvars: int, base: FieldDescriptor, e_max: int):
    """Yield (e, free coordinates) for every geometric zero of a zero-dimensional basis."""
    if nvars == 0:
        return [(1, ())]
    total = geometric_point_count(G, nvars)
    rads = [_upoly.radical(minimal_polynomial(G, j, nvars), base) for j in range(nvars)]
    found: list[tuple[int, tuple]] = []
    e = 0
    while len(found) < total:
        e += 1
        if e > e_max:
            raise ExtensionBoundExceeded(e_max, len(found), total)
        big = build_field(base.p, base.s * e)
        choices = [_upoly.roots_in(r, base, big) for r in rads]
        if any(not c for c in choices):
            continue
        Gbig = [g.change_field(big) for g in G]
        for cand in product(*choices):
            if all(g.evaluate(cand).is_zero() for g in Gbig) and _orbit_size(cand, base.q) == e:
                found.append((e, cand))
    return found


def singular_points(F: MultiPoly, e_max: int = DEFAULT_E_MAX) -> list[ProjectivePoint]:
    """All geometric singular points of {F = 0} in P^{n-1}.

    A closed point of degree e over F_q contributes its e conjugates, each
    with coordinates in F_{q^e}.  Raises NonIsolatedSingularities when some
    chart's Jacobian ideal has positive dimension and ExtensionBoundExceeded
    when a point needs e > e_max.
    """
    base = _check_form(F)
    n = F.nvars
    points: list[ProjectivePoint] = []
    for i in range(n):
        k = n - 1 - i
        gens = chart_ideal(F, i)
        G = groebner_basis(gens)
        if is_unit_ideal(G):
            continue
        if not is_zero_dimensional(G, k):
            raise NonIsolatedSingularities(f"singular locus has positive dimension on chart x{i + 1} = 1")
        for e, free in _solve_chart(G, k, base, e_max):
            big = build_field(base.p, base.s * e)
            coords = [big.zero] * i + [big.one] + list(free)
            points.append(ProjectivePoint(tuple(coords), e))
    return sorted(points, key=ProjectivePoint.sort_key)


def singular_locus_dimension(F: MultiPoly) -> int:
    """Krull dimension of the projective Jacobian scheme (-1 when smooth)."""
    _check_form(F)
    n = F.nvars
    best = -1
    for i in range(n):
        G = groebner_basis(chart_ideal(F, i))
        best = max(best, ideal_dimension(G, n - 1 - i))
    return best


# -- brute force -------------------------------------------------------------------------------

def eval_logs(f: MultiPoly, tables, var_logs: list[np.ndarray]) -> np.ndarray:
    """Vectorized evaluation with every quantity carried as a discrete log."""
    shape = np.broadcast_shapes(*(np.shape(v) for v in var_logs)) if var_logs else ()
    acc = np.full(shape, tables.ZERO, dtype=np.int64)
    for m, c in f.terms.items():
        t = np.full(shape, tables.log_of(c), dtype=np.int64)
        for j, k in enumerate(m):
            if k:
                t = tables.lmul(t, tables.lpow(np.asarray(var_logs[j], dtype=np.int64), k))
        acc = tables.ladd(acc, t)
    return acc


def _chart_grid(tables, k: int) -> list[np.ndarray]:
    if k == 0:
        return []
    grids = np.meshgrid(*([tables.log] * k), indexing="ij")
    return [g.ravel() for g in grids]


def projective_zero_points(polys: list[MultiPoly], nvars: int, field: FieldDescriptor) -> list[tuple[FieldElement, ...]]:
    """All points of P^{nvars-1}(field) where every poly vanishes, by enumeration."""
    tb = field.tables
    polys = [g.change_field(field) for g in polys]
    out = []
    for i in range(nvars):
        k = nvars - 1 - i
        free = _chart_grid(tb, k)
        size = free[0].size if free else 1
        logs = [np.full(size, tb.ZERO)] * i + [np.zeros(size, dtype=np.int64)] + free
        mask = np.ones(size, dtype=bool)
        for g in polys:
            mask &= eval_logs(g, tb, logs) == tb.ZERO
        for idx in np.nonzero(mask)[0]:
            coords = [field.zero] * i + [field.one]
            coords += [field.from_index(int(tb.exp[int(v[idx])])) if v[idx] != tb.ZERO else field.zero for v in free]
            out.append(tuple(coords))
    return out


def count_projective_zeros(F: MultiPoly, field: FieldDescriptor) -> int:
    """#{F = 0} in P^{n-1}(field), vectorized."""
    tb = field.tables
    F = F.change_field(field)
    n = F.nvars
    total = 0
    for i in range(n):
        free = _chart_grid(tb, n - 1 - i)
        size = free[0].size if free else 1
        logs = [np.full(size, tb.ZERO)] * i + [np.zeros(size, dtype=np.int64)] + free
        total += int(np.count_nonzero(eval_logs(F, tb, logs) == tb.ZERO))
    return total


def singular_points_bruteforce(F: MultiPoly, e: int) -> list[ProjectivePoint]:
    """Singular points with coordinates in F_{q^e}, found by scanning P^{n-1}(F_{q^e}).

    Each point carries its exact field of definition as ``e`` but its
    coordinates stay in F_{q^e}.  Independent of the Groebner route.
    """
    base = _check_form(F)
    big = build_field(base.p, base.s * e)
    pts = projective_zero_points(F.gradient(), F.nvars, big)
    return sorted((ProjectivePoint(c, _orbit_size(c, base.q)) for c in pts), key=ProjectivePoint.sort_key)


@dataclass(frozen=True)
class IsolationVerdict:
    status: str  # "certified", "heuristic" or "non-isolated"
    method: str
    detail: str = ""

    @property
    def isolated(self) -> bool:
        return self.status != "non-isolated"

    def to_json(self) -> dict:
        return {"status": self.status, "method": self.method, "detail": self.detail}


def is_isolated(F: MultiPoly, points=None, e_max: int = DEFAULT_E_MAX, method: str = "exact") -> IsolationVerdict:
    """Decide whether Sing({F = 0}) is finite.

    ``exact`` reads the Krull dimension of every chart's Jacobian ideal.
    ``count`` compares brute-force singular point counts over F_{q^e_max}
    and F_{q^{2 e_max}}; equal counts are only heuristic evidence.
    """
    if method == "exact":
        dim = singular_locus_dimension(F)
        if dim > 0:
            return IsolationVerdict("non-isolated", "exact", f"singular locus of dimension {dim}")
        return IsolationVerdict("certified", "exact", "Jacobian ideal is zero-dimensional on every chart")
    if method == "count":
        a = len(singular_points_bruteforce(F, e_max))
        b = len(singular_points_bruteforce(F, 2 * e_max))
        if a != b:
            return IsolationVerdict("non-isolated", "count", f"{a} points over degree {e_max}, {b} over degree {2 * e_max}")
        return IsolationVerdict("heuristic", "count", f"{a} points over degrees {e_max} and {2 * e_max}")
    raise ValueError(f"unknown method {method!r}")


# -- germs -------------------------------------------------------------------------------------

def _default_n_max(g: MultiPoly) -> int:
    return int(sum(max(0, dg.degree()) for dg in g.gradient() if not dg.is_zero())) + 5


def jacobian_algebra_dimension(g: MultiPoly, n_max: int | None = None) -> int:
    """Standard-monomial count of the Jacobian ideal of g (all critical points)."""
    if n_max is None:
        n_max = _default_n_max(g)
    G = groebner_basis(g.gradient())
    try:
        return quotient_dimension(G, g.nvars, n_max)
    except NotZeroDimensional as exc:
        raise NonIsolatedSingularities(f"Jacobian ideal is not zero-dimensional ({exc})") from None


def _degree_monomials(nvars: int, N: int):
    if nvars == 0:
        return
    for head in range(N, -1, -1):
        if nvars == 1:
            if head == N:
                yield (N,)
            continue
        for tail in _degree_monomials(nvars - 1, N - head):
            yield (head,) + tail


def milnor_number(g: MultiPoly, n_max: int | None = None) -> int:
    """Dimension of the local Jacobian algebra of g at the origin.

    For a weighted homogeneous g this is the global standard-monomial count.
    Otherwise the lengths of k[x]/(J + m^N) are computed for N = 1, 2, ...;
    they increase strictly until they reach the local length, so two equal
    consecutive values certify it.  Raises NonIsolatedSingularities if no
    stabilisation happens within the bound.
    """
    dom, k = g.domain, g.nvars
    if n_max is None:
        n_max = _default_n_max(g)
    grads = [h for h in g.gradient() if not h.is_zero()]
    if k == 0:
        return 0
    if not grads:
        raise NonIsolatedSingularities("all partial derivatives vanish identically")
    G = groebner_basis(grads)
    global_dim = None
    if is_zero_dimensional(G, k):
        global_dim = quotient_dimension(G, k)
        if detect_weights(g) is not None:
            return global_dim
        n_max = max(n_max, global_dim + 1)
    prev = None
    for N in range(1, n_max + 2):
        mons = [MultiPoly(dom, k, {m: dom.one}) for m in _degree_monomials(k, N)]
        length = quotient_dimension(groebner_basis(G + mons), k)
        if length == prev:
            return length
        prev = length
    raise NonIsolatedSingularities(f"local Jacobian algebra did not stabilise up to order {n_max + 1}")


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return basis


def _is_graded(support, weights, delta) -> bool:
    return all(sum(a * w for a, w in zip(m, weights)) == delta for m in support)


def detect_weights(g: MultiPoly) -> tuple[tuple[int, ...], int] | None:
    """Positive coprime weights and degree with g(t^w x) = t^delta g(x), or None.

    A one-dimensional solution space has a unique normalised solution.  A
    larger one is searched for the smallest delta, ties broken by the
    lexicographically smallest weight vector.
    """
    if g.is_zero():
        raise ValueError("the zero polynomial has no weights")
    k = g.nvars
    support = g.support
    if any(sum(m) == 0 for m in support):
        raise ValueError("germ must vanish at the origin")
    rows = [[Fraction(a) for a in m] + [Fraction(-1)] for m in support]
    basis = _nullspace(rows, k + 1)
    if not basis:
        return None
    if len(basis) == 1:
        v = basis[0]
        if v[-1] < 0:
            v = [-x for x in v]
        if any(x <= 0 for x in v):
            return None
        den = reduce(math.lcm, (x.denominator for x in v), 1)
        ints = [int(x * den) for x in v]
        gcd_w = reduce(math.gcd, ints[:-1])
        weights = tuple(x // gcd_w for x in ints[:-1])
        delta = ints[-1] // gcd_w
        if ints[-1] % gcd_w or not _is_graded(support, weights, delta):
            return None
        return weights, delta
    A = np.array(support, dtype=np.int64)
    for delta in range(1, WEIGHT_SEARCH_LIMIT + 1):
        if delta**k > 4_000_000:
            break
        grid = np.stack(np.meshgrid(*([np.arange(1, delta + 1)] * k), indexing="ij"), axis=-1).reshape(-1, k)
        ok = np.all(grid @ A.T == delta, axis=1)
        for row in grid[ok]:
            w = tuple(int(x) for x in row)
            if reduce(math.gcd, w) == 1:
                return w, delta
    return None


def milnor_orlik(weights, delta: int) -> Fraction:
    """prod_j (delta - w_j) / w_j."""
    out = Fraction(1)
    for w in weights:
        out *= Fraction(delta - w, w)
    return out


def _weighted_order(g: MultiPoly, weights) -> int:
    return min(sum(a * w for a, w in zip(m, weights)) for m in g.support)


def principal_part(g: MultiPoly, weights) -> tuple[MultiPoly, int]:
    delta = _weighted_order(g, weights)
    terms = {m: c for m, c in g.terms.items() if sum(a * w for a, w in zip(m, weights)) == delta}
    return MultiPoly(g.domain, g.nvars, terms), delta


def _newton_edge_weights(g: MultiPoly) -> list[tuple[int, int]]:
    """Weight vectors normal to the compact edges of a two-variable Newton polygon."""
    pts = sorted(set(g.support))
    # lower-left convex hull of the support, as a chain from the y-axis side to the x-axis side
    best: dict[int, int] = {}
    for a, b in pts:
        best[a] = min(best.get(a, b), b)
    chain: list[tuple[int, int]] = []
    for a in sorted(best):
        pt = (a, best[a])
        if chain and pt[1] >= chain[-1][1]:
            continue
        while len(chain) >= 2:
            (x1, y1), (x2, y2) = chain[-2], chain[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                chain.pop()
            else:
                break
        chain.append(pt)
    out = []
    for (a1, b1), (a2, b2) in zip(chain, chain[1:]):
        w = (b1 - b2, a2 - a1)
        gg = math.gcd(*w)
        out.append((w[0] // gg, w[1] // gg))
    return out


def quasi_homogeneous_model(g: MultiPoly):
    """(weights, delta, model, source) with g equivalent to a weighted homogeneous model, or None.

    ``source`` is "exact" when g itself is weighted homogeneous.  Otherwise
    candidate weights come from the tangent cone and, in two variables, the
    Newton polygon; a principal part g0 qualifies when its singularity is
    isolated and its Milnor algebra has no basis monomial of weighted degree
    above delta, so every higher-order perturbation of g0 is removable.
    """
    w = detect_weights(g)
    if w is not None:
        return w[0], w[1], g, "exact"
    k = g.nvars
    cands: list[tuple[int, ...]] = [tuple([1] * k)]
    if k == 2:
        cands += [c for c in _newton_edge_weights(g) if c not in cands]
    for weights in cands:
        g0, delta = principal_part(g, weights)
        grads = [h for h in g0.gradient() if not h.is_zero()]
        if not grads:
            continue
        G = groebner_basis(grads)
        if not is_zero_dimensional(G, k):
            continue
        std = standard_monomials(G, k)
        if any(sum(a * x for a, x in zip(m, weights)) > delta for m in std):
            continue
        return tuple(weights), delta, g0, "principal part"
    return None


@dataclass
class GermData:
    """Local analytic data of a singular point."""

    local_equation: MultiPoly
    weights: tuple[int, ...] | None
    total_degree: int | None
    milnor: int | None
    weights_source: str  # "exact", "principal part" or "none"
    milnor_orlik: Fraction | None = None

    @property
    def isolated(self) -> bool:
        return self.milnor is not None

    @property
    def weighted_homogeneous(self) -> bool:
        return self.weights is not None

    @property
    def cross_check_ok(self) -> bool | None:
        if self.milnor is None or self.milnor_orlik is None:
            return None
        return self.milnor_orlik == self.milnor

    def to_json(self) -> dict:
        return {
            "local_equation": poly_to_json(self.local_equation),
            "weights": None if self.weights is None else list(self.weights),
            "total_degree": self.total_degree,
            "milnor": self.milnor,
            "weights_source": self.weights_source,
            "milnor_orlik": None if self.milnor_orlik is None else str(self.milnor_orlik),
        }


def germ_at(F: MultiPoly, point: ProjectivePoint, n_max: int | None = None) -> GermData:
    """Local equation, weights, degree and Milnor number of {F = 0} at a point."""
    g = F.dehomogenize_translate(point.coords)
    if not g.is_zero() and not g.constant_term().is_zero():
        raise ValueError(f"{point.label()} is not a point of the hypersurface")
    try:
        mu = milnor_number(g, n_max)
    except NonIsolatedSingularities:
        mu = None
    model = quasi_homogeneous_model(g) if mu is not None else None
    if model is None:
        weights = detect_weights(g)
        if weights is None:
            return GermData(g, None, None, mu, "none")
        return GermData(g, weights[0], weights[1], mu, "exact", milnor_orlik(*weights))
    weights, delta, _, source = model
    return GermData(g, weights, delta, mu, source, milnor_orlik(weights, delta))


def poly_to_json(f: MultiPoly) -> dict:
    from .mpoly import grevlex_key

    dom = f.domain
    terms = sorted(f.terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)
    if isinstance(dom, FieldDescriptor):
        field = [dom.p, dom.s]
        coeffs = [[list(m), list(c.coeffs)] for m, c in terms]
    else:
        field = None
        coeffs = [[list(m), str(c)] for m, c in terms]
    return {"nvars": f.nvars, "field": field, "terms": coeffs, "text": f.to_string()}


def poly_from_json(data: dict) -> MultiPoly:
    from .mpoly import QQ

    if data["field"] is None:
        return MultiPoly(QQ, data["nvars"], {tuple(m): Fraction(c) for m, c in data["terms"]})
    fd = build_field(*data["field"])
    return MultiPoly(fd, data["nvars"], {tuple(m): fd.element(c) for m, c in data["terms"]})


__all__ = [
    "DEFAULT_E_MAX",
    "ExtensionBoundExceeded",
    "GermData",
    "IsolationVerdict",
    "NonIsolatedSingularities",
    "ProjectivePoint",
    "chart_ideal",
    "count_projective_zeros",
    "detect_weights",
    "eval_logs",
    "geometric_point_count",
    "germ_at",
    "is_isolated",
    "jacobian_algebra_dimension",
    "milnor_number",
    "milnor_orlik",
    "poly_from_json",
    "poly_to_json",
    "principal_part",
    "projective_zero_points",
    "quasi_homogeneous_model",
    "singular_locus_dimension",
    "singular_points",
    "singular_points_bruteforce",
]
