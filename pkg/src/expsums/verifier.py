"""Hypothesis checking and numerical confirmation of the dimension/purity bound.

For f over F_q in n variables with top form f_d, the predicted dimension is
D = (d-1)^n - sum of the Milnor numbers of the singular points of
{f_d = 0} in P^{n-1}, provided

* every singular point is isolated and weighted homogeneous,
* no singular point lies on {f_{d-1} = 0},
* p is prime to d (d-1) and to every weighted degree delta_i.

Confirmation uses sums over F_{q^m}: with P_m = (-1)^n S_m the power sums of
D Frobenius eigenvalues, Newton's identities give the elementary symmetric
functions exactly in Z[zeta_p], the degree-D linear recurrence must hold on
all further terms, and every root of the characteristic polynomial must
have absolute value q^{n/2} under every complex embedding.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable

import mpmath
import numpy as np

from .charsum import (
    BudgetExceeded,
    TraceHistogram,
    char_sum,
    default_budget,
    extension_field,
    max_affordable_m,
    trace_histogram,
)
from .cycint import CycInt
from .ff_arith import FieldDescriptor, build_field, enumerate_field
from .groebner import groebner_basis, is_unit_ideal, is_zero_dimensional
from .mpoly import MultiPoly, matrix_inverse, parse
from .singular import (
    DEFAULT_E_MAX,
    ExtensionBoundExceeded,
    NonIsolatedSingularities,
    ProjectivePoint,
    _chart_grid,
    chart_ideal,
    count_projective_zeros,
    eval_logs,
    geometric_point_count,
    germ_at,
    is_isolated,
    poly_to_json,
    singular_points,
)

log = logging.getLogger(__name__)

SCHEMA = "expsums.verification/1"
PURITY_RTOL = 1e-6
BOUND_SLACK = 1e-9

APPLIES = "theorem applies"
APPLIES_HEURISTIC = "applies modulo heuristic certification"
NOT_APPLICABLE = "theorem not applicable"


class ChainMismatch(AssertionError):
    """The Euler characteristic chain disagrees with the closed-form dimension."""


# -- closed forms ------------------------------------------------------------------------------

def predicted_dimension(d: int, n: int, mus) -> int:
    """(d-1)^n - sum(mus)."""
    if any(mu < 1 for mu in mus):
        raise ValueError("Milnor numbers must be positive")
    D = (d - 1) ** n - sum(mus)
    if D < 0:
        raise ValueError(f"negative predicted dimension {D}: inconsistent Milnor numbers")
    return D


def euler_smooth_fiber(d: int, n: int) -> int:
    """chi_c of a smooth degree-d hypersurface in P^n."""
    num = (1 - d) ** (n + 1) - 1
    if num % d:
        raise ArithmeticError("non-integral Euler characteristic")  # never happens for d >= 1
    return num // d + n + 1


def euler_smooth_top(d: int, n: int) -> int:
    """chi_c of a smooth degree-d hypersurface in P^{n-1}."""
    return ((1 - d) ** n - 1) // d + n


def chi_from_point_counts(F: MultiPoly, ms=(1, 2, 3)) -> int:
    """Euler characteristic of {F = 0} when its point counts are a*Q + c.

    Fits a and c from the first two extension degrees, checks the rest,
    and returns a + c (the count polynomial evaluated at Q = 1).
    """
    base = F.domain
    counts = {m: count_projective_zeros(F, extension_field(base, m)) for m in ms}
    m1, m2 = ms[0], ms[1]
    Q1, Q2 = base.q**m1, base.q**m2
    a, r = divmod(counts[m2] - counts[m1], Q2 - Q1)
    if r:
        raise ArithmeticError(f"point counts {counts} are not of the form a*Q + c")
    c = counts[m1] - a * Q1
    for m in ms[2:]:
        if counts[m] != a * base.q**m + c:
            raise ArithmeticError(f"point counts {counts} are not of the form a*Q + c")
    return a + c


NODAL_CUBIC = "x2^2*x3 - x1^3 - x1^2*x3"
TRIANGLE = "x1*x2*x3"


def _sign_from_oracle(text: str, p: int = 5) -> int:
    F = parse(text, 3, build_field(p))
    d, n = int(F.degree()), F.nvars
    mus = [germ_at(F, pt).milnor for pt in singular_points(F)]
    chi = chi_from_point_counts(F)
    excess = chi - euler_smooth_top(d, n)
    total = (-1) ** n * sum(mus)
    if total == 0 or excess % total or abs(excess // total) != 1:
        raise ArithmeticError(f"oracle {text!r}: chi = {chi} is not the smooth value shifted by +-{sum(mus)}")
    return excess // total


@lru_cache(maxsize=None)
def vanishing_cycle_sign() -> int:
    """Sign of the Milnor-number correction, fixed by two point-count oracles.

    The nodal plane cubic (chi 1) and the triangle of lines (chi 3) must
    both agree; a disagreement is an error rather than a choice.
    """
    signs = {_sign_from_oracle(NODAL_CUBIC), _sign_from_oracle(TRIANGLE)}
    if len(signs) != 1:
        raise ArithmeticError(f"oracles disagree on the vanishing-cycle sign: {sorted(signs)}")
    return signs.pop()


def euler_singular_top_form(d: int, n: int, mus, sign: int | None = None) -> int:
    """chi_c of a degree-d hypersurface in P^{n-1} with isolated singularities of Milnor numbers mus."""
    sign = vanishing_cycle_sign() if sign is None else sign
    return euler_smooth_top(d, n) + (-1) ** n * sign * sum(mus)


@dataclass
class EulerChain:
    sign: int
    projective_fiber: int
    top_form: int
    affine_fiber: int
    total_space: int
    dimension: int

    def to_json(self) -> dict:
        return asdict(self)


def euler_chain(d: int, n: int, mus, sign: int | None = None) -> EulerChain:
    """Closed fiber, hyperplane at infinity, affine fiber, total space, dimension."""
    sign = vanishing_cycle_sign() if sign is None else sign
    closed = euler_smooth_fiber(d, n)
    top = euler_singular_top_form(d, n, mus, sign)
    affine = closed - top
    total = 1 - affine
    return EulerChain(sign, closed, top, affine, total, (-1) ** n * total)


def dimension_via_chi(d: int, n: int, mus, sign: int | None = None) -> int:
    chain = euler_chain(d, n, mus, sign)
    D = predicted_dimension(d, n, mus)
    if chain.dimension != D:
        raise ChainMismatch(f"Euler chain gives {chain.dimension}, closed form gives {D}")
    return chain.dimension


# -- sums: bounds and eigenvalues ---------------------------------------------------------------

@dataclass
class BoundCheck:
    m: int
    bound: float
    abs_values: list[float]
    max_ratio: float | None  # None when D = 0 but some sum is nonzero
    holds: bool

    def to_json(self) -> dict:
        return asdict(self)


def verify_bound(sums_by_char: list[list[CycInt]], D: int, q: int, n: int) -> list[BoundCheck]:
    """|S_m| <= D q^{mn/2} for each m and every character.

    ``sums_by_char[m-1]`` lists S_m for the characters b = 1..p-1.
    """
    out = []
    for m, row in enumerate(sums_by_char, start=1):
        bound = D * q ** (m * n / 2)
        absv = [abs(s.numeric()) for s in row]
        if bound > 0:
            ratio = max(a / bound for a in absv)
        else:
            ratio = 0.0 if max(absv) < BOUND_SLACK else None
        out.append(BoundCheck(m, bound, absv, ratio, ratio is not None and ratio <= 1 + BOUND_SLACK))
    return out


def newton_identities(power_sums: list[CycInt], D: int) -> list[CycInt]:
    """e_1..e_D from P_1..P_D via k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} P_i, exactly."""
    p = power_sums[0].p
    e = [CycInt.integer(p, 1)]
    for k in range(1, D + 1):
        acc = CycInt.integer(p, 0)
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc.exact_div(k))
    return e[1:]


@dataclass
class EigenvalueRecovery:
    D: int
    q: int
    n: int
    power_sums: list[CycInt]
    elementary: list[CycInt] = field(default_factory=list)
    newton_ok: bool = False
    recurrence_verified: bool = False
    surplus_terms: int = 0
    root_moduli: dict[int, list[float]] = field(default_factory=dict)
    max_relative_error: float | None = None
    purity_ok: bool = False
    status: str = ""

    @property
    def ok(self) -> bool:
        return self.newton_ok and self.recurrence_verified and self.purity_ok

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "q": self.q,
            "n": self.n,
            "power_sums": [s.to_json() for s in self.power_sums],
            "elementary": [s.to_json() for s in self.elementary],
            "newton_ok": self.newton_ok,
            "recurrence_verified": self.recurrence_verified,
            "surplus_terms": self.surplus_terms,
            "root_moduli": {str(b): v for b, v in self.root_moduli.items()},
            "target_modulus": self.q ** (self.n / 2),
            "max_relative_error": self.max_relative_error,
            "purity_ok": self.purity_ok,
            "status": self.status,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EigenvalueRecovery":
        return cls(
            D=data["D"],
            q=data["q"],
            n=data["n"],
            power_sums=[CycInt.from_json(s) for s in data["power_sums"]],
            elementary=[CycInt.from_json(s) for s in data["elementary"]],
            newton_ok=data["newton_ok"],
            recurrence_verified=data["recurrence_verified"],
            surplus_terms=data["surplus_terms"],
            root_moduli={int(b): v for b, v in data["root_moduli"].items()},
            max_relative_error=data["max_relative_error"],
            purity_ok=data["purity_ok"],
            status=data["status"],
        )


def characteristic_roots(elementary: list[CycInt], b: int, dps: int = 50) -> list[complex]:
    """Roots of T^D - e_1 T^{D-1} + e_2 T^{D-2} - ... under zeta -> exp(2 pi i b / p)."""
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(1)]
        for k, e in enumerate(elementary, start=1):
            z = e.numeric(b)
            coeffs.append((-1) ** k * mpmath.mpc(z.real, z.imag))
        if len(coeffs) == 1:
            return []
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
        return [complex(r) for r in roots]


def recover_eigenvalues(
    sums: list[CycInt],
    D: int,
    q: int,
    n: int,
    *,
    newton: Callable[[list[CycInt], int], list[CycInt]] = newton_identities,
) -> EigenvalueRecovery:
    """Exact Newton/recurrence analysis of S_1..S_M followed by numeric root moduli."""
    if not sums:
        raise ValueError("no sums given")
    M = len(sums)
    if M < D + 1:
        raise ValueError(f"need at least D + 1 = {D + 1} sums, got {M}")
    p = sums[0].p
    P = [s if n % 2 == 0 else -s for s in sums]
    rec = EigenvalueRecovery(D, q, n, P, surplus_terms=M - D)
    if all(s.is_zero() for s in P) and D > 0:
        rec.status = "refused: all sums vanish (character trivial on the image of f)"
        return rec
    try:
        e = newton(P, D)
    except ArithmeticError as exc:
        rec.status = f"dimension {D} inconsistent with sums: {exc}"
        return rec
    rec.elementary = e
    rec.newton_ok = True
    ok = True
    for m in range(D + 1, M + 1):
        acc = CycInt.integer(p, 0)
        for k in range(1, D + 1):
            term = e[k - 1] * P[m - k - 1]
            acc = acc + term if k % 2 else acc - term
        if acc != P[m - 1]:
            ok = False
            break
    rec.recurrence_verified = ok
    if not ok:
        rec.status = f"dimension {D} inconsistent with sums: recurrence fails at m = {m}"
        return rec
    target = q ** (n / 2)
    worst = 0.0
    for b in range(1, p):
        mods = sorted(abs(r) for r in characteristic_roots(e, b))
        rec.root_moduli[b] = mods
        if mods:
            worst = max(worst, max(abs(x / target - 1) for x in mods))
    rec.max_relative_error = worst
    rec.purity_ok = worst <= PURITY_RTOL
    rec.status = "pure" if rec.purity_ok else "purity violated"
    return rec


# -- diagnostics -------------------------------------------------------------------------------

@dataclass
class CriticalLocusVerdict:
    status: str  # "finite" or "infinite"
    points: int | None
    method: str
    counts: list[int] = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return self.status == "finite"

    def to_json(self) -> dict:
        return asdict(self)


def affine_critical_count(f: MultiPoly, e: int) -> int:
    """#{x in A^n(F_{q^e}) : grad f(x) = 0}, by enumeration."""
    big = extension_field(f.domain, e)
    tb = big.tables
    grads = [g.change_field(big) for g in f.gradient()]
    logs = _chart_grid(tb, f.nvars)
    size = logs[0].size
    mask = np.ones(size, dtype=bool)
    for g in grads:
        mask &= eval_logs(g, tb, logs) == tb.ZERO
    return int(np.count_nonzero(mask))


def critical_locus_finite(f: MultiPoly, e_max: int = DEFAULT_E_MAX, method: str = "exact") -> CriticalLocusVerdict:
    """Is {grad f = 0} in A^n finite?

    ``exact`` reads the dimension of the Groebner basis of the partials.
    ``count`` enumerates critical points over F_{q^e}, e = 1..e_max, and
    calls the locus infinite when the count keeps growing with e.
    """
    n = f.nvars
    if method == "exact":
        grads = [g for g in f.gradient() if not g.is_zero()]
        G = groebner_basis(grads) if grads else []
        if G and is_unit_ideal(G):
            return CriticalLocusVerdict("finite", 0, "exact")
        if G and is_zero_dimensional(G, n):
            return CriticalLocusVerdict("finite", geometric_point_count(G, n), "exact")
        return CriticalLocusVerdict("infinite", None, "exact")
    if method == "count":
        counts = [affine_critical_count(f, e) for e in range(1, e_max + 1)]
        growing = len(counts) >= 2 and counts[-1] > max(counts[:-1]) and counts[-1] >= f.domain.q ** e_max
        return CriticalLocusVerdict("infinite" if growing else "finite", None if growing else max(counts), "count", counts)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class TransversalHyperplane:
    e: int
    normal: list[list[int]]
    change: list[list[list[int]]]

    def to_json(self) -> dict:
        return asdict(self)


def _restricted_form(Fd: MultiPoly, normal, big: FieldDescriptor) -> MultiPoly:
    """Fd on the hyperplane normal . x = 0, in coordinates where it is {y_n = 0}."""
    n = Fd.nvars
    k = next(i for i, c in enumerate(normal) if not c.is_zero())
    rows = [[big.one if j == i else big.zero for j in range(n)] for i in range(n) if i != k]
    rows.append(list(normal))
    inv = matrix_inverse(rows, big)
    H = Fd.change_field(big).linear_change(inv)
    return H.substitute({n - 1: big.zero}), inv


def _is_smooth_form(G: MultiPoly) -> bool:
    """True when {G = 0} has no singular point over the algebraic closure."""
    if G.is_zero():
        return False
    return all(is_unit_ideal(groebner_basis(chart_ideal(G, i))) for i in range(G.nvars))


def transversal_hyperplane(Fd: MultiPoly, e_max: int = DEFAULT_E_MAX, max_candidates: int = 500) -> TransversalHyperplane | None:
    """First hyperplane H over F_{q^e}, e <= e_max, with {Fd = 0} meeting H in a smooth hypersurface.

    Candidates are scanned by increasing e and enumeration order; the
    returned change of coordinates sends H to {x_n = 0}.
    """
    n = Fd.nvars
    base = Fd.domain
    if n < 2 or math.gcd(base.p, int(Fd.degree())) != 1:
        return None
    for e in range(1, e_max + 1):
        big = extension_field(base, e)
        tried = 0
        for i in range(n):
            for normal in _chart_points(big, n, i):
                tried += 1
                if tried > max_candidates:
                    break
                G, inv = _restricted_form(Fd, normal, big)
                if _is_smooth_form(G):
                    return TransversalHyperplane(e, [list(c.coeffs) for c in normal], [[list(c.coeffs) for c in r] for r in inv])
    return None


def _chart_points(big: FieldDescriptor, n: int, i: int):
    elems = list(enumerate_field(big)) if n - 1 - i else []
    for free in product(elems, repeat=n - 1 - i):
        yield [big.zero] * i + [big.one] + list(free)


# -- hypotheses --------------------------------------------------------------------------------

@dataclass
class HypothesisReport:
    d: int
    n: int
    p: int
    q: int
    points: list[dict] = field(default_factory=list)
    milnor_numbers: list[int] = field(default_factory=list)
    degrees: list[int] = field(default_factory=list)
    h1: bool = False
    h2: bool = False
    h3: bool = False
    isolation: dict | None = None
    critical_locus: dict | None = None
    transversal: dict | None = None
    reasons: list[str] = field(default_factory=list)
    verdict: str = NOT_APPLICABLE

    @property
    def applies(self) -> bool:
        return self.verdict in (APPLIES, APPLIES_HEURISTIC)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "HypothesisReport":
        return cls(**data)


def check_hypotheses(
    f: MultiPoly,
    e_max: int = DEFAULT_E_MAX,
    isolation: str = "exact",
    diagnostics: bool = True,
) -> HypothesisReport:
    """Decompose f, analyse the singular points of its top form and test hypotheses i-iii.

    Never raises on degenerate input; failures become reasons and a
    negative verdict.
    """
    base = f.domain
    d = int(f.degree()) if not f.is_zero() else 0
    n = f.nvars
    rep = HypothesisReport(d, n, base.p, base.q)
    if d < 2:
        rep.reasons.append(f"degree {d} < 2")
        return rep
    top = f.component(d)
    lower = f.component(d - 1)
    if diagnostics:
        rep.critical_locus = critical_locus_finite(f, e_max).to_json()
    if math.gcd(base.p, d) != 1:
        rep.reasons.append(f"p = {base.p} divides d = {d}")
        return rep
    if diagnostics:
        t = transversal_hyperplane(top, e_max)
        rep.transversal = None if t is None else t.to_json()

    points: list[ProjectivePoint] = []
    if n >= 2:
        verdict = is_isolated(top, None, e_max, isolation)
        rep.isolation = verdict.to_json()
        if not verdict.isolated:
            rep.reasons.append("singular locus of the top form is not isolated")
            return rep
        try:
            points = singular_points(top, e_max)
        except ExtensionBoundExceeded as exc:
            rep.reasons.append(str(exc))
            return rep
    else:
        rep.isolation = {"status": "certified", "method": "exact", "detail": "P^0 carries no singular points"}

    h1 = h2 = True
    for pt in points:
        germ = germ_at(top, pt)
        val = lower.change_field(pt.field).evaluate(pt.coords) if not lower.is_zero() else pt.field.zero
        on_lower = val.is_zero()
        rep.points.append({"point": pt.to_json(), "germ": germ.to_json(), "lower_form_value": list(val.coeffs), "on_lower_form": on_lower})
        if germ.milnor is None:
            h1 = False
            rep.reasons.append(f"{pt.label()}: singularity is not isolated")
        elif germ.weights is None:
            h1 = False
            rep.reasons.append(f"{pt.label()}: germ is not weighted homogeneous")
        if germ.cross_check_ok is False:
            rep.reasons.append(f"{pt.label()}: Milnor number {germ.milnor} differs from weight formula {germ.milnor_orlik}")
        if on_lower:
            h2 = False
            rep.reasons.append(f"{pt.label()} lies on the degree {d - 1} component")
        if germ.milnor is not None:
            rep.milnor_numbers.append(germ.milnor)
        if germ.total_degree is not None:
            rep.degrees.append(germ.total_degree)
    rep.h1, rep.h2 = h1, h2
    prod = d * (d - 1)
    for delta in rep.degrees:
        prod *= delta
    rep.h3 = h1 and math.gcd(base.p, prod) == 1
    if h1 and not rep.h3:
        rep.reasons.append(f"gcd(p, d(d-1) prod delta) = gcd({base.p}, {prod}) != 1")
    if rep.h1 and rep.h2 and rep.h3:
        rep.verdict = APPLIES if rep.isolation["status"] == "certified" else APPLIES_HEURISTIC
    return rep


# -- full pipeline -----------------------------------------------------------------------------

@dataclass
class VerificationReport:
    schema: str
    input: dict
    hypotheses: HypothesisReport
    predicted_dimension: int | None
    euler_chain: dict | None
    sums: dict
    bound_checks: list[dict]
    recovery: EigenvalueRecovery | None
    provenance: dict
    consistent: bool = True
    problems: list[str] = field(default_factory=list)
    comparisons: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return self.hypotheses.verdict

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "input": self.input,
            "hypotheses": self.hypotheses.to_json(),
            "predicted_dimension": self.predicted_dimension,
            "euler_chain": self.euler_chain,
            "sums": self.sums,
            "bound_checks": self.bound_checks,
            "recovery": None if self.recovery is None else self.recovery.to_json(),
            "provenance": self.provenance,
            "consistent": self.consistent,
            "problems": self.problems,
            "comparisons": self.comparisons,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        return cls(
            schema=data["schema"],
            input=data["input"],
            hypotheses=HypothesisReport.from_json(data["hypotheses"]),
            predicted_dimension=data["predicted_dimension"],
            euler_chain=data["euler_chain"],
            sums=data["sums"],
            bound_checks=data["bound_checks"],
            recovery=None if data["recovery"] is None else EigenvalueRecovery.from_json(data["recovery"]),
            provenance=data["provenance"],
            consistent=data["consistent"],
            problems=data["problems"],
            comparisons=data["comparisons"],
        )


def verify(
    f: MultiPoly,
    *,
    e_max: int = DEFAULT_E_MAX,
    m_max: int | None = None,
    budget: int | None = None,
    b: int = 1,
    workers: int = 1,
    chunks: int | None = None,
    isolation: str = "exact",
    diagnostics: bool = True,
) -> VerificationReport:
    """Run the whole pipeline on f; never raises for hypothesis failures."""
    base: FieldDescriptor = f.domain
    p, q, n = base.p, base.q, f.nvars
    if b % p == 0:
        raise ValueError(f"character index {b} gives the trivial character")
    budget = default_budget() if budget is None else budget
    chunks = chunks if chunks is not None else max(1, workers)
    hyp = check_hypotheses(f, e_max, isolation, diagnostics)
    problems: list[str] = []

    D = chain = None
    if hyp.d >= 2 and hyp.h1 and math.gcd(p, hyp.d) == 1:
        try:
            D = predicted_dimension(hyp.d, n, hyp.milnor_numbers)
            ch = euler_chain(hyp.d, n, hyp.milnor_numbers)
            chain = ch.to_json()
            if ch.dimension != D:
                problems.append(f"Euler chain gives {ch.dimension}, closed form gives {D}")
        except ValueError as exc:
            problems.append(str(exc))
            D = None

    affordable = max_affordable_m(q, n, budget)
    if m_max is not None:
        M = min(m_max, affordable)
    elif D is not None:
        M = min(max(2 * D, 1), affordable)
    else:
        M = min(1, affordable)

    log.info("computing S_m for m = 1..%d (%d evaluations at m = %d)", M, q ** (M * n), M)
    hists: list[TraceHistogram] = []
    for m in range(1, M + 1):
        try:
            hists.append(trace_histogram(f, base, m, budget=budget, chunks=chunks, workers=workers))
        except BudgetExceeded:
            break
    wanted = M
    M = len(hists)
    by_char = [[char_sum(h, c) for c in range(1, p)] for h in hists]
    main = [row[b - 1] for row in by_char]
    sums = {
        "M": M,
        "b": b,
        "S": [s.to_json() for s in main],
        "abs_S": [abs(s.numeric()) for s in main],
        "histograms": [h.to_json() for h in hists],
        "S1_all_characters": {str(c): row.to_json() for c, row in zip(range(1, p), by_char[0])} if by_char else {},
        "truncated": M < wanted,
    }

    checks: list[BoundCheck] = []
    if D is not None and by_char:
        checks = verify_bound(by_char, D, q, n)
        if hyp.applies and not all(c.holds for c in checks):
            problems.append("bound violated on a theorem-applicable input")

    recovery = None
    if D is not None and M >= D + 1:
        recovery = recover_eigenvalues(main, D, q, n)
        if hyp.applies and not recovery.ok:
            problems.append(f"eigenvalue recovery failed: {recovery.status}")

    provenance = {
        "budget": budget,
        "e_max": e_max,
        "m_max": m_max,
        "isolation_method": isolation,
        "vanishing_cycle_sign": chain["sign"] if chain else None,
        "checked": {
            "dimension_and_purity": "exact recurrence + numeric roots" if recovery is not None else "not attempted",
            "bound": f"numeric for m = 1..{M}" if checks else "not attempted",
        },
    }
    return VerificationReport(
        schema=SCHEMA,
        input={"f": f.to_string(), "p": p, "s": base.s, "modulus": list(base.modulus), "n": n, "polynomial": poly_to_json(f)},
        hypotheses=hyp,
        predicted_dimension=D,
        euler_chain=chain,
        sums=sums,
        bound_checks=[c.to_json() for c in checks],
        recovery=recovery,
        provenance=provenance,
        consistent=not problems,
        problems=problems,
    )


__all__ = [
    "APPLIES",
    "APPLIES_HEURISTIC",
    "BoundCheck",
    "ChainMismatch",
    "CriticalLocusVerdict",
    "EigenvalueRecovery",
    "EulerChain",
    "HypothesisReport",
    "NOT_APPLICABLE",
    "SCHEMA",
    "TransversalHyperplane",
    "VerificationReport",
    "check_hypotheses",
    "characteristic_roots",
    "chi_from_point_counts",
    "critical_locus_finite",
    "dimension_via_chi",
    "euler_chain",
    "euler_singular_top_form",
    "euler_smooth_fiber",
    "euler_smooth_top",
    "newton_identities",
    "predicted_dimension",
    "recover_eigenvalues",
    "transversal_hyperplane",
    "vanishing_cycle_sign",
    "verify",
    "verify_bound",
]
