"""Seeded families of test polynomials and tabulated verification runs.

Three families are provided:

``binary-forms``
    f = c * prod (a_i x - b_i y)^{n_i} + f_{d-1} + (linear term) in two
    variables, with f_{d-1} nonzero at every multiple root.
``line-arrangements``
    products of d distinct lines in P^2 plus a degree d-1 form avoiding
    every intersection point (the triangle xyz, or random arrangements).
``smooth-fermat``
    x_1^d + ... + x_n^d.

Arrangement rows also carry the two closed-form values commonly quoted for
such arrangements, (d-1)^3 - sum_i n_i (i-1) and, for generic arrangements,
(d-1)^3 - (d-1)(d-2)/2, and flag any disagreement with the dimension
computed from Milnor numbers.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from .ff_arith import FieldDescriptor, build_field
from .mpoly import MultiPoly
from .verifier import verify

SWEEP_SCHEMA = "expsums.sweep/1"
PRESETS = ("binary-forms", "line-arrangements", "smooth-fermat")
DISAGREES = "paper example disagrees"

COLUMNS = [
    "preset",
    "seed",
    "case",
    "p",
    "s",
    "n",
    "d",
    "f",
    "singular_points",
    "milnor_numbers",
    "weighted_degrees",
    "sum_mu",
    "D_predicted",
    "reference_values",
    "reference_flag",
    "abs_S1",
    "M",
    "max_bound_ratio",
    "recovery",
    "verdict",
    "consistent",
]


@dataclass
class SweepCase:
    preset: str
    label: str
    f: MultiPoly
    params: dict = field(default_factory=dict)
    # name -> value of closed-form reference formulas to compare with the computed D
    reference: dict = field(default_factory=dict)


# -- helpers -----------------------------------------------------------------------------------

def _linear(field_: FieldDescriptor, nvars: int, coeffs) -> MultiPoly:
    return MultiPoly(field_, nvars, {tuple(int(i == j) for i in range(nvars)): field_(c) for j, c in enumerate(coeffs) if c % field_.p})


def _random_form(field_: FieldDescriptor, nvars: int, degree: int, rng: random.Random) -> MultiPoly:
    terms = {}
    for m in _monomials(nvars, degree):
        c = rng.randrange(field_.p)
        if c:
            terms[m] = field_(c)
    return MultiPoly(field_, nvars, terms)


def _monomials(nvars: int, degree: int):
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - k):
            yield (k,) + rest


def _p1_points(p: int) -> list[tuple[int, int]]:
    return [(1, b) for b in range(p)] + [(0, 1)]


def _p2_points(p: int) -> list[tuple[int, int, int]]:
    return [(1, a, b) for a in range(p) for b in range(p)] + [(0, 1, b) for b in range(p)] + [(0, 0, 1)]


# -- binary forms ------------------------------------------------------------------------------

def binary_form_case(p: int, multiplicities, rng: random.Random, label: str = "") -> SweepCase:
    """f_d = c * prod (a_i x - b_i y)^{n_i} over F_p with distinct roots (b_i : a_i)."""
    fd = build_field(p)
    mult = list(multiplicities)
    if len(mult) > p + 1:
        raise ValueError(f"{len(mult)} distinct roots do not fit in P^1(F_{p})")
    d = sum(mult)
    roots = rng.sample(_p1_points(p), len(mult))
    top = MultiPoly.constant(fd, 2, fd(rng.randrange(1, p)))
    for (a, b), k in zip(roots, mult):
        # the linear form a x - b y vanishes at (b : a)
        top = top * _linear(fd, 2, (a, -b)) ** k
    multiple = [(b, a) for (a, b), k in zip(roots, mult) if k > 1]
    for _ in range(1000):
        lower = _random_form(fd, 2, d - 1, rng)
        if all(not lower.evaluate([fd(x), fd(y)]).is_zero() for x, y in multiple):
            break
    else:
        raise ValueError("no admissible degree d-1 component found")
    f = top + lower + _linear(fd, 2, (rng.randrange(p), rng.randrange(p)))
    ref = {"(d-1)^2 - sum(n_i - 1)": (d - 1) ** 2 - sum(k - 1 for k in mult)}
    return SweepCase("binary-forms", label or f"mult={mult}", f, {"multiplicities": mult, "roots": roots}, ref)


def binary_form_applicable(p: int, multiplicities) -> bool:
    d = sum(multiplicities)
    return d >= 2 and len(multiplicities) <= p + 1 and math.gcd(p, d * (d - 1) * math.prod(multiplicities)) == 1


def random_multiplicities(rng: random.Random, d_range=(3, 5)) -> list[int]:
    d = rng.randint(*d_range)
    parts = []
    left = d
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    return sorted(parts, reverse=True)


def binary_forms(p_values, count: int, seed: int, multiplicities=None, d_range=(3, 5)) -> list[SweepCase]:
    """``count`` seeded theorem-applicable binary-form cases, cycling through p_values."""
    rng = random.Random(seed)
    cases = []
    attempts = 0
    while len(cases) < count:
        attempts += 1
        if attempts > 100 * count + 100:
            raise ValueError("could not generate enough admissible binary forms")
        p = p_values[len(cases) % len(p_values)]
        mult = list(multiplicities) if multiplicities else random_multiplicities(rng, d_range)
        if not binary_form_applicable(p, mult):
            if multiplicities:
                raise ValueError(f"multiplicities {mult} violate gcd(p, d(d-1) prod n_i) = 1 for p = {p}")
            continue
        cases.append(binary_form_case(p, mult, rng, f"#{len(cases)} p={p} mult={mult}"))
    return cases


# -- line arrangements -------------------------------------------------------------------------

def _incidences(lines, p: int) -> dict[tuple, int]:
    """Intersection points of the lines (over F_p) with the number of lines through each."""
    out: dict[tuple, int] = {}
    for pt in _p2_points(p):
        k = sum(1 for l in lines if sum(a * x for a, x in zip(l, pt)) % p == 0)
        if k >= 2:
            out[pt] = k
    return out


def arrangement_reference(lines, p: int) -> dict:
    d = len(lines)
    counts: dict[int, int] = {}
    for k in _incidences(lines, p).values():
        counts[k] = counts.get(k, 0) + 1
    ref = {"(d-1)^3 - sum n_i (i-1)": (d - 1) ** 3 - sum(n_i * (i - 1) for i, n_i in counts.items())}
    if set(counts) <= {2}:
        ref["(d-1)^3 - (d-1)(d-2)/2"] = (d - 1) ** 3 - (d - 1) * (d - 2) // 2
    return ref


def line_arrangement_case(p: int, lines, rng: random.Random, label: str = "") -> SweepCase:
    """f = prod of the lines + a degree d-1 form avoiding all intersection points."""
    fd = build_field(p)
    lines = [tuple(int(c) % p for c in l) for l in lines]
    top = MultiPoly.constant(fd, 3, fd.one)
    for l in lines:
        top = top * _linear(fd, 3, l)
    d = len(lines)
    points = list(_incidences(lines, p))
    for _ in range(1000):
        lower = _random_form(fd, 3, d - 1, rng)
        if all(not lower.evaluate([fd(c) for c in pt]).is_zero() for pt in points):
            break
    else:
        raise ValueError("no degree d-1 form avoids the intersection points")
    counts: dict[int, int] = {}
    for k in _incidences(lines, p).values():
        counts[k] = counts.get(k, 0) + 1
    return SweepCase(
        "line-arrangements",
        label or f"d={d}",
        top + lower,
        {"lines": [list(l) for l in lines], "incidences": {str(k): v for k, v in sorted(counts.items())}},
        arrangement_reference(lines, p),
    )


def triangle_case(p: int, rng: random.Random) -> SweepCase:
    return line_arrangement_case(p, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], rng, "triangle")


def generic_arrangement(p: int, d: int, rng: random.Random) -> list[tuple[int, int, int]]:
    """d distinct lines over F_p with no three concurrent (seeded rejection sampling)."""
    pool = _p2_points(p)
    for _ in range(10000):
        lines = rng.sample(pool, d)
        if all(
            _det3(a, b, c) % p
            for a, b, c in combinations(lines, 3)
        ):
            return lines
    raise ValueError(f"no generic arrangement of {d} lines found over F_{p}")


def _det3(a, b, c) -> int:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def line_arrangements(p_values, d_values, seed: int, count: int = 1) -> list[SweepCase]:
    """The triangle (d = 3) and ``count`` generic arrangements per larger d, per p."""
    rng = random.Random(seed)
    cases = []
    for p in p_values:
        for d in d_values:
            if math.gcd(p, d * (d - 1)) != 1:
                continue
            if d == 3:
                cases.append(triangle_case(p, rng))
                continue
            for k in range(count):
                lines = generic_arrangement(p, d, rng)
                cases.append(line_arrangement_case(p, lines, rng, f"generic d={d} #{k}"))
    return cases


# -- Fermat ------------------------------------------------------------------------------------

def smooth_fermat(p_values, d_values, n_values) -> list[SweepCase]:
    cases = []
    for p in p_values:
        fd = build_field(p)
        for d in d_values:
            if math.gcd(p, d * (d - 1)) != 1:
                continue
            for n in n_values:
                terms = {tuple(d if i == j else 0 for i in range(n)): fd.one for j in range(n)}
                cases.append(SweepCase("smooth-fermat", f"d={d} n={n}", MultiPoly(fd, n, terms), {"d": d, "n": n}, {"(d-1)^n": (d - 1) ** n}))
    return cases


# -- running -----------------------------------------------------------------------------------

def run_case(case: SweepCase, seed: int, *, m_max: int = 1, budget: int | None = None, workers: int = 1, e_max: int = 6) -> dict:
    rep = verify(case.f, m_max=m_max, budget=budget, workers=workers, e_max=e_max, diagnostics=False)
    hyp = rep.hypotheses
    D = rep.predicted_dimension
    mismatch = D is not None and any(v != D for v in case.reference.values())
    rec = rep.recovery
    ratios = [c["max_ratio"] for c in rep.bound_checks]
    return {
        "preset": case.preset,
        "seed": seed,
        "case": case.label,
        "p": case.f.domain.p,
        "s": case.f.domain.s,
        "n": case.f.nvars,
        "d": hyp.d,
        "f": case.f.to_string(),
        "singular_points": len(hyp.points),
        "milnor_numbers": hyp.milnor_numbers,
        "weighted_degrees": hyp.degrees,
        "sum_mu": sum(hyp.milnor_numbers),
        "D_predicted": D,
        "reference_values": case.reference,
        "reference_flag": DISAGREES if mismatch else "",
        "abs_S1": rep.sums["abs_S"][0] if rep.sums["abs_S"] else None,
        "M": rep.sums["M"],
        "max_bound_ratio": None if not ratios or None in ratios else max(ratios),
        "recovery": "not attempted" if rec is None else rec.status,
        "verdict": hyp.verdict,
        "consistent": rep.consistent,
    }


def build_cases(preset: str, *, p_values, seed: int, count: int = 5, d_values=None, n_values=None, multiplicities=None) -> list[SweepCase]:
    if preset == "binary-forms":
        return binary_forms(p_values, count, seed, multiplicities)
    if preset == "line-arrangements":
        return line_arrangements(p_values, d_values or [3, 4], seed)
    if preset == "smooth-fermat":
        return smooth_fermat(p_values, d_values or [3], n_values or [2])
    raise ValueError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")


def run_sweep(cases: list[SweepCase], seed: int, **kw) -> list[dict]:
    return [run_case(c, seed, **kw) for c in cases]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, list):
        return ";".join(str(x) for x in v)
    if isinstance(v, dict):
        return ";".join(f"{k}={x}" for k, x in v.items())
    if isinstance(v, float):
        return repr(v)
    return str(v)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(f"# schema: {SWEEP_SCHEMA}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_cell(r[c]) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list[dict], seed: int) -> str:
    return json.dumps({"schema": SWEEP_SCHEMA, "seed": seed, "rows": rows}, sort_keys=True, indent=2)


__all__ = [
    "COLUMNS",
    "DISAGREES",
    "PRESETS",
    "SWEEP_SCHEMA",
    "SweepCase",
    "arrangement_reference",
    "binary_form_applicable",
    "binary_form_case",
    "binary_forms",
    "build_cases",
    "generic_arrangement",
    "line_arrangement_case",
    "line_arrangements",
    "rows_to_csv",
    "rows_to_json",
    "run_case",
    "run_sweep",
    "smooth_fermat",
    "triangle_case",
]
