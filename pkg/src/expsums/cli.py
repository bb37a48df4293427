"""Command-line front end: ``expsums {sum,verify,sweep,selftest}``.

Exit codes: 0 success (a hypothesis failing is a normal outcome), 1 an
internal inconsistency or a failed oracle, 2 invalid input or an exceeded
evaluation budget.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass

from .charsum import BudgetExceeded, char_sum, default_budget, trace_histogram
from .ff_arith import FieldError, build_field, is_prime
from .mpoly import PolySyntaxError, parse
from .selftest import run_selftest
from .singular import DEFAULT_E_MAX
from .sweeps import PRESETS, build_cases, rows_to_csv, rows_to_json, run_sweep
from .verifier import VerificationReport, verify

SUM_SCHEMA = "expsums.sum/1"

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    p: int
    s: int = 1
    n: int = 1
    f: str = ""
    e_max: int = DEFAULT_E_MAX
    m_max: int | None = None
    budget: int | None = None
    b: int = 1
    workers: int = 1
    fmt: str = "text"
    out: str | None = None
    preset: str | None = None

    def validate(self) -> "RunConfig":
        if not is_prime(self.p):
            raise ConfigError(f"--p {self.p} is not prime")
        if self.s < 1 or self.n < 1:
            raise ConfigError("--s and --n must be positive")
        if self.e_max < 1:
            raise ConfigError("--e-max must be positive")
        if self.m_max is not None and self.m_max < 1:
            raise ConfigError("--m-max must be positive")
        if self.budget is not None and self.budget < 1:
            raise ConfigError("--budget must be positive")
        if not 1 <= self.b < self.p:
            raise ConfigError(f"--b must lie in 1..{self.p - 1} (nontrivial character)")
        if self.workers < 1:
            raise ConfigError("--workers must be positive")
        return self


def _default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _field_args(sp: argparse.ArgumentParser, need_f: bool = True) -> None:
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--s", type=int, default=1, help="base field is F_{p^s} (default 1)")
    sp.add_argument("--n", type=int, required=True, help="number of variables")
    if need_f:
        sp.add_argument("--f", required=True, help='polynomial in x1..xn, e.g. "x1^2*x2 + x2^2"')
    sp.add_argument("--b", type=int, default=1, help="character index b in 1..p-1 (default 1)")


def _run_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--budget", type=int, default=None, help="max evaluations per sum (default $EXPSUMS_BUDGET or 2^40)")
    sp.add_argument("--workers", type=int, default=_default_workers(), help="worker processes (default: available CPUs)")
    sp.add_argument("--out", default=None, help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="expsums", description="Exponential sums over finite fields: exact values and bound verification.")
    ap.add_argument("-q", "--quiet", action="store_true", help="suppress progress messages")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sum", help="exact S(psi_b, f) over F_{q^m}^n")
    _field_args(s)
    s.add_argument("--m", type=int, default=1, help="extension degree m (default 1)")
    s.add_argument("--json", dest="fmt", action="store_const", const="json", default="text")
    s.add_argument("--format", dest="fmt", choices=["text", "json"])
    _run_args(s)

    v = sub.add_parser("verify", help="check hypotheses, bound and purity")
    _field_args(v)
    v.add_argument("--e-max", type=int, default=DEFAULT_E_MAX, help=f"extension bound for singular points (default {DEFAULT_E_MAX})")
    v.add_argument("--m-max", type=int, default=None, help="largest extension degree for sums (default min(2D, budget))")
    v.add_argument("--isolation", choices=["exact", "count"], default="exact")
    v.add_argument("--json", dest="fmt", action="store_const", const="json", default="text")
    v.add_argument("--format", dest="fmt", choices=["text", "json"])
    _run_args(v)

    w = sub.add_parser("sweep", help="run a family of examples and tabulate")
    w.add_argument("--preset", choices=PRESETS, required=True)
    w.add_argument("--p", default="5", help="comma-separated primes (default 5)")
    w.add_argument("--d", default=None, help="comma-separated degrees")
    w.add_argument("--n", default=None, help="comma-separated variable counts (smooth-fermat)")
    w.add_argument("--mult", default=None, help="root multiplicities for binary-forms, e.g. 2,1")
    w.add_argument("--count", type=int, default=5, help="cases per binary-forms sweep (default 5)")
    w.add_argument("--seed", type=int, default=None, help="random seed (default: drawn and printed)")
    w.add_argument("--m-max", type=int, default=1, help="extension degrees per case (default 1)")
    w.add_argument("--e-max", type=int, default=DEFAULT_E_MAX)
    w.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    _run_args(w)

    sub.add_parser("selftest", help="run the embedded oracle suite")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _field_name(p: int, s: int) -> str:
    return f"F_{p}" if s == 1 else f"F_{p}^{s}"


def cmd_sum(args) -> int:
    cfg = RunConfig(args.p, args.s, args.n, args.f, b=args.b, budget=args.budget, workers=args.workers, fmt=args.fmt, out=args.out).validate()
    if args.m < 1:
        raise ConfigError("--m must be positive")
    field = build_field(cfg.p, cfg.s)
    f = parse(cfg.f, cfg.n, field)
    h = trace_histogram(f, field, args.m, budget=cfg.budget, chunks=cfg.workers, workers=cfg.workers)
    S = char_sum(h, cfg.b)
    z = S.numeric()
    if cfg.fmt == "json":
        doc = {
            "schema": SUM_SCHEMA,
            "p": cfg.p,
            "s": cfg.s,
            "n": cfg.n,
            "m": args.m,
            "b": cfg.b,
            "f": f.to_string(),
            "histogram": h.to_json(),
            "S": S.to_json(),
            "numeric": [z.real, z.imag],
            "abs": abs(z),
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", cfg.out)
    else:
        lines = [
            f"f = {f.to_string()} over {_field_name(cfg.p, cfg.s * args.m)} in {cfg.n} variable{'s' if cfg.n > 1 else ''}, character b = {cfg.b}",
            f"S exact   = {S}",
            f"S numeric = {z.real:.12g} {'+' if z.imag >= 0 else '-'} {abs(z.imag):.12g}i",
            f"|S|       = {abs(z):.12g}",
            "trace histogram: " + " ".join(f"{a}:{c}" for a, c in enumerate(h.counts)),
        ]
        _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def format_report(rep: VerificationReport) -> str:
    h = rep.hypotheses
    out = [
        f"f = {rep.input['f']} over {_field_name(rep.input['p'], rep.input['s'])}, n = {rep.input['n']}, d = {h.d}",
        f"verdict: {h.verdict}",
        f"  h1 isolated weighted homogeneous: {h.h1}",
        f"  h2 singular points off f_(d-1):   {h.h2}",
        f"  h3 gcd(p, d(d-1) prod delta) = 1: {h.h3}",
    ]
    for r in h.reasons:
        out.append(f"  - {r}")
    if h.isolation:
        out.append(f"isolation: {h.isolation['status']} ({h.isolation['method']})")
    if h.critical_locus:
        out.append(f"critical locus of f: {h.critical_locus['status']}")
    if h.transversal:
        out.append(f"transversal hyperplane: normal {h.transversal['normal']} over degree {h.transversal['e']}")
    out.append(f"singular points of the top form: {len(h.points)}")
    for rec in h.points:
        g = rec["germ"]
        out.append(
            f"  {rec['point']['label']} (e = {rec['point']['e']}): local {g['local_equation']['text']}, "
            f"weights {g['weights']} ({g['weights_source']}), delta {g['total_degree']}, mu {g['milnor']}, "
            f"weight formula {g['milnor_orlik']}"
        )
    out.append(f"predicted dimension D = {rep.predicted_dimension}")
    if rep.euler_chain:
        c = rep.euler_chain
        out.append(
            f"Euler chain (sign {c['sign']:+d}): closed fiber {c['projective_fiber']}, top form {c['top_form']}, "
            f"affine fiber {c['affine_fiber']}, total space {c['total_space']}, dimension {c['dimension']}"
        )
    for m, a in enumerate(rep.sums["abs_S"], start=1):
        out.append(f"|S_{m}| = {a:.10g}")
    for c in rep.bound_checks:
        ratio = "n/a" if c["max_ratio"] is None else f"{c['max_ratio']:.6f}"
        out.append(f"bound m = {c['m']}: max |S|/(D q^(mn/2)) = {ratio} over all characters -> {'holds' if c['holds'] else 'VIOLATED'}")
    if rep.recovery is not None:
        r = rep.recovery
        out.append(f"eigenvalue recovery: {r.status}; recurrence verified {r.recurrence_verified} on {r.surplus_terms} surplus terms")
        if r.root_moduli:
            mods = r.root_moduli[min(r.root_moduli)]
            out.append(f"  root moduli {', '.join(f'{x:.10g}' for x in mods)} vs q^(n/2) = {r.q ** (r.n / 2):.10g}")
    else:
        out.append("eigenvalue recovery: not attempted (needs M >= D + 1 within the budget)")
    for pb in rep.problems:
        out.append(f"INCONSISTENCY: {pb}")
    return "\n".join(out) + "\n"


def cmd_verify(args) -> int:
    cfg = RunConfig(
        args.p, args.s, args.n, args.f, e_max=args.e_max, m_max=args.m_max, budget=args.budget,
        b=args.b, workers=args.workers, fmt=args.fmt, out=args.out,
    ).validate()
    field = build_field(cfg.p, cfg.s)
    f = parse(cfg.f, cfg.n, field)
    rep = verify(f, e_max=cfg.e_max, m_max=cfg.m_max, budget=cfg.budget, b=cfg.b, workers=cfg.workers, isolation=args.isolation)
    if cfg.fmt == "json":
        _emit(json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n", cfg.out)
    else:
        _emit(format_report(rep), cfg.out)
    return EXIT_OK if rep.consistent else EXIT_INCONSISTENT


def cmd_sweep(args) -> int:
    p_values = _ints(args.p)
    if not p_values or not all(is_prime(p) for p in p_values):
        raise ConfigError(f"--p {args.p!r} must list primes")
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**31)
    print(f"seed = {seed}", file=sys.stderr)
    cases = build_cases(
        args.preset,
        p_values=p_values,
        seed=seed,
        count=args.count,
        d_values=_ints(args.d),
        n_values=_ints(args.n),
        multiplicities=_ints(args.mult),
    )
    rows = run_sweep(cases, seed, m_max=args.m_max, budget=args.budget, workers=args.workers, e_max=args.e_max)
    _emit(rows_to_csv(rows) if args.fmt == "csv" else rows_to_json(rows, seed) + "\n", args.out)
    return EXIT_OK if all(r["consistent"] for r in rows) else EXIT_INCONSISTENT


def cmd_selftest(args) -> int:
    results = run_selftest()
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print(f"selftest: {'all oracles pass' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_INCONSISTENT


COMMANDS = {"sum": cmd_sum, "verify": cmd_verify, "sweep": cmd_sweep, "selftest": cmd_selftest}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s", stream=sys.stderr)
    if getattr(args, "budget", None) is None and args.command != "selftest":
        args.budget = default_budget()
    try:
        return COMMANDS[args.command](args)
    except PolySyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (ConfigError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
