"""Embedded oracle suite.

Each oracle pits a pipeline stage against a value known independently:
Gauss sums, the Hasse-Davenport relation for a quadratic sum, point counts
of a nodal cubic and of a triangle of lines, Milnor numbers against the
weight product formula, and the Euler characteristic chain.  The sign and
Newton routines are injectable so that deliberately broken versions can be
shown to trip the suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .charsum import extension_sums
from .cycint import CycInt
from .ff_arith import build_field
from .mpoly import parse
from .singular import detect_weights, milnor_number, milnor_orlik
from .verifier import (
    NODAL_CUBIC,
    TRIANGLE,
    ChainMismatch,
    chi_from_point_counts,
    dimension_via_chi,
    euler_singular_top_form,
    newton_identities,
    recover_eigenvalues,
    vanishing_cycle_sign,
)


@dataclass
class OracleResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _gauss() -> OracleResult:
    errs = []
    for p in (5, 7, 13):
        S = extension_sums(parse("x1^2", 1, build_field(p)), build_field(p), 1).sums[0]
        errs.append(abs(abs(S.numeric()) - math.sqrt(p)))
    return OracleResult("gauss-sums", max(errs) < 1e-9, f"max ||S| - sqrt(p)| = {max(errs):.2e} for p = 5, 7, 13")


def _hasse_davenport(newton) -> OracleResult:
    F5 = build_field(5)
    sums = extension_sums(parse("x1^2", 1, F5), F5, 3).sums
    rec = recover_eigenvalues(sums, 1, 5, 1, newton=newton)
    return OracleResult("hasse-davenport", rec.ok, f"x^2 over F_5, D = 1: {rec.status}")


def _smooth_cubic(newton) -> OracleResult:
    F5 = build_field(5)
    sums = extension_sums(parse("x1^3 + x1", 1, F5), F5, 4).sums
    rec = recover_eigenvalues(sums, 2, 5, 1, newton=newton)
    return OracleResult("smooth-regression", rec.ok, f"x^3 + x over F_5, D = 2: {rec.status}")


def _chi_oracle(name: str, text: str, mus: list[int], sign: int) -> OracleResult:
    F = parse(text, 3, build_field(5))
    counted = chi_from_point_counts(F)
    formula = euler_singular_top_form(3, 3, mus, sign)
    return OracleResult(name, counted == formula, f"point counts give chi = {counted}, formula with sign {sign:+d} gives {formula}")


def _milnor() -> OracleResult:
    F7 = build_field(7)
    bad = []
    germs = ["x1*x2", "x1^3 + x2^2", "x1^2 + x2^2", "x1^3 + x2^3", "x1^4 + x2^4", "x1^5 + x2^5", "x1^3 + x1*x2^3", "x1^2 + x2^3 + x3^5"]
    for text in germs:
        n = 3 if "x3" in text else 2
        g = parse(text, n, F7)
        w = detect_weights(g)
        mu = milnor_number(g)
        if w is None or milnor_orlik(*w) != Fraction(mu):
            bad.append(text)
    return OracleResult("milnor-cross-check", not bad, f"{len(germs) - len(bad)}/{len(germs)} germs agree" + (f"; failing {bad}" if bad else ""))


def _chain(sign: int) -> OracleResult:
    n_checked = 0
    try:
        for d in range(2, 7):
            for n in range(1, 5):
                for total in range(0, (d - 1) ** n):
                    mus = [1] * total
                    dimension_via_chi(d, n, mus, sign)
                    n_checked += 1
    except ChainMismatch as exc:
        return OracleResult("euler-chain", False, str(exc))
    return OracleResult("euler-chain", True, f"{n_checked} (d, n, mu) combinations match the closed form")


def run_selftest(
    sign: int | None = None,
    newton: Callable[[list[CycInt], int], list[CycInt]] = newton_identities,
) -> list[OracleResult]:
    sign = vanishing_cycle_sign() if sign is None else sign
    return [
        _gauss(),
        _hasse_davenport(newton),
        _smooth_cubic(newton),
        _chi_oracle("nodal-cubic-chi", NODAL_CUBIC, [1], sign),
        _chi_oracle("triangle-chi", TRIANGLE, [1, 1, 1], sign),
        _milnor(),
        _chain(sign),
    ]


__all__ = ["OracleResult", "run_selftest"]
