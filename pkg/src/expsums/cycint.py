"""Exact elements of Z[zeta_p]."""
from __future__ import annotations

import cmath
import math
from typing import Sequence


class CycInt:
    """sum_a c_a zeta_p^a, stored in the canonical form c_{p-1} = 0.

    The canonical coordinates are coordinates in the Z-basis
    1, zeta, ..., zeta^{p-2}, so equality, hashing and exact divisibility by
    an integer are all coordinate-wise.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        if len(coeffs) != p:
            raise ValueError(f"need {p} coefficients, got {len(coeffs)}")
        top = int(coeffs[-1])
        self.p = p
        self.coeffs = tuple(int(c) - top for c in coeffs)

    @classmethod
    def integer(cls, p: int, k: int) -> "CycInt":
        return cls(p, [k] + [0] * (p - 1))

    @classmethod
    def zeta(cls, p: int, a: int = 1) -> "CycInt":
        c = [0] * p
        c[a % p] = 1
        return cls(p, c)

    def _check(self, other):
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("cyclotomic rings differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, [a * other for a in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = CycInt.integer(self.p, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, k: int) -> "CycInt":
        """self / k, raising ArithmeticError unless the quotient lies in Z[zeta_p]."""
        if k == 0:
            raise ZeroDivisionError("division by zero")
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k} in Z[zeta_{self.p}]")
        return CycInt(self.p, [c // k for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def galois(self, b: int) -> "CycInt":
        """Image under zeta -> zeta^b."""
        if b % self.p == 0:
            raise ValueError("b must be prime to p")
        out = [0] * self.p
        for a, c in enumerate(self.coeffs):
            out[a * b % self.p] += c
        return CycInt(self.p, out)

    def numeric(self, b: int = 1) -> complex:
        return numeric_value(self, b)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "CycInt":
        return cls(int(data["p"]), [int(c) for c in data["coeffs"]])

    def __repr__(self):
        terms = []
        for a, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if a == 0 else f"{c}*z^{a}")
        return f"CycInt(p={self.p}: {' + '.join(terms) or '0'})"


def numeric_value(z: CycInt, b: int = 1) -> complex:
    """Complex embedding zeta_p -> exp(2 pi i b / p)."""
    p = z.p
    if math.gcd(b, p) != 1:
        raise ValueError(f"embedding index {b} is not prime to {p}")
    acc = 0j
    for a, c in enumerate(z.coeffs):
        if c:
            acc += c * cmath.exp(2j * math.pi * (a * b % p) / p)
    return acc
