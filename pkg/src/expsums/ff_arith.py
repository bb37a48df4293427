"""Finite fields F_p, F_{p^s} and their extensions.

Elements are coefficient vectors in the power basis of a fixed monic
irreducible modulus.  The modulus and every embedding root are chosen by a
lexicographic scan (constant coefficient compared first), so two runs of the
library always build bit-identical fields.

Besides scalar arithmetic this module owns :class:`FieldTables`, the
discrete-log / Zech-log tables used by the vectorized enumeration code.
"""
from __future__ import annotations

import itertools
import math
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

DEFAULT_SIZE_BOUND = 2**31
TABLE_LIMIT = 2**24


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as int lists, low degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _xpow_mod(e: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (low degree first)."""
    m = [c % p for c in modulus]
    s = len(m) - 1
    if s < 1 or m[-1] != 1:
        return False
    if s == 1:
        return True
    if _xpow_mod(p**s, m, p) != [0, 1]:
        return False
    for r in prime_factors(s):
        h = _xpow_mod(p ** (s // r), m, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(m, h, p)) > 1:
            return False
    return True


def _first_irreducible(p: int, s: int) -> tuple[int, ...]:
    if s == 1:
        return (0, 1)
    # lexicographic on (c_0, ..., c_{s-1}): c_0 is the most significant key
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=s - 1):
            cand = (c0,) + rest + (1,)
            if is_irreducible(cand, p):
                return cand
    raise FieldError(f"no irreducible polynomial of degree {s} over F_{p}")


class FieldDescriptor:
    """The field F_{p^s} = F_p[t]/(modulus).  Immutable; use :func:`build_field`."""

    __slots__ = ("p", "s", "q", "modulus", "__dict__")

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = modulus

    def __repr__(self) -> str:
        if self.s == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.s})"

    def __reduce__(self):
        return (build_field, (self.p, self.s))

    # -- constructors -----------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is self:
                return value
            if value.field.p == self.p and value.field.s == 1:
                return self.element(value.coeffs[0])
            return embed(value, self)
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.s - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.s:
            raise FieldError(f"expected {self.s} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def from_index(self, idx: int) -> "FieldElement":
        coeffs = []
        for _ in range(self.s):
            idx, c = divmod(idx, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.s)

    @cached_property
    def one(self) -> "FieldElement":
        return self.element(1)

    @cached_property
    def gen(self) -> "FieldElement":
        """The class of t (equals 0 in a prime field, whose modulus is t)."""
        if self.s == 1:
            return self.zero
        return FieldElement(self, (0, 1) + (0,) * (self.s - 2))

    @cached_property
    def _basis_traces(self) -> tuple[int, ...]:
        out = []
        for i in range(self.s):
            x = FieldElement(self, tuple(int(i == j) for j in range(self.s)))
            acc, y = self.zero, x
            for _ in range(self.s):
                acc = acc + y
                y = frobenius(y)
            out.append(acc.coeffs[0])
        return tuple(out)

    @cached_property
    def tables(self) -> "FieldTables":
        return FieldTables(self)

    def is_subfield_of(self, other: "FieldDescriptor") -> bool:
        return self.p == other.p and other.s % self.s == 0


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fd = self.field
        p, s = fd.p, fd.s
        if s == 1:
            return FieldElement(fd, (self.coeffs[0] * other.coeffs[0] % p,))
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        m = fd.modulus
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k] % p
            if c:
                base = k - s
                for i in range(s):
                    prod[base + i] -= c * m[i]
        return FieldElement(fd, tuple(c % p for c in prod[:s]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.element(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.field.element(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.s, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def index(self) -> int:
        p = self.field.p
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * p + c
        return idx

    def __repr__(self) -> str:
        if self.field.s == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if not mono:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mono)
                else:
                    terms.append(f"{c}*{mono}")
        return "+".join(terms) or "0"


@lru_cache(maxsize=None)
def _build_field(p: int, s: int) -> FieldDescriptor:
    return FieldDescriptor(p, s, _first_irreducible(p, s))


def build_field(p: int, s: int = 1, size_bound: int = DEFAULT_SIZE_BOUND) -> FieldDescriptor:
    """Return F_{p^s}, with the lexicographically first irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if s < 1:
        raise FieldError("extension degree must be positive")
    if p**s > size_bound:
        raise FieldError(f"field size {p}^{s} exceeds bound {size_bound}")
    return _build_field(p, s)


def frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p."""
    return x ** x.field.p


def trace_to_prime(x: FieldElement) -> int:
    """Absolute trace Tr_{F_{p^s}/F_p}(x), as a residue mod p."""
    fd = x.field
    return sum(c * t for c, t in zip(x.coeffs, fd._basis_traces)) % fd.p


def relative_trace(x: FieldElement, sub: FieldDescriptor) -> FieldElement:
    """Tr_{F_{Q}/F_q}(x) = sum x^{q^i}, i < [F_Q:F_q]; returned inside x's field."""
    fd = x.field
    if not sub.is_subfield_of(fd):
        raise FieldError(f"{sub} is not a subfield of {fd}")
    acc, y = fd.zero, x
    for _ in range(fd.s // sub.s):
        acc = acc + y
        y = y**sub.q
    return acc


def norm_to_prime(x: FieldElement) -> int:
    acc, y = x.field.one, x
    for _ in range(x.field.s):
        acc = acc * y
        y = frobenius(y)
    return acc.coeffs[0]


def chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    """Split range(total) into `chunks` contiguous, nearly equal pieces."""
    chunks = max(1, min(chunks, total)) if total else 1
    base, extra = divmod(total, chunks)
    out, lo = [], 0
    for i in range(chunks):
        hi = lo + base + (i < extra)
        out.append((lo, hi))
        lo = hi
    return out


def enumerate_field(field: FieldDescriptor, chunk: tuple[int, int] | None = None) -> Iterator[FieldElement]:
    """All q elements in odometer order (coefficient c_0 turns fastest).

    ``chunk=(i, c)`` yields only the i-th of c contiguous pieces.
    """
    lo, hi = 0, field.q
    if chunk is not None:
        i, c = chunk
        lo, hi = chunk_bounds(field.q, c)[i]
    for idx in range(lo, hi):
        yield field.from_index(idx)


# -- embeddings ---------------------------------------------------------------

def _eval_modulus_everywhere(sub: FieldDescriptor, target: FieldDescriptor) -> np.ndarray:
    """Indices of target elements that are roots of sub.modulus (coeffs in F_p)."""
    tb = target.tables
    acc = np.full(target.q, tb.ZERO, dtype=np.int64)
    x = tb.log
    for c in reversed(sub.modulus):
        acc = tb.ladd(tb.lmul(acc, x), tb.log_of_prime(c))
    return np.nonzero(acc == tb.ZERO)[0]


@lru_cache(maxsize=None)
def embedding_root(sub: FieldDescriptor, target: FieldDescriptor) -> FieldElement:
    """Image of t under F_q -> F_Q: the root of sub.modulus with smallest coeff vector."""
    if not sub.is_subfield_of(target):
        raise FieldError(f"cannot embed {sub} into {target}")
    if sub.s == 1:
        return target.zero
    if target.q <= TABLE_LIMIT:
        roots = [target.from_index(int(i)) for i in _eval_modulus_everywhere(sub, target)]
    else:
        from ._upoly import roots_in

        prime = _build_field(sub.p, 1)
        roots = roots_in([prime(c) for c in sub.modulus], prime, target)
    if not roots:
        raise FieldError(f"no root of {sub.modulus} in {target}")
    return min(roots, key=lambda r: r.coeffs)


def embed(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Ring embedding F_q -> F_Q (same p, s | S)."""
    sub = x.field
    if sub is target:
        return x
    if sub.p != target.p or target.s % sub.s:
        raise FieldError(f"cannot embed {sub} into {target}")
    if sub.s == 1:
        return target.element(x.coeffs[0])
    r = embedding_root(sub, target)
    acc = target.zero
    for c in reversed(x.coeffs):
        acc = acc * r + c
    return acc


def primitive_element(field: FieldDescriptor) -> FieldElement:
    """First generator of F_q^* in enumeration order."""
    return field.tables.generator


# -- vectorized tables ----------------------------------------------------------

class FieldTables:
    """Discrete-log machinery for array arithmetic in a field.

    Elements are carried as logs to the base of a primitive element g;
    ``ZERO = q - 1`` stands for the zero element.  Addition goes through the
    Zech table ``zech[k] = log(1 + g^k)``.
    """

    def __init__(self, field: FieldDescriptor):
        if field.q > TABLE_LIMIT:
            raise FieldError(f"{field} too large for lookup tables (limit {TABLE_LIMIT})")
        self.field = field
        p, s, q = field.p, field.s, field.q
        self.order = q - 1
        self.ZERO = q - 1
        self.pow_p = np.array([p**i for i in range(s)], dtype=np.int64)

        g = self._find_generator()
        self.generator = g
        self.exp = self._powers(g)
        log = np.empty(q, dtype=np.int64)
        log[0] = self.ZERO
        log[self.exp] = np.arange(self.order, dtype=np.int64)
        self.log = log

        e = self.exp
        d0 = e % p
        one_plus = e - d0 + (d0 + 1) % p
        zech = log[one_plus]
        self.zech = zech

        digits = self.digits(np.arange(q, dtype=np.int64))
        bt = np.array(field._basis_traces, dtype=np.int64)
        self.trace = (digits @ bt) % p
        # trace of g^k, with the zero sentinel mapping to trace 0
        self.trace_log = np.append(self.trace[self.exp], 0)

    def _find_generator(self) -> FieldElement:
        fd = self.field
        n = fd.q - 1
        if n == 1:
            return fd.one
        factors = prime_factors(n)
        for idx in range(1, fd.q):
            x = fd.from_index(idx)
            if all((x ** (n // r)) != fd.one for r in factors):
                return x
        raise FieldError("no primitive element")  # unreachable for a field

    def _mul_matrix(self, c: FieldElement) -> np.ndarray:
        fd = self.field
        rows = []
        for i in range(fd.s):
            basis = FieldElement(fd, tuple(int(i == j) for j in range(fd.s)))
            rows.append((basis * c).coeffs)
        return np.array(rows, dtype=np.int64)

    def _powers(self, g: FieldElement) -> np.ndarray:
        fd = self.field
        n = self.order
        block = max(1, math.isqrt(n))
        first = []
        x = fd.one
        for _ in range(min(block, n)):
            first.append(x.coeffs)
            x = x * g
        cur = np.array(first, dtype=np.int64)
        chunks = [cur]
        done = len(first)
        if done < n:
            step = self._mul_matrix(g ** block)
            while done < n:
                cur = (cur @ step) % fd.p
                chunks.append(cur)
                done += len(cur)
        coeffs = np.concatenate(chunks)[:n]
        return coeffs @ self.pow_p

    def digits(self, idx: np.ndarray) -> np.ndarray:
        p = self.field.p
        return (idx[..., None] // self.pow_p) % p

    def log_of(self, x: FieldElement) -> int:
        return int(self.log[x.index])

    def log_of_prime(self, c: int) -> int:
        return int(self.log[c % self.field.p])

    def lmul(self, a, b):
        z = self.ZERO
        r = (a + b) % self.order
        return np.where((a == z) | (b == z), z, r)

    def ladd(self, a, b):
        z = self.ZERO
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        diff = (b - a) % self.order
        zz = self.zech[diff]
        r = np.where(zz == z, z, (a + zz) % self.order)
        r = np.where(a == z, b, r)
        return np.where(b == z, a, r)

    def lpow(self, a, k: int):
        if k == 0:
            return np.zeros_like(a)
        z = self.ZERO
        return np.where(a == z, z, (a * k) % self.order)
