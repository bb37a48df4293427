"""Sparse multivariate polynomials over a finite field or the rationals.

A polynomial is an immutable map from exponent tuples to nonzero
coefficients.  The coefficient domain is either a
:class:`~expsums.ff_arith.FieldDescriptor` or :data:`QQ`.

Text grammar accepted by :func:`parse` (whitespace is ignored)::

    poly    := ["+" | "-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := primary ("^" INT)*
    primary := INT | VAR | "(" poly ")" | "-" primary
    VAR     := "x" INT            (x1 .. xn)
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .ff_arith import FieldDescriptor, FieldElement, embed

EXPONENT_LIMIT = 2**16


class Rationals:
    """The rational numbers as a coefficient domain (used for weight solves)."""

    zero = Fraction(0)
    one = Fraction(1)
    p = 0

    def __call__(self, value):
        return Fraction(value)

    element = __call__

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = Rationals()


def characteristic(domain) -> int:
    return getattr(domain, "p", 0)


def grevlex_key(exps: Sequence[int]):
    """Sort key realizing graded reverse lexicographic order (larger = bigger)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class PolySyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class MultiPoly:
    __slots__ = ("domain", "nvars", "terms", "_hash")

    def __init__(self, domain, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.domain = domain
        self.nvars = nvars
        clean = {}
        zero = domain.zero
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"monomial {exps} has wrong length for {nvars} variables")
            if any(e >= EXPONENT_LIMIT or e < 0 for e in exps):
                raise OverflowError(f"exponent out of range in {exps}")
            if not isinstance(c, (Fraction, FieldElement)):
                c = domain(c)
            if c != zero:
                clean[exps] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero_poly(cls, domain, nvars):
        return cls(domain, nvars, {})

    @classmethod
    def constant(cls, domain, nvars, c):
        return cls(domain, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, domain, nvars, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls(domain, nvars, {tuple(exps): domain.one})

    def _new(self, terms):
        out = MultiPoly.__new__(MultiPoly)
        out.domain, out.nvars, out.terms, out._hash = self.domain, self.nvars, terms, None
        return out

    # -- basic queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> float:
        """Total degree; the zero polynomial has degree -inf."""
        if not self.terms:
            return float("-inf")
        return max(sum(e) for e in self.terms)

    @property
    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def coeff(self, exps) -> object:
        return self.terms.get(tuple(exps), self.domain.zero)

    def constant_term(self):
        return self.coeff((0,) * self.nvars)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self) -> tuple[int, ...]:
        return max(self.terms, key=grevlex_key)

    # -- ring operations -----------------------------------------------------------
    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.domain, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        zero = self.domain.zero
        for m, c in other.terms.items():
            v = terms.get(m, zero) + c
            if v == zero:
                terms.pop(m, None)
            else:
                terms[m] = v
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.domain(other) if not isinstance(other, (Fraction, FieldElement)) else other
            if c == self.domain.zero:
                return self._new({})
            return self._new({m: v * c for m, v in self.terms.items()})
        other = self._lift(other)
        zero = self.domain.zero
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, zero) + c1 * c2
        for m in [m for m, c in terms.items() if c == zero]:
            del terms[m]
        if terms and max(max(m) for m in terms) >= EXPONENT_LIMIT:
            raise OverflowError("exponent overflow in product")
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.domain, self.nvars, self.domain.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self == self._lift(other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def scale(self, c) -> "MultiPoly":
        return self * c

    def monic(self) -> "MultiPoly":
        lc = self.terms[self.leading_monomial()]
        return self * (self.domain.one / lc)

    # -- structure ---------------------------------------------------------------------
    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        comps: dict[int, dict] = {}
        for m, c in self.terms.items():
            comps.setdefault(sum(m), {})[m] = c
        return {k: self._new(v) for k, v in sorted(comps.items(), reverse=True)}

    def component(self, degree: int) -> "MultiPoly":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == degree})

    def partial(self, j: int) -> "MultiPoly":
        terms = {}
        zero = self.domain.zero
        for m, c in self.terms.items():
            k = m[j]
            if k:
                v = c * k
                if v != zero:
                    mm = list(m)
                    mm[j] -= 1
                    terms[tuple(mm)] = v
        return self._new(terms)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(j) for j in range(self.nvars)]

    def map_coeffs(self, fn, domain) -> "MultiPoly":
        return MultiPoly(domain, self.nvars, {m: fn(c) for m, c in self.terms.items()})

    def change_field(self, target: FieldDescriptor) -> "MultiPoly":
        """Push coefficients into an extension field."""
        if self.domain is target:
            return self
        return self.map_coeffs(lambda c: embed(c, target), target)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute x_i -> images[i] (all images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        ring_n = images[0].nvars if images else 0
        dom = images[0].domain if images else self.domain
        result = MultiPoly.zero_poly(dom, ring_n)
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        for m, c in self.terms.items():
            term = MultiPoly.constant(dom, ring_n, c)
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def linear_change(self, M: Sequence[Sequence]) -> "MultiPoly":
        """f o M, i.e. x_i -> sum_j M[i][j] x_j.  M must be invertible."""
        n = self.nvars
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("matrix shape mismatch")
        dom = self.domain
        rows = [[dom(c) if not isinstance(c, (Fraction, FieldElement)) else c for c in r] for r in M]
        if determinant(rows, dom) == dom.zero:
            raise ValueError("singular matrix")
        images = []
        for r in rows:
            images.append(MultiPoly(dom, n, {tuple(int(i == j) for i in range(n)): r[j] for j in range(n)}))
        return self.compose(images)

    def substitute(self, values: Mapping[int, object]) -> "MultiPoly":
        """Fix some variables to constants; the result keeps the others (renumbered)."""
        keep = [i for i in range(self.nvars) if i not in values]
        dom = self.domain
        terms: dict = {}
        powers: dict = {}
        for m, c in self.terms.items():
            v = c
            for i, val in values.items():
                k = m[i]
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = val**k
                    v = v * powers[key]
            if v != dom.zero:
                mm = tuple(m[i] for i in keep)
                terms[mm] = terms.get(mm, dom.zero) + v
        return MultiPoly(dom, len(keep), terms)

    def dehomogenize_translate(self, point: Sequence) -> "MultiPoly":
        """Local equation at a projective point.

        Uses the chart x_i = 1 where i is the first nonzero coordinate (the
        point is scaled so that coordinate is 1) and moves the point to the
        origin.  Returns a polynomial in n-1 variables over the point's field.
        """
        coords = list(point)
        if len(coords) != self.nvars:
            raise ValueError("point dimension mismatch")
        nz = [i for i, c in enumerate(coords) if not _is_zero(c)]
        if not nz:
            raise ValueError("zero vector is not a projective point")
        i0 = nz[0]
        lead = coords[i0]
        coords = [c / lead for c in coords]
        field = coords[0].field if isinstance(coords[0], FieldElement) else self.domain
        F = self.change_field(field) if isinstance(field, FieldDescriptor) else self
        m = self.nvars - 1
        images = []
        k = 0
        for i in range(self.nvars):
            if i == i0:
                images.append(MultiPoly.constant(field, m, field.one))
            else:
                images.append(MultiPoly.var(field, m, k) + coords[i])
                k += 1
        return F.compose(images)

    # -- evaluation ---------------------------------------------------------------------------
    def evaluate(self, point: Sequence):
        """Horner evaluation (recursive in the first variable)."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        if not self.terms:
            if point and isinstance(point[0], FieldElement):
                return point[0].field.zero
            return self.domain.zero
        dom = point[0].field if point and isinstance(point[0], FieldElement) else self.domain
        coerce = (lambda c: embed(c, dom)) if isinstance(dom, FieldDescriptor) and dom is not self.domain else (lambda c: c)
        return _horner(sorted((m, coerce(c)) for m, c in self.terms.items()), list(point), 0, dom)

    def evaluate_naive(self, point: Sequence):
        dom = point[0].field if point and isinstance(point[0], FieldElement) else self.domain
        acc = dom.zero
        for m, c in self.terms.items():
            t = embed(c, dom) if isinstance(c, FieldElement) else dom(c)
            for x, k in zip(point, m):
                if k:
                    t = t * x**k
            acc = acc + t
        return acc

    # -- text ------------------------------------------------------------------------------------
    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.support:
            c = self.terms[m]
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(m) if k
            )
            cs = _coeff_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_string()!r}, n={self.nvars}, {self.domain!r})"

    __str__ = to_string


def _is_zero(c) -> bool:
    if isinstance(c, FieldElement):
        return c.is_zero()
    return c == 0


def _coeff_str(c) -> str:
    if isinstance(c, FieldElement) and c.field.s > 1 and sum(1 for x in c.coeffs if x) > 1:
        return f"({c!r})"
    return repr(c) if isinstance(c, FieldElement) else str(c)


def _horner(terms, point, var, dom):
    """terms: sorted list of (exps, coeff) sharing exps[:var]."""
    if var == len(point):
        acc = dom.zero
        for _, c in terms:
            acc = acc + c
        return acc
    groups: dict[int, list] = {}
    for m, c in terms:
        groups.setdefault(m[var], []).append((m, c))
    x = point[var]
    acc = dom.zero
    prev = None
    for k in sorted(groups, reverse=True):
        if prev is not None:
            acc = acc * x ** (prev - k)
        acc = acc + _horner(groups[k], point, var + 1, dom)
        prev = k
    if prev:
        acc = acc * x**prev
    return acc


def determinant(rows, domain):
    a = [list(r) for r in rows]
    n = len(a)
    det = domain.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(a[r][col])), None)
        if piv is None:
            return domain.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = domain.one / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if not _is_zero(f):
                for k in range(col, n):
                    a[r][k] = a[r][k] - f * a[col][k]
    return det


def matrix_inverse(rows, domain):
    n = len(rows)
    a = [list(r) + [domain.one if i == j else domain.zero for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(a[r][col])), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = domain.one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not _is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


def matmul(A, B, domain):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), domain.zero) for j in range(len(B[0]))] for i in range(len(A))]


# -- parser ---------------------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(0) + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("var", int(m.group(2)), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, nvars, domain):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = nvars
        self.dom = domain

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise PolySyntaxError(f"expected {op!r}", t[2])

    def poly(self):
        t = self.peek()
        neg = False
        if t[0] == "op" and t[1] in "+-":
            self.take()
            neg = t[1] == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.primary()
        while self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                raise PolySyntaxError("expected integer exponent", t[2])
            if t[1] >= EXPONENT_LIMIT:
                raise PolySyntaxError("exponent too large", t[2])
            base = base ** t[1]
        return base

    def primary(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return MultiPoly.constant(self.dom, self.n, self.dom(val))
        if kind == "var":
            if not 1 <= val <= self.n:
                raise PolySyntaxError(f"variable x{val} out of range 1..{self.n}", pos)
            return MultiPoly.var(self.dom, self.n, val - 1)
        if kind == "op" and val == "(":
            inner = self.poly()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.primary()
        raise PolySyntaxError("unexpected token" if kind != "end" else "unexpected end of input", pos)


def parse(text: str, nvars: int, domain) -> MultiPoly:
    """Parse text like ``"x1^2*x2 + 3*x2^2"`` into a polynomial in x1..xn."""
    p = _Parser(text, nvars, domain)
    out = p.poly()
    t = p.peek()
    if t[0] != "end":
        raise PolySyntaxError("trailing input", t[2])
    return out


def from_terms(domain, nvars: int, items: Iterable[tuple[Sequence[int], object]]) -> MultiPoly:
    terms: dict = {}
    for m, c in items:
        m = tuple(m)
        terms[m] = terms.get(m, domain.zero) + (c if isinstance(c, (Fraction, FieldElement)) else domain(c))
    return MultiPoly(domain, nvars, terms)
