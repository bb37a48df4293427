"""Exact exponential sums S(psi_b, f) over k^n and its extensions.

The primitive is the trace histogram N_a = #{x : Tr(f(x)) = a}; the sum
for every nontrivial character follows from it as sum_a N_a zeta^{ab}.

The enumeration works in the discrete-log domain.  For a term c*x^a the
value Tr(c x^a) only depends on log c + sum_i a_i log x_i (mod q-1), so one
pass adds integer vectors and reads a trace table.  The domain is split as
outer rows (x_1..x_{n-1}) times the full inner coordinate x_n: outer partial
log sums are computed once per row and broadcast against a cached inner
vector per term.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cycint import CycInt, numeric_value
from .ff_arith import (
    FieldDescriptor,
    FieldElement,
    TABLE_LIMIT,
    build_field,
    chunk_bounds,
    embed,
    enumerate_field,
    trace_to_prime,
)
from .mpoly import MultiPoly

DEFAULT_BUDGET = 2**40
NAIVE_CUTOFF = 4096
_BLOCK_ELEMS = 1 << 20


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"needs {required} evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


def default_budget() -> int:
    env = os.environ.get("EXPSUMS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class TraceHistogram:
    p: int
    counts: list[int]
    q: int
    n: int
    m: int = 1

    def __post_init__(self):
        self.counts = [int(c) for c in self.counts]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def merge(self, other: "TraceHistogram") -> "TraceHistogram":
        if (self.p, self.q, self.n, self.m) != (other.p, other.q, other.n, other.m):
            raise ValueError("histograms of different sums")
        return TraceHistogram(self.p, [a + b for a, b in zip(self.counts, other.counts)], self.q, self.n, self.m)

    def shifted(self, t: int) -> "TraceHistogram":
        """Histogram of f + c where Tr(c) = t."""
        p = self.p
        return TraceHistogram(p, [self.counts[(a - t) % p] for a in range(p)], self.q, self.n, self.m)

    def to_json(self) -> dict:
        return {"p": self.p, "counts": list(self.counts), "q": self.q, "n": self.n, "m": self.m}

    @classmethod
    def from_json(cls, data: dict) -> "TraceHistogram":
        return cls(int(data["p"]), data["counts"], int(data.get("q", 0)), int(data.get("n", 0)), int(data.get("m", 1)))


def _check_character(p: int, b: int) -> None:
    if b % p == 0:
        raise ValueError(f"character index {b} gives the trivial character")


def char_sum(h: TraceHistogram, b: int = 1) -> CycInt:
    """S(psi_b, f) = sum_a N_a zeta^{ab} as an exact cyclotomic integer."""
    p = h.p
    _check_character(p, b)
    coeffs = [0] * p
    for a, n_a in enumerate(h.counts):
        coeffs[a * b % p] += n_a
    return CycInt(p, coeffs)


def extension_field(field: FieldDescriptor, m: int) -> FieldDescriptor:
    return build_field(field.p, field.s * m, size_bound=2**62)


# -- enumeration kernels -------------------------------------------------------------

def _prepared_terms(f: MultiPoly, big: FieldDescriptor):
    tb = big.tables
    out = []
    for exps, c in f.terms.items():
        if isinstance(c, FieldElement):
            c = embed(c, big)
        else:
            c = big.element(int(c))
        out.append((tb.log_of(c), tuple(exps)))
    return out


LOOKUP_LIMIT = 2**26


@lru_cache(maxsize=8)
def _kernel_tables(p: int, S: int, deg: int):
    """Log vector with a large zero sentinel, and a trace lookup indexed by raw log sums.

    A raw sum log c + sum a_i log x_i is at least ``sentinel`` exactly when
    some coordinate with positive exponent is zero.  When the flat lookup
    would be too large, ``lookup`` is None and callers reduce mod q-1.
    """
    tb = build_field(p, S, size_bound=2**62).tables
    order = tb.order
    sentinel = order * (deg + 1)
    logv = tb.log.copy()
    logv[0] = sentinel
    dtype = np.int16 if p < 2**15 else np.int64
    size = order * (deg + 1) + deg * sentinel + 1
    if size > LOOKUP_LIMIT:
        return logv, sentinel, None, tb.trace_log[:order].astype(dtype)
    lookup = np.zeros(size, dtype=dtype)
    lookup[: order * (deg + 1)] = np.tile(tb.trace_log[:order].astype(dtype), deg + 1)
    return logv, sentinel, lookup, None


def _rows_histogram(big: FieldDescriptor, terms, nvars: int, row_lo: int, row_hi: int,
                    col_lo: int, col_hi: int) -> np.ndarray:
    """Counts over outer rows [row_lo, row_hi) and inner columns [col_lo, col_hi)."""
    p, Q = big.p, big.q
    hist = np.zeros(p, dtype=np.int64)
    ncols = col_hi - col_lo
    if not terms:
        hist[0] = (row_hi - row_lo) * ncols
        return hist
    deg = max(1, max(sum(e) for _, e in terms))
    logv, sentinel, lookup, trace_log = _kernel_tables(p, big.s, deg)
    order = Q - 1
    acc_dtype = np.int32 if p * len(terms) < 2**31 else np.int64
    inner_logs = logv[col_lo:col_hi]
    inner = {}
    for _, e in terms:
        k = e[-1]
        if k not in inner:
            inner[k] = inner_logs * k
    rows_per_block = max(1, _BLOCK_ELEMS // max(ncols, 1))
    qpows = [Q**i for i in range(nvars - 2, -1, -1)]
    for blo in range(row_lo, row_hi, rows_per_block):
        bhi = min(row_hi, blo + rows_per_block)
        outer_idx = np.arange(blo, bhi, dtype=np.int64)
        coord_logs = [logv[(outer_idx // qp) % Q] for qp in qpows]
        acc = np.zeros((bhi - blo, ncols), dtype=acc_dtype)
        for logc, e in terms:
            base = np.full(bhi - blo, logc, dtype=np.int64)
            for i in range(nvars - 1):
                if e[i]:
                    base = base + coord_logs[i] * e[i]
            raw = base[:, None] + inner[e[-1]][None, :]
            if lookup is not None:
                acc += lookup[raw]
            else:
                acc += np.where(raw >= sentinel, 0, trace_log[raw % order])
        hist += np.bincount((acc % p).ravel(), minlength=p)[:p]
    return hist


def _vectorized_job(args):
    p, S, terms, nvars, rows, cols = args
    big = build_field(p, S, size_bound=2**62)
    return _rows_histogram(big, terms, nvars, rows[0], rows[1], cols[0], cols[1])


def _naive_counts(f: MultiPoly, big: FieldDescriptor, lo: int, hi: int) -> list[int]:
    """Reference enumeration with scalar field arithmetic over flat indices [lo, hi)."""
    p, Q, n = big.p, big.q, f.nvars
    counts = [0] * p
    if big.s == 1:
        terms = [(int(c.coeffs[0]) if isinstance(c, FieldElement) else int(c) % p, e) for e, c in f.terms.items()]
        for flat in range(lo, hi):
            xs = _unflatten(flat, Q, n)
            v = 0
            for c, e in terms:
                t = c
                for x, k in zip(xs, e):
                    if k:
                        t = t * pow(x, k, p)
                v += t
            counts[v % p] += 1
        return counts
    fb = f.change_field(big)
    for flat in range(lo, hi):
        xs = [big.from_index(i) for i in _unflatten(flat, Q, n)]
        counts[trace_to_prime(fb.evaluate(xs))] += 1
    return counts


def _unflatten(flat: int, Q: int, n: int) -> list[int]:
    """Coordinates of a flat index; the last coordinate varies fastest."""
    out = [0] * n
    for i in range(n - 1, -1, -1):
        flat, out[i] = divmod(flat, Q)
    return out


def trace_histogram(
    f: MultiPoly,
    field: FieldDescriptor,
    m: int = 1,
    *,
    chunks: int = 1,
    workers: int = 1,
    budget: int | None = None,
    method: str = "auto",
) -> TraceHistogram:
    """Exact trace histogram of f over F_{q^m}^n.

    ``chunks`` partitions the domain into contiguous pieces whose private
    histograms are summed; ``workers`` > 1 evaluates chunks in separate
    processes.  The result never depends on either.
    """
    budget = default_budget() if budget is None else budget
    big = extension_field(field, m)
    n = f.nvars
    Q = big.q
    total = Q**n
    if total > budget:
        raise BudgetExceeded(total, budget)
    if method == "auto":
        method = "naive" if total <= NAIVE_CUTOFF or Q > TABLE_LIMIT else "vectorized"
    if method == "naive":
        counts = [0] * field.p
        for lo, hi in chunk_bounds(total, chunks):
            part = _naive_counts(f, big, lo, hi)
            counts = [a + b for a, b in zip(counts, part)]
        return TraceHistogram(field.p, counts, field.q, n, m)
    if method != "vectorized":
        raise ValueError(f"unknown method {method!r}")

    terms = _prepared_terms(f, big)
    if n == 1:
        jobs = [(big.p, big.s, terms, n, (0, 1), c) for c in chunk_bounds(Q, chunks)]
    else:
        jobs = [(big.p, big.s, terms, n, r, (0, Q)) for r in chunk_bounds(Q ** (n - 1), chunks)]
    hist = np.zeros(big.p, dtype=np.int64)
    if workers > 1 and len(jobs) > 1:
        big.tables  # build before forking so children inherit the cache
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            for part in pool.map(_vectorized_job, jobs):
                hist += part
    else:
        for job in jobs:
            hist += _vectorized_job(job)
    return TraceHistogram(field.p, hist.tolist(), field.q, n, m)


def trace_histogram_naive(f: MultiPoly, field: FieldDescriptor, m: int = 1) -> TraceHistogram:
    """Direct enumeration with FieldElement arithmetic; the independent oracle."""
    big = extension_field(field, m)
    fb = f.change_field(big)
    counts = [0] * field.p
    n = f.nvars
    import itertools

    for xs in itertools.product(list(enumerate_field(big)), repeat=n):
        counts[trace_to_prime(fb.evaluate_naive(list(xs)))] += 1
    return TraceHistogram(field.p, counts, field.q, n, m)


def exponential_sum(f: MultiPoly, field: FieldDescriptor, b: int = 1, m: int = 1, **kw) -> CycInt:
    return char_sum(trace_histogram(f, field, m, **kw), b)


@dataclass
class ExtensionSums:
    sums: list[CycInt]
    histograms: list[TraceHistogram]
    truncated: bool = False
    required: int | None = None

    @property
    def M(self) -> int:
        return len(self.sums)


def extension_sums(
    f: MultiPoly,
    field: FieldDescriptor,
    M: int,
    b: int = 1,
    *,
    budget: int | None = None,
    chunks: int = 1,
    workers: int = 1,
) -> ExtensionSums:
    """S_m = sum over F_{q^m}^n of psi_b(Tr(f(x))) for m = 1..M.

    Stops at the first m whose enumeration exceeds the budget and flags the
    result as truncated.
    """
    budget = default_budget() if budget is None else budget
    _check_character(field.p, b)
    out = ExtensionSums([], [])
    for m in range(1, M + 1):
        try:
            h = trace_histogram(f, field, m, budget=budget, chunks=chunks, workers=workers)
        except BudgetExceeded as exc:
            out.truncated = True
            out.required = exc.required
            break
        out.histograms.append(h)
        out.sums.append(char_sum(h, b))
    return out


def max_affordable_m(q: int, n: int, budget: int) -> int:
    if n == 0:
        return 64
    m = 0
    while q ** ((m + 1) * n) <= budget:
        m += 1
    return m


__all__ = [
    "BudgetExceeded",
    "CycInt",
    "ExtensionSums",
    "TraceHistogram",
    "char_sum",
    "exponential_sum",
    "extension_sums",
    "max_affordable_m",
    "numeric_value",
    "trace_histogram",
    "trace_histogram_naive",
]
