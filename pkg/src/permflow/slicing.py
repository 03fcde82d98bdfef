"""Comparisons as half-space constraints: counting, isolation, instrumented sorts.

Each comparison between two keys u < v (labels from 1..n) contributes the
constraint x_u < x_v on the rank polytope, and the feasible set is the
collection of rank assignments consistent with every constraint so far.
A correct comparison sort drives that count from n! down to exactly 1 —
the sorted assignment — and the per-comparison information
bits = log2(count_before / count_after) telescopes to log2(n!) over any
complete run. `instrument` replays four classical sorts while recording
this contraction; `feasible_count` does the counting, with a subset
dynamic program as the scalable path and brute-force enumeration as the
cross-checking oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .core import BRUTE_FORCE_LIMIT, Permutation, SizeLimitError, brute_force_sort

__all__ = [
    "Constraint",
    "ConstraintSet",
    "TraceStep",
    "InstrumentedRun",
    "ReductionReport",
    "ALGORITHMS",
    "DP_LIMIT",
    "BRUTE_LIMIT",
    "INSTRUMENT_LIMIT",
    "parse_constraints",
    "feasible_count",
    "feasible_count_brute",
    "is_contradictory",
    "isolates_sorted",
    "instrument",
    "comparison_count",
    "reduction_report",
]

#: Subset dynamic programming iterates over 2^n index sets.
DP_LIMIT = 18
#: Brute-force enumeration materializes all n! rank assignments.
BRUTE_LIMIT = 10
#: Instrumented runs recount the feasible set after every comparison.
INSTRUMENT_LIMIT = 10

ALGORITHMS = ("insertion", "merge", "quick", "heap")


@dataclass(frozen=True)
class Constraint:
    """The key labeled `lo` must rank below the key labeled `hi`: x_lo < x_hi."""

    lo: int
    hi: int


@dataclass(frozen=True)
class ConstraintSet:
    """An ordered, duplicate-free sequence of constraints over labels 1..n."""

    n: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        seen = set()
        for c in self.constraints:
            if not (1 <= c.lo <= self.n and 1 <= c.hi <= self.n):
                raise ValueError(f"constraint {c.lo}<{c.hi} out of range 1..{self.n}")
            if c.lo == c.hi:
                raise ValueError(f"constraint {c.lo}<{c.hi} relates a label to itself")
            if c in seen:
                raise ValueError(f"constraint {c.lo}<{c.hi} appears twice")
            seen.add(c)

    @classmethod
    def empty(cls, n: int) -> "ConstraintSet":
        return cls(n, ())

    def with_constraint(self, c: Constraint) -> "ConstraintSet":
        """This set plus c; returns self unchanged when c is already present."""
        if c in self.constraints:
            return self
        return ConstraintSet(self.n, self.constraints + (c,))


def parse_constraints(text: str, n: int) -> ConstraintSet:
    """Parse the comma-separated `i<j` form, e.g. "1<2,2<3".

    Whitespace around pairs is ignored; an empty (or all-whitespace)
    string yields the unconstrained set. Repeated pairs are collapsed to
    their first occurrence. Raises ValueError on anything else that is
    not `int<int` with labels in 1..n.
    """
    out = ConstraintSet.empty(n)
    if not text or not text.strip():
        return out
    for chunk in text.split(","):
        part = chunk.strip()
        pieces = part.split("<")
        if len(pieces) != 2:
            raise ValueError(f"expected 'i<j', got {part!r}")
        try:
            lo, hi = int(pieces[0]), int(pieces[1])
        except ValueError:
            raise ValueError(f"expected integer labels in {part!r}") from None
        out = out.with_constraint(Constraint(lo, hi))
    return out


def feasible_count(s: ConstraintSet) -> int:
    """Number of rank assignments to labels 1..n satisfying every constraint.

    Subset dynamic programming over the labels placed so far: a label may
    receive the next-larger rank once every label required to rank below
    it has been placed. Exact integer arithmetic throughout; 0 when the
    constraints are contradictory.
    """
    n = s.n
    if n > DP_LIMIT:
        raise SizeLimitError(f"subset counting is limited to n <= {DP_LIMIT}, got {n}")
    below = [0] * n  # below[v] = bitmask of labels that must rank under label v+1
    for c in s.constraints:
        below[c.hi - 1] |= 1 << (c.lo - 1)
    full = (1 << n) - 1
    counts = [0] * (full + 1)
    counts[0] = 1
    for mask in range(full + 1):
        base = counts[mask]
        if base == 0:
            continue
        for v in range(n):
            bit = 1 << v
            if mask & bit or below[v] & ~mask:
                continue
            counts[mask | bit] += base
    return counts[full]


@lru_cache(maxsize=None)
def _rank_matrix(n: int) -> np.ndarray:
    """All n! rank assignments as rows, built by inserting rank n into n slots."""
    if n == 1:
        return np.array([[1]], dtype=np.int8)
    prev = _rank_matrix(n - 1)
    m = prev.shape[0]
    out = np.empty((m * n, n), dtype=np.int8)
    for pos in range(n):
        block = out[pos * m : (pos + 1) * m]
        block[:, :pos] = prev[:, :pos]
        block[:, pos] = n
        block[:, pos + 1 :] = prev[:, pos:]
    return out


def feasible_count_brute(s: ConstraintSet) -> int:
    """Enumeration oracle for feasible_count: filter all n! assignments."""
    if s.n > BRUTE_LIMIT:
        raise SizeLimitError(
            f"brute-force counting is limited to n <= {BRUTE_LIMIT}, got {s.n}"
        )
    rows = _rank_matrix(s.n)
    keep = np.ones(rows.shape[0], dtype=bool)
    for c in s.constraints:
        keep &= rows[:, c.lo - 1] < rows[:, c.hi - 1]
    return int(np.count_nonzero(keep))


def is_contradictory(s: ConstraintSet) -> bool:
    """True when the constraint digraph has a directed cycle (count would be 0)."""
    edges: dict[int, list[int]] = {}
    for c in s.constraints:
        edges.setdefault(c.lo, []).append(c.hi)
    DONE, ACTIVE = 2, 1
    state: dict[int, int] = {}

    def probe(v: int) -> bool:
        state[v] = ACTIVE
        for w in edges.get(v, ()):
            mark = state.get(w)
            if mark == ACTIVE:
                return True
            if mark is None and probe(w):
                return True
        state[v] = DONE
        return False

    return any(state.get(v) is None and probe(v) for v in list(edges))


def isolates_sorted(s: ConstraintSet) -> bool:
    """True when exactly one assignment remains and it is the sorted one.

    The sorted assignment gives label u the rank u, so it survives iff
    every constraint has lo < hi numerically; the count check then pins
    it as the unique survivor.
    """
    if not all(c.lo < c.hi for c in s.constraints):
        return False
    return feasible_count(s) == 1


# --- instrumented classical sorts ------------------------------------------

Less = Callable[[int, int], bool]


def _insertion_sort(a: list, less: Less) -> list:
    a = list(a)
    for k in range(1, len(a)):
        item = a[k]
        m = k - 1
        while m >= 0 and less(item, a[m]):
            a[m + 1] = a[m]
            m -= 1
        a[m + 1] = item
    return a


def _merge_sort(a: list, less: Less) -> list:
    if len(a) <= 1:
        return list(a)
    mid = len(a) // 2
    left = _merge_sort(a[:mid], less)
    right = _merge_sort(a[mid:], less)
    out: list = []
    i = j = 0
    while i < len(left) and j < len(right):
        if less(right[j], left[i]):
            out.append(right[j])
            j += 1
        else:
            out.append(left[i])
            i += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out


def _quick_sort(a: list, less: Less) -> list:
    if len(a) <= 1:
        return list(a)
    pivot = a[0]
    below: list = []
    above: list = []
    for v in a[1:]:
        (below if less(v, pivot) else above).append(v)
    return _quick_sort(below, less) + [pivot] + _quick_sort(above, less)


def _heap_sort(a: list, less: Less) -> list:
    a = list(a)

    def sift_down(root: int, end: int) -> None:
        while True:
            child = 2 * root + 1
            if child >= end:
                return
            if child + 1 < end and less(a[child], a[child + 1]):
                child += 1
            if less(a[root], a[child]):
                a[root], a[child] = a[child], a[root]
                root = child
            else:
                return

    for start in range(len(a) // 2 - 1, -1, -1):
        sift_down(start, len(a))
    for end in range(len(a) - 1, 0, -1):
        a[0], a[end] = a[end], a[0]
        sift_down(0, end)
    return a


_SORTS: dict[str, Callable[[list, Less], list]] = {
    "insertion": _insertion_sort,
    "merge": _merge_sort,
    "quick": _quick_sort,
    "heap": _heap_sort,
}


@dataclass(frozen=True)
class TraceStep:
    """One comparison: the constraint it fixed and the count contraction."""

    constraint: Constraint
    feasible_before: int
    feasible_after: int
    bits: float


@dataclass(frozen=True)
class InstrumentedRun:
    algorithm: str
    input: Permutation
    trace: tuple[TraceStep, ...]
    output: tuple[int, ...]
    constraints: ConstraintSet

    @property
    def comparisons(self) -> int:
        return len(self.trace)

    @property
    def total_bits(self) -> float:
        return float(sum(step.bits for step in self.trace))

    @property
    def final_feasible(self) -> int:
        if self.trace:
            return self.trace[-1].feasible_after
        return math.factorial(self.input.n)


def instrument(algorithm: str, p: Permutation | Sequence[int]) -> InstrumentedRun:
    """Run a comparison sort on p, recording each comparison's contraction.

    Every comparison of keys u, v appends the constraint oriented by the
    observed order (smaller key below larger) and recounts the feasible
    set; a repeated comparison contributes a trace row with bits = 0 and
    leaves the constraint set unchanged. The variants are fixed: binary
    insertion's backward shift, top-down merge splitting at floor(n/2),
    quicksort on the first-element pivot, and a max-heap with sift-down.
    """
    if algorithm not in _SORTS:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}"
        )
    if not isinstance(p, Permutation):
        p = Permutation.of(p)
    if p.n > INSTRUMENT_LIMIT:
        raise SizeLimitError(
            f"instrumented runs are limited to n <= {INSTRUMENT_LIMIT}, got {p.n}"
        )

    active = ConstraintSet.empty(p.n)
    count_now = math.factorial(p.n)
    steps: list[TraceStep] = []

    def less(u: int, v: int) -> bool:
        nonlocal active, count_now
        lo, hi = (u, v) if u < v else (v, u)
        c = Constraint(lo, hi)
        before = count_now
        grown = active.with_constraint(c)
        if grown is not active:
            active = grown
            count_now = feasible_count(active)
        steps.append(
            TraceStep(
                constraint=c,
                feasible_before=before,
                feasible_after=count_now,
                bits=math.log2(before / count_now),
            )
        )
        return u < v

    out = _SORTS[algorithm](list(p.ranks), less)
    expected = list(range(1, p.n + 1))
    if out != expected or (p.n <= BRUTE_FORCE_LIMIT and out != brute_force_sort(p.ranks)):
        raise RuntimeError(f"{algorithm} failed to sort {p.ranks}: got {out}")
    return InstrumentedRun(
        algorithm=algorithm,
        input=p,
        trace=tuple(steps),
        output=tuple(out),
        constraints=active,
    )


def comparison_count(algorithm: str, p: Permutation | Sequence[int]) -> int:
    """Comparisons one of the fixed sort variants spends on p — counting only.

    Unlike instrument, no feasible sets are maintained, so this scales to
    any n that the plain sort itself can handle.
    """
    if algorithm not in _SORTS:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}"
        )
    if not isinstance(p, Permutation):
        p = Permutation.of(p)
    hits = 0

    def less(u: int, v: int) -> bool:
        nonlocal hits
        hits += 1
        return u < v

    out = _SORTS[algorithm](list(p.ranks), less)
    if out != list(range(1, p.n + 1)):
        raise RuntimeError(f"{algorithm} failed to sort {p.ranks}: got {out}")
    return hits


@dataclass(frozen=True)
class ReductionReport:
    """Aggregate view of one run's information ledger."""

    algorithm: str
    comparisons: int
    total_bits: float
    max_bits: float
    halving_fraction: float
    initial_feasible: int
    final_feasible: int


def reduction_report(run: InstrumentedRun) -> ReductionReport:
    """Summarize a trace: comparisons, bit totals, and the halving share.

    halving_fraction is the share of comparisons that at least halved the
    feasible count (bits >= 1 - 1e-9); individual comparisons may carry
    more than one bit, it is only the orientation actually observed that
    cannot beat halving on both sides at once.
    """
    comparisons = len(run.trace)
    total = float(sum(s.bits for s in run.trace))
    peak = max((s.bits for s in run.trace), default=0.0)
    halved = sum(1 for s in run.trace if s.bits >= 1.0 - 1e-9)
    return ReductionReport(
        algorithm=run.algorithm,
        comparisons=comparisons,
        total_bits=total,
        max_bits=float(peak),
        halving_fraction=halved / comparisons if comparisons else 0.0,
        initial_feasible=run.trace[0].feasible_before if run.trace else math.factorial(run.input.n),
        final_feasible=run.final_feasible,
    )
