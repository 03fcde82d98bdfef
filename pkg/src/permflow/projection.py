"""Order-preserving descent: project the pull onto the active tie structure.

When several coordinates of the state are equal (within tolerance) they
form a tie block, and a velocity whose components would immediately
re-invert the block's internal target order gets replaced, inside the
block, by its closest non-decreasing surrogate: pool-adjacent-violators
averaging in index order. The projection p of a velocity g onto that
cone satisfies <g, p> = ||p||^2, so the potential V = 0.5*||x - v_s||^2
never increases along the projected field. Along the pull g = v_s - x
itself the block components are already increasing, pooling never fires,
and an explicit Euler loop with step h contracts V by (1 - h)^2 per
step — at least as fast as the continuous rate exp(-2t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import StateVector, as_state, disorder_squared

__all__ = [
    "TieBlocks",
    "ProjectedSample",
    "ProjectedTrace",
    "MAX_STEP",
    "active_ties",
    "project_velocity",
    "integrate_projected",
]

#: Largest admissible Euler step for integrate_projected.
MAX_STEP = 1e-2


def _default_tol(n: int) -> float:
    return 1e-9 * n


@dataclass(frozen=True)
class TieBlocks:
    """Partition of coordinate indices 1..n into equal-value groups.

    Grouping chains coordinates transitively: two coordinates share a
    block when a sequence of value gaps, each at most `tol`, connects
    them in value order. Blocks of size one are kept so the partition
    covers every index; each block lists its members in ascending index
    order (the order of their pull targets).
    """

    blocks: tuple[tuple[int, ...], ...]
    tol: float

    @property
    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        """Blocks with at least two members — the active ties."""
        return tuple(b for b in self.blocks if len(b) > 1)


def active_ties(x: StateVector | Sequence[float], tol: float | None = None) -> TieBlocks:
    """Group coordinates whose values chain together within tol.

    Default tolerance is 1e-9 * n. Consecutive values in sorted order
    that differ by at most tol land in the same block (transitively), so
    a block's spread can exceed tol only through chaining.
    """
    x = as_state(x)
    if tol is None:
        tol = _default_tol(x.n)
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    order = sorted(range(x.n), key=lambda k: (x.coords[k], k))
    groups: list[list[int]] = [[order[0]]]
    for prev, k in zip(order, order[1:]):
        if x.coords[k] - x.coords[prev] <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    blocks = tuple(tuple(sorted(k + 1 for k in g)) for g in groups)
    return TieBlocks(blocks=blocks, tol=tol)


def _pool_adjacent_violators(v: np.ndarray) -> np.ndarray:
    """Non-decreasing least-squares fit to v (unit weights)."""
    # Stack of (mean, count) pools; merge backward while out of order.
    means: list[float] = []
    counts: list[int] = []
    for value in v:
        means.append(float(value))
        counts.append(1)
        while len(means) > 1 and means[-2] > means[-1]:
            m2, c2 = means.pop(), counts.pop()
            m1, c1 = means.pop(), counts.pop()
            c = c1 + c2
            means.append((m1 * c1 + m2 * c2) / c)
            counts.append(c)
    out = np.empty(len(v))
    pos = 0
    for m, c in zip(means, counts):
        out[pos : pos + c] = m
        pos += c
    return out


def project_velocity(
    x: StateVector | Sequence[float],
    g: np.ndarray | Sequence[float],
    ties: TieBlocks | None = None,
) -> np.ndarray:
    """Closest velocity to g that respects the tie blocks of x.

    Within each block (members in index order) the result is the nearest
    non-decreasing vector to g's restriction, by pool-adjacent-violators;
    components outside any tie pass through unchanged, and block sums are
    preserved. The input must be tangent to the hyperplane (sum(g) = 0
    within 1e-9). Projecting is idempotent and the output p satisfies
    <g, p> = ||p||^2.
    """
    x = as_state(x)
    g = np.asarray(g, dtype=float)
    if g.shape != (x.n,):
        raise ValueError(f"velocity must have shape ({x.n},), got {g.shape}")
    if abs(float(g.sum())) > 1e-9:
        raise ValueError("velocity must sum to 0 (tangent to the hyperplane)")
    if ties is None:
        ties = active_ties(x)
    p = g.copy()
    for block in ties.nontrivial:
        idx = np.asarray(block) - 1
        p[idx] = _pool_adjacent_violators(g[idx])
    return p


@dataclass(frozen=True)
class ProjectedSample:
    t: float
    state: StateVector
    potential: float
    active_block_count: int


@dataclass(frozen=True)
class ProjectedTrace:
    """Euler path of the projected descent with its potential decay."""

    samples: tuple[ProjectedSample, ...]
    step: float

    @property
    def start(self) -> StateVector:
        return self.samples[0].state

    @property
    def final(self) -> StateVector:
        return self.samples[-1].state

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def potentials(self) -> np.ndarray:
        return np.array([s.potential for s in self.samples])


def _sample_at(t: float, coords: np.ndarray, tol: float | None) -> ProjectedSample:
    state = StateVector(coords)
    return ProjectedSample(
        t=t,
        state=state,
        potential=0.5 * disorder_squared(state).d0,
        active_block_count=len(active_ties(state, tol).nontrivial),
    )


def integrate_projected(
    x0: StateVector | Sequence[float],
    t_end: float,
    step: float = MAX_STEP,
    tol: float | None = None,
) -> ProjectedTrace:
    """Explicit Euler on the projected pull toward the sorted vertex.

    Each step recomputes the tie blocks of the current state, projects
    the raw velocity g = v_s - x against them, and advances by `step`
    (the last step is shortened to land exactly on t_end). Requires
    0 < step <= MAX_STEP so each step contracts the potential by at
    least (1 - step)^2 <= exp(-2*step). Samples record the potential
    0.5*||x - v_s||^2 and the number of active tie blocks; the first
    sample is the start at t = 0.
    """
    x0 = as_state(x0)
    if t_end <= 0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    if not (0 < step <= MAX_STEP):
        raise ValueError(f"step must be in (0, {MAX_STEP}], got {step}")
    full_steps = int(math.floor(t_end / step + 1e-12))
    times = [k * step for k in range(1, full_steps + 1)]
    if not times or times[-1] < t_end - 1e-12:
        times.append(t_end)
    targets = np.arange(1, x0.n + 1, dtype=float)
    x = x0.coords.copy()
    samples = [_sample_at(0.0, x, tol)]
    prev = 0.0
    for t in times:
        g = targets - x
        p = project_velocity(StateVector(x), g, active_ties(x, tol))
        x = x + (t - prev) * p
        prev = t
        samples.append(_sample_at(t, x, tol))
    return ProjectedTrace(samples=tuple(samples), step=step)
