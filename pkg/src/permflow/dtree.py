"""Comparison decision trees: the counting bound and optimal small trees.

A binary tree whose internal nodes compare two input positions and whose
leaves output an ordering can sort all n! inputs only if it has at least
n! leaves, hence height at least ceil(log2(n!)). `build_optimal` finds a
tree meeting that height exactly for n <= 4 (and n = 5 behind a flag) by
exhaustive branch-and-bound over comparison choices, and `verify_tree`
replays every permutation to confirm a tree really sorts.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional, Union

from .core import SizeLimitError

__all__ = [
    "Leaf",
    "Internal",
    "Node",
    "TreeStats",
    "OptimalTree",
    "BUILD_LIMIT",
    "BUILD_FAST_LIMIT",
    "info_lower_bound",
    "build_optimal",
    "verify_tree",
    "tree_stats",
    "tree_to_dict",
    "tree_from_dict",
    "tree_to_json",
    "tree_from_json",
]

#: build_optimal refuses n beyond this outright.
BUILD_LIMIT = 5
#: Largest n built without opting in to the slower search.
BUILD_FAST_LIMIT = 4


@dataclass(frozen=True)
class Leaf:
    """Terminal node: `output` lists input positions in ascending value order.

    Applying a leaf to an input x yields (x[output[0]], x[output[1]], ...)
    using 1-based positions, which is the sorted sequence when the leaf
    is reached along a consistent comparison path.
    """

    output: tuple[int, ...]


@dataclass(frozen=True)
class Internal:
    """Comparison of input positions i, j (1-based): low if x_i < x_j, else high."""

    compare: tuple[int, int]
    low: "Node"
    high: "Node"


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class TreeStats:
    height: int
    leaf_count: int
    n: int


@dataclass(frozen=True)
class OptimalTree:
    root: Node
    stats: TreeStats

    @property
    def height(self) -> int:
        return self.stats.height


def info_lower_bound(n: int) -> int:
    """ceil(log2(n!)): minimum height of any tree that sorts n keys.

    Computed on exact integers (bit length of n! - 1), so no rounding
    step is involved.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (math.factorial(n) - 1).bit_length()


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length()


def _argsort_perm(ranks: tuple[int, ...]) -> tuple[int, ...]:
    """Positions (1-based) of an input with these ranks, in ascending value order."""
    return tuple(sorted(range(1, len(ranks) + 1), key=lambda k: ranks[k - 1]))


def build_optimal(n: int, allow_slow: bool = False) -> OptimalTree:
    """Minimal-height comparison tree that sorts every permutation of 1..n.

    Exhaustive search over comparison pairs with the remaining set of
    consistent orderings as state, memoized on the canonical (sorted
    lexicographic-code) form of that set and pruned by the counting
    bound ceil(log2 |consistent|). Ties between equally tall candidates
    resolve to the lexicographically smallest comparison pair, so the
    result is deterministic. n = 5 is noticeably slower and must be
    requested with allow_slow; larger n is refused.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > BUILD_LIMIT:
        raise SizeLimitError(
            f"optimal tree search is limited to n <= {BUILD_LIMIT}, got {n}"
        )
    if n > BUILD_FAST_LIMIT and not allow_slow:
        raise ValueError(
            f"n = {n} is slow to search exhaustively; pass allow_slow=True"
        )

    perms = list(itertools.permutations(range(1, n + 1)))
    code = {p: k for k, p in enumerate(perms)}  # lexicographic rank
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    memo: dict[tuple[int, ...], tuple[Node, int]] = {}

    def search(consistent: list[tuple[int, ...]]) -> tuple[Node, int]:
        if len(consistent) == 1:
            return Leaf(_argsort_perm(consistent[0])), 0
        key = tuple(sorted(code[p] for p in consistent))
        hit = memo.get(key)
        if hit is not None:
            return hit
        floor = _ceil_log2(len(consistent))
        best_node: Optional[Node] = None
        best_height = 0
        for i, j in pairs:
            lo = [p for p in consistent if p[i - 1] < p[j - 1]]
            if not lo or len(lo) == len(consistent):
                continue  # outcome predetermined: no information
            hi = [p for p in consistent if p[i - 1] > p[j - 1]]
            ideal = 1 + max(_ceil_log2(len(lo)), _ceil_log2(len(hi)))
            if best_node is not None and ideal >= best_height:
                continue
            low_node, low_h = search(lo)
            if best_node is not None and 1 + low_h >= best_height:
                continue
            high_node, high_h = search(hi)
            height = 1 + max(low_h, high_h)
            if best_node is None or height < best_height:
                best_node = Internal((i, j), low_node, high_node)
                best_height = height
                if best_height == floor:
                    break
        assert best_node is not None  # some pair always splits |consistent| > 1
        memo[key] = (best_node, best_height)
        return best_node, best_height

    root, height = search(perms)
    stats = tree_stats(root)
    assert stats.height == height
    return OptimalTree(root=root, stats=stats)


def _check_well_formed(tree: Node, n: int) -> None:
    expected = set(range(1, n + 1))

    def walk(node: Node, seen: frozenset[tuple[int, int]]) -> None:
        if isinstance(node, Leaf):
            if len(node.output) != n or set(node.output) != expected:
                raise ValueError(f"leaf output {node.output} is not a permutation of 1..{n}")
            return
        if isinstance(node, Internal):
            i, j = node.compare
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise ValueError(f"comparison pair {node.compare} invalid for n={n}")
            pair = (min(i, j), max(i, j))
            if pair in seen:
                raise ValueError(f"comparison pair {pair} repeated along a path")
            walk(node.low, seen | {pair})
            walk(node.high, seen | {pair})
            return
        raise ValueError(f"not a tree node: {node!r}")

    walk(tree, frozenset())


def verify_tree(tree: Node, n: int) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Replay every permutation of 1..n through the tree.

    Returns (True, None) when each input reaches a leaf whose output
    sorts it, else (False, first_failing_input). Raises ValueError for a
    structurally malformed tree (bad pairs, repeated comparisons on a
    path, invalid leaf outputs).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _check_well_formed(tree, n)
    target = tuple(range(1, n + 1))
    for x in itertools.permutations(range(1, n + 1)):
        node = tree
        while isinstance(node, Internal):
            i, j = node.compare
            node = node.low if x[i - 1] < x[j - 1] else node.high
        picked = tuple(x[k - 1] for k in node.output)
        if picked != target:
            return False, x
    return True, None


def tree_stats(tree: Node) -> TreeStats:
    """Height (comparisons on the longest path) and leaf count by traversal."""
    n = 0
    height = 0
    leaves = 0
    stack: list[tuple[Node, int]] = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, Leaf):
            leaves += 1
            height = max(height, depth)
            n = max(n, len(node.output))
        elif isinstance(node, Internal):
            stack.append((node.low, depth + 1))
            stack.append((node.high, depth + 1))
        else:
            raise ValueError(f"not a tree node: {node!r}")
    if leaves > 2**height:
        raise ValueError(
            f"binary tree of height {height} cannot hold {leaves} leaves"
        )
    return TreeStats(height=height, leaf_count=leaves, n=n)


def tree_to_dict(tree: Node) -> dict:
    """Nested dict form: {"cmp":[i,j],"lo":...,"hi":...} / {"out":[...]}"""
    if isinstance(tree, Leaf):
        return {"out": list(tree.output)}
    if isinstance(tree, Internal):
        return {
            "cmp": list(tree.compare),
            "lo": tree_to_dict(tree.low),
            "hi": tree_to_dict(tree.high),
        }
    raise ValueError(f"not a tree node: {tree!r}")


def tree_from_dict(data: dict) -> Node:
    if not isinstance(data, dict):
        raise ValueError(f"expected an object, got {type(data).__name__}")
    if "out" in data:
        return Leaf(tuple(int(v) for v in data["out"]))
    if {"cmp", "lo", "hi"} <= data.keys():
        i, j = (int(v) for v in data["cmp"])
        return Internal((i, j), tree_from_dict(data["lo"]), tree_from_dict(data["hi"]))
    raise ValueError(f"node object needs 'out' or 'cmp'/'lo'/'hi', got keys {sorted(data)}")


def tree_to_json(tree: Node, indent: Optional[int] = None) -> str:
    return json.dumps(tree_to_dict(tree), indent=indent)


def tree_from_json(text: str) -> Node:
    return tree_from_dict(json.loads(text))
