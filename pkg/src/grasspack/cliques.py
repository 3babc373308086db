"""Intersection graphs on totally singular subspaces and clique search.

Nodes are all totally singular d-subspaces in enumeration order; two nodes
are adjacent when the subspaces meet in dimension at most l.  Cliques feed
the restricted-family packing construction.  The exact solver is a
branch-and-bound with a greedy-coloring bound; a seeded multistart greedy
covers graphs too large to exhaust.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .errors import UsageError
from .f2 import F2Subspace, enumerate_totally_singular, rank


@dataclass
class SubspaceGraph:
    i: int
    d: int
    l: int
    nodes: list[F2Subspace]
    adjacency: list[int]  # bitmask per node, no self loops

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()


def build_graph(i: int, d: int, l: int) -> SubspaceGraph:
    """Graph on all totally singular d-subspaces, edges where the
    intersection dimension is at most l."""
    if not 0 <= l < d <= i:
        raise UsageError(f"need 0 <= l < d <= i, got i={i}, d={d}, l={l}")
    nodes = list(enumerate_totally_singular(i, d))
    n = len(nodes)
    rows = [s.rows for s in nodes]
    # dim(u ∩ v) = 2d - rank(stacked rows); adjacency iff that is <= l.
    min_rank = 2 * d - l
    adjacency = [0] * n
    for a in range(n):
        ra = rows[a]
        for b in range(a + 1, n):
            if rank(ra + rows[b]) >= min_rank:
                adjacency[a] |= 1 << b
                adjacency[b] |= 1 << a
    return SubspaceGraph(i, d, l, nodes, adjacency)


@dataclass
class CliqueResult:
    members: list[int]  # node indices, ascending
    optimal: bool
    expansions: int
    elapsed: float

    @property
    def size(self) -> int:
        return len(self.members)


def _greedy_from_order(adjacency: list[int], order: list[int]) -> list[int]:
    clique: list[int] = []
    allowed = -1
    for v in order:
        if allowed >> v & 1:
            clique.append(v)
            allowed &= adjacency[v]
    return clique


def greedy_clique(
    graph: SubspaceGraph,
    seed: int = 0,
    time_budget: float | None = 60.0,
    starts: int | None = None,
    target: int | None = None,
) -> CliqueResult:
    """Multistart greedy search: random orders biased toward high degree,
    with one plateau pass (drop two members, refill) per start."""
    adjacency = graph.adjacency
    n = graph.node_count
    rng = random.Random(seed)
    degrees = [graph.degree(v) for v in range(n)]
    by_degree = sorted(range(n), key=lambda v: -degrees[v])
    best = _greedy_from_order(adjacency, by_degree)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    done = 0
    while True:
        if target is not None and len(best) >= target:
            break
        if starts is not None and done >= starts:
            break
        if deadline is not None and time.monotonic() > deadline:
            break
        order = list(range(n))
        rng.shuffle(order)
        clique = _greedy_from_order(adjacency, order)
        # Plateau step: drop two random members and refill greedily.
        if len(clique) >= 2:
            keep = clique[:]
            for _ in range(2):
                keep.pop(rng.randrange(len(keep)))
            allowed = -1
            for v in keep:
                allowed &= adjacency[v]
            refill = keep[:]
            for v in order:
                if allowed >> v & 1 and v not in refill:
                    refill.append(v)
                    allowed &= adjacency[v]
            if len(refill) > len(clique):
                clique = refill
        if len(clique) > len(best):
            best = clique
        done += 1
    return CliqueResult(sorted(best), optimal=False, expansions=done, elapsed=0.0)


def _color_bound(adjacency: list[int], candidates: int, order: list[int]) -> list[tuple[int, int]]:
    """Greedy coloring of the candidate set; returns (vertex, color_count)
    pairs in the order branch-and-bound should expand (highest color last)."""
    color_classes: list[int] = []
    colored: list[tuple[int, int]] = []
    rest = candidates
    for v in order:
        if not rest >> v & 1:
            continue
        for c, cls in enumerate(color_classes):
            if not cls & adjacency[v]:
                color_classes[c] = cls | (1 << v)
                colored.append((v, c + 1))
                break
        else:
            color_classes.append(1 << v)
            colored.append((v, len(color_classes)))
    return colored


def max_clique(
    graph: SubspaceGraph,
    target: int | None = None,
    node_budget: int | None = None,
    time_budget: float | None = None,
    seed_greedy: bool = True,
) -> CliqueResult:
    """Branch-and-bound maximum clique with a greedy-coloring bound.

    Vertices are taken in enumeration order (ties in the coloring broken by
    degree, descending).  Exhausting the tree proves optimality; running
    out of budget returns the incumbent with optimal=False.  Deterministic
    for a fixed budget.
    """
    if target is not None and target < 1:
        raise UsageError("target must be at least 1")
    adjacency = graph.adjacency
    n = graph.node_count
    if n == 0:
        raise UsageError("graph has no nodes")
    order = list(range(n))  # enumeration order
    best: list[int] = []
    if seed_greedy:
        best = greedy_clique(graph, seed=0, time_budget=None, starts=64).members
    start_time = time.monotonic()
    deadline = None if time_budget is None else start_time + time_budget
    expansions = 0
    halted = False

    def expand(current: list[int], candidates: int) -> None:
        nonlocal best, expansions, halted
        if halted:
            return
        if target is not None and len(best) >= target:
            halted = True
            return
        expansions += 1
        if node_budget is not None and expansions > node_budget:
            halted = True
            return
        if deadline is not None and time.monotonic() > deadline:
            halted = True
            return
        colored = _color_bound(adjacency, candidates, order)
        for v, colors in reversed(colored):
            if halted or len(current) + colors <= len(best):
                return
            current.append(v)
            sub = candidates & adjacency[v]
            if sub:
                expand(current, sub)
            elif len(current) > len(best):
                best = current[:]
            current.pop()
            candidates &= ~(1 << v)
        return

    expand([], (1 << n) - 1)
    return CliqueResult(
        sorted(best),
        optimal=not halted,
        expansions=expansions,
        elapsed=time.monotonic() - start_time,
    )


def verify_clique(graph: SubspaceGraph, members: list[int]) -> bool:
    """Check the intersection rule pairwise by direct subspace computation,
    bypassing the adjacency matrix."""
    from .f2 import subspace_intersection

    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            meet = subspace_intersection(graph.nodes[members[a]], graph.nodes[members[b]])
            if meet.dim > graph.l:
                return False
    return True
