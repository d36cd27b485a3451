"""
Exact maximum rainbow matching by depth-first branch and bound.

Edges are tried in a fixed order (endpoint degree sum descending, then
lexicographic). A node is pruned when even the most optimistic completion,
``min(free vertices reachable / 2, unused colors reachable)`` over the
still-feasible edges, cannot beat the best matching found so far.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

from .core import Edge, EdgeColoredGraph, Matching

__all__ = [
    'SolveResult',
    'DEFAULT_NODE_BUDGET',
    'default_node_budget',
    'max_rainbow_matching',
    'find_rainbow_matching',
    'has_rainbow_matching',
    'enumerate_rainbow_matchings',
]

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class SolveResult:
    size: int
    witness: Matching
    nodes_explored: int
    budget_exhausted: bool


def default_node_budget(G: EdgeColoredGraph) -> float:
    return math.inf if G.n_vertices <= 20 else DEFAULT_NODE_BUDGET


class _BudgetExhausted(Exception):
    pass


def _search_order(G: EdgeColoredGraph) -> list[Edge]:
    deg = {v: len(nb) for v, nb in G.adjacency.items()}
    return sorted(G.edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


def _solve(G: EdgeColoredGraph, target: int | None, node_budget) -> SolveResult:
    if node_budget is None:
        node_budget = default_node_budget(G)
    order = _search_order(G)
    color_bit = {c: 1 << i for i, c in enumerate(G.colors)}
    vmasks = [(1 << u) | (1 << v) for u, v, _ in order]
    cmasks = [color_bit[c] for _, _, c in order]
    n_edges = len(order)

    ceiling = min(len(G.vertices) // 2, len(color_bit))
    goal = ceiling if target is None else min(target, ceiling)

    best: list[int] = []
    chosen: list[int] = []
    nodes = 0

    def dfs(start: int, used_v: int, used_c: int) -> bool:
        """Returns True once ``goal`` is reached (stop everything)."""
        nonlocal nodes, best
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExhausted
        if len(chosen) > len(best):
            best = chosen.copy()
            if len(best) >= goal:
                return True
        feasible = [i for i in range(start, n_edges)
                    if not (vmasks[i] & used_v or cmasks[i] & used_c)]
        if not feasible:
            return False
        # suffix unions give the bound for "branch on feasible[j] or later"
        suf_v = [0] * (len(feasible) + 1)
        suf_c = [0] * (len(feasible) + 1)
        for j in range(len(feasible) - 1, -1, -1):
            i = feasible[j]
            suf_v[j] = suf_v[j + 1] | vmasks[i]
            suf_c[j] = suf_c[j + 1] | cmasks[i]
        depth = len(chosen)
        for j, i in enumerate(feasible):
            bound = min(suf_v[j].bit_count() // 2, suf_c[j].bit_count())
            if depth + bound <= len(best):
                break
            chosen.append(i)
            if dfs(i + 1, used_v | vmasks[i], used_c | cmasks[i]):
                return True
            chosen.pop()
        return False

    exhausted = False
    if goal > 0:
        try:
            dfs(0, 0, 0)
        except _BudgetExhausted:
            exhausted = True
    else:
        nodes = 1
    witness = Matching(tuple(order[i] for i in best))
    return SolveResult(len(best), witness, nodes, exhausted)


def max_rainbow_matching(G: EdgeColoredGraph, node_budget=None) -> SolveResult:
    """
    Maximum rainbow matching of ``G``.

    ``node_budget`` caps the number of search nodes (``None`` means unlimited
    for n <= 20 and 10**7 otherwise; ``math.inf`` means unlimited). When the
    budget runs out, ``size`` is only a lower bound and ``budget_exhausted``
    is set.
    """
    return _solve(G, None, node_budget)


def find_rainbow_matching(G: EdgeColoredGraph, m: int, node_budget=None) -> SolveResult:
    """Like :func:`max_rainbow_matching` but stops as soon as size ``m`` is reached."""
    return _solve(G, m, node_budget)


def has_rainbow_matching(G: EdgeColoredGraph, m: int, node_budget=None) -> bool | None:
    """True / False, or None when the budget ran out before a decision."""
    if m <= 0:
        return True
    res = _solve(G, m, node_budget)
    if res.size >= m:
        return True
    return None if res.budget_exhausted else False


def enumerate_rainbow_matchings(G: EdgeColoredGraph, max_size: int | None = None) -> Iterator[Matching]:
    """
    Yield every rainbow matching with at most ``max_size`` edges, once each,
    in lexicographic order of edge-index tuples (indices into ``G.edges``).

    Plain exhaustive recursion with no pruning; meant as a test oracle for
    graphs with a couple of dozen edges at most.
    """
    edges = G.edges
    limit = len(edges) if max_size is None else max_size

    def rec(start: int, picked: list[Edge]) -> Iterator[Matching]:
        yield Matching(tuple(picked))
        if len(picked) == limit:
            return
        for i in range(start, len(edges)):
            u, v, c = edges[i]
            if any(u in (a, b) or v in (a, b) or c == col for a, b, col in picked):
                continue
            picked.append(edges[i])
            yield from rec(i + 1, picked)
            picked.pop()

    yield from rec(0, [])
