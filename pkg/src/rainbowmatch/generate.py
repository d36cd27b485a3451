"""
Seeded instance generators.

All randomness comes from :class:`SplitMix64`, so a given :class:`GenConfig`
produces the same instance on every platform. The draw order is part of the
contract and is documented on each generator.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .core import EdgeColoredGraph, total_color_degree

__all__ = [
    'SplitMix64',
    'GenConfig',
    'KINDS',
    'WindowUnreachable',
    'generate',
    'gen_random',
    'gen_triangle_free',
    'gen_c4_free',
    'gen_proper',
    'gen_near_threshold',
    'greedy_proper_coloring',
    'merge_color_classes',
]

MASK64 = (1 << 64) - 1
KINDS = ('random', 'triangle_free', 'c4_free', 'proper', 'near_threshold')


class SplitMix64:
    """
    splitmix64 (Steele, Lea, Flood 2014)::

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)

    with all arithmetic modulo 2**64.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection of the biased tail."""
        if n <= 0:
            raise ValueError('n must be positive')
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def chance(self, p: Fraction) -> bool:
        """One draw; True with probability exactly ``p``."""
        return self.below(p.denominator) < p.numerator

    def shuffle(self, items: list) -> None:
        """Fisher-Yates, from the last position down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


class WindowUnreachable(ValueError):
    """The seeded base graph cannot reach the requested total color degree."""


@dataclass(frozen=True)
class GenConfig:
    n: int
    edge_probability: Fraction = Fraction(1, 2)
    color_count: int = 1
    seed: int = 0
    kind: str = 'random'
    m: int | None = None

    def __post_init__(self):
        p = self.edge_probability
        if isinstance(p, float):
            p = Fraction(str(p))
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ValueError(f'edge probability must lie in [0, 1], got {p}')
        object.__setattr__(self, 'edge_probability', p)
        if self.n < 0:
            raise ValueError('n must be non-negative')
        if self.color_count < 1:
            raise ValueError('color_count must be at least 1')
        if self.kind not in KINDS:
            raise ValueError(f'unknown kind {self.kind!r}; expected one of {KINDS}')
        if self.kind == 'near_threshold' and self.m is None:
            raise ValueError('near_threshold needs m')


def _pairs(n: int):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def gen_random(config: GenConfig) -> EdgeColoredGraph:
    """
    For each pair ``u < v`` in lexicographic order: one inclusion draw, then,
    if included, one color draw uniform over ``[0, color_count)``.
    """
    rng = SplitMix64(config.seed)
    edges = []
    for u, v in _pairs(config.n):
        if rng.chance(config.edge_probability):
            edges.append((u, v, rng.below(config.color_count)))
    return EdgeColoredGraph(config.n, tuple(edges))


def gen_triangle_free(config: GenConfig) -> EdgeColoredGraph:
    """
    Random bipartite graph: one side draw per vertex, then for each
    cross pair in lexicographic order an inclusion draw and a color draw.
    """
    rng = SplitMix64(config.seed)
    side = [rng.below(2) for _ in range(config.n)]
    edges = []
    for u, v in _pairs(config.n):
        if side[u] != side[v] and rng.chance(config.edge_probability):
            edges.append((u, v, rng.below(config.color_count)))
    return EdgeColoredGraph(config.n, tuple(edges))


def _closes_c4(adj: dict[int, set[int]], u: int, v: int) -> bool:
    """Whether adding ``uv`` would create a 4-cycle, i.e. a path u-x-y-v exists."""
    return any(adj[x] & adj[v] for x in adj[u])


def gen_c4_free(config: GenConfig) -> EdgeColoredGraph:
    """
    Shuffle all pairs, then walk them: one inclusion draw per pair, and an
    included pair is kept (with one color draw) unless it closes a 4-cycle.
    """
    rng = SplitMix64(config.seed)
    candidates = _pairs(config.n)
    rng.shuffle(candidates)
    adj: dict[int, set[int]] = defaultdict(set)
    edges = []
    for u, v in candidates:
        if not rng.chance(config.edge_probability):
            continue
        if _closes_c4(adj, u, v):
            continue
        adj[u].add(v)
        adj[v].add(u)
        edges.append((u, v, rng.below(config.color_count)))
    return EdgeColoredGraph(config.n, tuple(edges))


def greedy_proper_coloring(n: int, pairs) -> EdgeColoredGraph:
    """Color pairs in sorted order with the smallest color absent at both ends."""
    seen: dict[int, set[int]] = defaultdict(set)
    edges = []
    for u, v in sorted((min(a, b), max(a, b)) for a, b in pairs):
        c = 0
        while c in seen[u] or c in seen[v]:
            c += 1
        seen[u].add(c)
        seen[v].add(c)
        edges.append((u, v, c))
    return EdgeColoredGraph(n, tuple(edges))


def gen_proper(config: GenConfig) -> EdgeColoredGraph:
    """
    One inclusion draw per pair (lexicographic order), then greedy proper
    edge coloring; ``color_count`` is ignored. Uses at most ``2*maxdeg - 1``
    colors.
    """
    rng = SplitMix64(config.seed)
    pairs = [p for p in _pairs(config.n) if rng.chance(config.edge_probability)]
    return greedy_proper_coloring(config.n, pairs)


def merge_color_classes(G: EdgeColoredGraph, source: int, target: int) -> EdgeColoredGraph:
    """Recolor every ``source`` edge to ``target``."""
    edges = tuple((u, v, target if c == source else c) for u, v, c in G.edges)
    return EdgeColoredGraph(G.n_vertices, edges, G.masked)


def gen_near_threshold(config: GenConfig) -> EdgeColoredGraph:
    """
    Instance with total color degree in ``[2mn, 2mn + 2n)``.

    Draws the edge set as :func:`gen_random` does (inclusion draws only),
    colors it rainbow (edge ``i`` in sorted order gets color ``i``), then
    repeatedly merges the smallest color class by (size, color) into the
    second smallest until the total color degree drops below ``2mn + 2n``.
    One merge costs at most ``n``, so the window is never jumped over.
    """
    n, m = config.n, config.m
    rng = SplitMix64(config.seed)
    pairs = [p for p in _pairs(n) if rng.chance(config.edge_probability)]
    low, high = 2 * m * n, 2 * m * n + 2 * n
    if n == 0 or 2 * len(pairs) < low:
        raise WindowUnreachable(
            f'rainbow base graph has total color degree {2 * len(pairs)} < {low}')

    color = {p: i for i, p in enumerate(pairs)}
    classes = {i: [p] for i, p in enumerate(pairs)}
    at = defaultdict(lambda: defaultdict(int))  # at[v][c] = R-degree
    for (u, v), c in color.items():
        at[u][c] += 1
        at[v][c] += 1
    total = 2 * len(pairs)
    while total >= high:
        a, b = sorted(classes, key=lambda c: (len(classes[c]), c))[:2]
        for u, v in classes.pop(a):
            color[(u, v)] = b
            classes[b].append((u, v))
            for x in (u, v):
                at[x][a] -= 1
                if at[x][a] == 0:
                    del at[x][a]
                    total -= 1
                at[x][b] += 1
                if at[x][b] == 1:
                    total += 1
    G = EdgeColoredGraph(n, tuple((u, v, c) for (u, v), c in color.items()))
    assert low <= total_color_degree(G) < high
    return G


_GENERATORS = {
    'random': gen_random,
    'triangle_free': gen_triangle_free,
    'c4_free': gen_c4_free,
    'proper': gen_proper,
    'near_threshold': gen_near_threshold,
}


def generate(config: GenConfig) -> EdgeColoredGraph:
    return _GENERATORS[config.kind](config)
