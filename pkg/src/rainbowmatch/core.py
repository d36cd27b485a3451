"""
Edge-colored simple graphs, color-degree accounting and structural predicates.

Vertices are integers ``0 .. n_vertices-1``. Deleting a vertex never renumbers
the others: the vertex is masked instead, so ids stay meaningful across a
sequence of deletions.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    'Edge',
    'EdgeColoredGraph',
    'Matching',
    'ColorClassView',
    'GraphError',
    'color_degree',
    'color_degree_restricted',
    'total_color_degree',
    'min_color_degree',
    'colors_between',
    'class_size',
    'star_count',
    'color_class',
    'is_star_forest',
    'is_triangle_free',
    'is_c4_free',
    'is_properly_colored',
    'is_rainbow_matching',
    'delete_vertex',
    'delete_vertices',
    'delete_color',
    'delete_edge',
    'induced_subgraph',
    'reduce_to_star_forests',
]

Edge = tuple[int, int, int]


class GraphError(ValueError):
    """Invalid graph data or an id that does not belong to the graph."""


@dataclass(frozen=True)
class EdgeColoredGraph:
    """
    Simple undirected graph with one color per edge.

    Edges are stored as ``(u, v, color)`` with ``u < v``, sorted. ``masked``
    holds deleted vertex ids; they keep their id but are no longer part of
    the vertex set.
    """
    n_vertices: int
    edges: tuple[Edge, ...] = ()
    masked: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        n = self.n_vertices
        if not isinstance(n, int) or n < 0:
            raise GraphError(f'n_vertices must be a non-negative int, got {n!r}')
        canon = []
        seen = set()
        for e in self.edges:
            try:
                u, v, c = e
            except (TypeError, ValueError):
                raise GraphError(f'edge must be a (u, v, color) triple, got {e!r}') from None
            if u == v:
                raise GraphError(f'self-loop at vertex {u}')
            if u > v:
                u, v = v, u
            if not (0 <= u and v < n):
                raise GraphError(f'edge ({u}, {v}) out of range for n={n}')
            if c < 0:
                raise GraphError(f'negative color {c} on edge ({u}, {v})')
            if (u, v) in seen:
                raise GraphError(f'parallel edge ({u}, {v})')
            seen.add((u, v))
            canon.append((int(u), int(v), int(c)))
        canon.sort()
        masked = frozenset(self.masked)
        for x in masked:
            if not 0 <= x < n:
                raise GraphError(f'masked vertex {x} out of range')
        for u, v, _ in canon:
            if u in masked or v in masked:
                raise GraphError(f'edge ({u}, {v}) touches a deleted vertex')
        object.__setattr__(self, 'edges', tuple(canon))
        object.__setattr__(self, 'masked', masked)

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Edge]) -> EdgeColoredGraph:
        return cls(n_vertices, tuple(edges))

    # -- cached views ----------------------------------------------------

    @cached_property
    def adjacency(self) -> dict[int, dict[int, int]]:
        """``adjacency[v][u]`` is the color of edge ``uv``."""
        adj: dict[int, dict[int, int]] = {v: {} for v in self.vertices}
        for u, v, c in self.edges:
            adj[u][v] = c
            adj[v][u] = c
        return adj

    @cached_property
    def color_classes(self) -> dict[int, tuple[Edge, ...]]:
        classes: dict[int, list[Edge]] = defaultdict(list)
        for e in self.edges:
            classes[e[2]].append(e)
        return {c: tuple(es) for c, es in sorted(classes.items())}

    @cached_property
    def _color_degrees(self) -> dict[int, int]:
        return {v: len(set(nb.values())) for v, nb in self.adjacency.items()}

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n_vertices) if v not in self.masked)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(self.color_classes)

    def edge_color(self, u: int, v: int) -> int | None:
        return self.adjacency.get(u, {}).get(v)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency.get(v, ()))

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return sorted(self.adjacency.get(v, ()))

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n_vertices):
            raise GraphError(f'vertex {v!r} out of range for n={self.n_vertices}')

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint set of colored edges. Rainbow-ness is checked separately."""
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        canon = []
        used: set[int] = set()
        for u, v, c in self.edges:
            if u > v:
                u, v = v, u
            if u in used or v in used or u == v:
                raise GraphError(f'matching edges share a vertex at ({u}, {v})')
            used.update((u, v))
            canon.append((u, v, c))
        object.__setattr__(self, 'edges', tuple(sorted(canon)))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(x for u, v, _ in self.edges for x in (u, v))

    @property
    def colors(self) -> frozenset[int]:
        return frozenset(c for _, _, c in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


@dataclass(frozen=True)
class ColorClassView:
    color: int
    edges: tuple[Edge, ...]
    component_count: int

    @property
    def size(self) -> int:
        return len(self.edges)


# -- degree accounting ----------------------------------------------------

def color_degree(G: EdgeColoredGraph, v: int) -> int:
    """Number of distinct colors on edges at ``v``."""
    G._check_vertex(v)
    return G._color_degrees.get(v, 0)


def color_degree_restricted(G: EdgeColoredGraph, v: int, color: int) -> int:
    """Number of edges at ``v`` carrying ``color`` (an edge count, not 0/1)."""
    G._check_vertex(v)
    return sum(1 for c in G.adjacency.get(v, {}).values() if c == color)


def total_color_degree(G: EdgeColoredGraph) -> int:
    return sum(G._color_degrees.values())


def min_color_degree(G: EdgeColoredGraph) -> int:
    if not G.vertices:
        raise GraphError('minimum color degree of an empty vertex set')
    return min(G._color_degrees[v] for v in G.vertices)


def colors_between(G: EdgeColoredGraph, X: Iterable[int], Y: Iterable[int]) -> set[int]:
    X, Y = set(X), set(Y)
    for v in X | Y:
        G._check_vertex(v)
    out = set()
    for u, v, c in G.edges:
        if (u in X and v in Y) or (v in X and u in Y):
            out.add(c)
    return out


# -- color classes --------------------------------------------------------

def _components(edges: Iterable[Edge]) -> list[list[Edge]]:
    """Connected components of an edge set, ordered by minimum vertex."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = list(edges)
    for u, v, _ in edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[Edge]] = defaultdict(list)
    for e in edges:
        groups[find(e[0])].append(e)
    # union by min keeps each root at its component's smallest vertex
    return [sorted(groups[r]) for r in sorted(groups)]


def _is_star(component: list[Edge]) -> bool:
    verts = {x for u, v, _ in component for x in (u, v)}
    if len(component) != len(verts) - 1:
        return False
    deg: dict[int, int] = defaultdict(int)
    for u, v, _ in component:
        deg[u] += 1
        deg[v] += 1
    return sum(1 for d in deg.values() if d > 1) <= 1


def color_class(G: EdgeColoredGraph, color: int) -> ColorClassView:
    edges = G.color_classes.get(color, ())
    return ColorClassView(color, edges, len(_components(edges)))


def class_size(G: EdgeColoredGraph, color: int) -> int:
    return len(G.color_classes.get(color, ()))


def star_count(G: EdgeColoredGraph, color: int) -> int:
    """Number of connected components spanned by the edges of ``color``."""
    return len(_components(G.color_classes.get(color, ())))


def is_star_forest(G: EdgeColoredGraph, color: int) -> bool:
    return all(_is_star(comp) for comp in _components(G.color_classes.get(color, ())))


# -- structural predicates ------------------------------------------------

def is_triangle_free(G: EdgeColoredGraph) -> bool:
    adj = G.adjacency
    for u, v, _ in G.edges:
        if adj[u].keys() & adj[v].keys():
            return False
    return True


def is_c4_free(G: EdgeColoredGraph) -> bool:
    """True iff no two distinct vertices have two or more common neighbors."""
    adj = G.adjacency
    seen_pairs: set[tuple[int, int]] = set()
    for w in G.vertices:
        nbrs = sorted(adj[w])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if (a, b) in seen_pairs:
                    return False
                seen_pairs.add((a, b))
    return True


def is_properly_colored(G: EdgeColoredGraph) -> bool:
    return all(G._color_degrees[v] == len(G.adjacency[v]) for v in G.vertices)


def is_rainbow_matching(G: EdgeColoredGraph, M: Iterable[Edge]) -> bool:
    """
    True iff the edges of ``M`` are pairwise vertex-disjoint with pairwise
    distinct colors. Raises GraphError if some edge of ``M`` is not in ``G``
    with the stated color.
    """
    used_v: set[int] = set()
    used_c: set[int] = set()
    ok = True
    for u, v, c in M:
        if G.edge_color(u, v) != c:
            raise GraphError(f'edge ({u}, {v}, color {c}) is not in the host graph')
        if u in used_v or v in used_v or c in used_c:
            ok = False
        used_v.update((u, v))
        used_c.add(c)
    return ok


# -- deletions ------------------------------------------------------------

def delete_vertices(G: EdgeColoredGraph, vs: Iterable[int]) -> EdgeColoredGraph:
    vs = set(vs)
    for v in vs:
        G._check_vertex(v)
    edges = tuple(e for e in G.edges if e[0] not in vs and e[1] not in vs)
    return EdgeColoredGraph(G.n_vertices, edges, G.masked | vs)


def delete_vertex(G: EdgeColoredGraph, v: int) -> EdgeColoredGraph:
    return delete_vertices(G, (v,))


def delete_color(G: EdgeColoredGraph, color: int) -> EdgeColoredGraph:
    edges = tuple(e for e in G.edges if e[2] != color)
    return EdgeColoredGraph(G.n_vertices, edges, G.masked)


def delete_edge(G: EdgeColoredGraph, u: int, v: int) -> EdgeColoredGraph:
    G._check_vertex(u)
    G._check_vertex(v)
    if G.edge_color(u, v) is None:
        raise GraphError(f'no edge ({u}, {v})')
    a, b = min(u, v), max(u, v)
    edges = tuple(e for e in G.edges if (e[0], e[1]) != (a, b))
    return EdgeColoredGraph(G.n_vertices, edges, G.masked)


def induced_subgraph(G: EdgeColoredGraph, S: Iterable[int]) -> EdgeColoredGraph:
    S = set(S)
    for v in S:
        G._check_vertex(v)
    return delete_vertices(G, set(G.vertices) - S)


# -- star-forest reduction ------------------------------------------------

def _deletable_edge(component: list[Edge]) -> Edge:
    deg: dict[int, int] = defaultdict(int)
    for u, v, _ in component:
        deg[u] += 1
        deg[v] += 1
    # a non-star component always has one: a cycle edge or the middle of a P4
    return next(e for e in component if deg[e[0]] > 1 and deg[e[1]] > 1)


def reduce_to_star_forests(G: EdgeColoredGraph) -> EdgeColoredGraph:
    """
    Delete edges until every color class is a forest of stars, without
    changing any vertex's color degree.

    Inside a monochromatic component that is not a star, an edge whose
    endpoints both keep another edge of that color is removed; colors are
    scanned in ascending order, components by smallest vertex, and the
    lexicographically smallest such edge goes first.
    """
    removed: set[tuple[int, int]] = set()
    for color, class_edges in G.color_classes.items():
        current = list(class_edges)
        while True:
            bad = next((comp for comp in _components(current) if not _is_star(comp)), None)
            if bad is None:
                break
            u, v, _ = _deletable_edge(bad)
            removed.add((u, v))
            current.remove((u, v, color))
    if not removed:
        return G
    edges = tuple(e for e in G.edges if (e[0], e[1]) not in removed)
    return EdgeColoredGraph(G.n_vertices, edges, G.masked)
