"""
Greedy peel algorithms and reverse-induction matching reconstruction.

A peel repeatedly deletes a structure from the graph; at step ``i`` (graph
``G_i`` before the step) the rules are tried in order:

  proper mode
    1. a vertex with color degree >= 3(m-i)+1          -> delete the vertex
    2. a color class with >= 2(m-i)+1 edges            -> delete the class
    3. any edge uv                                     -> delete u, v and c(uv)

  general mode (every color class must be a star forest)
    1. a vertex with color degree >= 3(m-i)+1          -> delete the vertex
    2. a color spanning >= 2(m-i)+1 stars              -> delete the class
    3. a vertex v, color R with >= 3(m-i)+1 R-edges at v -> delete v and R
    4. any edge uv                                     -> delete u, v and c(uv)

Every step can be undone into one more matching edge, which is what
:func:`reconstruct` does, walking the trace backwards. Candidates are chosen
by smallest vertex id, then smallest color id, then smallest edge.

The peel stops after ``m`` steps. Past that point the thresholds drop to 1
or below, which would delete vertices (even isolated ones) that cannot be
turned back into matching edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import (
    Edge,
    EdgeColoredGraph,
    GraphError,
    Matching,
    _components,
    color_degree,
    color_degree_restricted,
    class_size,
    delete_color,
    delete_vertex,
    delete_vertices,
    is_rainbow_matching,
    is_star_forest,
    star_count,
    total_color_degree,
)

__all__ = [
    'StepKind',
    'PeelStep',
    'PeelTrace',
    'ReconstructionError',
    'peel_proper',
    'peel_general',
    'reconstruct',
    'step_weights',
    'replay',
    'format_trace',
    'parse_trace',
]

PROPER = 'proper'
GENERAL = 'general'


class StepKind(str, Enum):
    DELETE_VERTEX = 'DV'
    DELETE_COLOR = 'DC'
    DELETE_VERTEX_AND_COLOR = 'DVC'
    DELETE_EDGE_AND_COLOR = 'DE'


_ARITY = {
    StepKind.DELETE_VERTEX: 1,
    StepKind.DELETE_COLOR: 1,
    StepKind.DELETE_VERTEX_AND_COLOR: 2,
    StepKind.DELETE_EDGE_AND_COLOR: 3,
}


class ReconstructionError(GraphError):
    """The trace does not fit the graph, or a step cannot be extended."""


@dataclass(frozen=True)
class PeelStep:
    kind: StepKind
    args: tuple[int, ...]
    index: int
    weight: int

    def __str__(self):
        return ' '.join(map(str, (self.index, self.kind.value, *self.args, self.weight)))


@dataclass(frozen=True)
class PeelTrace:
    mode: str
    target_m: int
    steps: tuple[PeelStep, ...]

    @property
    def k(self) -> int:
        return len(self.steps)


def _apply(G: EdgeColoredGraph, kind: StepKind, args: tuple[int, ...]) -> EdgeColoredGraph:
    active = set(G.vertices)
    if kind is StepKind.DELETE_VERTEX:
        (v,) = args
        if v not in active:
            raise ReconstructionError(f'vertex {v} is not present')
        return delete_vertex(G, v)
    if kind is StepKind.DELETE_COLOR:
        (r,) = args
        if r not in G.color_classes:
            raise ReconstructionError(f'color {r} is not present')
        return delete_color(G, r)
    if kind is StepKind.DELETE_VERTEX_AND_COLOR:
        v, r = args
        if v not in active or r not in G.color_classes:
            raise ReconstructionError(f'vertex {v} or color {r} is not present')
        return delete_color(delete_vertex(G, v), r)
    u, v, r = args
    if not (0 <= u < G.n_vertices and 0 <= v < G.n_vertices) or G.edge_color(u, v) != r:
        raise ReconstructionError(f'edge ({u}, {v}, color {r}) is not present')
    return delete_color(delete_vertices(G, (u, v)), r)


def _next_step(G: EdgeColoredGraph, m: int, i: int, mode: str):
    vertex_t = 3 * (m - i) + 1
    class_t = 2 * (m - i) + 1
    for v in G.vertices:
        if color_degree(G, v) >= vertex_t:
            return StepKind.DELETE_VERTEX, (v,)
    for r in G.colors:
        size = class_size(G, r) if mode == PROPER else star_count(G, r)
        if size >= class_t:
            return StepKind.DELETE_COLOR, (r,)
    if mode == GENERAL:
        for v in G.vertices:
            for r in sorted(set(G.adjacency[v].values())):
                if color_degree_restricted(G, v, r) >= vertex_t:
                    return StepKind.DELETE_VERTEX_AND_COLOR, (v, r)
    if G.edges:
        return StepKind.DELETE_EDGE_AND_COLOR, G.edges[0]
    return None


def _peel(G: EdgeColoredGraph, m: int, mode: str) -> PeelTrace:
    if m < 0:
        raise ValueError(f'target m must be non-negative, got {m}')
    steps = []
    cur = G
    weight_before = total_color_degree(cur)
    for i in range(m):
        rule = _next_step(cur, m, i, mode)
        if rule is None:
            break
        kind, args = rule
        cur = _apply(cur, kind, args)
        weight_after = total_color_degree(cur)
        steps.append(PeelStep(kind, tuple(args), i, weight_before - weight_after))
        weight_before = weight_after
    return PeelTrace(mode, m, tuple(steps))


def peel_proper(G: EdgeColoredGraph, m: int) -> PeelTrace:
    """
    Run the proper-coloring peel with target ``m``.

    Works on any input; the guarantee ``k >= m`` needs a proper coloring,
    ``n >= 8m`` and total color degree at least ``2mn``. Reconstruction
    relies on color classes being matchings, so on improperly colored input
    :func:`reconstruct` may fail.
    """
    return _peel(G, m, PROPER)


def peel_general(G: EdgeColoredGraph, m: int) -> PeelTrace:
    """
    Run the general-coloring peel with target ``m``.

    Every color class of ``G`` must be a star forest; apply
    :func:`~rainbowmatch.core.reduce_to_star_forests` first.
    """
    bad = [r for r in G.colors if not is_star_forest(G, r)]
    if bad:
        raise GraphError(f'color classes {bad} are not star forests; reduce the graph first')
    return _peel(G, m, GENERAL)


def replay(G: EdgeColoredGraph, trace: PeelTrace) -> list[EdgeColoredGraph]:
    """The graphs ``G_0 .. G_k`` visited by ``trace``."""
    graphs = [G]
    for step in trace.steps:
        if len(step.args) != _ARITY[step.kind]:
            raise ReconstructionError(f'step {step.index}: wrong number of arguments')
        graphs.append(_apply(graphs[-1], step.kind, step.args))
    return graphs


def step_weights(G: EdgeColoredGraph, trace: PeelTrace) -> list[int]:
    """Total-color-degree drop of every step, recomputed by replaying the trace."""
    degrees = [total_color_degree(H) for H in replay(G, trace)]
    return [a - b for a, b in zip(degrees, degrees[1:])]


def _free(e: Edge, used_v: set[int], used_c: set[int]) -> bool:
    return e[0] not in used_v and e[1] not in used_v and e[2] not in used_c


def _extension(H: EdgeColoredGraph, step: PeelStep, mode: str,
               used_v: set[int], used_c: set[int]) -> Edge | None:
    kind, args = step.kind, step.args
    if kind is StepKind.DELETE_VERTEX:
        (v,) = args
        for u in H.neighbors(v):
            e = (min(u, v), max(u, v), H.adjacency[v][u])
            if _free(e, used_v, used_c):
                return e
        return None
    if kind is StepKind.DELETE_COLOR:
        (r,) = args
        if mode == PROPER:
            return next((e for e in H.color_classes[r] if _free(e, used_v, used_c)), None)
        for star in _components(H.color_classes[r]):
            for e in star:
                if _free(e, used_v, used_c):
                    return e
        return None
    if kind is StepKind.DELETE_VERTEX_AND_COLOR:
        v, r = args
        for u in H.neighbors(v):
            if H.adjacency[v][u] == r:
                e = (min(u, v), max(u, v), r)
                if _free(e, used_v, used_c):
                    return e
        return None
    e = tuple(args)
    return e if _free(e, used_v, used_c) else None


def reconstruct(G: EdgeColoredGraph, trace: PeelTrace) -> Matching:
    """
    Turn a peel trace into a rainbow matching of size ``trace.k``.

    Starts from the empty matching in the final graph and walks the steps
    backwards, adding one edge per step from the graph that step was applied
    to.
    """
    graphs = replay(G, trace)
    picked: list[Edge] = []
    used_v: set[int] = set()
    used_c: set[int] = set()
    for step, H in zip(reversed(trace.steps), reversed(graphs[:-1])):
        e = _extension(H, step, trace.mode, used_v, used_c)
        if e is None:
            raise ReconstructionError(f'step {step.index} ({step.kind.value}) cannot be extended')
        picked.append(e)
        used_v.update(e[:2])
        used_c.add(e[2])
    M = Matching(tuple(picked))
    assert is_rainbow_matching(G, M)
    return M


def format_trace(trace: PeelTrace) -> str:
    lines = [f'peel {trace.mode} m={trace.target_m} k={trace.k}']
    lines.extend(str(step) for step in trace.steps)
    return '\n'.join(lines) + '\n'


def parse_trace(text: str) -> PeelTrace:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith('#')]
    if not lines:
        raise ValueError('empty trace')
    head = lines[0].split()
    try:
        if head[0] != 'peel' or head[1] not in (PROPER, GENERAL):
            raise ValueError
        m = int(head[2].removeprefix('m='))
        k = int(head[3].removeprefix('k='))
    except (IndexError, ValueError):
        raise ValueError(f'malformed trace header: {lines[0]!r}') from None
    steps = []
    for lineno, ln in enumerate(lines[1:], start=2):
        tok = ln.split()
        try:
            kind = StepKind(tok[1])
            args = tuple(int(x) for x in tok[2:-1])
            if len(args) != _ARITY[kind]:
                raise ValueError
            steps.append(PeelStep(kind, args, int(tok[0]), int(tok[-1])))
        except (IndexError, ValueError):
            raise ValueError(f'malformed trace step at line {lineno}: {ln!r}') from None
    if len(steps) != k:
        raise ValueError(f'trace header says k={k} but has {len(steps)} steps')
    return PeelTrace(head[1], m, tuple(steps))
