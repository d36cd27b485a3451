"""
Hypothesis checks and conclusion verification for the rainbow matching
theorems under a total color degree assumption.

Each theorem pairs a structural condition with ``d(G) >= 2mn`` (strictly
``>`` for the triangle-free case, which then promises one extra edge).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .core import (
    Edge,
    EdgeColoredGraph,
    Matching,
    color_degree,
    is_c4_free,
    is_properly_colored,
    is_triangle_free,
    reduce_to_star_forests,
    total_color_degree,
)
from .exact import max_rainbow_matching
from .greedy import ReconstructionError, peel_general, peel_proper, reconstruct
from .instance import instance_hash, write_instance

__all__ = [
    'TheoremId',
    'HypothesisCheck',
    'VerifyReport',
    'DegreeSumReport',
    'check_hypotheses',
    'verify_theorem',
    'check_degree_sum_bounds',
    'required_size',
]

log = logging.getLogger(__name__)


class TheoremId(str, Enum):
    TRIANGLE_FREE = 'tri'
    C4_FREE = 'c4'
    PROPER_COLORED = 'proper'
    GENERAL = 'general'
    CONJECTURE_Q1 = 'q1'


@dataclass(frozen=True)
class HypothesisCheck:
    """
    Per-hypothesis breakdown. ``structure`` and ``size`` are None when the
    theorem has no such hypothesis.
    """
    theorem: TheoremId
    m: int
    n: int
    total_color_degree: int
    structure: bool | None
    degree: bool
    size: bool | None

    @property
    def met(self) -> bool:
        return all(h is not False for h in (self.structure, self.degree, self.size))

    def describe(self) -> str:
        fmt = {None: 'n/a', True: 'ok', False: 'FAIL'}
        op = '>' if self.theorem is TheoremId.TRIANGLE_FREE else '>='
        bound = 2 * self.m * self.n
        return (f'structure={fmt[self.structure]} '
                f'degree={fmt[self.degree]} ({self.total_color_degree} {op} {bound}) '
                f'size={fmt[self.size]}')


def required_size(theorem: TheoremId, m: int) -> int:
    return m + 1 if TheoremId(theorem) is TheoremId.TRIANGLE_FREE else m


def check_hypotheses(G: EdgeColoredGraph, m: int, theorem: TheoremId) -> HypothesisCheck:
    theorem = TheoremId(theorem)
    n = G.n_vertices
    d = total_color_degree(G)
    structure = size = None
    degree = d >= 2 * m * n
    if theorem is TheoremId.TRIANGLE_FREE:
        structure = is_triangle_free(G)
        degree = d > 2 * m * n
    elif theorem is TheoremId.C4_FREE:
        structure = is_c4_free(G)
    elif theorem is TheoremId.PROPER_COLORED:
        structure = is_properly_colored(G)
        size = n >= 8 * m
    elif theorem is TheoremId.GENERAL:
        size = n >= 3 * m * m + 4 * m
    return HypothesisCheck(theorem, m, n, d, structure, degree, size)


@dataclass(frozen=True)
class VerifyReport:
    theorem: TheoremId
    m: int
    hypotheses: HypothesisCheck
    conclusion_required_size: int
    conclusion_met: bool | None
    witness: Matching | None
    method: str
    greedy_k: int | None = None
    exact_size: int | None = None
    greedy_shortfall: bool = False
    artifact: Path | None = None

    @property
    def hypotheses_met(self) -> bool:
        return self.hypotheses.met

    @property
    def violation(self) -> bool:
        """Hypotheses hold but the promised matching provably does not exist."""
        return self.hypotheses_met and self.conclusion_met is False

    def verdict_line(self) -> str:
        concl = {True: '1', False: '0', None: '?'}[self.conclusion_met]
        k = '-' if self.greedy_k is None else self.greedy_k
        mx = '-' if self.exact_size is None else self.exact_size
        return (f'theorem={self.theorem.value} m={self.m} hyp={int(self.hypotheses_met)} '
                f'concl={concl} k={k} max={mx}')


def _greedy(G: EdgeColoredGraph, target: int, theorem: TheoremId):
    if theorem is TheoremId.PROPER_COLORED:
        H, trace = G, peel_proper(G, target)
    else:
        H = reduce_to_star_forests(G)
        trace = peel_general(H, target)
    try:
        return trace.k, reconstruct(H, trace)
    except ReconstructionError:
        # only reachable for the proper peel on an improperly colored graph
        return None, None


def verify_theorem(G: EdgeColoredGraph, m: int, theorem: TheoremId, node_budget=None,
                   method: str | None = None, artifact_dir=None) -> VerifyReport:
    """
    Check the hypotheses of ``theorem`` and whether ``G`` has the promised
    rainbow matching.

    ``method`` defaults to ``'greedy'`` for the proper and general theorems
    (the peel, with an exact fallback if it falls short) and ``'exact'``
    otherwise. A greedy shortfall under met hypotheses is flagged even when
    the exact fallback succeeds. If the hypotheses hold and the conclusion
    is false, the instance is logged and, when ``artifact_dir`` is given,
    written there.
    """
    theorem = TheoremId(theorem)
    if method is None:
        method = 'greedy' if theorem in (TheoremId.PROPER_COLORED, TheoremId.GENERAL) else 'exact'
    if method not in ('greedy', 'exact'):
        raise ValueError(f'unknown method {method!r}')
    hyp = check_hypotheses(G, m, theorem)
    need = required_size(theorem, m)

    greedy_k = exact_size = None
    witness = None
    shortfall = False
    concl: bool | None
    if method == 'greedy':
        greedy_theorem = theorem if theorem is TheoremId.PROPER_COLORED else TheoremId.GENERAL
        greedy_k, M = _greedy(G, need, greedy_theorem)
        if greedy_k is not None and greedy_k >= need:
            witness = M
        elif hyp.met and theorem in (TheoremId.PROPER_COLORED, TheoremId.GENERAL):
            shortfall = True
            log.warning('greedy guarantee violated: %s m=%d reached k=%s',
                        theorem.value, m, greedy_k)
    if witness is not None:
        concl = True
    else:
        res = max_rainbow_matching(G, node_budget=node_budget)
        exact_size = res.size
        if res.size >= need:
            concl, witness = True, res.witness
        else:
            concl = None if res.budget_exhausted else False

    artifact = None
    report = VerifyReport(theorem, m, hyp, need, concl, witness, method,
                          greedy_k, exact_size, shortfall)
    if report.violation:
        if artifact_dir is not None:
            d = Path(artifact_dir)
            d.mkdir(parents=True, exist_ok=True)
            artifact = d / f'violation_{theorem.value}_m{m}_{instance_hash(G)}.ecg'
            write_instance(G, artifact)
        log.error('THEOREM VIOLATION: %s (instance saved to %s)', report.verdict_line(), artifact)
        report = VerifyReport(theorem, m, hyp, need, concl, witness, method,
                              greedy_k, exact_size, shortfall, artifact)
    return report


@dataclass(frozen=True)
class DegreeSumReport:
    n: int
    triangle_free: bool
    c4_free: bool
    max_sum: int
    max_edge: Edge | None
    violations: list[tuple[Edge, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_degree_sum_bounds(G: EdgeColoredGraph) -> DegreeSumReport:
    """
    Color-degree sums over edges: at most ``n`` in a triangle-free graph and
    at most ``n + 1`` in a C4-free graph. ``violations`` lists
    ``(edge, sum, bound)`` and should always be empty.
    """
    n = G.n_vertices
    tri = is_triangle_free(G)
    c4 = is_c4_free(G)
    best, best_edge = 0, None
    bad = []
    for e in G.edges:
        s = color_degree(G, e[0]) + color_degree(G, e[1])
        if s > best:
            best, best_edge = s, e
        if tri and s > n:
            bad.append((e, s, n))
        elif c4 and s > n + 1:
            bad.append((e, s, n + 1))
    return DegreeSumReport(n, tri, c4, best, best_edge, bad)
