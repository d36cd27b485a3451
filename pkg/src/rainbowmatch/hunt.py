"""
Counterexample search for the average color degree conjecture: every
edge-colored graph on n vertices with total color degree >= 2mn has a
rainbow matching of size m.

Exhaustive mode walks every labeled graph on up to ``n_max`` vertices and
every coloring of it up to color renaming (restricted growth sequences over
the sorted edge list). Random mode draws seeded instances, mostly just
above the degree threshold. Work splits into contiguous index ranges and
partial reports merge canonically, so the result does not depend on the
number of worker processes.
"""

from __future__ import annotations

import math
import time
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .core import EdgeColoredGraph, total_color_degree
from .exact import has_rainbow_matching, max_rainbow_matching
from .generate import GenConfig, SplitMix64, WindowUnreachable, gen_near_threshold, gen_random
from .instance import emit_instance, instance_hash

__all__ = [
    'NearMiss',
    'HuntReport',
    'hunt_exhaustive',
    'hunt_random',
    'exhaustive_instance_count',
    'restricted_growth_sequences',
    'write_artifacts',
    'NEAR_MISS_KEEP',
]

NEAR_MISS_KEEP = 10
NEAR_MISS_BUDGET = 200_000


@dataclass(frozen=True)
class NearMiss:
    gap: int
    m: int
    graph: EdgeColoredGraph

    @property
    def key(self):
        return (self.gap, self.graph.n_vertices, self.m, emit_instance(self.graph))


@dataclass
class HuntReport:
    mode: str
    instances_examined: int = 0
    pairs_checked: int = 0
    undecided: int = 0
    counterexample: tuple[EdgeColoredGraph, int] | None = None
    near_misses: list[NearMiss] = field(default_factory=list)
    elapsed: float = 0.0

    def merge(self, other: HuntReport) -> HuntReport:
        cex = [c for c in (self.counterexample, other.counterexample) if c is not None]
        near = sorted({x.key: x for x in self.near_misses + other.near_misses}.values(),
                      key=lambda x: x.key)
        return HuntReport(
            self.mode,
            self.instances_examined + other.instances_examined,
            self.pairs_checked + other.pairs_checked,
            self.undecided + other.undecided,
            min(cex, key=lambda c: (emit_instance(c[0]), c[1])) if cex else None,
            near[:NEAR_MISS_KEEP],
            self.elapsed + other.elapsed,
        )

    def canonical_text(self) -> str:
        """Everything except wall-clock time; identical across runs and job counts."""
        lines = [
            f'mode={self.mode}',
            f'instances={self.instances_examined}',
            f'pairs={self.pairs_checked}',
            f'undecided={self.undecided}',
        ]
        if self.counterexample is None:
            lines.append('counterexample=none')
        else:
            G, m = self.counterexample
            lines.append(f'counterexample={instance_hash(G)} m={m} n={G.n_vertices}')
        for rank, nm in enumerate(self.near_misses):
            lines.append(f'near_{rank} gap={nm.gap} m={nm.m} n={nm.graph.n_vertices} '
                         f'hash={instance_hash(nm.graph)}')
        return '\n'.join(lines) + '\n'


class _Checker:
    def __init__(self, mode: str, plus_one: bool, node_budget):
        self.report = HuntReport(mode)
        self.plus_one = plus_one
        self.node_budget = node_budget

    def check(self, G: EdgeColoredGraph, m: int, d: int | None = None) -> None:
        n = G.n_vertices
        if d is None:
            d = total_color_degree(G)
        if d < 2 * m * n:
            return
        self.report.pairs_checked += 1
        need = m + 1 if self.plus_one else m
        if n // 2 < need or len(G.colors) < need:
            found = False
        else:
            found = has_rainbow_matching(G, need, self.node_budget)
        if found is None:
            self.report.undecided += 1
        elif not found:
            self._counterexample(G, m, need)
        elif has_rainbow_matching(G, need + 1, NEAR_MISS_BUDGET) is False:
            self._near_miss(NearMiss(d - 2 * m * n, m, G))

    def _near_miss(self, nm: NearMiss) -> None:
        near = self.report.near_misses
        if len(near) == NEAR_MISS_KEEP and nm.key >= near[-1].key:
            return
        if any(x.key == nm.key for x in near):
            return
        near.append(nm)
        near.sort(key=lambda x: x.key)
        del near[NEAR_MISS_KEEP:]

    def _counterexample(self, G: EdgeColoredGraph, m: int, need: int) -> None:
        for _ in range(2):
            res = max_rainbow_matching(G, node_budget=math.inf)
            if res.size >= need or total_color_degree(G) < 2 * m * G.n_vertices:
                raise RuntimeError('counterexample failed re-verification; solver bug')
        cur = self.report.counterexample
        if cur is None or (emit_instance(G), m) < (emit_instance(cur[0]), cur[1]):
            self.report.counterexample = (G, m)


def restricted_growth_sequences(length: int, max_colors: int) -> Iterator[tuple[int, ...]]:
    """Sequences with a[0] = 0 and a[i] <= max(a[:i]) + 1, using < max_colors values."""
    seq = [0] * length

    def rec(i: int, top: int):
        if i == length:
            yield tuple(seq)
            return
        for c in range(min(top + 2, max_colors)):
            seq[i] = c
            yield from rec(i + 1, max(top, c))

    if length == 0:
        yield ()
    elif max_colors > 0:
        yield from rec(0, -1)


def _stirling2(n: int, k: int) -> int:
    return sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k + 1)) // math.factorial(k)


def exhaustive_instance_count(n_max: int, color_max: int) -> int:
    """Closed-form size of the exhaustive space for n = 1 .. n_max."""
    total = 0
    for n in range(1, n_max + 1):
        pairs = math.comb(n, 2)
        for e in range(pairs + 1):
            colorings = sum(_stirling2(e, j) for j in range(min(e, color_max) + 1))
            total += math.comb(pairs, e) * colorings
    return total


def _exhaustive_chunk(units: Sequence[tuple[int, int]], color_max: int, plus_one: bool) -> HuntReport:
    checker = _Checker('exhaustive', plus_one, math.inf)
    for n, mask in units:
        pairs = [p for i, p in enumerate(combinations(range(n), 2)) if mask >> i & 1]
        for colors in restricted_growth_sequences(len(pairs), color_max):
            G = EdgeColoredGraph(n, tuple((u, v, c) for (u, v), c in zip(pairs, colors)))
            checker.report.instances_examined += 1
            d = total_color_degree(G)
            for m in range(1, n // 2 + 1):
                checker.check(G, m, d)
    return checker.report


def _chunks(seq: list, parts: int) -> list[list]:
    size = max(1, math.ceil(len(seq) / parts))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _run(mode: str, worker, chunks: list, extra: tuple, jobs: int) -> HuntReport:
    start = time.perf_counter()
    report = HuntReport(mode)
    if jobs <= 1 or len(chunks) <= 1:
        parts = [worker(c, *extra) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(worker, chunks, *[[x] * len(chunks) for x in extra]))
    for p in parts:
        report = report.merge(p)
    return replace(report, elapsed=time.perf_counter() - start)


def hunt_exhaustive(n_max: int, color_max: int, jobs: int = 1, plus_one: bool = False) -> HuntReport:
    """
    Check every labeled graph on 1 .. ``n_max`` vertices under every coloring
    with at most ``color_max`` colors (up to renaming), for every m in
    ``1 .. n // 2``.

    ``plus_one`` asks for a matching of size m + 1 instead of m.
    """
    units = [(n, mask) for n in range(1, n_max + 1) for mask in range(1 << math.comb(n, 2))]
    chunks = _chunks(units, 4 * max(jobs, 1))
    return _run('exhaustive', _exhaustive_chunk, chunks, (color_max, plus_one), jobs)


P_CHOICES = (Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(5, 6), Fraction(1))


def _random_trial(checker: _Checker, seed: int, t: int, n_range: tuple[int, int],
                  kinds: Sequence[str]) -> None:
    rng = SplitMix64(seed + t)
    n = n_range[0] + rng.below(n_range[1] - n_range[0] + 1)
    p = P_CHOICES[rng.below(len(P_CHOICES))]
    kind = kinds[t % len(kinds)]
    checker.report.instances_examined += 1
    if kind == 'random':
        G = gen_random(GenConfig(n, p, 1 + rng.below(n), rng.next_u64(), 'random'))
        d = total_color_degree(G)
        for m in range(1, n // 2 + 1):
            checker.check(G, m, d)
        return
    m = 1 + rng.below(max(1, (n - 1) // 2))
    for attempt in range(4):
        prob = p if attempt < 3 else Fraction(1)
        try:
            G = gen_near_threshold(GenConfig(n, prob, 1, rng.next_u64(), 'near_threshold', m))
        except WindowUnreachable:
            continue
        checker.check(G, m)
        return


def _random_chunk(trial_range: range, seed: int, n_range, kinds, plus_one: bool) -> HuntReport:
    checker = _Checker('random', plus_one, None)
    for t in trial_range:
        _random_trial(checker, seed, t, n_range, kinds)
    return checker.report


def hunt_random(trials: int, seed: int = 0, n_range: tuple[int, int] = (4, 12),
                kinds: Sequence[str] = ('near_threshold',), jobs: int = 1,
                plus_one: bool = False) -> HuntReport:
    """
    Seeded random search over ``trials`` instances.

    Trial ``t`` derives everything from ``SplitMix64(seed + t)``: the vertex
    count in ``n_range``, an edge probability, and, for the near-threshold
    kind, a target m in ``1 .. (n - 1) // 2`` with an instance whose total
    color degree sits in ``[2mn, 2mn + 2n)``. The ``random`` kind draws a
    plain random coloring and checks every m whose hypothesis holds. Kinds
    alternate by trial index.
    """
    if trials < 0:
        raise ValueError('trials must be non-negative')
    if n_range[0] < 3 or n_range[0] > n_range[1]:
        raise ValueError('n_range must satisfy 3 <= low <= high')
    ranges = [range(r[0], r[-1] + 1) for r in _chunks(list(range(trials)), 4 * max(jobs, 1))]
    return _run('random', _random_chunk, ranges, (seed, tuple(n_range), tuple(kinds), plus_one), jobs)


def write_artifacts(report: HuntReport, out_dir) -> list[Path]:
    """Write the counterexample (``cex_<hash>.ecg``) and near misses (``near_<rank>.ecg``)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if report.counterexample is not None:
        G, m = report.counterexample
        path = out / f'cex_{instance_hash(G)}.ecg'
        path.write_text(f'# counterexample m={m} total_color_degree={total_color_degree(G)}\n'
                        + emit_instance(G), encoding='ascii')
        written.append(path)
    for rank, nm in enumerate(report.near_misses):
        path = out / f'near_{rank}.ecg'
        path.write_text(f'# near miss m={nm.m} gap={nm.gap}\n' + emit_instance(nm.graph),
                        encoding='ascii')
        written.append(path)
    return written
