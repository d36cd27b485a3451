import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rainbowmatch.core import (
    GraphError,
    class_size,
    color_degree,
    color_degree_restricted,
    is_rainbow_matching,
    reduce_to_star_forests,
    star_count,
    total_color_degree,
)
from rainbowmatch.exact import max_rainbow_matching
from rainbowmatch.greedy import (
    PeelStep,
    PeelTrace,
    ReconstructionError,
    StepKind,
    format_trace,
    parse_trace,
    peel_general,
    peel_proper,
    reconstruct,
    replay,
    step_weights,
)

from .conftest import colored_graphs, graph, proper_graphs

DV, DC, DVC, DE = (StepKind.DELETE_VERTEX, StepKind.DELETE_COLOR,
                   StepKind.DELETE_VERTEX_AND_COLOR, StepKind.DELETE_EDGE_AND_COLOR)


def kinds(trace):
    return [(s.kind, s.args) for s in trace.steps]


class TestPeelProper:
    def test_empty(self):
        trace = peel_proper(graph(5), 1)
        assert trace.k == 0
        assert reconstruct(graph(5), trace).edges == ()
        assert step_weights(graph(5), trace) == []

    def test_single_edge(self):
        G = graph(2, (0, 1, 5))
        trace = peel_proper(G, 1)
        assert kinds(trace) == [(DE, (0, 1, 5))]
        assert reconstruct(G, trace).edges == ((0, 1, 5),)
        assert step_weights(G, trace) == [2]

    def test_proper_k4(self, proper_k4):
        trace = peel_proper(proper_k4, 1)
        assert kinds(trace) == [(DE, (0, 1, 0))]
        assert replay(proper_k4, trace)[-1].edges == ()
        assert step_weights(proper_k4, trace) == [12]

    def test_stops_at_target(self):
        G = graph(10, *[(2 * i, 2 * i + 1, i) for i in range(5)])
        trace = peel_proper(G, 2)
        assert trace.k == 2
        assert len(reconstruct(G, trace)) == 2

    def test_vertex_rule(self):
        # center 0 sees 4 colors, threshold 3*1+1 = 4 at m = 1
        G = graph(5, (0, 1, 0), (0, 2, 1), (0, 3, 2), (0, 4, 3))
        trace = peel_proper(G, 1)
        assert kinds(trace) == [(DV, (0,))]
        assert reconstruct(G, trace).edges == ((0, 1, 0),)

    def test_improper_input_can_break_reconstruction(self):
        # color 0 is a 5-leaf star, so it is big enough to be deleted but has
        # no two disjoint edges
        G = graph(7, (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 4, 0), (0, 5, 0), (0, 6, 1))
        trace = peel_proper(G, 2)
        assert kinds(trace) == [(DC, (0,)), (DE, (0, 6, 1))]
        with pytest.raises(ReconstructionError):
            reconstruct(G, trace)

    def test_negative_target(self):
        with pytest.raises(ValueError):
            peel_proper(graph(2), -1)


class TestPeelGeneral:
    def test_small_star(self):
        G = graph(3, (0, 1, 4), (0, 2, 4))
        trace = peel_general(G, 1)
        assert kinds(trace) == [(DE, (0, 1, 4))]
        assert replay(G, trace)[-1].vertices == (2,)
        assert replay(G, trace)[-1].edges == ()

    def test_empty(self):
        assert peel_general(graph(4), 3).k == 0

    def test_monochromatic_star(self):
        G = graph(8, *[(0, leaf, 9) for leaf in range(1, 8)])
        trace = peel_general(G, 1)
        assert kinds(trace) == [(DVC, (0, 9))]
        assert reconstruct(G, trace).edges == ((0, 1, 9),)

    def test_star_count_rule(self):
        G = graph(6, (0, 1, 2), (2, 3, 2), (4, 5, 2))
        trace = peel_general(G, 1)
        assert kinds(trace) == [(DC, (2,))]
        assert reconstruct(G, trace).edges == ((0, 1, 2),)

    def test_requires_star_forests(self, mono_triangle):
        with pytest.raises(GraphError):
            peel_general(mono_triangle, 1)


class TestTraceFormat:
    def test_golden(self, proper_k4):
        text = format_trace(peel_proper(proper_k4, 1))
        assert text == 'peel proper m=1 k=1\n0 DE 0 1 0 12\n'

    def test_round_trip(self):
        G = graph(8, *[(0, leaf, 9) for leaf in range(1, 8)])
        trace = peel_general(G, 1)
        assert parse_trace(format_trace(trace)) == trace
        assert format_trace(trace) == 'peel general m=1 k=1\n0 DVC 0 9 8\n'

    @pytest.mark.parametrize('text', [
        '', 'peel other m=1 k=0\n', 'peel proper m=1 k=1\n', 'peel proper m=1 k=1\n0 XX 1 2\n',
        'peel proper m=1 k=1\n0 DV 1 2 3\n',
    ])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_trace(text)

    def test_mismatched_trace(self, proper_k4):
        bogus = PeelTrace('proper', 1, (PeelStep(DV, (9,), 0, 0),))
        with pytest.raises(GraphError):
            reconstruct(proper_k4, bogus)
        bogus = PeelTrace('proper', 1, (PeelStep(DE, (0, 1, 7), 0, 0),))
        with pytest.raises(ReconstructionError):
            step_weights(proper_k4, bogus)


def check_rules(G, trace):
    """Each recorded step is the first rule that applies in the graph it acted on."""
    m = trace.target_m
    for step, H in zip(trace.steps, replay(G, trace)):
        i = step.index
        vt, ct = 3 * (m - i) + 1, 2 * (m - i) + 1
        size = class_size if trace.mode == 'proper' else star_count
        high_v = [v for v in H.vertices if color_degree(H, v) >= vt]
        big_c = [r for r in H.colors if size(H, r) >= ct]
        pairs = [(v, r) for v in H.vertices for r in H.colors
                 if trace.mode == 'general' and color_degree_restricted(H, v, r) >= vt]
        if step.kind is DV:
            assert step.args == (high_v[0],)
        elif step.kind is DC:
            assert not high_v and step.args == (big_c[0],)
        elif step.kind is DVC:
            assert not high_v and not big_c and step.args == pairs[0]
        else:
            assert not high_v and not big_c and not pairs
            assert step.args == H.edges[0]


def check_trace_laws(G, trace):
    graphs = replay(G, trace)
    weights = step_weights(G, trace)
    assert weights == [s.weight for s in trace.steps]
    assert sum(weights) == total_color_degree(G) - total_color_degree(graphs[-1])
    assert trace.k <= trace.target_m
    if trace.k < trace.target_m:
        assert graphs[-1].edges == ()
    M = reconstruct(G, trace)
    assert len(M) == trace.k
    assert is_rainbow_matching(G, M)
    assert trace.k <= max_rainbow_matching(G).size
    check_rules(G, trace)


@settings(max_examples=200)
@given(proper_graphs(max_n=10), st.integers(0, 4))
def test_proper_peel_laws(G, m):
    trace = peel_proper(G, m)
    assert trace == peel_proper(G, m)
    check_trace_laws(G, trace)


@settings(max_examples=200)
@given(colored_graphs(max_n=9, max_colors=4), st.integers(0, 4))
def test_general_peel_laws(G, m):
    H = reduce_to_star_forests(G)
    trace = peel_general(H, m)
    assert trace == peel_general(H, m)
    check_trace_laws(H, trace)


@settings(max_examples=100)
@given(proper_graphs(max_n=11))
def test_proper_guarantee_small(G):
    n = G.n_vertices
    assume(n >= 8 and total_color_degree(G) >= 2 * n)
    trace = peel_proper(G, 1)
    assert trace.k >= 1
    assert all(w <= 2 * n for w in step_weights(G, trace))
