"""
Command line interface.

Exit codes: 0 success / property holds, 1 verification failed or
counterexample found, 2 input or usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction

from . import core
from .exact import max_rainbow_matching
from .generate import KINDS, GenConfig, generate
from .greedy import GENERAL, PROPER, ReconstructionError, format_trace, peel_general, peel_proper, reconstruct
from .hunt import hunt_exhaustive, hunt_random, write_artifacts
from .instance import InstanceFormatError, emit_instance, read_instance, write_instance
from .verify import TheoremId, check_hypotheses, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

PROPERTIES = {
    'triangle-free': core.is_triangle_free,
    'c4-free': core.is_c4_free,
    'proper': core.is_properly_colored,
    'star-forest': lambda G: all(core.is_star_forest(G, r) for r in G.colors),
}


class _InputError(Exception):
    pass


def _paint(text: str, ok: bool) -> str:
    if os.environ.get('ECG_COLOR', '0') != '1':
        return text
    return f'\033[{32 if ok else 31}m{text}\033[0m'


def _load(path: str) -> core.EdgeColoredGraph:
    try:
        return read_instance(path)
    except OSError as exc:
        raise _InputError(f'{path}: {exc.strerror}') from exc
    except InstanceFormatError as exc:
        raise _InputError(f'{path}: {exc}') from exc


def _print_matching(M) -> None:
    for u, v, c in M:
        print(f'{u} {v} {c}')


def cmd_solve(args) -> int:
    G = _load(args.file)
    res = max_rainbow_matching(G, node_budget=args.budget)
    print(f'size {res.size}')
    _print_matching(res.witness)
    print(f'nodes {res.nodes_explored}', file=sys.stderr)
    if res.budget_exhausted:
        print('budget exhausted; size is a lower bound', file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_greedy(args) -> int:
    G = _load(args.file)
    if args.mode == GENERAL:
        H = core.reduce_to_star_forests(G)
        print(f'reduced to star forests first ({len(G) - len(H)} edges removed)', file=sys.stderr)
        trace = peel_general(H, args.m)
        theorem = TheoremId.GENERAL
    else:
        H = G
        trace = peel_proper(G, args.m)
        theorem = TheoremId.PROPER_COLORED
    if args.trace:
        with open(args.trace, 'w', encoding='ascii') as fh:
            fh.write(format_trace(trace))
    hyp = check_hypotheses(G, args.m, theorem)
    print(f'k {trace.k}')
    try:
        M = reconstruct(H, trace)
    except ReconstructionError as exc:
        print(f'reconstruction failed: {exc}', file=sys.stderr)
        return EXIT_FAIL
    _print_matching(M)
    print(f'hypotheses {"met" if hyp.met else "unmet"}: {hyp.describe()}')
    if hyp.met and trace.k < args.m:
        print(_paint(f'greedy guarantee violated: k={trace.k} < m={args.m}', False))
        return EXIT_FAIL
    return EXIT_OK


def cmd_check(args) -> int:
    G = _load(args.file)
    holds = PROPERTIES[args.property](G)
    print(_paint(f'{args.property} {"yes" if holds else "no"}', holds))
    if args.property == 'star-forest' and not holds:
        bad = [r for r in G.colors if not core.is_star_forest(G, r)]
        print('non-star colors ' + ' '.join(map(str, bad)))
    return EXIT_OK if holds else EXIT_FAIL


def cmd_reduce(args) -> int:
    G = _load(args.file)
    H = core.reduce_to_star_forests(G)
    write_instance(H, args.output)
    print(f'removed {len(G) - len(H)} edges; total color degree '
          f'{core.total_color_degree(G)} -> {core.total_color_degree(H)}')
    return EXIT_OK


def cmd_verify(args) -> int:
    G = _load(args.file)
    report = verify_theorem(G, args.m, TheoremId(args.theorem), node_budget=args.budget,
                            artifact_dir=args.artifact_dir)
    ok = not report.violation and not report.greedy_shortfall
    print(_paint(report.verdict_line(), ok))
    print(f'hypotheses {"met" if report.hypotheses_met else "unmet"}: '
          f'{report.hypotheses.describe()}')
    if report.witness is not None:
        print(f'witness size {len(report.witness)} (need {report.conclusion_required_size})')
        _print_matching(report.witness)
    if report.violation:
        print(_paint('THEOREM VIOLATION', False))
        if report.artifact:
            print(f'instance saved to {report.artifact}')
        return EXIT_FAIL
    if report.greedy_shortfall:
        return EXIT_FAIL
    if report.conclusion_met is None:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        config = GenConfig(args.n, Fraction(args.p), args.colors, args.seed,
                           args.kind.replace('-', '_'), args.m)
        G = generate(config)
    except (ValueError, ZeroDivisionError) as exc:
        raise _InputError(str(exc)) from exc
    if args.output:
        write_instance(G, args.output)
    else:
        sys.stdout.write(emit_instance(G))
    return EXIT_OK


def cmd_hunt(args) -> int:
    if args.mode == 'exhaustive':
        report = hunt_exhaustive(args.n_max, args.colors_max, jobs=args.jobs,
                                 plus_one=args.plus_one)
    else:
        kinds = tuple(k.replace('-', '_') for k in args.kinds.split(','))
        try:
            report = hunt_random(args.trials, args.seed, (args.n_min, args.n_max), kinds,
                                 jobs=args.jobs, plus_one=args.plus_one)
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
    sys.stdout.write(report.canonical_text())
    print(f'elapsed {report.elapsed:.2f}s', file=sys.stderr)
    if args.out_dir:
        for path in write_artifacts(report, args.out_dir):
            print(f'wrote {path}', file=sys.stderr)
    if report.counterexample is not None:
        print(_paint('COUNTEREXAMPLE FOUND', False))
        return EXIT_FAIL
    return EXIT_OK


def _budget(text: str):
    if text in ('inf', 'unlimited'):
        return float('inf')
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError('budget must be positive')
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='rainbowmatch',
                                     description='Rainbow matchings in edge-colored graphs.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('solve', help='exact maximum rainbow matching')
    p.add_argument('file')
    p.add_argument('--budget', type=_budget, default=None, help='search node budget')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('greedy', help='greedy peel and matching reconstruction')
    p.add_argument('file')
    p.add_argument('--mode', choices=(PROPER, GENERAL), required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--trace', help='write the peel trace here')
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser('check', help='structural predicates')
    p.add_argument('file')
    p.add_argument('--property', choices=tuple(PROPERTIES), required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('reduce', help='reduce every color class to a star forest')
    p.add_argument('file')
    p.add_argument('-o', '--output', required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser('verify', help='check a theorem on an instance')
    p.add_argument('file')
    p.add_argument('--theorem', choices=[t.value for t in TheoremId], required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--budget', type=_budget, default=None)
    p.add_argument('--artifact-dir', help='where to save an instance that violates a theorem')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('gen', help='generate a seeded instance')
    p.add_argument('--kind', choices=KINDS + tuple(k.replace('_', '-') for k in KINDS if '_' in k),
                   default='random')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--p', default='1/2', help='edge probability, e.g. 0.3 or 3/10')
    p.add_argument('--colors', type=int, default=1)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--m', type=int, default=None, help='target m for near_threshold')
    p.add_argument('-o', '--output')
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('hunt', help='search for counterexamples to the conjecture')
    p.add_argument('--mode', choices=('exhaustive', 'random'), required=True)
    p.add_argument('--n-max', type=int, default=4)
    p.add_argument('--n-min', type=int, default=4, help='random mode only')
    p.add_argument('--colors-max', type=int, default=3, help='exhaustive mode only')
    p.add_argument('--trials', type=int, default=1000, help='random mode only')
    p.add_argument('--seed', type=int, default=0, help='random mode only')
    p.add_argument('--kinds', default='near_threshold',
                   help='random mode: comma-separated instance kinds (near_threshold, random)')
    p.add_argument('--plus-one', action='store_true', help='ask for a matching of size m+1')
    p.add_argument('--out-dir')
    p.add_argument('--jobs', type=int, default=1)
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format='%(levelname)s %(name)s: %(message)s')
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    if getattr(args, 'm', None) is not None and args.m < 0:
        print('error: --m must be non-negative', file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _InputError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INPUT
    except core.GraphError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
