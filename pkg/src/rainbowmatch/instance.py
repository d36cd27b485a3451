"""
Plain-text instance files (``.ecg``)::

    ecg 1
    <n> <e>
    <u> <v> <c>      (e lines, u < v)

ASCII, single spaces between tokens, every line newline-terminated. Lines
starting with ``#`` are comments and may appear anywhere.
"""

from __future__ import annotations

import hashlib

from .core import EdgeColoredGraph, GraphError

__all__ = ['InstanceFormatError', 'parse_instance', 'emit_instance', 'instance_hash',
           'read_instance', 'write_instance']


class InstanceFormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f'line {lineno}: {message}' if lineno else message)


def _ints(tokens: list[str], lineno: int) -> list[int]:
    out = []
    for t in tokens:
        if not t.isdigit() or not t.isascii():
            raise InstanceFormatError(f'expected a non-negative integer, got {t!r}', lineno)
        out.append(int(t))
    return out


def parse_instance(text: str) -> EdgeColoredGraph:
    if not text.isascii():
        raise InstanceFormatError('file is not ASCII')
    if text and not text.endswith('\n'):
        raise InstanceFormatError('last line is not newline-terminated')
    rows = [(i, ln) for i, ln in enumerate(text.split('\n')[:-1], start=1)
            if not ln.startswith('#')]
    if not rows or rows[0][1] != 'ecg 1':
        raise InstanceFormatError("missing 'ecg 1' header", rows[0][0] if rows else 1)
    if len(rows) < 2:
        raise InstanceFormatError('missing counts line', rows[0][0] + 1)
    lineno, counts = rows[1]
    n, e = _ints(_split(counts, 2, lineno), lineno)
    body = rows[2:]
    if len(body) != e:
        raise InstanceFormatError(f'header declares {e} edges, found {len(body)}',
                                  body[e][0] if len(body) > e else lineno)
    edges = []
    seen = set()
    for lineno, ln in body:
        u, v, c = _ints(_split(ln, 3, lineno), lineno)
        if u >= v:
            raise InstanceFormatError(f'u >= v in edge ({u}, {v})', lineno)
        if v >= n:
            raise InstanceFormatError(f'vertex {v} out of range for n={n}', lineno)
        if (u, v) in seen:
            raise InstanceFormatError(f'duplicate edge ({u}, {v})', lineno)
        seen.add((u, v))
        edges.append((u, v, c))
    try:
        return EdgeColoredGraph(n, tuple(edges))
    except GraphError as exc:  # pragma: no cover - checks above cover these
        raise InstanceFormatError(str(exc)) from exc


def _split(line: str, count: int, lineno: int) -> list[str]:
    tokens = line.split(' ')
    if len(tokens) != count or '' in tokens:
        raise InstanceFormatError(
            f'expected {count} single-space separated fields, got {line!r}', lineno)
    return tokens


def emit_instance(G: EdgeColoredGraph) -> str:
    """Canonical text; deleted (masked) vertices are written as isolated ones."""
    lines = ['ecg 1', f'{G.n_vertices} {len(G.edges)}']
    lines += [f'{u} {v} {c}' for u, v, c in G.edges]
    return '\n'.join(lines) + '\n'


def instance_hash(G: EdgeColoredGraph) -> str:
    return hashlib.sha256(emit_instance(G).encode()).hexdigest()[:16]


def read_instance(path) -> EdgeColoredGraph:
    with open(path, encoding='latin-1', newline='') as fh:
        return parse_instance(fh.read())


def write_instance(G: EdgeColoredGraph, path) -> None:
    with open(path, 'w', encoding='ascii', newline='') as fh:
        fh.write(emit_instance(G))
