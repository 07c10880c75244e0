"""
Text formats for graphs and matchings.

Graph files are either::

    graph <nleft> <nright>
    edge <leftlabel> <rightlabel>
    ...

or a hypercube-induced graph::

    hypercube <n>
    keep <vertexstring>
    ...

(no ``keep`` lines keeps all of Q_n). Blank lines and ``#`` comments are
ignored. In a ``graph`` file, left/right labels are taken in order of first
appearance; declared vertices never named by an edge become isolated
vertices labelled ``#L<i>`` / ``#R<i>``.

Matching files hold one edge per line as two labels separated by one space.
"""

from __future__ import annotations

from collections.abc import Iterable

from .hypercube import Vertex
from .matching import BipartiteGraph, Matching, hypercube_graph, induced

__all__ = ["parse_graph", "format_graph", "parse_matching", "format_matching"]


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> BipartiteGraph:
    lines = list(_content_lines(text))
    if not lines:
        raise ValueError("empty graph file")
    _, head = lines[0]
    if head[0] == "hypercube" and len(head) == 2:
        return _parse_hypercube(head, lines[1:])
    if head[0] == "graph" and len(head) == 3:
        return _parse_edges(head, lines[1:])
    raise ValueError(f"line 1: expected 'graph <nleft> <nright>' or 'hypercube <n>', got {' '.join(head)!r}")


def _parse_int(tok: str, what: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ValueError(f"line {lineno}: {what} must be an integer, got {tok!r}") from None
    if val < 0:
        raise ValueError(f"line {lineno}: {what} must be non-negative")
    return val


def _parse_hypercube(head, body) -> BipartiteGraph:
    n = _parse_int(head[1], "dimension", 1)
    if n < 1:
        raise ValueError("line 1: dimension must be >= 1")
    host = hypercube_graph(n)
    keep = []
    for lineno, toks in body:
        if len(toks) != 2 or toks[0] != "keep":
            raise ValueError(f"line {lineno}: expected 'keep <vertexstring>'")
        v = Vertex.parse(toks[1])
        if v.n != n:
            raise ValueError(f"line {lineno}: vertex {toks[1]} is not in Q_{n}")
        keep.append(toks[1])
    if not keep:
        return host
    return induced(host, keep)


def _parse_edges(head, body) -> BipartiteGraph:
    nleft = _parse_int(head[1], "nleft", 1)
    nright = _parse_int(head[2], "nright", 1)
    left: dict[str, None] = {}
    right: dict[str, None] = {}
    edges = []
    for lineno, toks in body:
        if len(toks) != 3 or toks[0] != "edge":
            raise ValueError(f"line {lineno}: expected 'edge <leftlabel> <rightlabel>'")
        left.setdefault(toks[1])
        right.setdefault(toks[2])
        edges.append((toks[1], toks[2]))
    if len(left) > nleft or len(right) > nright:
        raise ValueError(
            f"edges name {len(left)} left / {len(right)} right vertices, "
            f"header declares {nleft} / {nright}"
        )
    lefts = list(left) + [f"#L{i}" for i in range(nleft - len(left))]
    rights = list(right) + [f"#R{i}" for i in range(nright - len(right))]
    return BipartiteGraph.from_edges(lefts, rights, edges)


def format_graph(g: BipartiteGraph) -> str:
    lines = [f"graph {len(g.left)} {len(g.right)}"]
    lines.extend(f"edge {x} {y}" for x, y in g.edges())
    return "\n".join(lines) + "\n"


def parse_matching(text: str, g: BipartiteGraph) -> Matching:
    """Parse a matching file against ``g``; an edge may be written in either orientation."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        toks = raw.split(" ")
        if len(toks) != 2 or not all(toks):
            raise ValueError(f"line {lineno}: expected two vertex labels separated by one space")
        a, b = toks
        if g.has_edge(a, b):
            edges.append((a, b))
        elif g.has_edge(b, a):
            edges.append((b, a))
        else:
            raise ValueError(f"line {lineno}: {a} {b} is not an edge of the graph")
    m = frozenset(edges)
    if len(m) != len(edges):
        raise ValueError("matching lists an edge twice")
    return m


def format_matching(g: BipartiteGraph, m: Iterable[tuple[str, str]]) -> str:
    return "".join(f"{x} {y}\n" for x, y in g.canonical(m))
