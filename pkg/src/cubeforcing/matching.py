"""
Bipartite graphs with bitmask adjacency, perfect matchings, and unique-PM tests.

A graph keeps, for every left vertex, a bitmask of adjacent right indices (and
the transpose). Matchings handed to callers are frozensets of
``(left_label, right_label)`` pairs; the algorithms work on index arrays
``mate_l`` / ``mate_r`` with -1 for unmatched.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .hypercube import Vertex, SupportPattern, support_matrix

__all__ = [
    "DEFAULT_ENUM_CAP",
    "DEFAULT_PERMANENT_CAP",
    "CapExceededError",
    "Matching",
    "BipartiteGraph",
    "InducedSubgraph",
    "hypercube_graph",
    "induced",
    "induced_by_mask",
    "find_pm",
    "has_unique_pm",
    "enumerate_pms",
    "all_pms",
    "pm_count_by_permanent",
    "is_perfect_matching",
]

DEFAULT_ENUM_CAP = 40
DEFAULT_PERMANENT_CAP = 20

Matching = frozenset  # of (left_label, right_label) pairs


class CapExceededError(RuntimeError):
    """An exhaustive search was refused because the instance exceeds its cap."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BipartiteGraph:
    """Bipartite graph with parts ``left`` and ``right``.

    ``adj[i]`` is the bitmask of right indices adjacent to left vertex ``i``.
    ``hypercube`` is the dimension when the vertices are Q_n vertex strings,
    even vertices on the left.
    """

    def __init__(
        self,
        left: Sequence[Hashable],
        right: Sequence[Hashable],
        adj: Sequence[int],
        hypercube: int | None = None,
    ):
        self.left = tuple(left)
        self.right = tuple(right)
        self.adj = tuple(int(a) for a in adj)
        if len(self.adj) != len(self.left):
            raise ValueError("need one adjacency mask per left vertex")
        self.left_index = {x: i for i, x in enumerate(self.left)}
        self.right_index = {y: j for j, y in enumerate(self.right)}
        if len(self.left_index) != len(self.left) or len(self.right_index) != len(self.right):
            raise ValueError("duplicate vertex label within a part")
        full = (1 << len(self.right)) - 1
        radj = [0] * len(self.right)
        for i, a in enumerate(self.adj):
            if a & ~full:
                raise ValueError(f"left vertex {self.left[i]!r} references a missing right index")
            for j in _bits(a):
                radj[j] |= 1 << i
        self.radj = tuple(radj)
        self.hypercube = hypercube
        if hypercube is not None:
            self._check_hypercube(hypercube)

    @classmethod
    def from_edges(
        cls,
        left: Sequence[Hashable],
        right: Sequence[Hashable],
        edges: Iterable[tuple[Hashable, Hashable]],
        hypercube: int | None = None,
    ) -> BipartiteGraph:
        li = {x: i for i, x in enumerate(left)}
        ri = {y: j for j, y in enumerate(right)}
        adj = [0] * len(li)
        for x, y in edges:
            if x not in li or y not in ri:
                raise ValueError(f"edge ({x!r}, {y!r}) does not join the left part to the right part")
            adj[li[x]] |= 1 << ri[y]
        return cls(left, right, adj, hypercube)

    def _check_hypercube(self, n: int) -> None:
        for part, want in ((self.left, 0), (self.right, 1)):
            for label in part:
                v = Vertex.parse(label)
                if v.n != n or v.bits.bit_count() & 1 != want:
                    raise ValueError(f"vertex {label!r} is not in the expected part of Q_{n}")
        for x, y in self.edges():
            if (int(x, 2) ^ int(y, 2)).bit_count() != 1:
                raise ValueError(f"edge {x}-{y} does not join hypercube neighbours")

    @property
    def order(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def balanced(self) -> bool:
        return len(self.left) == len(self.right)

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj)

    def edges(self) -> Iterator[tuple[Hashable, Hashable]]:
        for i, a in enumerate(self.adj):
            for j in _bits(a):
                yield self.left[i], self.right[j]

    def has_edge(self, x: Hashable, y: Hashable) -> bool:
        i = self.left_index.get(x)
        j = self.right_index.get(y)
        return i is not None and j is not None and bool(self.adj[i] >> j & 1)

    def support(self) -> SupportPattern:
        """0/1 bipartite adjacency matrix, rows = left, columns = right."""
        present = np.zeros((len(self.left), len(self.right)), dtype=bool)
        for i, a in enumerate(self.adj):
            present[i, list(_bits(a))] = True
        return SupportPattern(present)

    def edge_indices(self, m: Iterable[tuple[Hashable, Hashable]]) -> list[tuple[int, int]]:
        """Index pairs of ``m``'s edges sorted by left index; raises on non-edges."""
        out = []
        for x, y in m:
            if not self.has_edge(x, y):
                raise ValueError(f"{x}-{y} is not an edge of the graph")
            out.append((self.left_index[x], self.right_index[y]))
        return sorted(out)

    def matching_from_mates(self, mate_l: Sequence[int]) -> Matching:
        return frozenset((self.left[i], self.right[j]) for i, j in enumerate(mate_l) if j >= 0)

    def canonical(self, m: Iterable[tuple[Hashable, Hashable]]) -> tuple[tuple[Hashable, Hashable], ...]:
        """Edges of ``m`` in left-index order."""
        return tuple((self.left[i], self.right[j]) for i, j in self.edge_indices(m))

    def __repr__(self) -> str:
        tag = f", Q_{self.hypercube}" if self.hypercube is not None else ""
        return f"{type(self).__name__}({len(self.left)}+{len(self.right)} vertices, {self.num_edges} edges{tag})"


class InducedSubgraph(BipartiteGraph):
    """Subgraph of ``host`` induced by the kept vertex masks (one per part)."""

    def __init__(self, host: BipartiteGraph, kept_left: int, kept_right: int):
        lidx = list(_bits(kept_left))
        ridx = list(_bits(kept_right))
        if (lidx and lidx[-1] >= len(host.left)) or (ridx and ridx[-1] >= len(host.right)):
            raise ValueError("kept mask references a vertex outside the host")
        remap = {j: k for k, j in enumerate(ridx)}
        adj = []
        for i in lidx:
            a = 0
            for j in _bits(host.adj[i] & kept_right):
                a |= 1 << remap[j]
            adj.append(a)
        self.host = host
        self.kept_left = kept_left
        self.kept_right = kept_right
        # host already validated hypercube structure
        super().__init__([host.left[i] for i in lidx], [host.right[j] for j in ridx], adj)
        self.hypercube = host.hypercube


def hypercube_graph(n: int) -> BipartiteGraph:
    """Q_n with E_n (lexicographic) on the left and O_n (lexicographic) on the right."""
    s = support_matrix(n).present
    left = [format(b, f"0{n}b") for b in range(1 << n) if b.bit_count() % 2 == 0]
    right = [format(b, f"0{n}b") for b in range(1 << n) if b.bit_count() % 2 == 1]
    adj = [sum(1 << int(j) for j in np.flatnonzero(row)) for row in s]
    g = BipartiteGraph(left, right, adj)
    g.hypercube = n
    return g


def induced(host: BipartiteGraph, kept: Iterable[Hashable]) -> InducedSubgraph:
    lmask = rmask = 0
    for label in kept:
        if label in host.left_index:
            lmask |= 1 << host.left_index[label]
        elif label in host.right_index:
            rmask |= 1 << host.right_index[label]
        else:
            raise ValueError(f"unknown vertex {label!r}")
    return InducedSubgraph(host, lmask, rmask)


def induced_by_mask(host: BipartiteGraph, kept_left: int, kept_right: int) -> InducedSubgraph:
    return InducedSubgraph(host, kept_left, kept_right)


# ---------------------------------------------------------------------------
# Perfect matching search
# ---------------------------------------------------------------------------


def _augment(adj: Sequence[int], mate_l: list[int], mate_r: list[int], root: int) -> bool:
    """One augmenting-path DFS from ``root``, lowest right index first."""
    visited = 0
    stack = [[root, adj[root]]]
    path: list[int] = []
    while stack:
        frame = stack[-1]
        cand = frame[1] & ~visited
        if not cand:
            stack.pop()
            if path:
                path.pop()
            continue
        low = cand & -cand
        v = low.bit_length() - 1
        visited |= low
        frame[1] = cand ^ low
        path.append(v)
        if mate_r[v] < 0:
            for (u, _), w in zip(stack, path):
                mate_l[u] = w
                mate_r[w] = u
            return True
        stack.append([mate_r[v], adj[mate_r[v]]])
    return False


def _max_matching(g: BipartiteGraph) -> tuple[list[int], list[int], int]:
    mate_l = [-1] * len(g.left)
    mate_r = [-1] * len(g.right)
    size = 0
    for u in range(len(g.left)):
        if _augment(g.adj, mate_l, mate_r, u):
            size += 1
    return mate_l, mate_r, size


def find_pm(g: BipartiteGraph) -> Matching | None:
    """A perfect matching of ``g`` or ``None``."""
    if not g.balanced:
        return None
    mate_l, _, size = _max_matching(g)
    if size != len(g.left):
        return None
    return g.matching_from_mates(mate_l)


def alternating_out(adj: Sequence[int], mate_l: Sequence[int], mate_r: Sequence[int]) -> list[int]:
    """Left-to-left successor masks of the alternating digraph.

    Left vertex ``u`` points at ``mate_r[v]`` for every non-matching edge
    ``u-v``; a directed cycle is exactly an M-alternating cycle.
    """
    out = []
    for u, a in enumerate(adj):
        s = 0
        for v in _bits(a & ~(1 << mate_l[u])):
            s |= 1 << mate_r[v]
        out.append(s)
    return out


def is_acyclic(out: Sequence[int], alive: int) -> bool:
    """Whether the digraph ``out`` restricted to ``alive`` has no directed cycle."""
    while alive:
        before = alive
        for u in _bits(before):
            if not out[u] & alive:
                alive ^= 1 << u
        if alive == before:
            return False
    return True


def has_unique_pm(g: BipartiteGraph) -> tuple[bool, Matching | None]:
    """``(True, M)`` when ``g`` has exactly one perfect matching ``M``."""
    if not g.balanced:
        return False, None
    mate_l, mate_r, size = _max_matching(g)
    if size != len(g.left):
        return False, None
    if not is_acyclic(alternating_out(g.adj, mate_l, mate_r), (1 << len(g.left)) - 1):
        return False, None
    return True, g.matching_from_mates(mate_l)


def is_perfect_matching(g: BipartiteGraph, m: Iterable[tuple[Hashable, Hashable]]) -> bool:
    try:
        idx = g.edge_indices(m)
    except ValueError:
        return False
    if not g.balanced or len(idx) != len(g.left):
        return False
    return len({i for i, _ in idx}) == len(idx) == len({j for _, j in idx})


# ---------------------------------------------------------------------------
# Exhaustive counting
# ---------------------------------------------------------------------------


def _check_enum_cap(g: BipartiteGraph, cap: int) -> None:
    if g.order > cap:
        raise CapExceededError(f"graph has {g.order} vertices, enumeration cap is {cap} (raise --cap)")


def _backtrack(adj, radj, lmask, rmask, chosen, visit) -> int:
    if not lmask:
        if visit is not None:
            visit(chosen)
        return 1
    best = None
    best_deg = 1 << 30
    for u in _bits(lmask):
        d = (adj[u] & rmask).bit_count()
        if d < best_deg:
            best, best_deg = (0, u), d
            if d < 2:
                break
    if best_deg >= 2:
        for v in _bits(rmask):
            d = (radj[v] & lmask).bit_count()
            if d < best_deg:
                best, best_deg = (1, v), d
                if d < 2:
                    break
    if best_deg == 0:
        return 0
    side, x = best
    total = 0
    if side == 0:
        for v in _bits(adj[x] & rmask):
            chosen.append((x, v))
            total += _backtrack(adj, radj, lmask ^ (1 << x), rmask ^ (1 << v), chosen, visit)
            chosen.pop()
    else:
        for u in _bits(radj[x] & lmask):
            chosen.append((u, x))
            total += _backtrack(adj, radj, lmask ^ (1 << u), rmask ^ (1 << x), chosen, visit)
            chosen.pop()
    return total


def enumerate_pms(
    g: BipartiteGraph,
    callback: Callable[[Matching], None] | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """Exact number of perfect matchings by backtracking on a minimum-degree vertex.

    ``callback`` receives each matching as a frozenset of label pairs.
    """
    _check_enum_cap(g, cap)
    if not g.balanced:
        return 0
    visit = None
    if callback is not None:
        def visit(chosen):
            callback(frozenset((g.left[i], g.right[j]) for i, j in chosen))
    full_l = (1 << len(g.left)) - 1
    full_r = (1 << len(g.right)) - 1
    return _backtrack(g.adj, g.radj, full_l, full_r, [], visit)


def all_pms(g: BipartiteGraph, cap: int = DEFAULT_ENUM_CAP) -> list[Matching]:
    """All perfect matchings of ``g`` in enumeration order."""
    found: list[Matching] = []
    enumerate_pms(g, found.append, cap)
    return found


def _permanent01(rows: Sequence[int], n: int) -> int:
    """Permanent of an n x n 0/1 matrix (row bitmasks), inclusion-exclusion over
    column subsets visited in Gray-code order."""
    if n == 0:
        return 1
    cols = [[i for i in range(n) if rows[i] >> j & 1] for j in range(n)]
    sums = [0] * n
    total = 0
    gray = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        step = 1 if gray >> j & 1 else -1
        for i in cols[j]:
            sums[i] += step
        prod = 1
        for s in sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            total += -prod if gray.bit_count() & 1 else prod
    return -total if n & 1 else total


def pm_count_by_permanent(g: BipartiteGraph | SupportPattern, cap: int = DEFAULT_PERMANENT_CAP) -> int:
    """Number of perfect matchings as the permanent of the 0/1 support matrix."""
    if isinstance(g, SupportPattern):
        nl, nr = g.rows, g.cols
        weights = [1 << j for j in range(nr)]
        rows = [sum(w for w, f in zip(weights, row) if f) for row in g.present]
    else:
        nl, nr = len(g.left), len(g.right)
        rows = list(g.adj)
    if nl != nr:
        return 0
    if nl > cap:
        raise CapExceededError(f"part size {nl} exceeds the permanent cap {cap}")
    return _permanent01(rows, nl)

